#pragma once

#include "qswitch/linalg.hpp"
#include "qswitch/states.hpp"
#include "qswitch/schmidt.hpp"
#include "qswitch/ico_switch.hpp"
#include "qswitch/gravity.hpp"
#include "qswitch/bsa.hpp"
#include "qswitch/bounds.hpp"
