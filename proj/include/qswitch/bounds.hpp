#pragma once

// Upper bound on the number of Bell-like states distinguishable by LOCC:
//   N <= d1 * d2 / (sum_i alpha_i)^2
// for states whose Schmidt coefficients are alpha_i.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qswitch {

struct LoccBoundInput {
  std::size_t d1 = 2;
  std::size_t d2 = 2;
  std::vector<double> schmidt;

  LoccBoundInput(std::size_t dim1, std::size_t dim2, std::vector<double> coeffs, double tol = 1e-12)
      : d1(dim1), d2(dim2), schmidt(std::move(coeffs)) {
    if (d1 < 2 || d2 < 2) throw std::invalid_argument("subsystem dimensions must be >= 2");
    if (schmidt.empty() || schmidt.size() > std::min(d1, d2))
      throw std::invalid_argument("Schmidt list length must be in [1, min(d1, d2)]");
    double sq = 0.0;
    for (double a : schmidt) {
      if (!(a >= 0.0) || !std::isfinite(a)) throw std::invalid_argument("Schmidt coefficients must be finite and >= 0");
      sq += a * a;
    }
    if (sq == 0.0) throw std::invalid_argument("Schmidt coefficients are all zero");
    if (std::abs(sq - 1.0) > tol) throw std::invalid_argument("Schmidt coefficients are not normalized");
  }

  /// alpha_i = 1/sqrt(d) for all i: the maximally entangled spectrum.
  static LoccBoundInput maximal(std::size_t d) {
    return {d, d, std::vector<double>(d, 1.0 / std::sqrt(static_cast<double>(d)))};
  }
};

struct LoccBound {
  double value = 0.0;
  std::uint64_t floor = 0;
};

inline LoccBound locc_bound(const LoccBoundInput& in) {
  const double s = std::accumulate(in.schmidt.begin(), in.schmidt.end(), 0.0);
  const double value = static_cast<double>(in.d1 * in.d2) / (s * s);
  // A 1e-9 nudge absorbs rounding in (sum alpha)^2 so exact integers floor correctly.
  return {value, static_cast<std::uint64_t>(std::floor(value + 1e-9))};
}

/// floor of the bound for maximally entangled states in d x d; equals d.
inline std::uint64_t bell_bound(std::size_t d) {
  if (d < 2) throw std::invalid_argument("dimension must be >= 2");
  return locc_bound(LoccBoundInput::maximal(d)).floor;
}

}  // namespace qswitch
