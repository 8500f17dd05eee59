#pragma once

// The switch rebuilt from event orderings.
//
// Alice has one event A; Bob has d-1 events B_1 -> ... -> B_{d-1} in fixed
// order. Branch m places A after exactly (d-1-m) of Bob's events, so branch 0
// is B_1 -> ... -> B_{d-1} -> A and branch d-1 is A -> B_1 -> ... -> B_{d-1}.
// Every event applies a power of the shift gate; whether the event saw the
// other party's signal first decides which power. All exponent bookkeeping is
// exact integer arithmetic; matrices are only built to cross-check it.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qswitch/ico_switch.hpp"
#include "qswitch/states.hpp"

namespace qswitch::gravity {

struct EventOrdering {
  std::size_t d = 2;
  std::size_t branch = 0;

  EventOrdering(std::size_t dim, std::size_t m) : d(dim), branch(m) {
    require_dim(d);
    if (branch >= d) throw std::out_of_range("branch index out of range");
  }

  /// Number of Bob events that precede A.
  std::size_t bob_events_before_alice() const { return d - 1 - branch; }
  bool alice_first() const { return bob_events_before_alice() == 0; }

  /// e.g. "B1→A→B2"; the mass-configuration label without the "M: " prefix.
  std::string label() const {
    std::string s;
    const std::size_t before = bob_events_before_alice();
    auto append = [&s](const std::string& ev) {
      if (!s.empty()) s += "→";
      s += ev;
    };
    for (std::size_t k = 1; k <= d - 1; ++k) {
      if (k == before + 1) append("A");
      append("B" + std::to_string(k));
    }
    if (before == d - 1) append("A");
    return s;
  }
};

/// Shift exponents (>= 0, meaningful mod d) for every event unitary.
struct EventUnitaryAssignment {
  std::size_t d = 2;
  std::uint64_t alice_unconditioned_exp = 0;                // U_A
  std::vector<std::uint64_t> alice_conditioned_exps;        // [k-1] -> U_{A|B_k}
  std::vector<std::uint64_t> bob_unconditioned_exps;        // [k-1] -> U_{B_k}
  std::vector<std::uint64_t> bob_conditioned_exps;          // [k-1] -> U_{B_k|A}
};

inline EventUnitaryAssignment standard_assignment(std::size_t d) {
  require_dim(d);
  EventUnitaryAssignment a;
  a.d = d;
  a.alice_unconditioned_exp = d - 1;
  for (std::size_t k = 1; k <= d - 1; ++k) {
    a.alice_conditioned_exps.push_back(d - 1 - k);
    a.bob_unconditioned_exps.push_back(d - 1);
    a.bob_conditioned_exps.push_back(0);
  }
  return a;
}

struct BranchComposition {
  EventOrdering ordering;
  UnitaryMatrix alice_op;
  UnitaryMatrix bob_op;
  std::uint64_t alice_exp_raw = 0;
  std::uint64_t alice_exp_mod_d = 0;
  std::uint64_t bob_exp_raw = 0;
  std::uint64_t bob_exp_mod_d = 0;
  /// Operator words in the notation of the event unitaries, e.g. "U_{A|B1}", "U_{B2|A} U_{B1}".
  std::string alice_word;
  std::string bob_word;
};

/// Composes the event unitaries of one ordering. Bob's product is applied
/// earliest event first (written right to left), events after A use their
/// conditioned unitaries, events before A the unconditioned ones.
inline BranchComposition compose_branch(const EventUnitaryAssignment& assign, const EventOrdering& ordering) {
  const std::size_t d = assign.d;
  if (ordering.d != d) throw std::invalid_argument("assignment and ordering disagree on d");
  if (assign.alice_conditioned_exps.size() != d - 1 || assign.bob_unconditioned_exps.size() != d - 1 ||
      assign.bob_conditioned_exps.size() != d - 1)
    throw ShapeError("assignment needs d-1 exponents per event family");

  const std::size_t before = ordering.bob_events_before_alice();
  const std::uint64_t alice_exp =
      before == 0 ? assign.alice_unconditioned_exp : assign.alice_conditioned_exps[before - 1];
  std::string alice_word = before == 0 ? "U_{A}" : "U_{A|B" + std::to_string(before) + "}";

  UnitaryMatrix bob = UnitaryMatrix(Matrix::identity(d));
  std::uint64_t bob_exp = 0;
  std::string bob_word;
  for (std::size_t k = d - 1; k >= 1; --k) {
    const bool conditioned = k > before;
    const std::uint64_t e = conditioned ? assign.bob_conditioned_exps[k - 1] : assign.bob_unconditioned_exps[k - 1];
    bob_exp += e;
    if (!bob_word.empty()) bob_word += " ";
    bob_word += "U_{B" + std::to_string(k) + (conditioned ? "|A}" : "}");
    bob = multiply(bob, mat_pow(shift(d), e));
  }

  return BranchComposition{ordering,
                           mat_pow(shift(d), alice_exp),
                           bob,
                           alice_exp,
                           alice_exp % d,
                           bob_exp,
                           bob_exp % d,
                           std::move(alice_word),
                           std::move(bob_word)};
}

/// Which signals each agent has received before acting, per ordering.
struct SignalSummary {
  std::string alice;
  std::string bob;
};

inline SignalSummary signal_summary(const EventOrdering& o) {
  const std::size_t before = o.bob_events_before_alice();
  SignalSummary s;
  if (before == 0) {
    s.alice = "No signal received before A";
  } else {
    s.alice = "Alice receives Bob's signal" + std::string(before > 1 ? "s " : " ");
    for (std::size_t k = 1; k <= before; ++k) s.alice += (k > 1 ? ", b" : "b") + std::to_string(k);
    s.alice += " before A";
  }
  if (before == o.d - 1) {
    s.bob = "No signal received";
  } else if (before == 0) {
    s.bob = "Bob receives Alice's signal a before B1";
  } else {
    s.bob = "No signal received before B" + std::to_string(before) + ", Alice's signal a received before B" +
            std::to_string(before + 1);
  }
  return s;
}

struct CorrespondenceEntry {
  std::size_t branch = 0;
  std::string label;
  SignalSummary signals;
  std::string alice_word;
  std::string bob_word;
  std::uint64_t alice_exp_raw = 0;
  std::uint64_t alice_exp_mod_d = 0;
  std::uint64_t bob_exp_raw = 0;
  std::uint64_t bob_exp_mod_d = 0;
  bool matrices_match = false;  // entrywise equality with the canonical (U_{m+1}, V_{m+1})
  bool exponent_law = false;    // bob raw = (d-1)(d-1-m), = m+1 mod d; alice = m mod d
  bool pass() const { return matrices_match && exponent_law; }
};

struct CorrespondenceReport {
  std::size_t d = 0;
  std::vector<CorrespondenceEntry> entries;
  std::size_t passed() const {
    std::size_t n = 0;
    for (const auto& e : entries) n += e.pass() ? 1 : 0;
    return n;
  }
  bool all_pass() const { return passed() == entries.size(); }
};

inline CorrespondenceReport verify_correspondence(std::size_t d) {
  const auto assign = standard_assignment(d);
  const SwitchConfig canonical = canonical_config(d);
  CorrespondenceReport report{d, {}};
  for (std::size_t m = 0; m < d; ++m) {
    const EventOrdering o(d, m);
    const BranchComposition b = compose_branch(assign, o);
    CorrespondenceEntry e;
    e.branch = m;
    e.label = o.label();
    e.signals = signal_summary(o);
    e.alice_word = b.alice_word;
    e.bob_word = b.bob_word;
    e.alice_exp_raw = b.alice_exp_raw;
    e.alice_exp_mod_d = b.alice_exp_mod_d;
    e.bob_exp_raw = b.bob_exp_raw;
    e.bob_exp_mod_d = b.bob_exp_mod_d;
    e.matrices_match = b.alice_op == canonical.alice_op(m) && b.bob_op == canonical.bob_op(m);
    const std::uint64_t dd = d;
    e.exponent_law = b.bob_exp_raw == (dd - 1) * (dd - 1 - m) && b.bob_exp_mod_d == (m + 1) % dd &&
                     b.alice_exp_mod_d == m % dd;
    report.entries.push_back(std::move(e));
  }
  return report;
}

/// The switch assembled from the composed branches, control |m> selecting branch m.
inline SwitchConfig gravitational_switch(std::size_t d) {
  const auto assign = standard_assignment(d);
  std::vector<UnitaryMatrix> u, v;
  for (std::size_t m = 0; m < d; ++m) {
    auto b = compose_branch(assign, EventOrdering(d, m));
    u.push_back(std::move(b.alice_op));
    v.push_back(std::move(b.bob_op));
  }
  return SwitchConfig(d, std::move(u), std::move(v));
}

}  // namespace qswitch::gravity
