#pragma once

// The quantum d-switch as a control-conditioned product unitary:
//
//   S = sum_k |k><k|_c (x) U_{k+1} (x) V_{k+1}
//
// acting on control (x) Alice (x) Bob, each a qudit of dimension d.
// Two application paths are provided: a materialized d^3 x d^3 operator
// (capped at kDenseDimCap) and a branchwise path that never builds it.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qswitch/linalg.hpp"
#include "qswitch/schmidt.hpp"
#include "qswitch/states.hpp"

namespace qswitch {

class SwitchConfig {
 public:
  SwitchConfig(std::size_t d, std::vector<UnitaryMatrix> u_ops, std::vector<UnitaryMatrix> v_ops)
      : d_(d), u_(std::move(u_ops)), v_(std::move(v_ops)) {
    require_dim(d_);
    if (u_.size() != d_ || v_.size() != d_)
      throw ShapeError("switch config needs exactly d operators per party");
    for (const auto& op : u_)
      if (op.dim() != d_) throw ShapeError("Alice operator has wrong dimension");
    for (const auto& op : v_)
      if (op.dim() != d_) throw ShapeError("Bob operator has wrong dimension");
  }

  std::size_t d() const { return d_; }
  /// Operators selected by control basis state |k>, k = 0..d-1 (U_{k+1}, V_{k+1}).
  const UnitaryMatrix& alice_op(std::size_t k) const { return u_.at(k); }
  const UnitaryMatrix& bob_op(std::size_t k) const { return v_.at(k); }
  const std::vector<UnitaryMatrix>& u_ops() const { return u_; }
  const std::vector<UnitaryMatrix>& v_ops() const { return v_; }

  bool operator==(const SwitchConfig&) const = default;

 private:
  std::size_t d_;
  std::vector<UnitaryMatrix> u_;
  std::vector<UnitaryMatrix> v_;
};

/// U_k = shift^{k-1}, V_k = shift^k for k = 1..d.
inline SwitchConfig canonical_config(std::size_t d) {
  require_dim(d);
  std::vector<UnitaryMatrix> u, v;
  u.reserve(d);
  v.reserve(d);
  for (std::size_t k = 1; k <= d; ++k) {
    u.push_back(mat_pow(shift(d), k - 1));
    v.push_back(mat_pow(shift(d), k));
  }
  return SwitchConfig(d, std::move(u), std::move(v));
}

inline std::vector<std::size_t> switch_dims(std::size_t d) { return {d, d, d}; }

inline UnitaryMatrix build_dense(const SwitchConfig& cfg, std::size_t cap = kDenseDimCap) {
  const std::size_t d = cfg.d();
  if (d > cap)
    throw SizeLimitError("dense switch for d=" + std::to_string(d) + " exceeds cap " + std::to_string(cap) +
                         "; use apply_branchwise");
  const std::size_t block = d * d;
  Matrix s(d * block);
  for (std::size_t k = 0; k < d; ++k) {
    const Matrix local = kron(cfg.alice_op(k).matrix(), cfg.bob_op(k).matrix());
    for (std::size_t r = 0; r < block; ++r)
      for (std::size_t c = 0; c < block; ++c) s(k * block + r, k * block + c) = local(r, c);
  }
  return UnitaryMatrix(std::move(s));
}

/// Control block k of a dense switch operator.
inline Matrix control_block(const Matrix& s, std::size_t d, std::size_t k) {
  const std::size_t block = d * d;
  if (s.dim() != d * block || k >= d) throw ShapeError("control_block: bad shape or index");
  Matrix out(block);
  for (std::size_t r = 0; r < block; ++r)
    for (std::size_t c = 0; c < block; ++c) out(r, c) = s(k * block + r, k * block + c);
  return out;
}

inline void check_switch_input(std::size_t d, const StateVector& input) {
  if (input.dims() != switch_dims(d))
    throw ShapeError("switch input must have dims (d, d, d) with d=" + std::to_string(d));
}

inline StateVector apply_dense(const UnitaryMatrix& s, std::size_t d, const StateVector& input) {
  check_switch_input(d, input);
  if (s.dim() != input.size()) throw ShapeError("dense switch does not match input size");
  return StateVector(input.dims(), matvec(s.matrix(), input.amplitudes()));
}

/// Applies U_{k+1} (x) V_{k+1} to each control branch k in place of the dense operator.
inline StateVector apply_branchwise(const SwitchConfig& cfg, const StateVector& input) {
  const std::size_t d = cfg.d();
  check_switch_input(d, input);
  const std::size_t block = d * d;
  const std::vector<std::size_t> target_dims{d, d};
  std::vector<Complex> out;
  out.reserve(input.size());
  for (std::size_t k = 0; k < d; ++k) {
    auto branch = input.amplitudes().subspan(k * block, block);
    auto a = apply_raw(cfg.alice_op(k).matrix(), branch, target_dims, 0);
    auto ab = apply_raw(cfg.bob_op(k).matrix(), a, target_dims, 1);
    out.insert(out.end(), ab.begin(), ab.end());
  }
  return StateVector(input.dims(), std::move(out));
}

/// Control-register view of a control (x) target state in the Fourier basis.
struct ControlDecomposition {
  /// <D_l| (x) <t| applied to the state, where t is the normalized dominant branch.
  std::vector<Complex> weights;
  /// Born probability of each Fourier outcome.
  std::vector<double> probabilities;
  FourierIndex dominant;
  /// 1 - probability of the dominant outcome.
  double residual = 0.0;
  /// Target state conditioned on the dominant outcome (normalized).
  std::vector<Complex> dominant_target;
};

/// Unnormalized target left after projecting the control of `amps` onto |D_l>.
inline std::vector<Complex> project_control(std::span<const Complex> amps, std::size_t control_dim, std::size_t l) {
  const std::size_t rest = amps.size() / control_dim;
  const double amp = 1.0 / std::sqrt(static_cast<double>(control_dim));
  std::vector<Complex> t(rest);
  for (std::size_t k = 0; k < control_dim; ++k) {
    const Complex c = amp * root_of_unity(control_dim, -static_cast<long long>(k * l));
    for (std::size_t x = 0; x < rest; ++x) t[x] += c * amps[k * rest + x];
  }
  return t;
}

inline ControlDecomposition decompose_control(const StateVector& output) {
  const std::size_t d = output.dims().front();
  ControlDecomposition dec;
  std::vector<std::vector<Complex>> branches;
  branches.reserve(d);
  std::size_t best = 0;
  for (std::size_t l = 0; l < d; ++l) {
    branches.push_back(project_control(output.amplitudes(), d, l));
    const double n = norm(branches.back());
    dec.probabilities.push_back(n * n);
    // Strict comparison keeps the smallest index on ties.
    if (dec.probabilities[l] > dec.probabilities[best]) best = l;
  }
  dec.dominant = FourierIndex{d, best};
  dec.residual = std::max(0.0, 1.0 - dec.probabilities[best]);

  dec.dominant_target = branches[best];
  const double nb = norm(dec.dominant_target);
  if (nb > 0.0)
    for (auto& z : dec.dominant_target) z /= nb;
  for (std::size_t l = 0; l < d; ++l) dec.weights.push_back(inner(dec.dominant_target, branches[l]));
  return dec;
}

/// Schmidt coefficients across the control | target cut.
inline std::vector<double> control_target_schmidt(const StateVector& output) { return schmidt_values(output, 1); }

/// Uniformly random (Haar) pure state on the given register.
template <class Rng>
StateVector random_state(std::vector<std::size_t> dims, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Complex> amps(StateVector::total_dim(dims));
  for (auto& z : amps) z = Complex(gauss(rng), gauss(rng));
  return StateVector::normalized(std::move(dims), std::move(amps));
}

struct TransitionCase {
  BellIndex input;
  std::size_t expected_control = 0;
  std::size_t observed_control = 0;
  double fidelity = 0.0;
  double max_entry_error = 0.0;
  bool pass = false;
};

struct TransitionReport {
  std::size_t d = 0;
  std::vector<TransitionCase> cases;
  std::size_t passed() const {
    return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [](const auto& c) { return c.pass; }));
  }
  bool all_pass() const { return passed() == cases.size(); }
  double worst_entry_error() const {
    double w = 0.0;
    for (const auto& c : cases) w = std::max(w, c.max_entry_error);
    return w;
  }
};

enum class ApplyPath { branchwise, dense };

/// Checks S |D_0>|bell(i,j)> = |D_{(d-i) mod d}> |bell(i,(j+1) mod d)> for all (i, j),
/// both by fidelity and entrywise (the identity holds with no residual phase).
inline TransitionReport verify_transition_law(std::size_t d, ApplyPath path = ApplyPath::branchwise,
                                              double tol = kTolState) {
  const SwitchConfig cfg = canonical_config(d);
  std::optional<UnitaryMatrix> dense;
  if (path == ApplyPath::dense) dense = build_dense(cfg);
  const StateVector control = fourier_state(d, 0);

  TransitionReport report{d, {}};
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const StateVector input = tensor(control, bell_state(d, i, j));
      const StateVector out = dense ? apply_dense(*dense, d, input) : apply_branchwise(cfg, input);
      const std::size_t expected_l = (d - i) % d;
      const StateVector expected = tensor(fourier_state(d, expected_l), bell_state(d, i, (j + 1) % d));

      TransitionCase c;
      c.input = BellIndex{d, i, j};
      c.expected_control = expected_l;
      c.observed_control = decompose_control(out).dominant.idx;
      c.fidelity = fidelity(out, expected);
      c.max_entry_error = max_abs_diff(out.amplitudes(), expected.amplitudes());
      c.pass = c.fidelity >= 1.0 - tol && c.max_entry_error <= tol && c.observed_control == expected_l;
      report.cases.push_back(c);
    }
  return report;
}

}  // namespace qswitch
