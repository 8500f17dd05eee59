#pragma once

// Bell-state analysis through the d-switch.
//
// Protocol: prepare |D_0>_c (x) bell(i, j), apply the switch, measure the
// control in the Fourier basis (outcome l) and both targets in the
// computational basis (j_A, j_B). With the canonical switch the outcome l
// fixes i = (d - l) mod d and the target relation j_B = j_A + j + 1 fixes j.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qswitch/ico_switch.hpp"
#include "qswitch/schmidt.hpp"
#include "qswitch/states.hpp"

namespace qswitch {

/// Controls above this residual are not treated as heralding a single outcome.
inline constexpr double kHeraldResidual = 1e-10;

class NonHeraldedInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class AmbiguousDecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MeasurementRecord {
  FourierIndex control_outcome;
  std::size_t alice_outcome = 0;
  std::size_t bob_outcome = 0;
  BellIndex decoded;

  bool operator==(const MeasurementRecord&) const = default;
};

struct RngSeed {
  std::uint64_t seed = 0;
};

/// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Per-state seed used by confusion(): splitmix64(seed ^ splitmix64(flat_index)).
constexpr std::uint64_t derive_seed(RngSeed base, std::size_t flat_index) {
  return splitmix64(base.seed ^ splitmix64(static_cast<std::uint64_t>(flat_index)));
}

inline BellIndex decode(std::size_t d, FourierIndex l, std::size_t j_a, std::size_t j_b) {
  require_dim(d);
  if (l.d != d || l.idx >= d) throw std::out_of_range("control outcome out of range");
  if (j_a >= d || j_b >= d) throw std::out_of_range("target outcome out of range");
  return BellIndex{d, (d - l.idx) % d, (j_b + 2 * d - j_a - 1) % d};
}

inline BellIndex decode(std::size_t d, std::size_t l, std::size_t j_a, std::size_t j_b) {
  if (l >= d) throw std::out_of_range("control outcome out of range");
  return decode(d, FourierIndex{d, l}, j_a, j_b);
}

inline StateVector prepare_input(const StateVector& target) {
  const std::size_t d = target.dims().front();
  return tensor(fourier_state(d, 0), target);
}

/// Runs the switch on |D_0> (x) target and reads out the heralded result.
/// Target outcomes are the support of the post-measurement state; all of them
/// must decode to the same index.
inline MeasurementRecord analyze_state(const StateVector& target, const SwitchConfig& sw) {
  const std::size_t d = sw.d();
  if (target.dims() != std::vector<std::size_t>{d, d}) throw ShapeError("target must be two qudits of dim d");
  const StateVector out = apply_branchwise(sw, prepare_input(target));
  const ControlDecomposition dec = decompose_control(out);
  if (dec.residual > kHeraldResidual)
    throw NonHeraldedInputError("control outcome not heralded (residual " + std::to_string(dec.residual) + ")");

  // Support threshold: amplitudes of a valid output have modulus d^{-1/2}.
  const double support_floor = 1e-6 / static_cast<double>(d);
  std::optional<MeasurementRecord> first;
  for (std::size_t x = 0; x < d * d; ++x) {
    if (std::norm(dec.dominant_target[x]) <= support_floor) continue;
    MeasurementRecord r{dec.dominant, x / d, x % d, decode(d, dec.dominant, x / d, x % d)};
    if (!first) {
      first = r;
    } else if (r.decoded != first->decoded) {
      throw AmbiguousDecodeError("target support decodes to more than one Bell index");
    }
  }
  return *first;
}

inline MeasurementRecord analyze_deterministic(std::size_t d, BellIndex true_state, const SwitchConfig& sw) {
  if (sw.d() != d || true_state.d != d) throw std::invalid_argument("dimension mismatch between state and switch");
  return analyze_state(bell_state(true_state), sw);
}

namespace detail {

/// Uniform double in [0, 1) from the top 53 bits; independent of the
/// standard library's distribution implementations.
inline double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline std::size_t draw(std::span<const double> probs, std::mt19937_64& rng) {
  const double u = unit_uniform(rng);
  double acc = 0.0;
  std::size_t last_nonzero = 0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    if (probs[k] <= 0.0) continue;
    acc += probs[k];
    last_nonzero = k;
    if (u < acc) return k;
  }
  // Rounding left the cumulative sum a hair below 1.
  return last_nonzero;
}

}  // namespace detail

/// Born-rule sampling of the protocol with a private mt19937_64 seeded by `seed`.
/// Each shot draws the control outcome, then (j_A, j_B) from the conditioned target.
inline std::vector<MeasurementRecord> sample(std::size_t d, BellIndex true_state, const SwitchConfig& sw,
                                             std::size_t shots, RngSeed seed) {
  if (shots == 0) throw std::invalid_argument("shots must be >= 1");
  if (sw.d() != d || true_state.d != d) throw std::invalid_argument("dimension mismatch between state and switch");

  const StateVector out = apply_branchwise(sw, prepare_input(bell_state(true_state)));
  std::vector<double> control_probs(d);
  std::vector<std::vector<double>> target_probs(d);
  for (std::size_t l = 0; l < d; ++l) {
    const auto t = project_control(out.amplitudes(), d, l);
    double total = 0.0;
    target_probs[l].resize(t.size());
    for (std::size_t x = 0; x < t.size(); ++x) total += target_probs[l][x] = std::norm(t[x]);
    control_probs[l] = total;
    if (total > 0.0)
      for (auto& p : target_probs[l]) p /= total;
  }

  std::mt19937_64 rng(seed.seed);
  std::vector<MeasurementRecord> records;
  records.reserve(shots);
  for (std::size_t s = 0; s < shots; ++s) {
    const std::size_t l = detail::draw(control_probs, rng);
    const std::size_t x = detail::draw(target_probs[l], rng);
    records.push_back({FourierIndex{d, l}, x / d, x % d, decode(d, l, x / d, x % d)});
  }
  return records;
}

struct ConfusionMatrix {
  std::size_t d = 0;
  std::size_t shots_per_state = 0;
  /// d^2 x d^2, row = true flat index, column = decoded flat index.
  std::vector<std::uint64_t> counts;

  std::uint64_t at(BellIndex truth, BellIndex decoded) const { return counts[truth.flat() * d * d + decoded.flat()]; }
  std::uint64_t& at(BellIndex truth, BellIndex decoded) { return counts[truth.flat() * d * d + decoded.flat()]; }

  std::uint64_t off_diagonal() const {
    const std::size_t n = d * d;
    std::uint64_t s = 0;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        if (r != c) s += counts[r * n + c];
    return s;
  }
  bool is_identity() const {
    const std::size_t n = d * d;
    for (std::size_t r = 0; r < n; ++r)
      if (counts[r * n + r] != shots_per_state) return false;
    return off_diagonal() == 0;
  }
  double accuracy() const {
    const std::size_t n = d * d;
    std::uint64_t diag = 0;
    for (std::size_t r = 0; r < n; ++r) diag += counts[r * n + r];
    return static_cast<double>(diag) / static_cast<double>(n * shots_per_state);
  }
};

/// Sampled confusion matrix; state k uses seed derive_seed(seed, k).
inline ConfusionMatrix confusion(std::size_t d, const SwitchConfig& sw, std::size_t shots_per_state, RngSeed seed) {
  ConfusionMatrix cm{d, shots_per_state, std::vector<std::uint64_t>(d * d * d * d)};
  for (std::size_t k = 0; k < d * d; ++k) {
    const BellIndex truth = BellIndex::from_flat(d, k);
    for (const auto& r : sample(d, truth, sw, shots_per_state, RngSeed{derive_seed(seed, k)}))
      ++cm.at(truth, r.decoded);
  }
  return cm;
}

/// One deterministic analysis per state (shots_per_state = 1).
inline ConfusionMatrix confusion_deterministic(std::size_t d, const SwitchConfig& sw) {
  ConfusionMatrix cm{d, 1, std::vector<std::uint64_t>(d * d * d * d)};
  for (std::size_t k = 0; k < d * d; ++k) {
    const BellIndex truth = BellIndex::from_flat(d, k);
    ++cm.at(truth, analyze_deterministic(d, truth, sw).decoded);
  }
  return cm;
}

struct IterationResult {
  std::vector<ControlDecomposition> rounds;
  StateVector final_target;
};

/// Repeats the switch `rounds` times on the same target. Before every round the
/// control is re-prepared in |D_0>; after it the control is measured, keeping
/// the target conditioned on the dominant outcome.
inline IterationResult iterate_switch(std::size_t d, BellIndex true_state, const SwitchConfig& sw,
                                      std::size_t rounds) {
  if (rounds == 0) throw std::invalid_argument("rounds must be >= 1");
  if (sw.d() != d || true_state.d != d) throw std::invalid_argument("dimension mismatch between state and switch");
  StateVector target = bell_state(true_state);
  std::vector<ControlDecomposition> history;
  for (std::size_t r = 0; r < rounds; ++r) {
    const StateVector out = apply_branchwise(sw, prepare_input(target));
    ControlDecomposition dec = decompose_control(out);
    target = StateVector::normalized({d, d}, dec.dominant_target);
    history.push_back(std::move(dec));
  }
  return {std::move(history), std::move(target)};
}

}  // namespace qswitch
