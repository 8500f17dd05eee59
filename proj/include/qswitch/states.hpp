#pragma once

// Shift gates, Fourier control states and generalized Bell states.
//
// Conventions: omega = exp(+2 pi i / d); shift|k> = |k+1 mod d>;
// bell(i, j) = d^{-1/2} sum_k omega^{ik} |k>_A |k+j mod d>_B.

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "qswitch/linalg.hpp"

namespace qswitch {

inline void require_dim(std::size_t d) {
  if (d < 2) throw std::invalid_argument("dimension must be >= 2, got " + std::to_string(d));
}

struct BellIndex {
  std::size_t d = 2;
  std::size_t i = 0;  // phase index
  std::size_t j = 0;  // shift index

  BellIndex() = default;
  BellIndex(std::size_t dim, std::size_t phase, std::size_t shift) : d(dim), i(phase), j(shift) {
    require_dim(d);
    if (i >= d || j >= d)
      throw std::out_of_range("Bell index (" + std::to_string(i) + "," + std::to_string(j) +
                              ") out of range for d=" + std::to_string(d));
  }

  /// Position in lexicographic (i, j) order.
  std::size_t flat() const { return i * d + j; }
  static BellIndex from_flat(std::size_t d, std::size_t k) { return {d, k / d, k % d}; }

  auto operator<=>(const BellIndex&) const = default;
};

struct FourierIndex {
  std::size_t d = 2;
  std::size_t idx = 0;

  FourierIndex() = default;
  FourierIndex(std::size_t dim, std::size_t index) : d(dim), idx(index) {
    require_dim(d);
    if (idx >= d)
      throw std::out_of_range("Fourier index " + std::to_string(idx) + " out of range for d=" +
                              std::to_string(d));
  }

  auto operator<=>(const FourierIndex&) const = default;
};

inline UnitaryMatrix shift(std::size_t d) {
  require_dim(d);
  Matrix m(d);
  for (std::size_t k = 0; k < d; ++k) m((k + 1) % d, k) = 1.0;
  return UnitaryMatrix(std::move(m));
}

/// shift(d)^e with the exponent reduced mod d; built directly so it is exact.
inline UnitaryMatrix shift_pow(std::size_t d, unsigned long long e) {
  require_dim(d);
  const std::size_t r = static_cast<std::size_t>(e % d);
  Matrix m(d);
  for (std::size_t k = 0; k < d; ++k) m((k + r) % d, k) = 1.0;
  return UnitaryMatrix(std::move(m));
}

/// |D_idx> = d^{-1/2} sum_k omega^{k*idx} |k>.
inline StateVector fourier_state(FourierIndex f) {
  const std::size_t d = f.d;
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<Complex> a(d);
  for (std::size_t k = 0; k < d; ++k) a[k] = amp * root_of_unity(d, static_cast<long long>(k * f.idx));
  return StateVector({d}, std::move(a));
}

inline StateVector fourier_state(std::size_t d, std::size_t idx) { return fourier_state(FourierIndex{d, idx}); }

inline StateVector bell_state(BellIndex b) {
  const std::size_t d = b.d;
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<Complex> a(d * d);
  for (std::size_t k = 0; k < d; ++k)
    a[k * d + (k + b.j) % d] = amp * root_of_unity(d, static_cast<long long>(b.i * k));
  return StateVector({d, d}, std::move(a));
}

inline StateVector bell_state(std::size_t d, std::size_t i, std::size_t j) { return bell_state(BellIndex{d, i, j}); }

/// All d^2 Bell states in lexicographic (i, j) order.
inline std::vector<StateVector> bell_basis(std::size_t d) {
  require_dim(d);
  std::vector<StateVector> out;
  out.reserve(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) out.push_back(bell_state(d, i, j));
  return out;
}

/// Maximum entrywise deviation of a family's Gram matrix from the identity.
inline double gram_identity_error(const std::vector<StateVector>& family) {
  double worst = 0.0;
  for (std::size_t a = 0; a < family.size(); ++a)
    for (std::size_t b = 0; b < family.size(); ++b) {
      const Complex g = inner(family[a].amplitudes(), family[b].amplitudes());
      worst = std::max(worst, std::abs(g - Complex(a == b ? 1.0 : 0.0)));
    }
  return worst;
}

/// The analyzer targets d >= 3; d = 2 works but is reported as out of scope.
inline bool below_protocol_range(std::size_t d) { return d < 3; }

}  // namespace qswitch
