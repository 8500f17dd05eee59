#pragma once

// Dense complex linear algebra for small qudit registers.
//
// Storage is row-major everywhere. A StateVector carries the ordered list of
// subsystem dimensions; amplitude index (a0, a1, ..., an) lives at
// ((a0 * d1 + a1) * d2 + ...) with the first subsystem most significant.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qswitch {

using Complex = std::complex<double>;

inline constexpr double kTolNorm = 1e-12;
inline constexpr double kTolUnitary = 1e-10;
inline constexpr double kTolState = 1e-12;

/// Largest qudit dimension for which a dense d^3 x d^3 switch operator is built.
inline constexpr std::size_t kDenseDimCap = 12;
/// Largest square-matrix side any kron product may produce.
inline constexpr std::size_t kMatrixSideCap = kDenseDimCap * kDenseDimCap * kDenseDimCap;

class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SizeLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

class NormError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// exp(2*pi*i*k/d), with k reduced mod d so that exact integer phases stay exact.
inline Complex root_of_unity(std::size_t d, long long k) {
  const long long dd = static_cast<long long>(d);
  long long r = k % dd;
  if (r < 0) r += dd;
  if (r == 0) return {1.0, 0.0};
  // Quarter turns are exact; keeps d = 2, 4 free of 1e-17 noise.
  if (4 * r == dd) return {0.0, 1.0};
  if (2 * r == dd) return {-1.0, 0.0};
  if (4 * r == 3 * dd) return {0.0, -1.0};
  const double theta = 2.0 * M_PI * static_cast<double>(r) / static_cast<double>(dd);
  return std::polar(1.0, theta);
}

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {}
  Matrix(std::size_t dim, std::vector<Complex> entries) : dim_(dim), entries_(std::move(entries)) {
    if (entries_.size() != dim_ * dim_) throw ShapeError("matrix entry count does not match dim*dim");
    if (!std::all_of(entries_.begin(), entries_.end(), is_finite))
      throw std::domain_error("matrix entries must be finite");
  }

  static Matrix identity(std::size_t dim) {
    Matrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t dim() const { return dim_; }
  Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * dim_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return entries_[r * dim_ + c]; }
  std::span<const Complex> entries() const { return entries_; }

  Matrix adjoint() const {
    Matrix out(dim_);
    for (std::size_t r = 0; r < dim_; ++r)
      for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
  }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> entries_;
};

/// Product a*b. Zero entries of `a` are skipped, which makes products of
/// permutation-like operators O(n^2) instead of O(n^3).
inline Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.dim() != b.dim()) throw ShapeError("multiply: dimension mismatch");
  const std::size_t n = a.dim();
  Matrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

/// Kronecker product: result[p*b.dim + q, r*b.dim + s] = a[p, r] * b[q, s].
inline Matrix kron(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.dim() * b.dim();
  if (a.dim() != 0 && n / a.dim() != b.dim()) throw SizeLimitError("kron: dimension overflow");
  if (n > kMatrixSideCap)
    throw SizeLimitError("kron: result side " + std::to_string(n) + " exceeds cap " +
                         std::to_string(kMatrixSideCap));
  Matrix out(n);
  const std::size_t nb = b.dim();
  for (std::size_t p = 0; p < a.dim(); ++p)
    for (std::size_t r = 0; r < a.dim(); ++r) {
      const Complex apr = a(p, r);
      if (apr == Complex{}) continue;
      for (std::size_t q = 0; q < nb; ++q)
        for (std::size_t s = 0; s < nb; ++s) out(p * nb + q, r * nb + s) = apr * b(q, s);
    }
  return out;
}

/// m^e by repeated squaring; m^0 is the identity.
inline Matrix mat_pow(const Matrix& m, unsigned long long e) {
  Matrix result = Matrix::identity(m.dim());
  Matrix base = m;
  while (e > 0) {
    if (e & 1ULL) result = multiply(result, base);
    e >>= 1;
    if (e > 0) base = multiply(base, base);
  }
  return result;
}

inline double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw ShapeError("max_abs_diff: size mismatch");
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
  return worst;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.dim() != b.dim()) throw ShapeError("max_abs_diff: dimension mismatch");
  return max_abs_diff(a.entries(), b.entries());
}

/// ||M^dagger M - I||_max, the unitarity certificate.
inline double unitarity_error(const Matrix& m) {
  return max_abs_diff(multiply(m.adjoint(), m), Matrix::identity(m.dim()));
}

inline bool is_unitary(const Matrix& m, double tol = kTolUnitary) { return unitarity_error(m) <= tol; }

/// A matrix that carries a passed unitarity certificate.
class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(Matrix m, double tol = kTolUnitary) : m_(std::move(m)) {
    const double err = unitarity_error(m_);
    if (!(err <= tol))
      throw std::domain_error("matrix fails unitarity certificate (error " + std::to_string(err) + ")");
  }

  std::size_t dim() const { return m_.dim(); }
  const Complex& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }
  const Matrix& matrix() const { return m_; }
  operator const Matrix&() const { return m_; }

  bool operator==(const UnitaryMatrix&) const = default;

 private:
  Matrix m_;
};

inline UnitaryMatrix kron(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  return UnitaryMatrix(kron(a.matrix(), b.matrix()));
}

inline UnitaryMatrix mat_pow(const UnitaryMatrix& m, unsigned long long e) {
  return UnitaryMatrix(mat_pow(m.matrix(), e));
}

inline UnitaryMatrix multiply(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  return UnitaryMatrix(multiply(a.matrix(), b.matrix()));
}

inline double norm(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

inline Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw ShapeError("inner: size mismatch");
  Complex s{};
  for (std::size_t k = 0; k < a.size(); ++k) s += std::conj(a[k]) * b[k];
  return s;
}

class StateVector {
 public:
  StateVector(std::vector<std::size_t> dims, std::vector<Complex> amplitudes, double tol = kTolNorm)
      : dims_(std::move(dims)), amps_(std::move(amplitudes)) {
    if (dims_.empty()) throw ShapeError("state needs at least one subsystem");
    for (auto d : dims_)
      if (d < 2) throw ShapeError("subsystem dimensions must be >= 2");
    if (amps_.size() != total_dim(dims_)) throw ShapeError("amplitude count does not match dims");
    if (!std::all_of(amps_.begin(), amps_.end(), is_finite))
      throw std::domain_error("amplitudes must be finite");
    const double n = norm(amps_);
    if (std::abs(n - 1.0) > tol) throw NormError("state is not normalized (norm " + std::to_string(n) + ")");
  }

  /// Rescales arbitrary nonzero amplitudes to unit norm.
  static StateVector normalized(std::vector<std::size_t> dims, std::vector<Complex> amplitudes) {
    const double n = norm(amplitudes);
    if (!(n > 0.0)) throw NormError("cannot normalize a zero vector");
    for (auto& z : amplitudes) z /= n;
    return StateVector(std::move(dims), std::move(amplitudes));
  }

  static StateVector basis(std::vector<std::size_t> dims, std::size_t index) {
    std::vector<Complex> amps(total_dim(dims));
    if (index >= amps.size()) throw std::out_of_range("basis index out of range");
    amps[index] = 1.0;
    return StateVector(std::move(dims), std::move(amps));
  }

  static std::size_t total_dim(std::span<const std::size_t> dims) {
    return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>{});
  }

  const std::vector<std::size_t>& dims() const { return dims_; }
  std::span<const Complex> amplitudes() const { return amps_; }
  std::size_t size() const { return amps_.size(); }
  const Complex& operator[](std::size_t k) const { return amps_[k]; }

  bool operator==(const StateVector&) const = default;

 private:
  std::vector<std::size_t> dims_;
  std::vector<Complex> amps_;
};

inline StateVector tensor(const StateVector& a, const StateVector& b) {
  std::vector<std::size_t> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  std::vector<Complex> amps;
  amps.reserve(a.size() * b.size());
  for (const auto& x : a.amplitudes())
    for (const auto& y : b.amplitudes()) amps.push_back(x * y);
  return StateVector(std::move(dims), std::move(amps));
}

/// Applies `m` to one tensor factor of `v`, leaving the others untouched.
inline std::vector<Complex> apply_raw(const Matrix& m, std::span<const Complex> amps,
                                      std::span<const std::size_t> dims, std::size_t subsystem) {
  if (subsystem >= dims.size()) throw std::out_of_range("apply: subsystem index out of range");
  const std::size_t d = dims[subsystem];
  if (m.dim() != d) throw ShapeError("apply: operator dim does not match subsystem dim");
  std::size_t inner_stride = 1;
  for (std::size_t k = subsystem + 1; k < dims.size(); ++k) inner_stride *= dims[k];
  const std::size_t outer = amps.size() / (d * inner_stride);

  std::vector<Complex> out(amps.size());
  for (std::size_t o = 0; o < outer; ++o) {
    const std::size_t base = o * d * inner_stride;
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) {
        const Complex mrc = m(r, c);
        if (mrc == Complex{}) continue;
        for (std::size_t t = 0; t < inner_stride; ++t)
          out[base + r * inner_stride + t] += mrc * amps[base + c * inner_stride + t];
      }
  }
  return out;
}

inline StateVector apply(const UnitaryMatrix& m, const StateVector& v, std::size_t subsystem) {
  return StateVector(v.dims(), apply_raw(m.matrix(), v.amplitudes(), v.dims(), subsystem));
}

/// Full-register matrix-vector product.
inline std::vector<Complex> matvec(const Matrix& m, std::span<const Complex> v) {
  if (m.dim() != v.size()) throw ShapeError("matvec: size mismatch");
  std::vector<Complex> out(v.size());
  for (std::size_t r = 0; r < m.dim(); ++r) {
    Complex s{};
    for (std::size_t c = 0; c < m.dim(); ++c) s += m(r, c) * v[c];
    out[r] = s;
  }
  return out;
}

inline double fidelity(const StateVector& a, const StateVector& b) {
  if (a.dims() != b.dims()) throw ShapeError("fidelity: shape mismatch");
  return std::min(1.0, std::norm(inner(a.amplitudes(), b.amplitudes())));
}

}  // namespace qswitch
