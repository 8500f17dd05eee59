#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qswitch/linalg.hpp"

namespace qswitch {

/// Singular values (descending) of the rows x cols row-major reshaping of `amps`.
/// For a bipartite pure state these are its Schmidt coefficients.
inline std::vector<double> schmidt_values(std::span<const Complex> amps, std::size_t rows, std::size_t cols) {
  if (rows * cols != amps.size()) throw ShapeError("schmidt_values: reshape does not match amplitude count");
  Eigen::MatrixXcd m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = amps[r * cols + c];
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  return {sv.data(), sv.data() + sv.size()};
}

inline std::vector<double> schmidt_values(const StateVector& v, std::size_t split) {
  const auto& dims = v.dims();
  if (split == 0 || split >= dims.size()) throw ShapeError("schmidt_values: split must separate two nonempty parts");
  const std::size_t rows = StateVector::total_dim(std::span(dims).first(split));
  return schmidt_values(v.amplitudes(), rows, v.size() / rows);
}

}  // namespace qswitch
