#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "dipp/linalg.hpp"
#include "dipp/rng.hpp"
#include "dipp/signal_model.hpp"

namespace dipp::testing {

inline Matrix gaussian_matrix(std::size_t m, std::size_t n, Rng& rng) {
  Matrix a(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) a(i, j) = rng.normal();
  }
  return a;
}

inline Vector gaussian_vector(std::size_t n, Rng& rng) {
  Vector v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = rng.normal();
  return v;
}

inline SupportSet random_support(std::size_t n, std::size_t k, Rng& rng) {
  return draw_subset(n, k, {}, rng);
}

/// Sparse Gaussian vector on a random support.
inline Vector sparse_vector(std::size_t n, const SupportSet& s, Rng& rng) {
  Vector x = Vector::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t i : s) x[static_cast<Eigen::Index>(i)] = rng.normal();
  return x;
}

inline double rel_diff(const Vector& a, const Vector& b) {
  const double scale = std::max({a.norm(), b.norm(), 1e-300});
  return (a - b).norm() / scale;
}

}  // namespace dipp::testing
