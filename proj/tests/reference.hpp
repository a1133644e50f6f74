#pragma once

// Independent reference implementations used as test oracles. They share no
// code with the library beyond the Eigen types.

#include <algorithm>
#include <limits>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

namespace dipp::reference {

using Idx = std::vector<std::size_t>;

/// Indices of the k largest |v_i|, ties to the lower index, returned ascending.
inline Idx top_k(const Eigen::VectorXd& v, std::size_t k) {
  Idx order(static_cast<std::size_t>(v.size()));
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(v[static_cast<Eigen::Index>(a)]) > std::abs(v[static_cast<Eigen::Index>(b)]);
  });
  order.resize(k);
  std::sort(order.begin(), order.end());
  return order;
}

inline Idx merge(const Idx& a, const Idx& b) {
  Idx out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline Eigen::MatrixXd columns(const Eigen::MatrixXd& a, const Idx& idx) {
  Eigen::MatrixXd out(a.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = a.col(static_cast<Eigen::Index>(idx[j]));
  return out;
}

/// Full-length least-squares vector via an unpivoted Householder QR.
inline Eigen::VectorXd ls(const Eigen::MatrixXd& a, const Eigen::VectorXd& y, const Idx& idx) {
  const Eigen::MatrixXd sub = columns(a, idx);
  const Eigen::VectorXd coef = sub.householderQr().solve(y);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(a.cols());
  for (std::size_t j = 0; j < idx.size(); ++j) x[static_cast<Eigen::Index>(idx[j])] = coef[static_cast<Eigen::Index>(j)];
  return x;
}

/// Subspace pursuit: initial matched filter, then expand by K, solve, prune to
/// K, stop when the residual grows (keeping the previous support) or repeats.
inline Idx subspace_pursuit(const Eigen::MatrixXd& a, const Eigen::VectorXd& y, std::size_t k,
                            std::size_t max_iter = 50) {
  Idx support = top_k(a.transpose() * y, k);
  Eigen::VectorXd r = y - a * ls(a, y, support);
  for (std::size_t it = 1; it < max_iter; ++it) {
    const Idx candidates = merge(support, top_k(a.transpose() * r, k));
    const Idx next = top_k(ls(a, y, candidates), k);
    const Eigen::VectorXd r_next = y - a * ls(a, y, next);
    if (r_next.norm() > r.norm()) break;
    const bool same = next == support;
    support = next;
    r = r_next;
    if (same) break;
  }
  return support;
}

/// Exhaustive search for the size-k support with the smallest least-squares residual.
inline Idx best_l0_support(const Eigen::MatrixXd& a, const Eigen::VectorXd& y, std::size_t k) {
  const auto n = static_cast<std::size_t>(a.cols());
  Idx c(k);
  std::iota(c.begin(), c.end(), std::size_t{0});
  Idx best;
  double best_r = std::numeric_limits<double>::infinity();
  for (;;) {
    const double r = (y - a * ls(a, y, c)).norm();
    if (r < best_r) {
      best_r = r;
      best = c;
    }
    std::size_t i = k;
    while (i > 0 && c[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++c[i - 1];
    for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
  }
  return best;
}

}  // namespace dipp::reference
