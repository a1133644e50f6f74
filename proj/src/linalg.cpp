#include "dipp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/QR>

#include "dipp/errors.hpp"

namespace dipp {

namespace {

SupportSet top_k(const Vector& x, std::size_t k, const SupportSet* excluded) {
  const auto n = static_cast<std::size_t>(x.size());
  if (!all_finite(x)) throw InvalidArgument("supp_select: non-finite entry");
  std::vector<std::size_t> candidates;
  candidates.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (excluded == nullptr || !excluded->contains(i)) candidates.push_back(i);
  }
  if (k > candidates.size()) {
    throw InvalidArgument("supp_select: k = " + std::to_string(k) + " exceeds " +
                          std::to_string(candidates.size()) + " candidates");
  }
  // larger magnitude first, then lower index
  auto before = [&x](std::size_t a, std::size_t b) {
    const double ma = std::abs(x[static_cast<Eigen::Index>(a)]);
    const double mb = std::abs(x[static_cast<Eigen::Index>(b)]);
    return ma > mb || (ma == mb && a < b);
  };
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(k),
                    candidates.end(), before);
  candidates.resize(k);
  std::sort(candidates.begin(), candidates.end());
  return SupportSet::from_sorted(std::move(candidates));
}

}  // namespace

SupportSet supp_select(const Vector& x, std::size_t k) { return top_k(x, k, nullptr); }

SupportSet supp_select_excluding(const Vector& x, std::size_t k, const SupportSet& excluded) {
  return top_k(x, k, &excluded);
}

void VoteVector::accumulate(const SupportSet& t) {
  t.check_bound(counts_.size(), "vote_accumulate");
  for (std::size_t j : t) ++counts_[j];
}

VoteVector vote_accumulate(VoteVector z, const SupportSet& t) {
  z.accumulate(t);
  return z;
}

Matrix restrict_columns(const Matrix& a, const SupportSet& t) {
  t.check_bound(static_cast<std::size_t>(a.cols()), "restrict_columns");
  Matrix out(a.rows(), static_cast<Eigen::Index>(t.size()));
  for (std::size_t j = 0; j < t.size(); ++j) {
    out.col(static_cast<Eigen::Index>(j)) = a.col(static_cast<Eigen::Index>(t[j]));
  }
  return out;
}

namespace {

Eigen::ColPivHouseholderQR<Matrix> factor_full_rank(const Matrix& a_t, const std::string& stage,
                                                    const SupportSet& t) {
  Eigen::ColPivHouseholderQR<Matrix> qr(a_t.rows(), a_t.cols());
  qr.setThreshold(kRankTolerance);
  qr.compute(a_t);
  if (a_t.cols() > a_t.rows() || qr.rank() < a_t.cols()) {
    throw SingularSystemError(stage, t);
  }
  return qr;
}

}  // namespace

Vector solve_on_support(const Matrix& a, const Vector& y, const SupportSet& t,
                        const std::string& stage) {
  if (y.size() != a.rows()) throw InvalidArgument("least squares: y length does not match rows");
  if (t.empty()) return Vector(0);
  const Matrix a_t = restrict_columns(a, t);
  const auto qr = factor_full_rank(a_t, stage, t);
  return qr.solve(y);
}

Vector least_squares_on_support(const Matrix& a, const Vector& y, const SupportSet& t,
                                const std::string& stage) {
  const Vector coeffs = solve_on_support(a, y, t, stage);
  Vector x = Vector::Zero(a.cols());
  for (std::size_t j = 0; j < t.size(); ++j) {
    x[static_cast<Eigen::Index>(t[j])] = coeffs[static_cast<Eigen::Index>(j)];
  }
  return x;
}

Vector residual_projection(const Vector& y, const Matrix& a_t) {
  if (y.size() != a_t.rows()) throw InvalidArgument("residual_projection: dimension mismatch");
  if (a_t.cols() == 0) return y;
  std::vector<std::size_t> all(static_cast<std::size_t>(a_t.cols()));
  std::iota(all.begin(), all.end(), std::size_t{0});
  const SupportSet cols = SupportSet::from_sorted(std::move(all));
  const auto qr = factor_full_rank(a_t, "residual_projection", cols);
  return y - a_t * qr.solve(y);
}

Matrix pseudo_inverse(const Matrix& a_t) {
  std::vector<std::size_t> all(static_cast<std::size_t>(a_t.cols()));
  std::iota(all.begin(), all.end(), std::size_t{0});
  const SupportSet cols = SupportSet::from_sorted(std::move(all));
  const auto qr = factor_full_rank(a_t, "pseudo_inverse", cols);
  return qr.solve(Matrix::Identity(a_t.rows(), a_t.rows()));
}

Vector gather(const Vector& x, const SupportSet& t) {
  Vector out(static_cast<Eigen::Index>(t.size()));
  for (std::size_t j = 0; j < t.size(); ++j) {
    out[static_cast<Eigen::Index>(j)] = x[static_cast<Eigen::Index>(t[j])];
  }
  return out;
}

Vector restrict_to(const Vector& x, const SupportSet& t) {
  Vector out = Vector::Zero(x.size());
  for (std::size_t j : t) out[static_cast<Eigen::Index>(j)] = x[static_cast<Eigen::Index>(j)];
  return out;
}

double norm_on(const Vector& x, const SupportSet& t) {
  double s = 0.0;
  for (std::size_t j : t) s += x[static_cast<Eigen::Index>(j)] * x[static_cast<Eigen::Index>(j)];
  return std::sqrt(s);
}

double norm_off(const Vector& x, const SupportSet& t) {
  double s = 0.0;
  auto it = t.begin();
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (it != t.end() && static_cast<Eigen::Index>(*it) == i) {
      ++it;
      continue;
    }
    s += x[i] * x[i];
  }
  return std::sqrt(s);
}

bool all_finite(const Vector& x) { return x.allFinite(); }

}  // namespace dipp
