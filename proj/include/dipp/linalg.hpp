#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "dipp/support_set.hpp"

// Dense linear algebra plus the three algorithmic operators every pursuit
// step is built from: top-k support selection, vote accumulation and
// least-squares projection onto a column subset.
//
// All indices are 0-based.

namespace dipp {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Relative pivot threshold below which a restricted system counts as singular.
inline constexpr double kRankTolerance = 1e-10;

/// Indices of the k largest-magnitude entries of x.
///
/// Always returns exactly k indices, even when fewer than k entries are
/// nonzero. Ties go to the lower index.
SupportSet supp_select(const Vector& x, std::size_t k);

/// Same ranking as supp_select but never picks an index in `excluded`.
SupportSet supp_select_excluding(const Vector& x, std::size_t k, const SupportSet& excluded);

/// Length-N vote counter used by consensus.
class VoteVector {
 public:
  explicit VoteVector(std::size_t n) : counts_(n, 0) {}

  std::size_t size() const noexcept { return counts_.size(); }
  std::size_t operator[](std::size_t i) const { return counts_.at(i); }
  const std::vector<std::size_t>& counts() const noexcept { return counts_; }

  /// counts[j] += 1 for every j in t.
  void accumulate(const SupportSet& t);

  friend bool operator==(const VoteVector&, const VoteVector&) = default;

 private:
  std::vector<std::size_t> counts_;
};

VoteVector vote_accumulate(VoteVector z, const SupportSet& t);

/// Copy of the columns of a listed in t, in index order.
Matrix restrict_columns(const Matrix& a, const SupportSet& t);

/// Coefficients u minimising ||y - A_T u|| (length |T|).
///
/// Column-pivoted Householder QR; throws SingularSystemError(stage, T) if a
/// pivot falls below kRankTolerance times the leading pivot.
Vector solve_on_support(const Matrix& a, const Vector& y, const SupportSet& t,
                        const std::string& stage = "least_squares");

/// Length-N vector holding the least-squares coefficients on T and zeros elsewhere.
Vector least_squares_on_support(const Matrix& a, const Vector& y, const SupportSet& t,
                                const std::string& stage = "least_squares");

/// y - A_T A_T^+ y, orthogonal to every column of a_t.
Vector residual_projection(const Vector& y, const Matrix& a_t);

/// Moore-Penrose pseudo-inverse of a full-column-rank matrix.
Matrix pseudo_inverse(const Matrix& a_t);

/// Entries of x on t (compact, length |t|).
Vector gather(const Vector& x, const SupportSet& t);
/// Zero-padded copy of x keeping only the entries on t.
Vector restrict_to(const Vector& x, const SupportSet& t);
/// ||x_t||
double norm_on(const Vector& x, const SupportSet& t);
/// ||x_{t^c}||
double norm_off(const Vector& x, const SupportSet& t);

bool all_finite(const Vector& x);

}  // namespace dipp
