#include "dipp/pursuit.hpp"

#include <spdlog/spdlog.h>

#include "dipp/errors.hpp"

namespace dipp {

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::residual_increase: return "residual_increase";
    case StopReason::max_iterations: return "max_iterations";
    case StopReason::fixed_point: return "fixed_point";
  }
  return "unknown";
}

namespace {

/// Keeps at most M columns of a merged set, ranked by |A^T y|.
SupportSet cap_to_rows(const SupportSet& s, const Vector& score, std::size_t m, const char* stage) {
  if (s.size() <= m) return s;
  spdlog::warn("{}: merged set of {} columns exceeds M = {}; keeping the {} best correlated",
               stage, s.size(), m, m);
  Vector restricted = Vector::Zero(score.size());
  for (std::size_t i : s) {
    // shift by one so that zero-score members still outrank non-members
    restricted[static_cast<Eigen::Index>(i)] = 1.0 + std::abs(score[static_cast<Eigen::Index>(i)]);
  }
  return supp_select(restricted, m);
}

}  // namespace

SippResult sipp_run(const Vector& y, const Matrix& a, std::size_t sparsity,
                    const SupportSet& side_info, const SippOptions& opts) {
  const auto m = static_cast<std::size_t>(a.rows());
  const auto n = static_cast<std::size_t>(a.cols());
  if (static_cast<std::size_t>(y.size()) != m) throw InvalidArgument("sipp: y length does not match A");
  if (sparsity < 1) throw InvalidArgument("sipp: sparsity must be positive");
  if (sparsity > n) throw InvalidArgument("sipp: sparsity exceeds N");
  if (!side_info.empty() && side_info.size() != sparsity) {
    throw InvalidArgument("sipp: side information must be empty or hold exactly T = " +
                          std::to_string(sparsity) + " indices, got " +
                          std::to_string(side_info.size()));
  }
  side_info.check_bound(n, "sipp side information");
  if (opts.max_inner < 1) throw InvalidArgument("sipp: max_inner must be positive");
  if (sparsity > m) throw SingularSystemError("sipp: T exceeds M", SupportSet{});

  const Vector score = a.transpose() * y;

  SippResult best;
  best.estimate = Vector::Zero(static_cast<Eigen::Index>(n));
  best.residual = y;
  best.residual_norm = y.norm();
  best.iterations_used = 0;

  for (std::size_t l = 1; l <= opts.max_inner; ++l) {
    SippIterationState st;
    st.l = l;
    st.r_prev = best.residual;
    st.support_prev = best.support;
    st.estimate_prev = best.estimate;

    st.matched = supp_select(a.transpose() * st.r_prev, sparsity);
    st.merged = cap_to_rows(set_union(st.matched, st.support_prev), score, m, "sipp merge");
    st.x_tilde = least_squares_on_support(a, y, st.merged, "sipp merged estimate");
    st.pruned = supp_select(st.x_tilde, sparsity);

    st.side_merged = cap_to_rows(set_union(st.pruned, side_info), score, m, "sipp side merge");
    st.x_check = st.side_merged == st.merged
                     ? st.x_tilde
                     : least_squares_on_support(a, y, st.side_merged, "sipp side-information estimate");
    st.support = supp_select(st.x_check, sparsity);
    st.estimate = st.support == st.side_merged
                      ? st.x_check
                      : least_squares_on_support(a, y, st.support, "sipp final estimate");
    st.r = y - a * st.estimate;

    const double norm = st.r.norm();
    st.accepted = norm <= best.residual_norm;
    if (opts.observer) opts.observer(st);
    if (!st.accepted) {
      best.stop_reason = StopReason::residual_increase;
      return best;
    }
    const bool repeated = l > 1 && st.support == best.support;
    best.estimate = std::move(st.estimate);
    best.support = std::move(st.support);
    best.residual = std::move(st.r);
    best.residual_norm = norm;
    best.iterations_used = l;
    if (repeated) {
      best.stop_reason = StopReason::fixed_point;
      return best;
    }
  }
  best.stop_reason = StopReason::max_iterations;
  return best;
}

SippResult sp_run(const Vector& y, const Matrix& a, std::size_t sparsity, const SippOptions& opts) {
  return sipp_run(y, a, sparsity, SupportSet{}, opts);
}

}  // namespace dipp
