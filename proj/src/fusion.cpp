#include "dipp/fusion.hpp"

#include <algorithm>

#include "dipp/errors.hpp"

namespace dipp {

std::string to_string(TruncationRule r) {
  return r == TruncationRule::lexicographic ? "lexicographic" : "vote_count";
}

TruncationRule parse_truncation_rule(const std::string& text) {
  if (text == "lexicographic") return TruncationRule::lexicographic;
  if (text == "vote_count") return TruncationRule::vote_count;
  throw InvalidArgument("unknown truncation rule '" + text + "'");
}

SupportSet consensus(const std::vector<SupportSet>& neighbor_supports, const SupportSet& own_support,
                     std::size_t sparsity, std::size_t n, TruncationRule rule) {
  VoteVector votes(n);
  votes.accumulate(own_support);
  for (const auto& s : neighbor_supports) votes.accumulate(s);

  std::vector<std::size_t> qualified;
  for (std::size_t i = 0; i < n; ++i) {
    if (votes[i] >= 2) qualified.push_back(i);
  }
  if (qualified.size() > sparsity) {
    if (rule == TruncationRule::vote_count) {
      std::stable_sort(qualified.begin(), qualified.end(),
                       [&votes](std::size_t a, std::size_t b) { return votes[a] > votes[b]; });
      qualified.resize(sparsity);
      std::sort(qualified.begin(), qualified.end());
    } else {
      qualified.resize(sparsity);
    }
  }
  return SupportSet::from_sorted(std::move(qualified));
}

FusionOutput expansion(const SupportSet& J_hat, const Vector& x_prev, std::size_t sparsity) {
  if (J_hat.size() > sparsity) {
    throw InvalidArgument("expansion: |J_hat| = " + std::to_string(J_hat.size()) +
                          " exceeds T = " + std::to_string(sparsity));
  }
  J_hat.check_bound(static_cast<std::size_t>(x_prev.size()), "expansion");
  FusionOutput out;
  out.J_hat = J_hat;
  // Ranking the entries outside J_hat is the same as zeroing J_hat first,
  // except that exact zeros elsewhere can no longer tie with J_hat itself.
  out.I_hat = supp_select_excluding(x_prev, sparsity - J_hat.size(), J_hat);
  out.T_si = set_union(out.I_hat, out.J_hat);
  return out;
}

AssumptionReport assumption_checks(const Vector& x_true, const SupportSet& true_support,
                                   const SupportSet& T_hat, const SupportSet& I_hat,
                                   const SupportSet& J_hat) {
  AssumptionReport r;
  const double common = norm_on(x_true, J_hat);
  const double discarded = norm_on(x_true, set_difference(T_hat, I_hat));
  r.energy_common = common * common;
  r.energy_discarded = discarded * discarded;
  r.assumption3 = r.energy_common >= r.energy_discarded;
  if (!T_hat.empty()) {
    r.t_hat_precision = static_cast<double>(intersection_size(T_hat, true_support)) /
                        static_cast<double>(T_hat.size());
  }
  if (!J_hat.empty()) {
    r.j_hat_precision = static_cast<double>(intersection_size(J_hat, true_support)) /
                        static_cast<double>(J_hat.size());
  }
  r.assumption2 = !r.j_hat_precision || *r.j_hat_precision >= r.t_hat_precision;
  return r;
}

}  // namespace dipp
