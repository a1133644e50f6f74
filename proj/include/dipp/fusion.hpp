#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dipp/linalg.hpp"
#include "dipp/support_set.hpp"

namespace dipp {

/// How consensus trims a candidate set that is larger than T.
enum class TruncationRule {
  lexicographic,  ///< keep the lowest indices
  vote_count,     ///< keep the most voted indices, lowest index first among equals
};

std::string to_string(TruncationRule r);
TruncationRule parse_truncation_rule(const std::string& text);

/// Indices holding at least two votes, where the own support and every
/// neighbour support each cast one vote per index.
SupportSet consensus(const std::vector<SupportSet>& neighbor_supports, const SupportSet& own_support,
                     std::size_t sparsity, std::size_t n,
                     TruncationRule rule = TruncationRule::lexicographic);

struct FusionOutput {
  SupportSet J_hat;
  SupportSet I_hat;
  SupportSet T_si;
};

/// Completes J_hat to a size-T side-information set with the strongest
/// entries of the previous estimate outside J_hat.
FusionOutput expansion(const SupportSet& J_hat, const Vector& x_prev, std::size_t sparsity);

struct AssumptionReport {
  double energy_common = 0.0;     ///< ||x_J_hat||^2
  double energy_discarded = 0.0;  ///< ||x_{T_hat \ I_hat}||^2
  bool assumption3 = false;       ///< energy_common >= energy_discarded
  std::optional<double> j_hat_precision;  ///< empty when J_hat is empty
  double t_hat_precision = 0.0;
  /// J_hat at least as reliable as T_hat; true when J_hat is empty.
  bool assumption2 = false;
};

AssumptionReport assumption_checks(const Vector& x_true, const SupportSet& true_support,
                                   const SupportSet& T_hat, const SupportSet& I_hat,
                                   const SupportSet& J_hat);

}  // namespace dipp
