#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dipp/linalg.hpp"
#include "dipp/pursuit.hpp"
#include "dipp/rng.hpp"
#include "dipp/support_set.hpp"

namespace dipp {

/// The two published forms of the noise constant c.
enum class CVariant {
  squared,  ///< 4(1 + d^2) / (1 - d)^3
  linear,   ///< 4(1 + d) / (1 - d)^3
};

std::string to_string(CVariant v);
CVariant parse_c_variant(const std::string& text);

struct BoundConstants {
  double delta = 0.0;
  CVariant variant = CVariant::squared;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

/// a = d(1+d)^2/(1-d)^4, b = (1+d)/(2(1-d)) and c per `variant`, for d = delta_3T in [0, 1).
BoundConstants bound_constants(double delta, CVariant variant);

double a_sipp(double delta);

/// The root in (0, 1) of 1 - 5r + 4r^2 - 5r^3 + r^4, i.e. where a_sipp crosses 1.
double convergence_root();

double convergence_polynomial(double r);

enum class IterationMode {
  finite,    ///< stopped after l* iterations; the noise coefficient gains +1
  infinite,  ///< the limit of infinitely many iterations
};

/// One row of coefficients: ||x_{T_hat^c}|| <= support_side*||x_{T_si^c}|| + support_noise*||e||
/// and ||x - x_hat|| <= signal_side*||x_{T_si^c}|| + signal_noise*||e||.
/// The side coefficients are zero for the network bound.
struct BoundReport {
  std::string label;
  std::string kind;  ///< "sipp" or "dipp"
  BoundConstants constants;
  std::optional<double> a_co;
  IterationMode mode = IterationMode::finite;
  /// Contraction factor per iteration: a for the local bound, a_co*b/(1-a) for the network.
  double rate = 0.0;
  bool feasible = false;
  double support_side = 0.0;
  double support_noise = 0.0;
  double signal_side = 0.0;
  double signal_noise = 0.0;
  /// Iteration count ceil(log(||e||/||x||)/log(rate)), present when a ratio was given
  /// and ||e||/||x|| < rate < 1.
  std::optional<std::size_t> iterations;
};

BoundReport sipp_bound(const BoundConstants& k, IterationMode mode,
                       std::optional<double> noise_to_signal = std::nullopt);

BoundReport dipp_bound(const BoundConstants& k, double a_co,
                       std::optional<double> noise_to_signal = std::nullopt);

/// ceil(log(ratio)/log(rate)) clamped to >= 1; empty unless 0 < ratio < rate < 1.
std::optional<std::size_t> iteration_count(double noise_to_signal, double rate);

/// The four worked examples with the constants they were printed with.
std::vector<BoundReport> worked_example_bounds();

/// Column header and rows for bound tables.
std::string bound_csv_header();
std::string bound_csv_row(const BoundReport& r);

/// Largest number of subsets the exhaustive RIC search will visit.
inline constexpr double kRicSubsetBudget = 1e6;

double binomial(std::size_t n, std::size_t k);

/// Exact restricted isometry constant of order s by enumeration of all size-s
/// column subsets. Throws TooLargeError when C(N, s) exceeds the budget.
double ric_exact(const Matrix& a, std::size_t s);

/// Exact constants of orders 0..s_max (entry k holds delta_k; delta_0 = 0).
std::vector<double> ric_profile(const Matrix& a, std::size_t s_max);

/// Lower bound on delta_s from `samples` random subsets.
double ric_sampled_lower_bound(const Matrix& a, std::size_t s, std::size_t samples, Rng& rng);

/// max(lambda_max - 1, 1 - lambda_min) of the Gram matrix of the listed columns.
double spectral_deviation(const Matrix& a, const SupportSet& cols);

/// M rows of a Haar-like random orthogonal N x N matrix with columns rescaled
/// to unit norm. Small instances of this family have exact RIC well below 1.
Matrix certifiable_matrix(std::size_t m, std::size_t n, Rng& rng);

struct InequalityCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool equality = false;  ///< true when the relation is an identity lhs == rhs
  bool holds = false;
  double margin() const { return rhs - lhs; }
};

/// Tolerance used by every check: lhs <= rhs*(1 + 1e-9) + 1e-12 (scaled for identities).
bool within_bound(double lhs, double rhs);

/// Everything one instrumented pursuit exposes to the inequality checks.
struct LemmaInstance {
  Matrix A;
  Vector x;
  Vector e;
  Vector y;
  std::size_t sparsity = 0;
  SupportSet true_support;
  SupportSet side_info;
  std::vector<SippIterationState> iterations;
};

/// Runs sipp with an observer and packages the captured iterations.
LemmaInstance instrument_sipp(const Matrix& a, const Vector& x, const Vector& e,
                              const SupportSet& true_support, std::size_t sparsity,
                              const SupportSet& side_info, std::size_t max_inner = 50);

/// Evaluates the per-iteration inequalities with the exact RIC profile
/// (profile[k] = delta_k, k up to 3T). Every listed inequality is proven for
/// any delta_3T < 1; callers skip instances where that fails.
std::vector<InequalityCheck> lemma_suite(const LemmaInstance& inst, const std::vector<double>& profile);

/// Energy identity for the side-information set and the expansion bound when
/// the energy assumption holds.
std::vector<InequalityCheck> fusion_checks(const Vector& x_true,
                                           const SupportSet& T_hat, const SupportSet& I_hat,
                                           const SupportSet& J_hat, const SupportSet& T_si);

struct ACoMeasure {
  double value = 0.0;
  /// The denominator ||x_{T_hat^c}|| was zero; value is reported as 0.
  bool exact_recovery = false;
};

/// ||x_{T_si^c}|| / ||x_{T_hat^c}||.
ACoMeasure a_co_measure(const Vector& x_true, const SupportSet& T_hat, const SupportSet& T_si);

}  // namespace dipp
