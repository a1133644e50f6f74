#pragma once

#include <cstddef>
#include <functional>
#include <string>

#include "dipp/linalg.hpp"
#include "dipp/support_set.hpp"

namespace dipp {

enum class StopReason {
  residual_increase,  ///< the next iterate had a larger residual and was discarded
  max_iterations,
  fixed_point,        ///< the support estimate repeated, so every later iterate is identical
};

std::string to_string(StopReason r);

/// Every intermediate quantity of one inner iteration.
struct SippIterationState {
  std::size_t l = 0;
  Vector r_prev;
  SupportSet support_prev;   ///< estimate entering the iteration
  Vector estimate_prev;
  SupportSet matched;        ///< top-T of the matched filter A^T r_prev
  SupportSet merged;         ///< matched united with support_prev
  Vector x_tilde;            ///< least squares on `merged`
  SupportSet pruned;         ///< top-T of x_tilde
  SupportSet side_merged;    ///< pruned united with the side information
  Vector x_check;            ///< least squares on `side_merged`
  SupportSet support;        ///< top-T of x_check
  Vector estimate;           ///< least squares on `support`
  Vector r;
  bool accepted = false;
};

struct SippOptions {
  std::size_t max_inner = 50;
  /// Called after every computed iteration, accepted or not.
  std::function<void(const SippIterationState&)> observer;
};

struct SippResult {
  Vector estimate;
  SupportSet support;
  Vector residual;
  double residual_norm = 0.0;
  /// Index of the returned iterate (0 would mean the all-zero start).
  std::size_t iterations_used = 0;
  StopReason stop_reason = StopReason::max_iterations;
};

/// Parallel pursuit with side information.
///
/// `side_info` must be empty or hold exactly `sparsity` indices. With empty
/// side information the iteration is plain subspace pursuit. Each iteration
/// merges the matched-filter picks with the previous support, solves, prunes,
/// merges the result with the side information, solves and prunes again, and
/// finishes with a least-squares fit on the pruned set. The loop ends at the
/// first iterate whose residual grows (the previous iterate is returned), when
/// the support repeats, or after `max_inner` iterations.
SippResult sipp_run(const Vector& y, const Matrix& a, std::size_t sparsity,
                    const SupportSet& side_info, const SippOptions& opts = {});

SippResult sp_run(const Vector& y, const Matrix& a, std::size_t sparsity,
                  const SippOptions& opts = {});

}  // namespace dipp
