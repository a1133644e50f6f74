#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "dipp/linalg.hpp"
#include "dipp/support_set.hpp"

namespace dipp {

/// Reported SRER when the reconstruction error vanishes at machine precision.
inline constexpr double kSrerCapDb = 300.0;
/// Signal-to-error ratios at or above this are treated as exact recovery.
inline constexpr double kExactRatio = 1e20;

/// 1 - |T ∩ T_hat| / |T|.
double support_distortion(const SupportSet& truth, const SupportSet& estimate);

/// Mean support distortion over a batch of (truth, estimate) pairs.
double asce(const std::vector<std::pair<SupportSet, SupportSet>>& batch);

struct SrerValue {
  double db = 0.0;
  bool capped = false;
};

/// SRER of summed signal energy over summed error energy.
///
/// Accumulators merge by adding their sums, so a batch split in parts gives
/// the same value as the whole batch.
class SrerAccumulator {
 public:
  void add(const Vector& x, const Vector& x_hat);
  void add_energies(double signal, double error);
  void merge(const SrerAccumulator& other);

  double signal_energy() const noexcept { return signal_; }
  double error_energy() const noexcept { return error_; }
  std::size_t count() const noexcept { return count_; }

  /// Throws InvalidArgument on an empty accumulator.
  SrerValue value() const;

 private:
  double signal_ = 0.0;
  double error_ = 0.0;
  std::size_t count_ = 0;
};

SrerValue srer(const std::vector<Vector>& signals, const std::vector<Vector>& estimates);

/// SRER in dB from energies, capped.
SrerValue srer_from_energies(double signal, double error);

}  // namespace dipp
