#include "dipp/metrics.hpp"

#include <cmath>

#include "dipp/errors.hpp"

namespace dipp {

double support_distortion(const SupportSet& truth, const SupportSet& estimate) {
  if (truth.empty()) throw InvalidArgument("support_distortion: true support is empty");
  return 1.0 - static_cast<double>(intersection_size(truth, estimate)) /
                   static_cast<double>(truth.size());
}

double asce(const std::vector<std::pair<SupportSet, SupportSet>>& batch) {
  if (batch.empty()) throw InvalidArgument("asce: empty batch");
  double sum = 0.0;
  for (const auto& [t, t_hat] : batch) sum += support_distortion(t, t_hat);
  return sum / static_cast<double>(batch.size());
}

void SrerAccumulator::add(const Vector& x, const Vector& x_hat) {
  if (x.size() != x_hat.size()) throw InvalidArgument("srer: length mismatch");
  add_energies(x.squaredNorm(), (x - x_hat).squaredNorm());
}

void SrerAccumulator::add_energies(double signal, double error) {
  signal_ += signal;
  error_ += error;
  ++count_;
}

void SrerAccumulator::merge(const SrerAccumulator& other) {
  signal_ += other.signal_;
  error_ += other.error_;
  count_ += other.count_;
}

SrerValue SrerAccumulator::value() const {
  if (count_ == 0) throw InvalidArgument("srer: empty batch");
  return srer_from_energies(signal_, error_);
}

SrerValue srer_from_energies(double signal, double error) {
  if (error <= 0.0 || signal >= kExactRatio * error) return {kSrerCapDb, true};
  if (signal <= 0.0) throw InvalidArgument("srer: zero signal energy with nonzero error");
  return {10.0 * std::log10(signal / error), false};
}

SrerValue srer(const std::vector<Vector>& signals, const std::vector<Vector>& estimates) {
  if (signals.size() != estimates.size()) throw InvalidArgument("srer: batch size mismatch");
  SrerAccumulator acc;
  for (std::size_t i = 0; i < signals.size(); ++i) acc.add(signals[i], estimates[i]);
  return acc.value();
}

}  // namespace dipp
