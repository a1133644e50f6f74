#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace dipp {

/// Strictly increasing list of 0-based column indices.
///
/// Holds every index set the pursuit works with (true supports, estimates,
/// side information, merged candidate sets). The upper bound N is not stored;
/// operations that know N validate against it.
class SupportSet {
 public:
  using const_iterator = std::vector<std::size_t>::const_iterator;

  SupportSet() = default;
  SupportSet(std::initializer_list<std::size_t> indices);
  /// Sorts the input; throws InvalidArgument on duplicates.
  explicit SupportSet(std::vector<std::size_t> indices);

  /// Trusted constructor for already sorted, duplicate-free input.
  static SupportSet from_sorted(std::vector<std::size_t> indices);

  std::size_t size() const noexcept { return indices_.size(); }
  bool empty() const noexcept { return indices_.empty(); }
  const_iterator begin() const noexcept { return indices_.begin(); }
  const_iterator end() const noexcept { return indices_.end(); }
  std::size_t operator[](std::size_t i) const { return indices_[i]; }
  const std::vector<std::size_t>& indices() const noexcept { return indices_; }

  bool contains(std::size_t index) const;
  /// Largest index, or throws if empty.
  std::size_t max() const;
  /// Throws InvalidArgument unless every index is below `n`.
  void check_bound(std::size_t n, const char* what) const;

  std::string to_string() const;

  friend bool operator==(const SupportSet&, const SupportSet&) = default;

 private:
  std::vector<std::size_t> indices_;
};

SupportSet set_union(const SupportSet& a, const SupportSet& b);
SupportSet set_intersection(const SupportSet& a, const SupportSet& b);
SupportSet set_difference(const SupportSet& a, const SupportSet& b);
/// Indices of {0..n-1} not in `s`.
SupportSet set_complement(const SupportSet& s, std::size_t n);
std::size_t intersection_size(const SupportSet& a, const SupportSet& b);

}  // namespace dipp
