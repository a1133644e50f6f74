#include "dipp/support_set.hpp"

#include <algorithm>
#include <iterator>
#include <sstream>

#include "dipp/errors.hpp"

namespace dipp {

SupportSet::SupportSet(std::initializer_list<std::size_t> indices)
    : SupportSet(std::vector<std::size_t>(indices)) {}

SupportSet::SupportSet(std::vector<std::size_t> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end()) {
    throw InvalidArgument("support set contains duplicate indices");
  }
}

SupportSet SupportSet::from_sorted(std::vector<std::size_t> indices) {
  SupportSet s;
  s.indices_ = std::move(indices);
  return s;
}

bool SupportSet::contains(std::size_t index) const {
  return std::binary_search(indices_.begin(), indices_.end(), index);
}

std::size_t SupportSet::max() const {
  if (indices_.empty()) throw InvalidArgument("max() of an empty support set");
  return indices_.back();
}

void SupportSet::check_bound(std::size_t n, const char* what) const {
  if (!indices_.empty() && indices_.back() >= n) {
    std::ostringstream msg;
    msg << what << ": index " << indices_.back() << " out of range for dimension " << n;
    throw InvalidArgument(msg.str());
  }
}

std::string SupportSet::to_string() const {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (i) out << ',';
    out << indices_[i];
  }
  out << '}';
  return out.str();
}

SupportSet set_union(const SupportSet& a, const SupportSet& b) {
  std::vector<std::size_t> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return SupportSet::from_sorted(std::move(out));
}

SupportSet set_intersection(const SupportSet& a, const SupportSet& b) {
  std::vector<std::size_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return SupportSet::from_sorted(std::move(out));
}

SupportSet set_difference(const SupportSet& a, const SupportSet& b) {
  std::vector<std::size_t> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return SupportSet::from_sorted(std::move(out));
}

SupportSet set_complement(const SupportSet& s, std::size_t n) {
  std::vector<std::size_t> out;
  out.reserve(n >= s.size() ? n - s.size() : 0);
  auto it = s.begin();
  for (std::size_t i = 0; i < n; ++i) {
    if (it != s.end() && *it == i) {
      ++it;
    } else {
      out.push_back(i);
    }
  }
  return SupportSet::from_sorted(std::move(out));
}

std::size_t intersection_size(const SupportSet& a, const SupportSet& b) {
  std::size_t count = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++count;
      ++ia;
      ++ib;
    }
  }
  return count;
}

SingularSystemError::SingularSystemError(std::string stage, SupportSet support)
    : std::runtime_error("rank-deficient least-squares system at " + stage + " on support " +
                         support.to_string()),
      stage_(std::move(stage)),
      support_(std::move(support)) {}

}  // namespace dipp
