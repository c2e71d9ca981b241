#include "discthin/sparse.hpp"

#include <algorithm>
#include <cmath>

namespace discthin {

SparseVector::SparseVector(std::initializer_list<Entry> entries)
    : entries_(entries) {
  canonicalize();
}

SparseVector::SparseVector(std::vector<Entry> entries)
    : entries_(std::move(entries)) {
  canonicalize();
}

SparseVector SparseVector::indicator(std::span<const CoordinateId> ids) {
  std::vector<Entry> entries;
  entries.reserve(ids.size());
  for (CoordinateId id : ids) entries.emplace_back(id, 1.0);
  return SparseVector(std::move(entries));
}

void SparseVector::canonicalize() {
  std::sort(entries_.begin(), entries_.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < entries_.size();) {
    CoordinateId id = entries_[i].first;
    double sum = 0.0;
    for (; i < entries_.size() && entries_[i].first == id; ++i) sum += entries_[i].second;
    if (sum != 0.0) entries_[out++] = {id, sum};
  }
  entries_.resize(out);
}

double SparseVector::l1_norm() const noexcept {
  double s = 0.0;
  for (const auto& [id, v] : entries_) s += std::fabs(v);
  return s;
}

double SparseVector::linf_norm() const noexcept {
  double m = 0.0;
  for (const auto& [id, v] : entries_) m = std::max(m, std::fabs(v));
  return m;
}

double SparseVector::at(CoordinateId id) const noexcept {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), id,
                             [](const Entry& e, CoordinateId c) { return e.first < c; });
  return (it != entries_.end() && it->first == id) ? it->second : 0.0;
}

}  // namespace discthin
