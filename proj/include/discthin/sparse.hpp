#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace discthin {

using CoordinateId = std::uint64_t;

/// Finite map coordinate -> value, stored by its nonzero entries.
///
/// Entries are kept sorted by coordinate with no duplicates and no explicit
/// zeros; every constructor canonicalizes.
class SparseVector {
 public:
  using Entry = std::pair<CoordinateId, double>;

  SparseVector() = default;
  SparseVector(std::initializer_list<Entry> entries);
  explicit SparseVector(std::vector<Entry> entries);

  /// All-ones vector on the given coordinates (duplicates add up).
  static SparseVector indicator(std::span<const CoordinateId> ids);
  static SparseVector unit(CoordinateId id) { return SparseVector{{id, 1.0}}; }

  std::span<const Entry> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  double l1_norm() const noexcept;
  double linf_norm() const noexcept;
  /// Value at `id`, 0 if absent.
  double at(CoordinateId id) const noexcept;

  friend bool operator==(const SparseVector&, const SparseVector&) = default;

 private:
  void canonicalize();

  std::vector<Entry> entries_;
};

}  // namespace discthin
