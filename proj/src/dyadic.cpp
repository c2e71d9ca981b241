#include "discthin/dyadic.hpp"

#include <bit>
#include <cmath>
#include <sstream>

namespace discthin {
namespace {

void check_unit(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    std::ostringstream msg;
    msg << "coordinate " << x << " outside [0, 1]";
    throw Error(ErrorCode::out_of_range, msg.str());
  }
}

void check_dims(std::span<const double> p, const Resolution& res) {
  if (p.size() != static_cast<std::size_t>(res.dims()))
    throw Error(ErrorCode::dimension_mismatch, "point dimension does not match resolution");
}

// floor(x * 2^level), with x = 1 mapped to the last offset.
std::uint64_t offset_at(double x, int level) {
  const std::uint64_t cells = std::uint64_t{1} << level;
  auto j = static_cast<std::uint64_t>(std::ldexp(x, level));
  return j >= cells ? cells - 1 : j;
}

}  // namespace

Resolution::Resolution(int levels, int dims) : levels_(levels), dims_(dims) {
  if (levels < 1 || dims < 1) throw Error(ErrorCode::invalid_argument, "resolution needs L >= 1 and d >= 1");
  if (levels > 62) throw Error(ErrorCode::size_guard, "resolution L too large");
  const std::uint64_t radix = intervals_per_axis();
  constexpr std::uint64_t limit = std::uint64_t{1} << 63;
  box_count_ = 1;
  boxes_per_point_ = 1;
  for (int k = 0; k < dims; ++k) {
    if (box_count_ > limit / radix) throw Error(ErrorCode::size_guard, "(2^L - 1)^d does not fit in 63 bits");
    box_count_ *= radix;
    boxes_per_point_ *= static_cast<std::uint64_t>(levels);
  }
}

int default_levels(std::uint64_t n) noexcept {
  if (n <= 2) return 1;
  return static_cast<int>(std::bit_width(n - 1));
}

DyadicInterval DyadicInterval::from_flat(std::uint64_t flat) {
  const int level = static_cast<int>(std::bit_width(flat + 1)) - 1;
  return {level, flat + 1 - (std::uint64_t{1} << level)};
}

std::uint64_t DyadicBox::flat(const Resolution& res) const {
  if (parts.size() != static_cast<std::size_t>(res.dims()))
    throw Error(ErrorCode::dimension_mismatch, "box dimension does not match resolution");
  const std::uint64_t radix = res.intervals_per_axis();
  std::uint64_t id = 0;
  for (const auto& part : parts) {
    if (part.level < 0 || part.level >= res.levels() || part.offset >= (std::uint64_t{1} << part.level))
      throw Error(ErrorCode::out_of_range, "dyadic interval outside resolution");
    id = id * radix + part.flat();
  }
  return id;
}

DyadicBox DyadicBox::from_flat(std::uint64_t id, const Resolution& res) {
  if (id >= res.box_count()) throw Error(ErrorCode::out_of_range, "dyadic box id out of range");
  const std::uint64_t radix = res.intervals_per_axis();
  DyadicBox box;
  box.parts.resize(static_cast<std::size_t>(res.dims()));
  for (auto k = box.parts.size(); k-- > 0;) {
    box.parts[k] = DyadicInterval::from_flat(id % radix);
    id /= radix;
  }
  return box;
}

std::string DyadicBox::to_string() const {
  std::ostringstream out;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (k) out << '|';
    out << parts[k].level << ':' << parts[k].offset;
  }
  return out.str();
}

std::vector<DyadicInterval> encode_coordinate(double x, int levels) {
  check_unit(x);
  if (levels < 1) throw Error(ErrorCode::invalid_argument, "L must be >= 1");
  std::vector<DyadicInterval> out;
  out.reserve(static_cast<std::size_t>(levels));
  for (int l = 0; l < levels; ++l) out.push_back({l, offset_at(x, l)});
  return out;
}

void encode_point_ids(std::span<const double> p, const Resolution& res,
                      std::vector<CoordinateId>& out) {
  check_dims(p, res);
  const int levels = res.levels();
  const std::uint64_t radix = res.intervals_per_axis();
  // Mixed-radix Cartesian product, axis 0 most significant. Expanded in place
  // back to front: slot idx is read before any write lands at or below it.
  const auto fanout = static_cast<std::size_t>(levels);
  out.resize(static_cast<std::size_t>(res.boxes_per_point()));
  out[0] = 0;
  std::size_t filled = 1;
  for (double x : p) {
    check_unit(x);
    for (std::size_t idx = filled; idx-- > 0;) {
      const CoordinateId prefix = out[idx] * radix;
      for (int l = levels - 1; l >= 0; --l) {
        out[idx * fanout + static_cast<std::size_t>(l)] =
            prefix + ((std::uint64_t{1} << l) - 1) + offset_at(x, l);
      }
    }
    filled *= fanout;
  }
}

SparseVector encode_point(std::span<const double> p, const Resolution& res) {
  std::vector<CoordinateId> ids;
  encode_point_ids(p, res, ids);
  return SparseVector::indicator(ids);
}

std::vector<std::pair<double, double>> box_extent(const DyadicBox& box) {
  std::vector<std::pair<double, double>> out;
  out.reserve(box.parts.size());
  for (const auto& part : box.parts) {
    out.emplace_back(std::ldexp(static_cast<double>(part.offset), -part.level),
                     std::ldexp(static_cast<double>(part.offset + 1), -part.level));
  }
  return out;
}

bool box_contains(const DyadicBox& box, std::span<const double> p) {
  if (p.size() != box.parts.size()) throw Error(ErrorCode::dimension_mismatch, "dimension mismatch");
  for (std::size_t k = 0; k < p.size(); ++k) {
    check_unit(p[k]);
    if (offset_at(p[k], box.parts[k].level) != box.parts[k].offset) return false;
  }
  return true;
}

std::vector<DyadicBox> lattice_partition(std::span<const std::uint64_t> upper_offsets,
                                         const Resolution& res) {
  if (upper_offsets.size() != static_cast<std::size_t>(res.dims()))
    throw Error(ErrorCode::dimension_mismatch, "lattice box dimension does not match resolution");
  const int top = res.levels() - 1;
  // Greedy binary decomposition of [0, c) with c = j + 1 slabs: each set bit b of
  // c, high to low, contributes one interval of 2^b slabs at level top - b.
  std::vector<std::vector<DyadicInterval>> axes;
  for (std::uint64_t j : upper_offsets) {
    if (j >= res.slabs_per_axis()) throw Error(ErrorCode::out_of_range, "lattice offset out of range");
    const std::uint64_t count = j + 1;
    std::vector<DyadicInterval> parts;
    std::uint64_t pos = 0;
    for (int b = top; b >= 0; --b) {
      const std::uint64_t width = std::uint64_t{1} << b;
      if (count & width) {
        parts.push_back({top - b, pos >> b});
        pos += width;
      }
    }
    axes.push_back(std::move(parts));
  }
  std::vector<DyadicBox> boxes{DyadicBox{}};
  for (const auto& parts : axes) {
    std::vector<DyadicBox> grown;
    grown.reserve(boxes.size() * parts.size());
    for (const auto& box : boxes) {
      for (const auto& part : parts) {
        DyadicBox b = box;
        b.parts.push_back(part);
        grown.push_back(std::move(b));
      }
    }
    boxes.swap(grown);
  }
  return boxes;
}

std::vector<DyadicBox> lattice_partition_bounds(std::span<const double> upper,
                                                const Resolution& res) {
  std::vector<std::uint64_t> offsets;
  const double slabs = static_cast<double>(res.slabs_per_axis());
  for (double b : upper) {
    const double scaled = b * slabs;
    if (!(b > 0.0 && b <= 1.0) || scaled != std::floor(scaled))
      throw Error(ErrorCode::invalid_argument, "bound is not a lattice point (j + 1) / 2^(L-1)");
    offsets.push_back(static_cast<std::uint64_t>(scaled) - 1);
  }
  return lattice_partition(offsets, res);
}

std::uint64_t slab_of(double x, int levels) {
  check_unit(x);
  return offset_at(x, levels - 1);
}

std::vector<std::uint64_t> slice_index(std::span<const double> p, const Resolution& res) {
  check_dims(p, res);
  std::vector<std::uint64_t> out;
  out.reserve(p.size());
  for (double x : p) out.push_back(slab_of(x, res.levels()));
  return out;
}

}  // namespace discthin
