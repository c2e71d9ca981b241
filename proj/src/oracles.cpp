#include "discthin/oracles.hpp"

#include <absl/container/flat_hash_map.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace discthin {
namespace {

int common_dims(std::span<const Point> a, std::span<const Point> b = {}) {
  int d = -1;
  for (auto sample : {a, b}) {
    for (const auto& p : sample) {
      if (d < 0) d = static_cast<int>(p.size());
      else if (static_cast<int>(p.size()) != d)
        throw Error(ErrorCode::dimension_mismatch, "points have inconsistent dimensions");
    }
  }
  return std::max(d, 0);
}

int stream_dims(std::span<const SignedItem> stream) {
  int d = -1;
  for (const auto& item : stream) {
    if (d < 0) d = static_cast<int>(item.point.size());
    else if (static_cast<int>(item.point.size()) != d)
      throw Error(ErrorCode::dimension_mismatch, "points have inconsistent dimensions");
  }
  return std::max(d, 0);
}

void require_exact_dims(int d) {
  if (d > kExactMaxDims) {
    std::ostringstream msg;
    msg << "exact anchored-box oracle supports d <= " << kExactMaxDims << " (got d = " << d
        << "); use a sampled lower bound instead";
    throw Error(ErrorCode::size_guard, msg.str());
  }
}

void check_unit_cube(std::span<const double> p) {
  for (double x : p)
    if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorCode::out_of_range, "point outside the unit cube");
}

/// Per-axis sorted distinct values and the rank of every point.
struct RankGrid {
  std::vector<std::vector<double>> axis;
  std::vector<std::uint32_t> rank;  // row-major, m x d
  int d = 0;

  std::uint64_t cells() const {
    std::uint64_t c = 1;
    for (const auto& a : axis) {
      if (c > kMaxGridCells) break;
      c *= a.size();
    }
    return c;
  }

  std::vector<double> corner(std::span<const std::uint32_t> r) const {
    std::vector<double> out(static_cast<std::size_t>(d));
    for (int a = 0; a < d; ++a) out[static_cast<std::size_t>(a)] = axis[static_cast<std::size_t>(a)][r[static_cast<std::size_t>(a)]];
    return out;
  }
};

template <class CoordOf>
RankGrid make_ranks(std::size_t m, int d, CoordOf coord) {
  RankGrid g;
  g.d = d;
  g.axis.resize(static_cast<std::size_t>(d));
  for (int a = 0; a < d; ++a) {
    auto& values = g.axis[static_cast<std::size_t>(a)];
    values.reserve(m);
    for (std::size_t i = 0; i < m; ++i) values.push_back(coord(i, a));
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
  }
  g.rank.resize(m * static_cast<std::size_t>(d));
  for (std::size_t i = 0; i < m; ++i) {
    for (int a = 0; a < d; ++a) {
      const auto& values = g.axis[static_cast<std::size_t>(a)];
      g.rank[i * static_cast<std::size_t>(d) + static_cast<std::size_t>(a)] = static_cast<std::uint32_t>(
          std::lower_bound(values.begin(), values.end(), coord(i, a)) - values.begin());
    }
  }
  return g;
}

void guard_cells(std::uint64_t cells) {
  if (cells > kMaxGridCells)
    throw Error(ErrorCode::size_guard, "rank grid too large for the exact oracle");
}

std::vector<std::size_t> strides_of(const RankGrid& g) {
  std::vector<std::size_t> stride(static_cast<std::size_t>(g.d));
  std::size_t s = 1;
  for (int a = g.d; a-- > 0;) {
    stride[static_cast<std::size_t>(a)] = s;
    s *= g.axis[static_cast<std::size_t>(a)].size();
  }
  return stride;
}

std::vector<std::uint32_t> unflatten(std::size_t cell, const RankGrid& g) {
  std::vector<std::uint32_t> r(static_cast<std::size_t>(g.d));
  for (int a = g.d; a-- > 0;) {
    const auto size = g.axis[static_cast<std::size_t>(a)].size();
    r[static_cast<std::size_t>(a)] = static_cast<std::uint32_t>(cell % size);
    cell /= size;
  }
  return r;
}

/// Max |value| of the d-dimensional prefix sums of `weights` placed on the grid.
struct GridMax {
  std::int64_t value = 0;
  std::vector<std::uint32_t> corner;
};

GridMax grid_prefix_max(const RankGrid& g, std::span<const int> weights) {
  guard_cells(g.cells());
  std::vector<std::int64_t> grid(static_cast<std::size_t>(g.cells()), 0);
  const auto stride = strides_of(g);
  const auto d = static_cast<std::size_t>(g.d);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    std::size_t cell = 0;
    for (std::size_t a = 0; a < d; ++a) cell += g.rank[i * d + a] * stride[a];
    grid[cell] += weights[i];
  }
  // Cumulative sum along each axis in turn.
  for (std::size_t a = 0; a < d; ++a) {
    const std::size_t size = g.axis[a].size();
    for (std::size_t cell = 0; cell < grid.size(); ++cell) {
      if ((cell / stride[a]) % size != 0) grid[cell] += grid[cell - stride[a]];
    }
  }
  GridMax best;
  std::size_t arg = 0;
  for (std::size_t cell = 0; cell < grid.size(); ++cell) {
    if (std::llabs(grid[cell]) > best.value) {
      best.value = std::llabs(grid[cell]);
      arg = cell;
    }
  }
  if (best.value > 0) best.corner = unflatten(arg, g);
  return best;
}

/// Segment tree over [0, size) supporting suffix add and argmax of |value|.
class SuffixAddTree {
 public:
  explicit SuffixAddTree(std::size_t size) : size_(size), hi_(4 * size, 0), lo_(4 * size, 0), lazy_(4 * size, 0) {}

  void add_from(std::size_t from, std::int64_t delta) { add(1, 0, size_ - 1, from, delta); }

  std::int64_t max_abs() const { return std::max(std::llabs(hi_[1]), std::llabs(lo_[1])); }

  /// Position whose |value| equals max_abs().
  std::size_t argmax_abs() {
    const bool use_hi = std::llabs(hi_[1]) >= std::llabs(lo_[1]);
    const std::int64_t target = use_hi ? hi_[1] : lo_[1];
    std::size_t node = 1, l = 0, r = size_ - 1;
    while (l < r) {
      push(node);
      const std::size_t mid = (l + r) / 2;
      const std::size_t left = 2 * node;
      if ((use_hi ? hi_[left] : lo_[left]) == target) {
        node = left;
        r = mid;
      } else {
        node = left + 1;
        l = mid + 1;
      }
    }
    return l;
  }

 private:
  void apply(std::size_t node, std::int64_t delta) {
    hi_[node] += delta;
    lo_[node] += delta;
    lazy_[node] += delta;
  }
  void push(std::size_t node) {
    if (lazy_[node] != 0) {
      apply(2 * node, lazy_[node]);
      apply(2 * node + 1, lazy_[node]);
      lazy_[node] = 0;
    }
  }
  void add(std::size_t node, std::size_t l, std::size_t r, std::size_t from, std::int64_t delta) {
    if (r < from) return;
    if (l >= from) {
      apply(node, delta);
      return;
    }
    push(node);
    const std::size_t mid = (l + r) / 2;
    add(2 * node, l, mid, from, delta);
    add(2 * node + 1, mid + 1, r, from, delta);
    hi_[node] = std::max(hi_[2 * node], hi_[2 * node + 1]);
    lo_[node] = std::min(lo_[2 * node], lo_[2 * node + 1]);
  }

  std::size_t size_;
  std::vector<std::int64_t> hi_, lo_, lazy_;
};

struct PrefixMax {
  std::int64_t value = 0;
  std::size_t prefix = 0;
  std::vector<std::uint32_t> corner;
};

/// max over k and rank corners c of |sum_{i<=k, rank_i <= c} sign_i|.
PrefixMax prefix_orthant_max(const RankGrid& g, std::span<const int> signs) {
  PrefixMax best;
  const std::size_t m = signs.size();
  if (m == 0) return best;
  const auto d = static_cast<std::size_t>(g.d);
  if (d == 1) {
    SuffixAddTree tree(g.axis[0].size());
    for (std::size_t i = 0; i < m; ++i) {
      tree.add_from(g.rank[i], signs[i]);
      if (tree.max_abs() > best.value) {
        best.value = tree.max_abs();
        best.prefix = i + 1;
        best.corner = {static_cast<std::uint32_t>(tree.argmax_abs())};
      }
    }
    return best;
  }
  const std::uint64_t cells = g.cells();
  guard_cells(cells);
  if (cells > kMaxGridWork / m)
    throw Error(ErrorCode::size_guard, "stream too long for the exact prefix oracle at this dimension");
  std::vector<std::int32_t> grid(static_cast<std::size_t>(cells), 0);
  const auto stride = strides_of(g);
  std::vector<std::size_t> size(d);
  for (std::size_t a = 0; a < d; ++a) size[a] = g.axis[a].size();
  std::vector<std::size_t> idx(d);
  for (std::size_t i = 0; i < m; ++i) {
    const std::int32_t s = signs[i];
    const std::uint32_t* r = &g.rank[i * d];
    std::int64_t step_best = best.value;
    std::size_t step_arg = 0;
    bool improved = false;
    // Odometer over all axes but the last; the last axis is a contiguous run.
    for (std::size_t a = 0; a + 1 < d; ++a) idx[a] = r[a];
    while (true) {
      std::size_t base = 0;
      for (std::size_t a = 0; a + 1 < d; ++a) base += idx[a] * stride[a];
      std::int32_t* row = grid.data() + base;
      for (std::size_t c = r[d - 1]; c < size[d - 1]; ++c) {
        row[c] += s;
        const std::int64_t v = std::abs(row[c]);
        if (v > step_best) {
          step_best = v;
          step_arg = base + c;
          improved = true;
        }
      }
      std::size_t a = d - 1;
      while (a-- > 0) {
        if (++idx[a] < size[a]) break;
        idx[a] = r[a];
      }
      if (a == static_cast<std::size_t>(-1)) break;
    }
    if (improved) {
      best.value = step_best;
      best.prefix = i + 1;
      best.corner = unflatten(step_arg, g);
    }
  }
  return best;
}

bool in_anchored(std::span<const double> p, std::span<const double> b) {
  for (std::size_t a = 0; a < p.size(); ++a)
    if (p[a] > b[a]) return false;
  return true;
}

bool in_lattice(std::span<const double> p, std::span<const std::uint64_t> j, int levels) {
  for (std::size_t a = 0; a < p.size(); ++a)
    if (slab_of(p[a], levels) > j[a]) return false;
  return true;
}

}  // namespace

SignedStream as_signed(std::span<const Point> xs, std::span<const Point> ys) {
  SignedStream out;
  out.reserve(xs.size() + ys.size());
  for (const auto& p : xs) out.push_back({p, +1});
  for (const auto& p : ys) out.push_back({p, -1});
  return out;
}

DiscrepancyResult two_sample_discrepancy(std::span<const Point> xs, std::span<const Point> ys) {
  const int d = common_dims(xs, ys);
  require_exact_dims(d);
  DiscrepancyResult out;
  if (xs.empty() && ys.empty()) return out;
  if (d == 1) {
    std::vector<std::pair<double, int>> all;
    all.reserve(xs.size() + ys.size());
    for (const auto& p : xs) all.emplace_back(p[0], +1);
    for (const auto& p : ys) all.emplace_back(p[0], -1);
    std::sort(all.begin(), all.end());
    std::int64_t run = 0;
    for (std::size_t i = 0; i < all.size();) {
      const double b = all[i].first;
      for (; i < all.size() && all[i].first == b; ++i) run += all[i].second;
      if (static_cast<double>(std::llabs(run)) > out.value) {
        out.value = static_cast<double>(std::llabs(run));
        out.witness.upper = {b};
      }
    }
    return out;
  }
  const SignedStream stream = as_signed(xs, ys);
  const RankGrid g = make_ranks(stream.size(), d, [&](std::size_t i, int a) {
    return stream[i].point[static_cast<std::size_t>(a)];
  });
  std::vector<int> w;
  for (const auto& item : stream) w.push_back(item.sign);
  GridMax best = grid_prefix_max(g, w);
  out.value = static_cast<double>(best.value);
  if (best.value > 0) out.witness.upper = g.corner(best.corner);
  return out;
}

DiscrepancyResult two_sample_discrepancy_brute(std::span<const Point> xs, std::span<const Point> ys) {
  const int d = common_dims(xs, ys);
  require_exact_dims(d);
  DiscrepancyResult out;
  if (xs.empty() && ys.empty()) return out;
  const SignedStream stream = as_signed(xs, ys);
  const RankGrid g = make_ranks(stream.size(), d, [&](std::size_t i, int a) {
    return stream[i].point[static_cast<std::size_t>(a)];
  });
  guard_cells(g.cells());
  for (std::size_t cell = 0; cell < g.cells(); ++cell) {
    const auto b = g.corner(unflatten(cell, g));
    std::int64_t count = 0;
    for (const auto& item : stream)
      if (in_anchored(item.point, b)) count += item.sign;
    if (static_cast<double>(std::llabs(count)) > out.value) {
      out.value = static_cast<double>(std::llabs(count));
      out.witness.upper = b;
    }
  }
  return out;
}

DiscrepancyResult prefix_sign_sup(std::span<const SignedItem> stream) {
  const int d = stream_dims(stream);
  require_exact_dims(d);
  DiscrepancyResult out;
  if (stream.empty() || d == 0) return out;
  const RankGrid g = make_ranks(stream.size(), d, [&](std::size_t i, int a) {
    return stream[i].point[static_cast<std::size_t>(a)];
  });
  std::vector<int> signs;
  signs.reserve(stream.size());
  for (const auto& item : stream) signs.push_back(item.sign >= 0 ? 1 : -1);
  PrefixMax best = prefix_orthant_max(g, signs);
  out.value = static_cast<double>(best.value);
  out.witness.prefix = best.prefix;
  if (best.value > 0) out.witness.upper = g.corner(best.corner);
  return out;
}

DiscrepancyResult prefix_sign_sup_brute(std::span<const SignedItem> stream) {
  const int d = stream_dims(stream);
  require_exact_dims(d);
  DiscrepancyResult out;
  if (stream.empty() || d == 0) return out;
  const RankGrid g = make_ranks(stream.size(), d, [&](std::size_t i, int a) {
    return stream[i].point[static_cast<std::size_t>(a)];
  });
  guard_cells(g.cells());
  for (std::size_t cell = 0; cell < g.cells(); ++cell) {
    const auto b = g.corner(unflatten(cell, g));
    std::int64_t run = 0;
    for (std::size_t k = 0; k < stream.size(); ++k) {
      if (in_anchored(stream[k].point, b)) run += stream[k].sign >= 0 ? 1 : -1;
      if (static_cast<double>(std::llabs(run)) > out.value) {
        out.value = static_cast<double>(std::llabs(run));
        out.witness.prefix = k + 1;
        out.witness.upper = b;
      }
    }
  }
  return out;
}

DiscrepancyResult dyadic_prefix_sup(std::span<const SignedItem> stream, int levels) {
  DiscrepancyResult out;
  out.witness.family = BoxFamily::dyadic;
  const int d = stream_dims(stream);
  if (stream.empty() || d == 0) return out;
  const Resolution res(levels, d);
  absl::flat_hash_map<CoordinateId, std::int64_t> sums;
  std::vector<CoordinateId> ids;
  std::int64_t best = 0;
  CoordinateId arg = 0;
  for (std::size_t k = 0; k < stream.size(); ++k) {
    encode_point_ids(stream[k].point, res, ids);
    const int s = stream[k].sign >= 0 ? 1 : -1;
    for (CoordinateId c : ids) {
      const std::int64_t v = (sums[c] += s);
      if (std::llabs(v) > best) {
        best = std::llabs(v);
        arg = c;
        out.witness.prefix = k + 1;
      }
    }
  }
  out.value = static_cast<double>(best);
  if (best > 0) out.witness.dyadic = DyadicBox::from_flat(arg, res);
  return out;
}

DiscrepancyResult lattice_prefix_sup(std::span<const SignedItem> stream, int levels) {
  DiscrepancyResult out;
  out.witness.family = BoxFamily::lattice;
  const int d = stream_dims(stream);
  if (levels < 1) throw Error(ErrorCode::invalid_argument, "L must be >= 1");
  if ((levels - 1) * std::max(d, 1) > kLatticeMaxLog2Boxes) {
    std::ostringstream msg;
    msg << "lattice oracle needs (L-1)*d <= " << kLatticeMaxLog2Boxes
        << "; bound lattice boxes through the dyadic partition instead";
    throw Error(ErrorCode::size_guard, msg.str());
  }
  if (stream.empty() || d == 0) return out;
  // A lattice box is an anchored box on the slab indices.
  const RankGrid g = make_ranks(stream.size(), d, [&](std::size_t i, int a) {
    return static_cast<double>(slab_of(stream[i].point[static_cast<std::size_t>(a)], levels));
  });
  std::vector<int> signs;
  for (const auto& item : stream) signs.push_back(item.sign >= 0 ? 1 : -1);
  PrefixMax best = prefix_orthant_max(g, signs);
  out.value = static_cast<double>(best.value);
  out.witness.prefix = best.prefix;
  if (best.value > 0) {
    for (double j : g.corner(best.corner)) out.witness.lattice.push_back(static_cast<std::uint64_t>(j));
  }
  return out;
}

DiscrepancyResult max_slice_count(std::span<const Point> points, int levels) {
  DiscrepancyResult out;
  out.witness.family = BoxFamily::slice;
  if (levels < 1) throw Error(ErrorCode::invalid_argument, "L must be >= 1");
  if (levels - 1 > 26) throw Error(ErrorCode::size_guard, "slice histogram too large");
  const int d = common_dims(points);
  const std::size_t slabs = std::size_t{1} << (levels - 1);
  for (int a = 0; a < d; ++a) {
    std::vector<std::int64_t> hist(slabs, 0);
    for (const auto& p : points) ++hist[slab_of(p[static_cast<std::size_t>(a)], levels)];
    auto it = std::max_element(hist.begin(), hist.end());
    if (static_cast<double>(*it) > out.value) {
      out.value = static_cast<double>(*it);
      out.witness.slice_axis = a;
      out.witness.slice_offset = static_cast<std::uint64_t>(it - hist.begin());
    }
  }
  return out;
}

DiscrepancyResult star_discrepancy_uniform(std::span<const Point> points) {
  const int d = common_dims(points);
  if (d > 2) throw Error(ErrorCode::size_guard, "exact star discrepancy supports d <= 2");
  DiscrepancyResult out;
  if (points.empty()) return out;
  for (const auto& p : points) check_unit_cube(p);
  const auto n = static_cast<double>(points.size());

  if (d == 1) {
    std::vector<double> xs;
    for (const auto& p : points) xs.push_back(p[0]);
    std::sort(xs.begin(), xs.end());
    // On [x_(i), x_(i+1)) the count is i; the extremes are at the endpoints.
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double above = static_cast<double>(i + 1) - n * xs[i];
      const double below = n * xs[i] - static_cast<double>(i);
      if (above > out.value) {
        out.value = above;
        out.witness.upper = {xs[i]};
        out.witness.from_below = false;
      }
      if (below > out.value) {
        out.value = below;
        out.witness.upper = {xs[i]};
        out.witness.from_below = true;
      }
    }
    const double tail = n - n * xs.back();
    if (tail > out.value) {
      out.value = tail;
      out.witness.upper = {1.0};
      out.witness.from_below = true;
    }
    return out;
  }

  // d = 2: grid of point coordinates plus 1. closed(i, j) counts x <= c;
  // open(i, j) = closed(i-1, j-1) counts x < c.
  std::vector<double> c0, c1;
  for (const auto& p : points) {
    c0.push_back(p[0]);
    c1.push_back(p[1]);
  }
  for (auto* c : {&c0, &c1}) {
    c->push_back(1.0);
    std::sort(c->begin(), c->end());
    c->erase(std::unique(c->begin(), c->end()), c->end());
  }
  const std::size_t u0 = c0.size(), u1 = c1.size();
  guard_cells(static_cast<std::uint64_t>(u0 + 1) * (u1 + 1));
  // closed is offset by one in both axes so that index 0 means "below everything".
  std::vector<std::int64_t> closed((u0 + 1) * (u1 + 1), 0);
  auto at = [&](std::size_t i, std::size_t j) -> std::int64_t& { return closed[i * (u1 + 1) + j]; };
  for (const auto& p : points) {
    const auto i = static_cast<std::size_t>(std::lower_bound(c0.begin(), c0.end(), p[0]) - c0.begin());
    const auto j = static_cast<std::size_t>(std::lower_bound(c1.begin(), c1.end(), p[1]) - c1.begin());
    ++at(i + 1, j + 1);
  }
  for (std::size_t i = 1; i <= u0; ++i)
    for (std::size_t j = 1; j <= u1; ++j) at(i, j) += at(i - 1, j) + at(i, j - 1) - at(i - 1, j - 1);
  for (std::size_t i = 0; i < u0; ++i) {
    for (std::size_t j = 0; j < u1; ++j) {
      const double vol = n * c0[i] * c1[j];
      const double above = static_cast<double>(at(i + 1, j + 1)) - vol;
      const double below = vol - static_cast<double>(at(i, j));
      if (above > out.value) {
        out.value = above;
        out.witness.upper = {c0[i], c1[j]};
        out.witness.from_below = false;
      }
      if (below > out.value) {
        out.value = below;
        out.witness.upper = {c0[i], c1[j]};
        out.witness.from_below = true;
      }
    }
  }
  return out;
}

DiscrepancyResult finite_box_discrepancy_1d(std::span<const Point> xs, std::span<const Point> ys) {
  const int d = common_dims(xs, ys);
  if (d > 1) throw Error(ErrorCode::size_guard, "finite-box oracle supports d = 1 only");
  DiscrepancyResult out;
  out.witness.family = BoxFamily::finite;
  std::vector<std::pair<double, int>> all;
  for (const auto& p : xs) all.emplace_back(p[0], +1);
  for (const auto& p : ys) all.emplace_back(p[0], -1);
  std::sort(all.begin(), all.end());
  // Interval [a, b] over groups s..t has sum P_t - P_{s-1}.
  std::int64_t run = 0;
  std::int64_t lo = 0, hi = 0;
  double lo_next = all.empty() ? 0.0 : all.front().first;
  double hi_next = lo_next;
  for (std::size_t i = 0; i < all.size();) {
    const double b = all[i].first;
    for (; i < all.size() && all[i].first == b; ++i) run += all[i].second;
    if (static_cast<double>(run - lo) > out.value) {
      out.value = static_cast<double>(run - lo);
      out.witness.lower = {lo_next};
      out.witness.upper = {b};
    }
    if (static_cast<double>(hi - run) > out.value) {
      out.value = static_cast<double>(hi - run);
      out.witness.lower = {hi_next};
      out.witness.upper = {b};
    }
    const double next = i < all.size() ? all[i].first : b;
    if (run < lo) {
      lo = run;
      lo_next = next;
    }
    if (run > hi) {
      hi = run;
      hi_next = next;
    }
  }
  return out;
}

double replay_two_sample(std::span<const Point> xs, std::span<const Point> ys, const Witness& w) {
  if (w.upper.empty()) return 0.0;
  std::int64_t count = 0;
  auto inside = [&](const Point& p) {
    if (w.family == BoxFamily::finite) {
      for (std::size_t a = 0; a < p.size(); ++a)
        if (p[a] < w.lower[a] || p[a] > w.upper[a]) return false;
      return true;
    }
    return in_anchored(p, w.upper);
  };
  for (const auto& p : xs) count += inside(p);
  for (const auto& p : ys) count -= inside(p);
  return static_cast<double>(std::llabs(count));
}

double replay_sign(std::span<const SignedItem> stream, const Witness& w, int levels) {
  std::int64_t run = 0;
  const std::size_t k = std::min(w.prefix, stream.size());
  for (std::size_t i = 0; i < k; ++i) {
    const auto& p = stream[i].point;
    bool inside = false;
    switch (w.family) {
      case BoxFamily::anchored: inside = !w.upper.empty() && in_anchored(p, w.upper); break;
      case BoxFamily::dyadic: inside = w.dyadic && box_contains(*w.dyadic, p); break;
      case BoxFamily::lattice: inside = !w.lattice.empty() && in_lattice(p, w.lattice, levels); break;
      default: throw Error(ErrorCode::invalid_argument, "witness family not replayable on a stream");
    }
    if (inside) run += stream[i].sign >= 0 ? 1 : -1;
  }
  return static_cast<double>(std::llabs(run));
}

double replay_slice(std::span<const Point> points, const Witness& w, int levels) {
  std::int64_t count = 0;
  for (const auto& p : points)
    count += slab_of(p[static_cast<std::size_t>(w.slice_axis)], levels) == w.slice_offset;
  return static_cast<double>(count);
}

double replay_star(std::span<const Point> points, const Witness& w) {
  if (w.upper.empty()) return 0.0;
  const auto n = static_cast<double>(points.size());
  double vol = n;
  for (double b : w.upper) vol *= b;
  std::int64_t count = 0;
  for (const auto& p : points) {
    bool inside = true;
    for (std::size_t a = 0; a < p.size(); ++a)
      inside = inside && (w.from_below ? p[a] < w.upper[a] : p[a] <= w.upper[a]);
    count += inside;
  }
  return w.from_below ? vol - static_cast<double>(count) : static_cast<double>(count) - vol;
}

}  // namespace discthin
