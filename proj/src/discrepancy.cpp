#include "exqmc/discrepancy.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace exqmc {

namespace {

void require_dimension(std::size_t a, std::size_t b) {
  if (a != b) {
    throw std::invalid_argument("dimension mismatch: " + std::to_string(a) + " vs " +
                                std::to_string(b));
  }
}

bool below_corner(const BAdicPoint& x, const BAdicPoint& corner) {
  for (std::size_t j = 0; j < x.dimension(); ++j) {
    if (compare(x[j], corner[j]) >= 0) return false;
  }
  return true;
}

DiscrepancyValue make_value(std::uint64_t count, std::uint64_t n, const Rational& volume) {
  DiscrepancyValue v;
  v.n = n;
  v.raw = Rational(static_cast<long long>(count)) - Rational(static_cast<long long>(n)) * volume;
  v.normalized = n == 0 ? Rational(0) : v.raw / Rational(static_cast<long long>(n));
  return v;
}

std::vector<std::vector<Rational>> rational_coords(const PointSet& points) {
  std::vector<std::vector<Rational>> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(p.to_rationals());
  return out;
}

}  // namespace

AnchoredBox AnchoredBox::from_point(const BAdicPoint& corner) {
  return AnchoredBox{corner.to_rationals()};
}

Rational AnchoredBox::volume() const {
  Rational v(1);
  for (const auto& y : upper) v *= y;
  return v;
}

std::uint64_t count_in_box(const PointSet& points, const AnchoredBox& box) {
  require_dimension(points.dimension(), box.upper.size());
  std::uint64_t count = 0;
  for (const auto& p : points) {
    bool inside = true;
    for (std::size_t j = 0; j < p.dimension() && inside; ++j) {
      inside = to_rational(p[j]) < box.upper[j];
    }
    if (inside) ++count;
  }
  return count;
}

std::uint64_t count_in_box(const PointSet& points, const BAdicPoint& corner) {
  require_dimension(points.dimension(), corner.dimension());
  for (std::size_t j = 0; j < corner.dimension(); ++j) {
    if (corner[j].base() != points.bases()[j]) throw BaseMismatch("corner base differs from set");
  }
  return static_cast<std::uint64_t>(std::count_if(
      points.begin(), points.end(), [&](const BAdicPoint& p) { return below_corner(p, corner); }));
}

DiscrepancyValue local_discrepancy(const PointSet& points, const AnchoredBox& box) {
  return make_value(count_in_box(points, box), points.size(), box.volume());
}

DiscrepancyValue local_discrepancy(const PointSet& points, const BAdicPoint& corner) {
  return make_value(count_in_box(points, corner), points.size(),
                    AnchoredBox::from_point(corner).volume());
}

DiscrepancyValue local_discrepancy_window(const PointStream& point_at, std::uint64_t start,
                                          std::uint64_t length, const BAdicPoint& corner) {
  std::uint64_t count = 0;
  for (std::uint64_t i = 0; i < length; ++i) {
    const BAdicPoint x = point_at(start + i);
    require_dimension(x.dimension(), corner.dimension());
    if (below_corner(x, corner)) ++count;
  }
  return make_value(count, length, AnchoredBox::from_point(corner).volume());
}

StarDiscrepancy star_discrepancy_exact(const PointSet& points) {
  if (points.dimension() != 2) {
    throw std::invalid_argument("exact star discrepancy is implemented for s = 2 only");
  }
  if (points.empty()) throw std::invalid_argument("star discrepancy of an empty set");
  const auto coords = rational_coords(points);
  const long long n = static_cast<long long>(points.size());

  std::vector<Rational> gx;
  std::vector<Rational> gy;
  for (const auto& c : coords) {
    gx.push_back(c[0]);
    gy.push_back(c[1]);
  }
  gx.emplace_back(1);
  gy.emplace_back(1);
  for (auto* g : {&gx, &gy}) {
    std::sort(g->begin(), g->end());
    g->erase(std::unique(g->begin(), g->end()), g->end());
  }
  auto y_slot = [&](const Rational& y) {
    return static_cast<std::size_t>(std::lower_bound(gy.begin(), gy.end(), y) - gy.begin());
  };

  // Points ordered by x so the sweep over u admits them in batches.
  std::vector<std::size_t> order(coords.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return coords[a][0] < coords[b][0]; });

  StarDiscrepancy best;
  best.value = Rational(0);
  best.argmax_corner = {Rational(0), Rational(0)};

  std::vector<long long> strictly_left(gy.size(), 0);  // per y-slot, points with x < u
  std::size_t next = 0;
  for (const Rational& u : gx) {
    while (next < order.size() && coords[order[next]][0] < u) {
      ++strictly_left[y_slot(coords[order[next]][1])];
      ++next;
    }
    std::vector<long long> up_to(strictly_left);  // points with x <= u
    for (std::size_t k = next; k < order.size() && coords[order[k]][0] == u; ++k) {
      ++up_to[y_slot(coords[order[k]][1])];
    }
    long long open_count = 0;    // x < u, y < v
    long long closed_count = 0;  // x <= u, y <= v
    for (std::size_t iv = 0; iv < gy.size(); ++iv) {
      const Rational& v = gy[iv];
      closed_count += up_to[iv];
      const Rational vol = u * v;
      const Rational from_above = Rational(closed_count, n) - vol;
      const Rational from_below = vol - Rational(open_count, n);
      if (from_above > best.value) best = {from_above, {u, v}, true};
      if (from_below > best.value) best = {from_below, {u, v}, false};
      open_count += strictly_left[iv];
    }
  }
  return best;
}

StarDiscrepancy star_discrepancy_oracle(const PointSet& points, std::size_t cap) {
  if (points.size() > cap) {
    throw CapExceeded("star discrepancy oracle limited to " + std::to_string(cap) +
                      " points, got " + std::to_string(points.size()));
  }
  if (points.empty()) throw std::invalid_argument("star discrepancy of an empty set");
  const auto coords = rational_coords(points);
  const std::size_t s = points.dimension();
  const Rational n(static_cast<long long>(points.size()));

  std::vector<std::vector<Rational>> grid(s);
  for (std::size_t j = 0; j < s; ++j) {
    grid[j] = {Rational(0), Rational(1)};
    for (const auto& c : coords) grid[j].push_back(c[j]);
    std::sort(grid[j].begin(), grid[j].end());
    grid[j].erase(std::unique(grid[j].begin(), grid[j].end()), grid[j].end());
  }

  StarDiscrepancy best;
  best.value = Rational(0);
  best.argmax_corner.assign(s, Rational(0));
  std::vector<std::size_t> idx(s, 0);
  std::vector<Rational> corner(s);
  while (true) {
    Rational vol(1);
    for (std::size_t j = 0; j < s; ++j) {
      corner[j] = grid[j][idx[j]];
      vol *= corner[j];
    }
    long long open = 0;
    long long closed = 0;
    for (const auto& c : coords) {
      bool lt = true;
      bool le = true;
      for (std::size_t j = 0; j < s; ++j) {
        lt = lt && c[j] < corner[j];
        le = le && c[j] <= corner[j];
      }
      open += lt ? 1 : 0;
      closed += le ? 1 : 0;
    }
    const Rational above = (Rational(closed) - n * vol).abs() / n;
    const Rational below = (Rational(open) - n * vol).abs() / n;
    if (above > best.value) best = {above, corner, true};
    if (below > best.value) best = {below, corner, false};

    std::size_t j = 0;
    while (j < s && ++idx[j] == grid[j].size()) idx[j++] = 0;
    if (j == s) break;
  }
  return best;
}

}  // namespace exqmc
