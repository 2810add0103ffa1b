#include "exqmc/levin_net.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace exqmc {

namespace {

void for_each_index(const std::vector<std::vector<unsigned>>& sets,
                    const std::function<void(const IndexVector&)>& visit) {
  IndexVector r(sets.size());
  std::function<void(std::size_t)> rec = [&](std::size_t j) {
    if (j == sets.size()) {
      visit(r);
      return;
    }
    for (unsigned v : sets[j]) {
      r[j] = v;
      rec(j + 1);
    }
  };
  rec(0);
}

unsigned index_sum(const IndexVector& r) { return std::accumulate(r.begin(), r.end(), 0U); }

Digit term_digit(const GammaSpec& gamma, std::size_t j, unsigned position) {
  for (const auto& t : gamma.terms(j)) {
    if (t.position == position) return t.digit;
  }
  return 0;
}

}  // namespace

GammaSpec::GammaSpec(unsigned b, unsigned m, std::vector<std::vector<Term>> terms)
    : base_(b), m_(m), terms_(std::move(terms)) {
  if (base_ < 2) throw std::invalid_argument("base must be at least 2");
  if (terms_.empty()) throw std::invalid_argument("gamma needs at least one coordinate");
  for (auto& list : terms_) {
    if (list.empty()) throw std::invalid_argument("every index set R_j must be nonempty");
    std::sort(list.begin(), list.end(),
              [](const Term& a, const Term& b) { return a.position < b.position; });
    for (std::size_t i = 0; i < list.size(); ++i) {
      const Term& t = list[i];
      if (t.position < 1 || t.position > m_) {
        throw std::invalid_argument("gamma index " + std::to_string(t.position) +
                                    " outside 1.." + std::to_string(m_));
      }
      if (t.digit < 1 || t.digit >= base_) {
        throw std::invalid_argument("gamma digit must lie in 1..b-1");
      }
      if (i > 0 && list[i - 1].position == t.position) {
        throw std::invalid_argument("repeated gamma index " + std::to_string(t.position));
      }
    }
  }
}

std::vector<unsigned> GammaSpec::positions(std::size_t j) const {
  std::vector<unsigned> out;
  for (const auto& t : terms_[j]) out.push_back(t.position);
  return out;
}

unsigned GammaSpec::max_position(std::size_t j) const { return terms_[j].back().position; }

BAdicPoint GammaSpec::point() const {
  std::vector<BAdicNumber> coords;
  for (const auto& list : terms_) {
    std::vector<Digit> digits(m_, 0);
    for (const auto& t : list) digits[t.position - 1] = t.digit;
    coords.emplace_back(base_, std::move(digits));
  }
  return BAdicPoint(std::move(coords));
}

IndexPartition classify_indices(const GammaSpec& gamma, unsigned alpha) {
  const unsigned m = gamma.m();
  const auto s = static_cast<unsigned>(gamma.dimension());
  std::vector<std::vector<unsigned>> sets;
  for (std::size_t j = 0; j < s; ++j) sets.push_back(gamma.positions(j));
  IndexPartition part;
  part.alpha = alpha;
  for_each_index(sets, [&](const IndexVector& r) {
    const unsigned sum = index_sum(r);
    part.all.push_back(r);
    if (sum <= m) {
      part.a1.push_back(r);
    } else if (sum < m + s) {
      part.a2.push_back(r);
    } else {
      part.a3.push_back(r);
    }
    if (sum == m + alpha) part.a4.push_back(r);
  });
  return part;
}

std::vector<PartitionBox> partition_boxes(const GammaSpec& gamma) {
  const std::size_t s = gamma.dimension();
  const BAdicPoint corner = gamma.point();
  std::vector<std::vector<unsigned>> sets;
  for (std::size_t j = 0; j < s; ++j) sets.push_back(gamma.positions(j));

  std::vector<PartitionBox> out;
  for_each_index(sets, [&](const IndexVector& r) {
    std::vector<Digit> limit(s);
    std::vector<std::uint64_t> prefix(s, 0);  // [gamma^(j)]_{r_j - 1} * b^(r_j - 1)
    for (std::size_t j = 0; j < s; ++j) {
      limit[j] = term_digit(gamma, j, r[j]);
      for (unsigned i = 1; i < r[j]; ++i) prefix[j] = prefix[j] * gamma.base() + corner[j].digit(i);
    }
    std::vector<Digit> g(s, 0);
    while (true) {
      ElementaryBox box{gamma.base(), r, std::vector<std::uint64_t>(s)};
      for (std::size_t j = 0; j < s; ++j) box.indices[j] = prefix[j] * gamma.base() + g[j];
      out.push_back(PartitionBox{r, g, std::move(box)});
      std::size_t j = 0;
      while (j < s && ++g[j] == limit[j]) g[j++] = 0;
      if (j == s) break;
    }
  });
  return out;
}

std::optional<std::pair<IndexVector, std::vector<Digit>>> locate_in_partition(
    const GammaSpec& gamma, const BAdicPoint& x) {
  const BAdicPoint corner = gamma.point();
  IndexVector r(gamma.dimension());
  std::vector<Digit> g(gamma.dimension());
  for (std::size_t j = 0; j < gamma.dimension(); ++j) {
    auto pos = first_difference(x[j], corner[j]);
    if (!pos) return std::nullopt;  // x^(j) = gamma^(j), outside [0, gamma^(j))
    const Digit xd = x[j].digit(*pos);
    if (xd > corner[j].digit(*pos)) return std::nullopt;
    r[j] = static_cast<unsigned>(*pos);
    g[j] = xd;
  }
  return std::make_pair(std::move(r), std::move(g));
}

DeltaDecomposition delta_decomposition(const PointSet& points, const GammaSpec& gamma) {
  const unsigned m = gamma.m();
  const auto s = static_cast<unsigned>(gamma.dimension());
  const unsigned b = gamma.base();
  if (!is_net(points, 0, m, s, b).is_net) {
    throw std::invalid_argument("delta decomposition needs a (0," + std::to_string(m) + "," +
                                std::to_string(s) + ")-net in base " + std::to_string(b));
  }
  const auto boxes = partition_boxes(gamma);
  std::map<std::pair<IndexVector, std::vector<Digit>>, std::size_t> slot;
  for (std::size_t i = 0; i < boxes.size(); ++i) slot[{boxes[i].r, boxes[i].g}] = i;

  DeltaDecomposition out;
  out.counts.assign(boxes.size(), 0);
  for (const auto& p : points) {
    if (auto where = locate_in_partition(gamma, p)) ++out.counts[slot.at(*where)];
  }

  const Rational n(static_cast<long long>(points.size()));
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    const unsigned order = index_sum(boxes[i].r);
    const Rational term = Rational(static_cast<long long>(out.counts[i])) / n - boxes[i].box.volume();
    if (order <= m) {
      out.delta1 += term;
    } else if (order < m + s) {
      out.delta2 += term;
    } else {
      out.delta3 += term;
      if (out.counts[i] != 0) out.a3_boxes_empty = false;
    }
  }
  out.sum = out.delta1 + out.delta2 + out.delta3;
  out.direct = local_discrepancy(points, gamma.point()).normalized;

  const IndexPartition part = classify_indices(gamma, s);
  out.a1_size = part.a1.size();
  out.a2_size = part.a2.size();
  out.a3_size = part.a3.size();
  out.a4_size = part.a4.size();
  return out;
}

GammaSpec gamma_theorem3(unsigned m) {
  if (m < 4 || m % 4 != 0) {
    throw std::invalid_argument("gamma_theorem3 needs m >= 4 with m divisible by 4, got m = " +
                                std::to_string(m));
  }
  std::vector<GammaSpec::Term> first;
  std::vector<GammaSpec::Term> second;
  for (unsigned j = 1; j <= m / 4; ++j) {
    first.push_back({2 * j, 1});
    second.push_back({m / 2 + 2 * j, 1});
  }
  return GammaSpec(2, m, {first, second});
}

LevinNetParams theorem4_params(unsigned s) {
  if (s < 2) throw std::invalid_argument("dimension must be at least 2");
  const long long s2 = static_cast<long long>(s);
  LevinNetParams p;
  p.alpha = s;
  p.beta = rational_pow(Rational(4 * s2 * s2 * (s2 - 1) * (s2 - 1)), s2 - 1) /
           rational_pow(Rational(2 * s2 - 3), s2 - 1);
  p.delta = std::nullopt;
  return p;
}

Lemma31Report lemma31_check(const PointSet& points, const GammaSpec& gamma,
                            const LevinNetParams& params) {
  const unsigned m = gamma.m();
  const auto s = static_cast<unsigned>(gamma.dimension());
  const unsigned b = gamma.base();
  const auto s_ll = static_cast<long long>(s);
  Lemma31Report rep;

  if (points.dimension() != s || points.common_base() != b) {
    rep.failures.push_back("point set does not match gamma's dimension and base");
    return rep;
  }
  if (points.size() != to_u64(big_pow(b, m)) || !is_net(points, 0, m, s, b).is_net) {
    rep.failures.push_back("point set is not a (0,m,s)-net in base b");
  }
  if (params.alpha < s) rep.failures.push_back("alpha must be an integer >= s");
  if (params.beta <= Rational(0)) rep.failures.push_back("beta must be positive");

  const Rational bsm1 = rational_pow(Rational(b), s_ll - 1);  // b^(s-1)
  const Rational bm1s = rational_pow(Rational(b - 1), s_ll);  // (b-1)^s
  if (params.delta) {
    const Rational delta_min =
        rational_pow(Rational(b), params.alpha) * (bsm1 - Rational(1)) * params.beta / bsm1;
    if (!(*params.delta > delta_min)) {
      rep.failures.push_back("delta must exceed b^alpha (b^(s-1)-1) beta / b^(s-1) = " +
                             delta_min.str());
    }
  }

  // Some point must agree with gamma on the first max(R_j) digits of every
  // coordinate.
  const BAdicPoint corner = gamma.point();
  for (std::size_t i = 0; i < points.size() && !rep.anchor_index; ++i) {
    bool agrees = true;
    for (std::size_t j = 0; j < s && agrees; ++j) {
      for (unsigned d = 1; d <= gamma.max_position(j) && agrees; ++d) {
        agrees = points[i][j].digit(d) == corner[j].digit(d);
      }
    }
    if (agrees) rep.anchor_index = i;
  }
  if (!rep.anchor_index) {
    rep.failures.push_back("no point lies in prod_j [gamma^(j), gamma^(j) + b^-max(R_j))");
  }

  const IndexPartition part = classify_indices(gamma, params.alpha);
  rep.a2_size = part.a2.size();
  rep.a4_size = part.a4.size();
  const Rational m_pow = rational_pow(Rational(m), s_ll - 1);
  const bool finite_delta = params.delta && *params.delta > Rational(0);
  const Rational a2_cap = finite_delta ? m_pow / *params.delta : Rational(0);
  if (Rational(static_cast<long long>(rep.a2_size)) > a2_cap) {
    rep.failures.push_back("|A2| = " + std::to_string(rep.a2_size) + " exceeds m^(s-1)/delta = " +
                           a2_cap.str());
  }
  if (params.beta > Rational(0)) {
    const Rational a4_floor = m_pow / params.beta;
    if (Rational(static_cast<long long>(rep.a4_size)) < a4_floor) {
      rep.failures.push_back("|A4| = " + std::to_string(rep.a4_size) + " below m^(s-1)/beta = " +
                             a4_floor.str());
    }
    rep.bracket = bm1s / (params.beta * rational_pow(Rational(b), params.alpha));
  }
  if (finite_delta) rep.bracket -= bm1s / *params.delta * (bsm1 - Rational(1)) / bsm1;
  if (rep.bracket <= Rational(0)) rep.failures.push_back("bound bracket is not positive");
  rep.bound = -(m_pow / rational_pow(Rational(b), m)) * rep.bracket;

  rep.normalized = local_discrepancy(points, corner).normalized;
  rep.preconditions_met = rep.failures.empty();
  rep.bound_holds = rep.normalized <= rep.bound;
  return rep;
}

GammaSpec nearest_gamma(const BAdicPoint& x, unsigned m, unsigned s, unsigned b) {
  if (s < 2) throw std::invalid_argument("nearest_gamma needs s >= 2");
  const BigInt m_min = 2 * boost::multiprecision::pow(BigInt(s), s) *
                       boost::multiprecision::pow(BigInt(s - 1), s);
  if (BigInt(m) < m_min) {
    throw std::invalid_argument("nearest_gamma needs m >= 2 s^s (s-1)^s = " + m_min.str());
  }
  if (x.dimension() != s) throw std::invalid_argument("x must have dimension s");
  if (x.common_base() != b) throw BaseMismatch("x must be written in base b");

  const unsigned k = m / (2 * s * (s - 1));
  const unsigned m_bar = m * (2 * s - 3) / (2 * s * s * (s - 1));
  if (m_bar < 1) throw std::invalid_argument("m too small: empty tail index sets");

  std::vector<std::vector<GammaSpec::Term>> terms(s);
  for (unsigned i = 0; i < s; ++i) {
    for (unsigned pos = 1; pos <= k; ++pos) {
      const Digit d = x[i].digit(pos);
      if (d != 0) terms[i].push_back({pos, d});
    }
    for (unsigned j = 1; j <= m_bar; ++j) {
      const unsigned t = (i + 1 < s) ? k + s * j : m - (s - 1) * (k + s * m_bar) + s * j;
      terms[i].push_back({t, 1});
    }
  }
  return GammaSpec(b, m, std::move(terms));
}

GammaConditions gamma_conditions(const GammaSpec& gamma) {
  const unsigned m = gamma.m();
  const auto s = static_cast<unsigned>(gamma.dimension());
  const auto s_ll = static_cast<long long>(s);
  GammaConditions c;
  for (const auto& r : classify_indices(gamma, s).all) {
    const unsigned sum = index_sum(r);
    if (sum >= m + 1 && sum < m + s) ++c.band_count;
    if (sum == m + s) ++c.boundary_count;
  }
  c.required_boundary =
      rational_pow(Rational(m), s_ll - 1) * rational_pow(Rational(2 * s_ll - 3), s_ll - 1) /
      rational_pow(Rational(4 * s_ll * s_ll * (s_ll - 1) * (s_ll - 1)), s_ll - 1);
  return c;
}

bool within_gamma_radius(const std::vector<Rational>& x, const std::vector<Rational>& gamma,
                         unsigned m, unsigned b) {
  if (x.size() != gamma.size() || x.size() < 2) throw std::invalid_argument("dimension mismatch");
  const auto s = static_cast<long long>(x.size());
  Rational d2(0);
  for (std::size_t j = 0; j < x.size(); ++j) d2 += (x[j] - gamma[j]) * (x[j] - gamma[j]);
  // d^2 < b^2 s b^(-p/q) with p/q = m / ((s-1)s)  <=>  (d^2 / (b^2 s))^q b^p < 1.
  const Rational e(BigInt(m), BigInt((s - 1) * s));
  const auto p = e.numerator().convert_to<long long>();
  const auto q = e.denominator().convert_to<long long>();
  const Rational scaled = d2 / (Rational(static_cast<long long>(b) * b) * Rational(s));
  return rational_pow(scaled, q) * rational_pow(Rational(b), p) < Rational(1);
}

}  // namespace exqmc
