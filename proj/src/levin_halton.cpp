#include "exqmc/levin_halton.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "exqmc/errors.hpp"

namespace exqmc {

namespace {

BigInt pow_big(unsigned b, unsigned e) { return big_pow(b, e); }

BigInt mod_floor(const BigInt& a, const BigInt& n) {
  BigInt r = a % n;
  if (r < 0) r += n;
  return r;
}

void require_k(const HaltonFrame& frame, const IndexVector& k) {
  if (k.size() != frame.dimension()) throw std::invalid_argument("index vector has wrong dimension");
  for (unsigned v : k) {
    if (v < 1) throw std::invalid_argument("index k_i must be at least 1");
  }
}

void require_box(const HaltonFrame& frame, const LevinBox& box) {
  if (box.upper.size() != frame.dimension()) throw std::invalid_argument("box dimension mismatch");
  for (std::size_t i = 0; i < box.upper.size(); ++i) {
    if (box.upper[i].base() != frame.spec.bases()[i]) throw BaseMismatch("box base differs from frame");
  }
}

// phi_b(n) < y, comparing the digits of n (least significant first) with y's.
bool radical_below(std::uint64_t n, unsigned b, std::span<const Digit> y) {
  for (Digit d : y) {
    const auto x = static_cast<Digit>(n % b);
    n /= b;
    if (x != d) return x < d;
  }
  return false;
}

std::int64_t checked_i64(const BigInt& v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error("value does not fit 64 bits: " + v.str());
  }
  return v.convert_to<std::int64_t>();
}

BigInt digits_value(const BAdicNumber& x) {
  BigInt v = 0;
  for (Digit d : x.digits()) v = v * x.base() + d;
  return v;
}

}  // namespace

BigInt HaltonFrame::modulus(const IndexVector& k) const {
  BigInt out = 1;
  for (std::size_t i = 0; i < tau.size(); ++i) out *= pow_big(spec.bases()[i], tau[i] * k[i]);
  return out;
}

BigInt HaltonFrame::modulus(unsigned m) const { return modulus(IndexVector(tau.size(), m)); }

HaltonFrame tau_orders(const HaltonSpec& spec) {
  if (spec.dimension() < 2) {
    throw std::invalid_argument("tau_i needs s >= 2: B / b_i = 1 has no multiplicative order");
  }
  HaltonFrame frame{spec, {}, {}};
  const BigInt product = spec.product();
  for (unsigned b : spec.bases()) {
    const BigInt co = product / b;
    BigInt power = b % co;
    unsigned k = 1;
    while (power != 1) {
      power = (power * b) % co;
      ++k;
    }
    frame.tau.push_back(k);
    frame.cofactor.push_back(co);
  }
  return frame;
}

BigInt mod_inverse(const BigInt& a, const BigInt& n) {
  BigInt r0 = n;
  BigInt r1 = mod_floor(a, n);
  BigInt t0 = 0;
  BigInt t1 = 1;
  while (r1 != 0) {
    const BigInt q = r0 / r1;
    BigInt tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (r0 != 1) throw std::invalid_argument(a.str() + " has no inverse modulo " + n.str());
  return mod_floor(t0, n);
}

ModulusData crt_data(const HaltonFrame& frame, const IndexVector& k) {
  require_k(frame, k);
  ModulusData d;
  d.b_r = 1;
  for (std::size_t i = 0; i < k.size(); ++i) d.r.push_back(frame.tau[i] * k[i]);
  d.b_r = frame.modulus(k);
  for (std::size_t i = 0; i < k.size(); ++i) {
    const BigInt pi = pow_big(frame.spec.bases()[i], d.r[i]);
    const BigInt rest = d.b_r / pi;
    BigInt mi = mod_inverse(rest, pi);
    if (mi == 0) mi = pi;  // pi = 1 never happens, keep the range [1, pi]
    if (mod_floor(mi * rest, pi) != mod_floor(BigInt(1), pi)) {
      throw std::logic_error("CRT coefficient fails its defining congruence");
    }
    d.M.push_back(mi);
  }
  return d;
}

std::optional<std::vector<std::vector<unsigned>>> LevinBox::addend_sets(
    const HaltonFrame& frame) const {
  std::vector<std::vector<unsigned>> sets(upper.size());
  for (std::size_t i = 0; i < upper.size(); ++i) {
    const auto digits = upper[i].digits();
    for (std::size_t p = 1; p <= digits.size(); ++p) {
      const Digit d = digits[p - 1];
      if (d == 0) continue;
      if (d != 1 || p % frame.tau[i] != 0) return std::nullopt;
      sets[i].push_back(static_cast<unsigned>(p / frame.tau[i]));
    }
  }
  return sets;
}

bool LevinBox::is_base() const {
  return std::all_of(removed.begin(), removed.end(), [](const auto& r) { return r.empty(); }) &&
         std::all_of(prefix_lengths.begin(), prefix_lengths.end(),
                     [](std::size_t l) { return l == 0; });
}

bool LevinBox::prefix_condition() const {
  std::size_t total = 0;
  for (std::size_t l : prefix_lengths) total += l;
  return total < m;
}

std::vector<Rational> LevinBox::corner() const {
  std::vector<Rational> out;
  for (const auto& y : upper) out.push_back(to_rational(y));
  return out;
}

Rational LevinBox::volume() const {
  Rational v(1);
  for (const auto& y : upper) v *= to_rational(y);
  return v;
}

LevinBox base_box(const HaltonFrame& frame, unsigned m) {
  LevinBox box;
  box.m = m;
  for (std::size_t i = 0; i < frame.dimension(); ++i) {
    std::vector<Digit> digits(static_cast<std::size_t>(frame.tau[i]) * m, 0);
    for (unsigned j = 1; j <= m; ++j) digits[j * frame.tau[i] - 1] = 1;
    box.upper.emplace_back(frame.spec.bases()[i], std::move(digits));
  }
  box.removed.assign(frame.dimension(), {});
  box.prefix_lengths.assign(frame.dimension(), 0);
  return box;
}

LevinBox modified_box(const HaltonFrame& frame, const LevinBox& box,
                      const std::vector<std::vector<unsigned>>& removals,
                      const std::vector<std::vector<Digit>>& prefixes) {
  require_box(frame, box);
  const std::size_t s = frame.dimension();
  if ((!removals.empty() && removals.size() != s) || (!prefixes.empty() && prefixes.size() != s)) {
    throw std::invalid_argument("removals and prefixes need one entry per coordinate");
  }
  LevinBox out = box;
  for (std::size_t i = 0; i < s; ++i) {
    const unsigned b = frame.spec.bases()[i];
    std::vector<Digit> digits(box.upper[i].digits().begin(), box.upper[i].digits().end());
    if (!removals.empty()) {
      for (unsigned j : removals[i]) {
        if (j < 1 || j > box.m) {
          throw std::invalid_argument("addend index " + std::to_string(j) + " outside 1.." +
                                      std::to_string(box.m));
        }
        digits[j * frame.tau[i] - 1] = 0;
        out.removed[i].push_back(j);
      }
    }
    if (!prefixes.empty()) {
      if (prefixes[i].size() > digits.size()) {
        throw std::invalid_argument("prefix of length " + std::to_string(prefixes[i].size()) +
                                    " exceeds the " + std::to_string(digits.size()) +
                                    "-digit pattern");
      }
      std::copy(prefixes[i].begin(), prefixes[i].end(), digits.begin());
      out.prefix_lengths[i] = std::max(out.prefix_lengths[i], prefixes[i].size());
    }
    out.upper[i] = BAdicNumber(b, std::move(digits));
  }
  return out;
}

const BigInt& WindowAnchor::a_k(const IndexVector& k) const {
  std::size_t idx = 0;
  for (unsigned v : k) {
    if (v < 1 || v > m) throw std::out_of_range("k outside {1..m}^s");
    idx = idx * m + (v - 1);
  }
  return a.at(idx);
}

WindowAnchor window_anchor(const HaltonFrame& frame, const LevinBox& box) {
  require_box(frame, box);
  const std::size_t s = frame.dimension();
  WindowAnchor anchor;
  anchor.m = box.m;

  const ModulusData top = crt_data(frame, IndexVector(s, box.m + 1));
  BigInt y = 0;
  for (std::size_t i = 0; i < s; ++i) {
    const unsigned b = frame.spec.bases()[i];
    BigInt dot = pow_big(b, top.r[i] - 1);  // unit digit at position tau_i (m+1)
    BigInt place = 1;
    for (Digit d : box.upper[i].digits()) {
      dot += place * d;
      place *= b;
    }
    y += top.M[i] * (top.b_r / pow_big(b, top.r[i])) * dot;
  }
  anchor.y_tilde = mod_floor(y, top.b_r);

  if (box.m == 0) return anchor;
  IndexVector k(s, 1);
  while (true) {
    const ModulusData d = crt_data(frame, k);
    BigInt sum = 0;
    for (std::size_t i = 0; i < s; ++i) sum -= d.M[i] * d.b_r / frame.spec.bases()[i];
    anchor.a.push_back(mod_floor(sum, d.b_r));
    std::size_t j = s;
    while (j > 0 && ++k[j - 1] > box.m) k[--j] = 1;
    if (j == 0) break;
  }
  return anchor;
}

bool membership_congruence(const HaltonFrame& frame, const WindowAnchor& anchor,
                           const IndexVector& k, std::uint64_t n) {
  require_k(frame, k);
  const BigInt mod = frame.modulus(k);
  return mod_floor(BigInt(n), mod) == mod_floor(anchor.y_tilde + anchor.a_k(k), mod);
}

bool membership_geometric(const HaltonFrame& frame, const LevinBox& box, const IndexVector& k,
                          std::uint64_t n) {
  require_k(frame, k);
  require_box(frame, box);
  for (std::size_t i = 0; i < frame.dimension(); ++i) {
    const unsigned b = frame.spec.bases()[i];
    const unsigned r = frame.tau[i] * k[i];
    const Rational top = to_rational(truncate(box.upper[i], r));
    const Rational bottom = top - rational_pow(Rational(b), -static_cast<long long>(r));
    const std::size_t digits = std::max<std::size_t>(digit_count(n, b), 1);
    const Rational x = to_rational(radical_inverse(n, b, digits));
    if (x < bottom || !(x < top)) return false;
  }
  return true;
}

bool in_box(const HaltonFrame& frame, const LevinBox& box, std::uint64_t n) {
  for (std::size_t i = 0; i < frame.dimension(); ++i) {
    if (!radical_below(n, frame.spec.bases()[i], box.upper[i].digits())) return false;
  }
  return true;
}

Rational alpha_closed(const HaltonFrame& frame, const LevinBox& box) {
  require_box(frame, box);
  const auto sets = box.addend_sets(frame);
  if (!sets) {
    throw std::invalid_argument("closed-form alpha needs a box made of whole addends");
  }
  Rational alpha(0);
  if (box.m == 0) return alpha;
  const WindowAnchor anchor = window_anchor(frame, box);
  const std::size_t s = frame.dimension();
  if (std::any_of(sets->begin(), sets->end(), [](const auto& v) { return v.empty(); })) return alpha;

  std::vector<std::size_t> pos(s, 0);
  IndexVector k(s);
  const Rational half(1, 2);
  while (true) {
    for (std::size_t i = 0; i < s; ++i) k[i] = (*sets)[i][pos[i]];
    const BigInt mod = frame.modulus(k);
    alpha += half - Rational(anchor.a_k(k), mod) - Rational(BigInt(1), 2 * mod);
    std::size_t j = s;
    while (j > 0 && ++pos[j - 1] == (*sets)[j - 1].size()) pos[--j] = 0;
    if (j == 0) break;
  }
  return alpha;
}

Rational WindowTrace::delta(std::uint64_t n) const {
  return Rational(BigInt(numerators.at(n - 1)), BigInt(denominator));
}

WindowTrace window_trace(const HaltonFrame& frame, const LevinBox& box, std::uint64_t start,
                         std::uint64_t length, std::uint64_t cap) {
  require_box(frame, box);
  if (length > cap) {
    throw CapExceeded("window of " + std::to_string(length) + " points exceeds cap " +
                      std::to_string(cap));
  }
  if (cap > (std::uint64_t{1} << 31)) throw std::invalid_argument("window cap above 2^31");
  BigInt den = 1;
  BigInt num = 1;
  for (const auto& y : box.upper) {
    den *= pow_big(y.base(), static_cast<unsigned>(y.precision()));
    num *= digits_value(y);
  }
  WindowTrace trace;
  trace.start = start;
  trace.denominator = checked_i64(den);
  const std::int64_t vol_num = checked_i64(num);
  if (trace.denominator > (std::int64_t{1} << 31)) {
    throw CapExceeded("box denominator " + den.str() + " too large for window sweeps");
  }
  trace.numerators.reserve(length);
  std::int64_t count = 0;
  for (std::uint64_t i = 0; i < length; ++i) {
    if (in_box(frame, box, start + i)) ++count;
    const auto n = static_cast<std::int64_t>(i + 1);
    trace.numerators.push_back(count * trace.denominator - n * vol_num);
  }
  return trace;
}

Rational alpha_bruteforce(const HaltonFrame& frame, const LevinBox& box,
                          std::optional<std::uint64_t> start, std::uint64_t cap) {
  require_box(frame, box);
  const BigInt period = frame.modulus(box.m);
  if (period > cap) {
    throw CapExceeded("B_{tau m} = " + period.str() + " exceeds cap " + std::to_string(cap));
  }
  const std::uint64_t from = start ? *start : to_u64(window_anchor(frame, box).y_tilde);
  const std::uint64_t length = to_u64(period);
  // sum_{N=1..L} count_N = sum over members at offset i of (L - i).
  BigInt weighted = 0;
  std::uint64_t acc = 0;
  for (std::uint64_t i = 0; i < length; ++i) {
    if (in_box(frame, box, from + i)) acc += length - i;
  }
  weighted = acc;
  const Rational len{BigInt(length)};
  return Rational(weighted) / len - box.volume() * (len + Rational(1)) / Rational(2);
}

Theorem2Result theorem2_search(const HaltonFrame& frame, const LevinBox& box, std::uint64_t cap) {
  Theorem2Result out;
  const BigInt period = frame.modulus(box.m);
  const BigInt y_tilde = window_anchor(frame, box).y_tilde;
  if (y_tilde + period > cap) {
    throw CapExceeded("theorem2 streams " + BigInt(y_tilde + period).str() +
                      " points, above cap " + std::to_string(cap));
  }
  out.y_tilde = to_u64(y_tilde);
  out.period = to_u64(period);

  const WindowTrace trace = window_trace(frame, box, out.y_tilde, out.period, cap);
  BigInt total = 0;
  BigInt total_abs = 0;
  std::int64_t best = -1;
  for (std::uint64_t n = 1; n <= out.period; ++n) {
    const std::int64_t v = trace.numerators[n - 1];
    const std::int64_t a = v < 0 ? -v : v;
    total += v;
    total_abs += a;
    if (a > best) {
      best = a;
      out.n_star = n;
    }
  }
  const BigInt den = period * trace.denominator;
  out.alpha = Rational(total, den);
  out.mean_abs = Rational(total_abs, den);
  out.delta_star = trace.delta(out.n_star);
  out.n_m = out.y_tilde + out.n_star;

  // Delta over H(0), ..., H(y_tilde - 1), counted directly.
  std::int64_t head = 0;
  for (std::uint64_t n = 0; n < out.y_tilde; ++n) {
    if (in_box(frame, box, n)) ++head;
  }
  const Rational vol = box.volume();
  out.head_delta = Rational(head) - Rational(BigInt(y_tilde)) * vol;
  std::int64_t full = head;
  for (std::uint64_t n = out.y_tilde; n < out.n_m; ++n) {
    if (in_box(frame, box, n)) ++full;
  }
  out.full_delta = Rational(full) - Rational(BigInt(out.n_m)) * vol;

  out.averaging_ok = out.delta_star.abs() >= out.alpha.abs();
  out.split_ok = std::max(out.head_delta.abs(), out.full_delta.abs()) >= out.alpha.abs() / Rational(2);
  out.n_m_bound_ok = BigInt(out.n_m) <= frame.modulus(box.m + 1) + period;
  return out;
}

namespace {

void require_bases_2_3(const HaltonFrame& frame) {
  if (frame.spec.bases() != std::vector<unsigned>{2, 3}) {
    throw std::invalid_argument("Upsilon construction is defined for bases (2, 3) only");
  }
}

}  // namespace

LevinBox upsilon_nearest(const HaltonFrame& frame, const std::vector<Rational>& x, unsigned m) {
  require_bases_2_3(frame);
  if (m < 2) throw std::invalid_argument("Upsilon needs m >= 2");
  if (x.size() != 2) throw std::invalid_argument("x must be two-dimensional");
  for (const auto& c : x) {
    if (c < Rational(0) || !(c < Rational(1))) throw std::invalid_argument("x must lie in [0,1)^2");
  }
  // l1 + l2 = m - 1; pick l1 minimising 4^-l1 + 9^-l2.
  unsigned best_l1 = 0;
  Rational best_err(2);
  for (unsigned l1 = 0; l1 <= m - 1; ++l1) {
    const unsigned l2 = m - 1 - l1;
    if (l1 > 2 * m || l2 > m) continue;
    const Rational err = rational_pow(Rational(4), -static_cast<long long>(l1)) +
                         rational_pow(Rational(9), -static_cast<long long>(l2));
    if (err < best_err) {
      best_err = err;
      best_l1 = l1;
    }
  }
  const unsigned l2 = m - 1 - best_l1;
  const auto first = BAdicNumber::from_rational(x[0], 2, best_l1);
  const auto second = BAdicNumber::from_rational(x[1], 3, l2);
  std::vector<std::vector<Digit>> prefixes{
      std::vector<Digit>(first.digits().begin(), first.digits().end()),
      std::vector<Digit>(second.digits().begin(), second.digits().end())};
  return modified_box(frame, base_box(frame, m), {}, prefixes);
}

bool within_upsilon_radius(const std::vector<Rational>& x, const LevinBox& box) {
  const auto y = box.corner();
  if (x.size() != y.size()) throw std::invalid_argument("dimension mismatch");
  Rational d2(0);
  for (std::size_t j = 0; j < x.size(); ++j) d2 += (x[j] - y[j]) * (x[j] - y[j]);
  return d2 < Rational(8) * rational_pow(Rational(2), -static_cast<long long>(box.m));
}

bool Theorem5Report::ok() const {
  return failures.empty() && multiplicity >= required_multiplicity;
}

std::vector<LevinBox> upsilon_candidates(const HaltonFrame& frame, unsigned m) {
  require_bases_2_3(frame);
  const LevinBox base = base_box(frame, m);
  std::vector<LevinBox> out;
  std::set<std::vector<Rational>> seen;
  for (unsigned l1 = 0; l1 < m; ++l1) {
    for (unsigned l2 = 0; l1 + l2 < m; ++l2) {
      std::uint64_t combos = (std::uint64_t{1} << l1);
      for (unsigned i = 0; i < l2; ++i) combos *= 3;
      for (std::uint64_t t = 0; t < combos; ++t) {
        // Decode t as l1 binary then l2 ternary digits, last digit fastest.
        std::vector<Digit> p1(l1);
        std::vector<Digit> p2(l2);
        std::uint64_t rest = t;
        for (unsigned i = l2; i-- > 0; rest /= 3) p2[i] = static_cast<Digit>(rest % 3);
        for (unsigned i = l1; i-- > 0; rest /= 2) p1[i] = static_cast<Digit>(rest % 2);
        LevinBox box = modified_box(frame, base, {}, {p1, p2});
        if (seen.insert(box.corner()).second) out.push_back(std::move(box));
      }
    }
  }
  return out;
}

namespace {

struct Grid {
  unsigned rows;
  unsigned cols;
};

Grid square_grid(unsigned squares) {
  if (squares == 0) throw std::invalid_argument("need at least one square");
  auto rows = static_cast<unsigned>(std::sqrt(static_cast<double>(squares)));
  while (squares % rows != 0) --rows;
  return {rows, squares / rows};
}

std::size_t cell_of(const std::vector<Rational>& y, const Grid& g) {
  const auto col = static_cast<std::size_t>(floor(y[0] * Rational(g.cols)));
  const auto row = static_cast<std::size_t>(floor(y[1] * Rational(g.rows)));
  return row * g.cols + col;
}

// Best structural member per cell: the candidate with the largest |alpha|.
struct CellPick {
  std::optional<LevinBox> box;
  Rational alpha;
};

std::vector<CellPick> best_members(const HaltonFrame& frame, unsigned m, const Grid& g,
                                   std::uint64_t cap) {
  std::vector<CellPick> picks(static_cast<std::size_t>(g.rows) * g.cols);
  for (auto& box : upsilon_candidates(frame, m)) {
    const Rational a = alpha_bruteforce(frame, box, std::nullopt, cap);
    auto& pick = picks[cell_of(box.corner(), g)];
    if (!pick.box || a.abs() > pick.alpha.abs()) pick = {std::move(box), a};
  }
  return picks;
}

}  // namespace

Rational calibrate_c2(const HaltonFrame& frame, unsigned m, unsigned squares, std::uint64_t cap) {
  const auto picks = best_members(frame, m, square_grid(squares), cap);
  std::optional<Rational> worst;
  for (const auto& p : picks) {
    const Rational a = p.box ? p.alpha.abs() : Rational(0);
    if (!worst || a < *worst) worst = a;
  }
  return *worst / Rational(static_cast<long long>(m) * m);
}

Theorem5Report theorem5_search(const HaltonFrame& frame, unsigned m, unsigned squares,
                               const Rational& c2, std::uint64_t cap) {
  require_bases_2_3(frame);
  const Grid grid = square_grid(squares);
  const BigInt period = frame.modulus(m);
  if (period > cap) {
    throw CapExceeded("B_{tau m} = " + period.str() + " exceeds cap " + std::to_string(cap));
  }
  Theorem5Report rep;
  rep.m = m;
  rep.c2 = c2;
  rep.period = to_u64(period);

  const Rational m2(static_cast<long long>(m) * m);
  const Rational alpha_floor = c2 * m2;
  const Rational delta_floor = c2 * m2 / Rational(2);
  std::vector<std::uint32_t> multiplicity(rep.period + 1, 0);
  std::vector<WindowTrace> traces;
  std::vector<std::int64_t> thresholds;

  auto picks = best_members(frame, m, grid, cap);
  for (std::size_t idx = 0; idx < picks.size(); ++idx) {
    Theorem5Cell cell;
    const auto row = static_cast<long long>(idx / grid.cols);
    const auto col = static_cast<long long>(idx % grid.cols);
    cell.lower = {Rational(BigInt(col), BigInt(grid.cols)), Rational(BigInt(row), BigInt(grid.rows))};
    cell.upper = {Rational(BigInt(col + 1), BigInt(grid.cols)),
                  Rational(BigInt(row + 1), BigInt(grid.rows))};
    auto& pick = picks[idx];
    if (!pick.box) {
      rep.failures.push_back("no Upsilon candidate lies in cell " + std::to_string(idx));
      rep.cells.push_back(std::move(cell));
      traces.emplace_back();
      thresholds.push_back(0);
      continue;
    }
    cell.alpha = pick.alpha;
    cell.alpha_ok = cell.alpha.abs() >= alpha_floor;
    if (!cell.alpha_ok) {
      rep.failures.push_back("cell " + std::to_string(idx) + ": best |alpha| = " +
                             cell.alpha.abs().str() + " below c2 m^2 = " + alpha_floor.str());
    }
    cell.window_start = to_u64(window_anchor(frame, *pick.box).y_tilde);
    WindowTrace trace = window_trace(frame, *pick.box, cell.window_start, rep.period, cap);
    // |v| / den >= delta_floor  <=>  |v| >= ceil(delta_floor * den).
    const std::int64_t thr =
        ceil(delta_floor * Rational(BigInt(trace.denominator))).convert_to<std::int64_t>();
    if (cell.alpha_ok) {
      for (std::uint64_t n = 1; n <= rep.period; ++n) {
        const std::int64_t v = trace.numerators[n - 1];
        if ((v < 0 ? -v : v) >= thr) {
          ++cell.good_count;
          ++multiplicity[n];
        }
      }
    }
    rep.total_good += cell.good_count;
    cell.member = std::move(pick.box);
    rep.cells.push_back(std::move(cell));
    traces.push_back(std::move(trace));
    thresholds.push_back(thr);
  }

  for (std::uint64_t n = 1; n <= rep.period; ++n) {
    if (multiplicity[n] > rep.multiplicity) {
      rep.multiplicity = multiplicity[n];
      rep.n0 = n;
    }
  }
  rep.required_multiplicity = (rep.total_good + rep.period - 1) / rep.period;

  const Rational cell_area(BigInt(1), BigInt(squares));
  rep.lambda = Rational(0);
  rep.kappa = Rational(0);
  for (std::size_t i = 0; i < rep.cells.size(); ++i) {
    auto& cell = rep.cells[i];
    if (!cell.member || !cell.alpha_ok) continue;
    if (rep.n0 != 0) {
      const std::int64_t v = traces[i].numerators[rep.n0 - 1];
      cell.good_at_n0 = (v < 0 ? -v : v) >= thresholds[i];
    }
    if (cell.good_at_n0) rep.lambda += cell_area;
    const Rational bad(BigInt(rep.period - cell.good_count), BigInt(rep.period));
    if (bad > rep.kappa) rep.kappa = bad;
  }
  return rep;
}

}  // namespace exqmc
