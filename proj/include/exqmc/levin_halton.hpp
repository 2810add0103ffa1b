#pragma once

// CRT bookkeeping for the Halton sequence against the box [0, y) with
// y_i = sum_{j=1..m} b_i^(-j tau_i): which n put H(n) into each piece P_k
// of the box, the window average alpha_m, and searches for bad N.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "exqmc/generators.hpp"
#include "exqmc/levin_net.hpp"

namespace exqmc {

struct HaltonFrame {
  HaltonSpec spec;
  std::vector<unsigned> tau;     // ord of b_i modulo B / b_i
  std::vector<BigInt> cofactor;  // B / b_i

  std::size_t dimension() const { return tau.size(); }
  // B_{tau k} for the vector (tau_1 k_1, ..., tau_s k_s).
  BigInt modulus(const IndexVector& k) const;
  // B_{tau m} with every k_i = m.
  BigInt modulus(unsigned m) const;
};

// Throws for s < 2 (B / b_i = 1 has no order).
HaltonFrame tau_orders(const HaltonSpec& spec);

struct ModulusData {
  IndexVector r;          // tau . k
  BigInt b_r;             // prod b_i^(r_i)
  std::vector<BigInt> M;  // M_i (B_r / b_i^(r_i)) = 1 mod b_i^(r_i), M_i in [1, b_i^(r_i)]
};

ModulusData crt_data(const HaltonFrame& frame, const IndexVector& k);

// Least non-negative inverse of a modulo n; throws when gcd(a, n) != 1.
BigInt mod_inverse(const BigInt& a, const BigInt& n);

// Upper corner y with per-coordinate digits of length tau_i m. The base box
// has digit 1 at positions j tau_i, j = 1..m. `removed` and `prefix` record
// how a box was derived from the base one.
struct LevinBox {
  unsigned m = 0;
  std::vector<BAdicNumber> upper;
  std::vector<std::vector<unsigned>> removed;  // addend indices j dropped, per coordinate
  std::vector<std::size_t> prefix_lengths;     // l_i, 0 when untouched

  // S_i when every digit is 0 except 1s at positions j tau_i, else nullopt.
  std::optional<std::vector<std::vector<unsigned>>> addend_sets(const HaltonFrame& frame) const;
  bool is_base() const;
  // l_1 + ... + l_s < m.
  bool prefix_condition() const;
  std::vector<Rational> corner() const;
  Rational volume() const;
};

LevinBox base_box(const HaltonFrame& frame, unsigned m);

// Drop addends j (1..m) per coordinate, then overwrite the leading digits
// of coordinate i with prefix[i]. Throws when a prefix is longer than
// tau_i m or an addend index is out of range.
LevinBox modified_box(const HaltonFrame& frame, const LevinBox& box,
                      const std::vector<std::vector<unsigned>>& removals,
                      const std::vector<std::vector<Digit>>& prefixes);

struct WindowAnchor {
  unsigned m = 0;
  BigInt y_tilde;           // in [0, B_{tau (m+1)})
  std::vector<BigInt> a;    // A_k for k in {1..m}^s, k_1 varying slowest
  const BigInt& a_k(const IndexVector& k) const;
};

// y_tilde from the box's own digits extended by a unit digit at position
// tau_i (m+1); A_k = -sum_i M_i B_{tau k} / b_i mod B_{tau k}.
WindowAnchor window_anchor(const HaltonFrame& frame, const LevinBox& box);

// n = y_tilde + A_k mod B_{tau k}.
bool membership_congruence(const HaltonFrame& frame, const WindowAnchor& anchor,
                           const IndexVector& k, std::uint64_t n);
// phi_{b_i}(n) in [[y_i]_{tau_i k_i} - b_i^(-tau_i k_i), [y_i]_{tau_i k_i}) for
// every i, in rationals.
bool membership_geometric(const HaltonFrame& frame, const LevinBox& box, const IndexVector& k,
                          std::uint64_t n);

// H(n) in [0, y), by digit comparison.
bool in_box(const HaltonFrame& frame, const LevinBox& box, std::uint64_t n);

// sum over k in S_1 x ... x S_s of 1/2 - A_k / B_{tau k} - 1 / (2 B_{tau k}).
// Boxes with rewritten prefixes are rejected.
Rational alpha_closed(const HaltonFrame& frame, const LevinBox& box);

inline constexpr std::uint64_t kDefaultWindowCap = 2985984;  // 12^6

// Delta(y, H(start), ..., H(start + N - 1)) for N = 1..length, kept as
// numerators over denominator B_{tau m}.
struct WindowTrace {
  std::uint64_t start = 0;
  std::int64_t denominator = 1;
  std::vector<std::int64_t> numerators;
  Rational delta(std::uint64_t n) const;  // 1-based N
};

WindowTrace window_trace(const HaltonFrame& frame, const LevinBox& box, std::uint64_t start,
                         std::uint64_t length, std::uint64_t cap = kDefaultWindowCap);

// Average of Delta over windows of length 1..B_{tau m} starting at `start`
// (the box's own y_tilde when omitted). Throws CapExceeded above cap.
Rational alpha_bruteforce(const HaltonFrame& frame, const LevinBox& box,
                          std::optional<std::uint64_t> start = std::nullopt,
                          std::uint64_t cap = kDefaultWindowCap);

struct Theorem2Result {
  std::uint64_t y_tilde = 0;
  std::uint64_t period = 0;  // B_{tau m}
  std::uint64_t n_star = 0;
  std::uint64_t n_m = 0;     // y_tilde + n_star
  Rational alpha;
  Rational delta_star;       // window Delta at n_star
  Rational mean_abs;         // mean |Delta| over the window lengths
  Rational head_delta;       // Delta over H(0..y_tilde-1)
  Rational full_delta;       // Delta over H(0..n_m-1)
  bool averaging_ok = false; // |delta_star| >= |alpha|
  bool split_ok = false;     // max(|head|, |full|) >= |alpha| / 2
  bool n_m_bound_ok = false; // n_m <= B_{tau(m+1)} + B_{tau m}
};

// Cap applies to the number of streamed points, y_tilde + B_{tau m}.
Theorem2Result theorem2_search(const HaltonFrame& frame, const LevinBox& box,
                               std::uint64_t cap = kDefaultWindowCap);

// Bases (2, 3) only. Copies l_1 binary and l_2 ternary digits of x with
// l_1 + l_2 = m - 1, chosen to minimise 4^-l_1 + 9^-l_2.
LevinBox upsilon_nearest(const HaltonFrame& frame, const std::vector<Rational>& x, unsigned m);

// |x - y|^2 < 8 * 2^-m for the box corner y.
bool within_upsilon_radius(const std::vector<Rational>& x, const LevinBox& box);

struct Theorem5Cell {
  std::vector<Rational> lower;
  std::vector<Rational> upper;
  std::optional<LevinBox> member;   // y_i: the candidate in the cell with the largest |alpha|
  std::uint64_t window_start = 0;   // y_tilde of the member
  Rational alpha;
  bool alpha_ok = false;            // |alpha| >= c2 m^2
  std::uint64_t good_count = 0;     // N with |Delta| >= (c2/2) m^2
  bool good_at_n0 = false;
};

struct Theorem5Report {
  unsigned m = 0;
  Rational c2;
  std::uint64_t period = 0;
  std::vector<Theorem5Cell> cells;
  std::vector<std::string> failures;
  std::uint64_t total_good = 0;
  std::uint64_t n0 = 0;
  std::uint64_t multiplicity = 0;
  std::uint64_t required_multiplicity = 0;  // ceil(total_good / period)
  Rational lambda;                          // area of cells good at n0
  Rational kappa;                           // max over cells of bad fraction
  bool ok() const;
};

// Every prefix box with l_1 + l_2 < m, deduplicated by corner.
std::vector<LevinBox> upsilon_candidates(const HaltonFrame& frame, unsigned m);

// min over cells of (max |alpha| of a candidate in the cell) / m^2: the
// largest c2 for which every cell holds a Upsilon member.
Rational calibrate_c2(const HaltonFrame& frame, unsigned m, unsigned squares,
                      std::uint64_t cap = kDefaultWindowCap);

// Splits [0,1)^2 into rows x cols cells (rows * cols = squares, as square as
// possible) and takes as y_i the candidate in each cell with the largest
// |alpha| (window from its own y_tilde). A cell whose y_i misses
// |alpha| >= c2 m^2 is reported as a failure. The pigeonhole then runs over
// window lengths 1..B_{tau m}.
Theorem5Report theorem5_search(const HaltonFrame& frame, unsigned m, unsigned squares,
                               const Rational& c2, std::uint64_t cap = kDefaultWindowCap);

}  // namespace exqmc
