#pragma once

// Test boxes for (0,m,s)-nets with a point sitting at (or just above) the
// box corner gamma: the partition of [0,gamma) into elementary boxes, the
// exact three-band split of the local discrepancy, the general lower-bound
// check for such corners, and the construction of a good corner near any x.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "exqmc/discrepancy.hpp"
#include "exqmc/netcheck.hpp"

namespace exqmc {

// gamma^(j) = sum_{r in R_j} a_r^(j) b^-r with 1 <= a_r^(j) <= b-1.
class GammaSpec {
 public:
  struct Term {
    unsigned position;  // r
    Digit digit;        // a_r
    friend bool operator==(const Term&, const Term&) = default;
  };

  // Terms per coordinate; each list is sorted and checked. R_j must be
  // nonempty and inside {1..m}.
  GammaSpec(unsigned b, unsigned m, std::vector<std::vector<Term>> terms);

  unsigned base() const { return base_; }
  unsigned m() const { return m_; }
  std::size_t dimension() const { return terms_.size(); }
  const std::vector<Term>& terms(std::size_t j) const { return terms_[j]; }
  std::vector<unsigned> positions(std::size_t j) const;  // R_j
  unsigned max_position(std::size_t j) const;

  // gamma as a point with m digits per coordinate.
  BAdicPoint point() const;

 private:
  unsigned base_;
  unsigned m_;
  std::vector<std::vector<Term>> terms_;
};

using IndexVector = std::vector<unsigned>;

// A = R_1 x ... x R_s split by |r| = r_1 + ... + r_s:
//   A1: |r| <= m,  A2: m+1 <= |r| < m+s,  A3: |r| >= m+s,  A4: |r| = m+alpha.
struct IndexPartition {
  std::vector<IndexVector> all;
  std::vector<IndexVector> a1;
  std::vector<IndexVector> a2;
  std::vector<IndexVector> a3;
  std::vector<IndexVector> a4;
  unsigned alpha = 0;
};

IndexPartition classify_indices(const GammaSpec& gamma, unsigned alpha);

struct PartitionBox {
  IndexVector r;
  std::vector<Digit> g;
  ElementaryBox box;
};

// Boxes prod_j [[gamma^(j)]_{r_j-1} + g_j b^-r_j, ... + (g_j+1) b^-r_j),
// 0 <= g_j < a_{r_j}^(j), over every r in A. Pairwise disjoint with union
// [0, gamma).
std::vector<PartitionBox> partition_boxes(const GammaSpec& gamma);

// Which partition box x falls in, decided from the first digit where each
// coordinate leaves gamma's expansion; nullopt when x is not in [0, gamma).
std::optional<std::pair<IndexVector, std::vector<Digit>>> locate_in_partition(
    const GammaSpec& gamma, const BAdicPoint& x);

struct DeltaDecomposition {
  Rational delta1;
  Rational delta2;
  Rational delta3;
  Rational sum;     // delta1 + delta2 + delta3
  Rational direct;  // local_discrepancy(P, gamma).normalized
  std::size_t a1_size = 0;
  std::size_t a2_size = 0;
  std::size_t a3_size = 0;
  std::size_t a4_size = 0;  // with alpha = s
  bool a3_boxes_empty = true;
  std::vector<std::uint64_t> counts;  // parallel to partition_boxes(gamma)
};

// Throws std::invalid_argument when P is not a (0,m,s)-net in gamma's base.
DeltaDecomposition delta_decomposition(const PointSet& points, const GammaSpec& gamma);

// gamma^(1) = sum_{j=1..m/4} 2^-2j, gamma^(2) = sum_{j=1..m/4} 2^-(m/2+2j).
// Requires m >= 4 and m divisible by 4.
GammaSpec gamma_theorem3(unsigned m);

struct LevinNetParams {
  unsigned alpha = 2;
  Rational beta{1};
  std::optional<Rational> delta;  // nullopt: the delta -> infinity limit
};

// alpha = s, beta = (4s^2(s-1)^2)^(s-1) / (2s-3)^(s-1), delta -> infinity.
LevinNetParams theorem4_params(unsigned s);

struct Lemma31Report {
  bool preconditions_met = false;
  bool bound_holds = false;
  std::vector<std::string> failures;  // one line per violated constraint
  std::optional<std::size_t> anchor_index;
  std::size_t a2_size = 0;
  std::size_t a4_size = 0;
  Rational bracket;     // must be > 0
  Rational bound;       // -(m^(s-1) / b^m) * bracket
  Rational normalized;  // Delta(gamma) / N
  bool ok() const { return preconditions_met && bound_holds; }
};

Lemma31Report lemma31_check(const PointSet& points, const GammaSpec& gamma,
                            const LevinNetParams& params);

// Corner in Gamma near x: copy x's nonzero digits up to
// k = [m / (2s(s-1))] and append all-ones tails on the index sets T_i.
// Requires m >= 2 s^s (s-1)^s and x of dimension s in base b.
GammaSpec nearest_gamma(const BAdicPoint& x, unsigned m, unsigned s, unsigned b);

struct GammaConditions {
  std::size_t band_count = 0;      // |{r : m+1 <= |r| < m+s}|
  std::size_t boundary_count = 0;  // |{r : |r| = m+s}|
  Rational required_boundary;      // m^(s-1) (2s-3)^(s-1) / (4s^2(s-1)^2)^(s-1)
  bool ok() const { return band_count == 0 && Rational(static_cast<long long>(boundary_count)) >= required_boundary; }
};

GammaConditions gamma_conditions(const GammaSpec& gamma);

// ||x - gamma||_2 < b sqrt(s) b^(-m / (2(s-1)s)), decided exactly.
bool within_gamma_radius(const std::vector<Rational>& x, const std::vector<Rational>& gamma,
                         unsigned m, unsigned b);

}  // namespace exqmc
