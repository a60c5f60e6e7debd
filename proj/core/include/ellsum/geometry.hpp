#pragma once

// Counting identities for elliptic surfaces and their fiber powers: Picard
// ranks from fiber components, singular points of the fiber square, the
// multi-component trace, and discriminant root multiplicities.

#include <cstdint>
#include <vector>

#include "ellsum/bigint.hpp"
#include "ellsum/curves.hpp"

namespace ellsum::geometry {

struct FiberConfiguration {
  std::int64_t mw_rank = 0;
  /// m(t) for each singular fiber, every entry >= 1.
  std::vector<std::int64_t> components;
};

/// rank NS = mw_rank + 2 + sum (m(t) - 1).
std::int64_t shioda_tate_rank(const FiberConfiguration& cfg);

/// sum m(t)^2.
std::int64_t fiber_square_singular_count(const std::vector<std::int64_t>& components);

/// 2 rank_ns + sing_count.
std::int64_t divisor_count_list2(std::int64_t rank_ns, std::int64_t sing_count);

/// -1 + sum_{j=1}^{n} (-1)^j C(n, j) (b_j - rank_j). b and ranks are indexed
/// from j = 1 and must have length n; b_1 must be 0.
BigInt thm_e2_rhs(int n, const std::vector<std::int64_t>& b, const std::vector<std::int64_t>& ranks);

struct ComponentData {
  std::vector<std::int64_t> component_ap;
  /// nu(x) for the F_p-points lying on two or more components.
  std::vector<std::int64_t> incidence;
  std::int64_t m_rational = 1;
};

struct FiberedSurfaceTrace {
  std::int64_t ap = 0;
  /// 1 - ap + N + (m - 1) N.
  std::int64_t point_count = 0;
};

/// sum ap(C_i) + sum (nu(x) - 1) - (m - 1), with N = p.
FiberedSurfaceTrace ap_fibered_surface(const ComponentData& data, std::int64_t p);

/// Inverse of the point-count relation: ap = 1 + N + (m - 1) N - #S.
std::int64_t ap_from_point_count(std::int64_t point_count, std::int64_t m_rational, std::int64_t p);

struct DiscriminantFactor {
  Poly factor;
  int multiplicity = 0;
  /// gcd(factor, c4) is constant, so the fibers over its roots are nodal.
  bool multiplicative = false;
};

struct DiscriminantMultiplicities {
  std::vector<DiscriminantFactor> factors;
  /// deg(g_i) copies of i for each factor g_i^i, ascending.
  std::vector<int> multiset;
  /// No additive fibers over the affine line.
  bool semistable = false;
};

DiscriminantMultiplicities disc_multiplicities(const curves::WeierstrassFamily& family);

}  // namespace ellsum::geometry
