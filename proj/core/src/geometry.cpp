#include "ellsum/geometry.hpp"

#include <algorithm>
#include <stdexcept>

#include "ellsum/polynomial.hpp"

namespace ellsum::geometry {

std::int64_t shioda_tate_rank(const FiberConfiguration& cfg) {
  if (cfg.mw_rank < 0) throw std::invalid_argument("mw_rank must be nonnegative");
  std::int64_t rank = cfg.mw_rank + 2;
  for (const std::int64_t m : cfg.components) {
    if (m < 1) throw std::invalid_argument("component counts must be positive");
    rank += m - 1;
  }
  return rank;
}

std::int64_t fiber_square_singular_count(const std::vector<std::int64_t>& components) {
  std::int64_t total = 0;
  for (const std::int64_t m : components) {
    if (m < 1) throw std::invalid_argument("component counts must be positive");
    total += m * m;
  }
  return total;
}

std::int64_t divisor_count_list2(std::int64_t rank_ns, std::int64_t sing_count) {
  if (rank_ns < 1 || sing_count < 0) throw std::invalid_argument("divisor_count_list2: bad arguments");
  return 2 * rank_ns + sing_count;
}

BigInt thm_e2_rhs(int n, const std::vector<std::int64_t>& b, const std::vector<std::int64_t>& ranks) {
  if (n < 2) throw std::invalid_argument("thm_e2_rhs: n must be at least 2");
  if (b.size() != static_cast<std::size_t>(n) || ranks.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("thm_e2_rhs: b and ranks must have n entries");
  }
  if (b[0] != 0) throw std::invalid_argument("thm_e2_rhs: b_1 must be 0");
  BigInt total = -1;
  BigInt binom = 1;
  for (int j = 1; j <= n; ++j) {
    binom = binom * (n - j + 1) / j;
    const BigInt term = binom * (BigInt(b[j - 1]) - ranks[j - 1]);
    total += (j % 2 == 0) ? term : BigInt(-term);
  }
  return total;
}

FiberedSurfaceTrace ap_fibered_surface(const ComponentData& data, std::int64_t p) {
  if (data.m_rational < 0) throw std::invalid_argument("m_rational must be nonnegative");
  std::int64_t ap = 0;
  for (const std::int64_t a : data.component_ap) ap += a;
  for (const std::int64_t nu : data.incidence) {
    if (nu < 1) throw std::invalid_argument("incidence multiplicities must be positive");
    ap += nu - 1;
  }
  ap -= data.m_rational - 1;
  return {ap, 1 - ap + p + (data.m_rational - 1) * p};
}

std::int64_t ap_from_point_count(std::int64_t point_count, std::int64_t m_rational, std::int64_t p) {
  return 1 + p + (m_rational - 1) * p - point_count;
}

DiscriminantMultiplicities disc_multiplicities(const curves::WeierstrassFamily& family) {
  const Poly& disc = family.discriminant();
  if (disc.is_zero()) throw std::invalid_argument("discriminant vanishes identically");
  DiscriminantMultiplicities out;
  out.semistable = !family.c4().is_zero();
  if (disc.is_constant()) return out;
  for (auto& f : squarefree_decomposition(disc)) {
    DiscriminantFactor d;
    d.multiplicative = !family.c4().is_zero() && poly_gcd(f.factor, family.c4()).is_constant();
    d.multiplicity = f.multiplicity;
    d.factor = std::move(f.factor);
    out.semistable = out.semistable && d.multiplicative;
    out.multiset.insert(out.multiset.end(), static_cast<std::size_t>(d.factor.degree()), d.multiplicity);
    out.factors.push_back(std::move(d));
  }
  std::sort(out.multiset.begin(), out.multiset.end());
  return out;
}

}  // namespace ellsum::geometry
