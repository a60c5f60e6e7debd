#include "ellsum/curves.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "ellsum/arith.hpp"

namespace ellsum::curves {

using arith::mod;

std::string_view to_string(ReductionKind kind) {
  switch (kind) {
    case ReductionKind::Good: return "good";
    case ReductionKind::SplitMultiplicative: return "split";
    case ReductionKind::NonsplitMultiplicative: return "nonsplit";
    case ReductionKind::Additive: return "additive";
  }
  return "unknown";
}

QuadraticCharacter::QuadraticCharacter(std::int64_t p) : p_(p) {
  if (p < 3 || !arith::is_prime(p)) {
    throw std::invalid_argument("QuadraticCharacter: need an odd prime, got " + std::to_string(p));
  }
  table_.assign(static_cast<std::size_t>(p), -1);
  table_[0] = 0;
  for (std::int64_t x = 1; x <= (p - 1) / 2; ++x) table_[static_cast<std::size_t>(x * x % p)] = 1;
}

std::int64_t cubic_character_sum(std::int64_t a, std::int64_t b, const QuadraticCharacter& chi) {
  // f(x) = x^3 + a x + b walked by forward differences: all steps are
  // additions mod p.
  const auto p = static_cast<std::uint32_t>(chi.prime());
  const std::int8_t* table = chi.table().data();
  std::uint32_t f = static_cast<std::uint32_t>(b);
  std::uint32_t d1 = static_cast<std::uint32_t>((1 + a) % chi.prime());
  std::uint32_t d2 = 6 % p;
  const std::uint32_t d3 = 6 % p;
  std::int64_t sum = 0;
  for (std::uint32_t x = 0; x < p; ++x) {
    sum += table[f];
    f += d1;
    f = f >= p ? f - p : f;
    d1 += d2;
    d1 = d1 >= p ? d1 - p : d1;
    d2 += d3;
    d2 = d2 >= p ? d2 - p : d2;
  }
  return sum;
}

namespace {

std::int64_t short_discriminant_residue(std::int64_t a, std::int64_t b, std::int64_t p) {
  const std::int64_t a3 = arith::mulmod(arith::mulmod(a, a, p), a, p);
  return mod(4 * a3 + 27 * arith::mulmod(b, b, p), p);
}

}  // namespace

FiberReduction ap_short(std::int64_t a, std::int64_t b, const QuadraticCharacter& chi) {
  const std::int64_t p = chi.prime();
  if (p <= 3) throw std::invalid_argument("ap_short: p must exceed 3");
  a = mod(a, p);
  b = mod(b, p);
  if (short_discriminant_residue(a, b, p) != 0) {
    const std::int64_t ap = -cubic_character_sum(a, b, chi);
    if (ap * ap >= 4 * p) throw std::logic_error("Hasse bound violated at p=" + std::to_string(p));
    return {ReductionKind::Good, ap};
  }
  if (a == 0 && b == 0) return {ReductionKind::Additive, 0};
  // Node at the double root x0 = -3B / (2A); the tangent cone is y^2 = 3 x0 (x - x0)^2.
  const std::int64_t x0 = arith::mulmod(mod(-3 * b, p), arith::powmod(2 * a, p - 2, p), p);
  const int slope = chi(mod(3 * x0, p));
  return slope == 1 ? FiberReduction{ReductionKind::SplitMultiplicative, 1}
                    : FiberReduction{ReductionKind::NonsplitMultiplicative, -1};
}

FiberReduction ap_short(std::int64_t a, std::int64_t b, std::int64_t p) {
  if (p <= 3) throw std::invalid_argument("ap_short: p must exceed 3");
  return ap_short(a, b, QuadraticCharacter(p));
}

WeierstrassFamily::WeierstrassFamily(Poly a1, Poly a2, Poly a3, Poly a4, Poly a6, std::string label)
    : a_{std::move(a1), std::move(a2), std::move(a3), std::move(a4), std::move(a6)}, label_(std::move(label)) {
  const Poly& x1 = a_[0];
  const Poly& x2 = a_[1];
  const Poly& x3 = a_[2];
  const Poly& x4 = a_[3];
  const Poly& x6 = a_[4];
  const Poly b2 = x1 * x1 + BigInt(4) * x2;
  const Poly b4 = BigInt(2) * x4 + x1 * x3;
  const Poly b6 = x3 * x3 + BigInt(4) * x6;
  const Poly b8 = x1 * x1 * x6 + BigInt(4) * x2 * x6 - x1 * x3 * x4 + x2 * x3 * x3 - x4 * x4;
  c4_ = b2 * b2 - BigInt(24) * b4;
  c6_ = BigInt(-1) * b2 * b2 * b2 + BigInt(36) * b2 * b4 - BigInt(216) * b6;
  disc_ = BigInt(-1) * b2 * b2 * b8 - BigInt(8) * b4 * b4 * b4 - BigInt(27) * b6 * b6 + BigInt(9) * b2 * b4 * b6;
  if (disc_.is_zero()) throw std::invalid_argument("WeierstrassFamily: discriminant vanishes identically");
  short_a_ = BigInt(-27) * c4_;
  short_b_ = BigInt(-54) * c6_;
}

WeierstrassFamily WeierstrassFamily::from_short(Poly a, Poly b, std::string label) {
  return WeierstrassFamily({}, {}, {}, std::move(a), std::move(b), std::move(label));
}

bool WeierstrassFamily::is_good_prime(std::int64_t p) const {
  if (p <= 3) return false;
  const BigInt bp = p;
  if (disc_.leading() % bp == 0) return false;
  if (!c4_.is_zero() && c4_.content() % bp == 0) return false;
  return true;
}

std::optional<FiberReduction> specialize(const WeierstrassFamily& family, std::int64_t t, std::int64_t p) {
  if (!family.is_good_prime(p)) return std::nullopt;
  return ap_short(family.short_a().eval_mod(t, p), family.short_b().eval_mod(t, p), p);
}

namespace {

// Character sums of kLanes cubics x^3 + a x + b sharing one table of cubes;
// independent lanes keep the pipeline busy.
constexpr std::size_t kLanes = 8;

void cubic_character_sums(const std::uint32_t* a, const std::uint32_t* b, std::int64_t* out,
                          const std::vector<std::uint32_t>& cubes, const QuadraticCharacter& chi) {
  const auto p = static_cast<std::uint32_t>(chi.prime());
  const std::int8_t* table = chi.table().data();
  std::uint32_t lin[kLanes];
  std::int32_t sum[kLanes];
  for (std::size_t k = 0; k < kLanes; ++k) {
    lin[k] = b[k];
    sum[k] = 0;
  }
  for (std::uint32_t x = 0; x < p; ++x) {
    const std::uint32_t c = cubes[x];
    for (std::size_t k = 0; k < kLanes; ++k) {
      std::uint32_t v = c + lin[k];
      v = v >= p ? v - p : v;
      sum[k] += table[v];
      lin[k] += a[k];
      lin[k] = lin[k] >= p ? lin[k] - p : lin[k];
    }
  }
  for (std::size_t k = 0; k < kLanes; ++k) out[k] = sum[k];
}

}  // namespace

std::optional<std::vector<std::int32_t>> fiber_traces(const WeierstrassFamily& family, std::int64_t p) {
  if (!family.is_good_prime(p)) return std::nullopt;
  const QuadraticCharacter chi(p);
  const auto ra = family.short_a().reduce_mod(p);
  const auto rb = family.short_b().reduce_mod(p);
  const auto n = static_cast<std::size_t>(p);
  const std::size_t padded = (n + kLanes - 1) / kLanes * kLanes;
  std::vector<std::uint32_t> as(padded, 0), bs(padded, 0);
  for (std::size_t t = 0; t < n; ++t) {
    as[t] = static_cast<std::uint32_t>(eval_reduced(ra, static_cast<std::int64_t>(t), p));
    bs[t] = static_cast<std::uint32_t>(eval_reduced(rb, static_cast<std::int64_t>(t), p));
  }
  std::vector<std::uint32_t> cubes(n);
  for (std::size_t x = 0; x < n; ++x) {
    const auto xi = static_cast<std::int64_t>(x);
    cubes[x] = static_cast<std::uint32_t>(arith::mulmod(arith::mulmod(xi, xi, p), xi, p));
  }
  std::vector<std::int64_t> sums(padded);
  for (std::size_t t = 0; t < padded; t += kLanes) cubic_character_sums(&as[t], &bs[t], &sums[t], cubes, chi);
  std::vector<std::int32_t> traces(n);
  for (std::size_t t = 0; t < n; ++t) {
    const std::int64_t ap = -sums[t];
    if (short_discriminant_residue(as[t], bs[t], p) != 0 && ap * ap >= 4 * p) {
      throw std::logic_error("Hasse bound violated at p=" + std::to_string(p) + ", t=" + std::to_string(t));
    }
    traces[t] = static_cast<std::int32_t>(ap);
  }
  return traces;
}

BigInt power_sum(std::span<const std::int32_t> traces, std::int64_t p, int n) {
  if (n < 1) throw std::invalid_argument("power_sum: n must be positive");
  const double bits = n * (1.0 + 0.5 * std::log2(static_cast<double>(p))) + std::log2(static_cast<double>(p));
  if (bits < 126.0) {
    Int128 acc = 0;
    for (const std::int32_t ap : traces) {
      Int128 term = 1;
      for (int i = 0; i < n; ++i) term *= ap;
      acc += term;
    }
    return to_big(acc);
  }
  BigInt acc = 0;
  for (const std::int32_t ap : traces) acc += boost::multiprecision::pow(BigInt(ap), static_cast<unsigned>(n));
  return acc;
}

std::optional<BigInt> fiber_power_sum(const WeierstrassFamily& family, std::int64_t p, int n) {
  auto traces = fiber_traces(family, p);
  if (!traces) return std::nullopt;
  return power_sum(*traces, p, n);
}

std::optional<std::vector<BigInt>> fiber_power_sums(const WeierstrassFamily& family, std::int64_t p,
                                                    std::span<const int> powers) {
  auto traces = fiber_traces(family, p);
  if (!traces) return std::nullopt;
  std::vector<BigInt> out;
  out.reserve(powers.size());
  for (const int n : powers) out.push_back(power_sum(*traces, p, n));
  return out;
}

std::int64_t ap_hyperelliptic(const Poly& f, std::int64_t p) {
  if (p <= 2 || !arith::is_prime(p)) throw std::invalid_argument("ap_hyperelliptic: p must be an odd prime");
  if (f.degree() < 1 || f.degree() % 2 == 0) {
    throw std::invalid_argument("ap_hyperelliptic: only odd-degree models are supported");
  }
  const auto coeffs = f.reduce_mod(p);
  if (coeffs.back() == 0) throw std::invalid_argument("ap_hyperelliptic: leading coefficient vanishes mod p");
  const QuadraticCharacter chi(p);
  std::int64_t sum = 0;
  for (std::int64_t x = 0; x < p; ++x) sum += chi(eval_reduced(coeffs, x, p));
  return -sum;
}

std::int64_t ap_long_naive(const std::array<std::int64_t, 5>& a, std::int64_t p) {
  if (!arith::is_prime(p)) throw std::invalid_argument("ap_long_naive: p must be prime");
  const std::int64_t a1 = mod(a[0], p), a2 = mod(a[1], p), a3 = mod(a[2], p), a4 = mod(a[3], p),
                     a6 = mod(a[4], p);
  std::int64_t count = 1;  // point at infinity
  for (std::int64_t x = 0; x < p; ++x) {
    const std::int64_t rhs = mod(((x * x % p) * x + a2 * (x * x % p) + a4 * x + a6), p);
    for (std::int64_t y = 0; y < p; ++y) {
      if (mod(y * y + a1 * x % p * y + a3 * y, p) == rhs) ++count;
    }
  }
  return p + 1 - count;
}

}  // namespace ellsum::curves
