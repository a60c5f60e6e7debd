#include "ellsum/moments.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "ellsum/arith.hpp"
#include "ellsum/curves.hpp"
#include "ellsum/isogeny.hpp"

namespace ellsum::moments {

namespace {

void require_level(std::int64_t p, std::int64_t m) {
  if (!arith::is_prime(p)) throw std::invalid_argument("p must be prime, got " + std::to_string(p));
  if (m < 1 || m % 2 == 0) throw std::invalid_argument("level M must be odd and positive");
  if (m % p == 0) throw std::invalid_argument("p divides the level M");
}

std::int64_t trace_bound(std::int64_t p) {
  // largest a with a^2 < 4p
  auto b = static_cast<std::int64_t>(std::sqrt(4.0 * static_cast<double>(p)));
  while (b * b >= 4 * p) --b;
  while ((b + 1) * (b + 1) < 4 * p) ++b;
  return b;
}

BigInt exact_half(const BigInt& v, const char* what) {
  if (v % 2 != 0) throw std::logic_error(std::string(what) + ": expected an even numerator");
  return v / 2;
}

// sum_f h_w(D/f^2) * weight(f), in sixths.
template <class Hurwitz>
std::int64_t level_mass(std::int64_t a, std::int64_t p, std::int64_t m, const Hurwitz& hw) {
  const std::int64_t d = a * a - 4 * p;
  std::int64_t s = 0;
  for (const std::int64_t f : isogeny::conductor_gaps(d)) {
    s += hw(d / (f * f)) * isogeny::subgroup_weight(a, f, p, m);
  }
  return s;
}

template <class Acc, class Hurwitz>
BigInt weighted_sum(std::int64_t p, int n, std::int64_t m, const Hurwitz& hw) {
  const std::int64_t bound = trace_bound(p);
  Acc total = 0;
  // sigma(a) = sigma(-a): pair +a with -a.
  for (std::int64_t a = 1; a <= bound; ++a) {
    const std::int64_t mass = level_mass(a, p, m, hw);
    Acc pos = mass;
    Acc neg = mass;
    for (int i = 0; i < n; ++i) {
      pos *= a;
      neg *= -a;
    }
    total += pos + neg;
  }
  if constexpr (std::is_same_v<Acc, Int128>) {
    return to_big(total);
  } else {
    return total;
  }
}

template <class Hurwitz>
Sixths weighted_impl(std::int64_t p, int n, std::int64_t m, const Hurwitz& hw) {
  if (p <= 3) throw std::invalid_argument("weighted_moment: p must exceed 3");
  require_level(p, m);
  if (n < 1) throw std::invalid_argument("weighted_moment: n must be positive");
  // |a^n * mass| <= (4p)^(n/2) * 12 sqrt(4p) log(4p) * 2M; stay well inside 2^126.
  const double bits = 0.5 * n * std::log2(4.0 * p) + std::log2(4.0 * p) + 2 * std::log2(2.0 * m) + 12;
  const BigInt total = bits < 120 ? weighted_sum<Int128>(p, n, m, hw) : weighted_sum<BigInt>(p, n, m, hw);
  return {exact_half(total, "weighted_moment")};
}

auto direct_hurwitz = [](std::int64_t d) { return classnum::hurwitz_weighted(d).sixths; };

}  // namespace

std::string Sixths::to_string() const {
  BigInt num = sixths;
  BigInt den = 6;
  const BigInt g = boost::multiprecision::gcd(boost::multiprecision::abs(num), den);
  num /= g;
  den /= g;
  return den == 1 ? num.str() : num.str() + "/" + den.str();
}

BigInt q_weight(std::int64_t a, std::int64_t p, int k) {
  if (k < 0) throw std::invalid_argument("q_weight: k must be nonnegative");
  BigInt prev = 1;
  if (k == 0) return prev;
  const BigInt a2 = BigInt(a) * a;
  const BigInt bp = p;
  BigInt cur = a2 - bp;
  const BigInt step = a2 - 2 * bp;
  const BigInt p2 = bp * bp;
  for (int j = 1; j < k; ++j) {
    BigInt next = step * cur - p2 * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

std::int64_t c_coeff_constant(int n, int i) {
  if (n < 0 || i < 0 || i > n) throw std::invalid_argument("c_coeff: need 0 <= i <= n");
  // (2i+1) C(2n, n-i) / (n+i+1)
  Int128 binom = 1;
  for (int j = 1; j <= n - i; ++j) binom = binom * (2 * n - (n - i) + j) / j;
  const Int128 num = (2 * i + 1) * binom;
  if (num % (n + i + 1) != 0) throw std::logic_error("c_coeff: closed form is not integral");
  return static_cast<std::int64_t>(num / (n + i + 1));
}

BigInt c_coeff(int n, int i, std::int64_t p) {
  return BigInt(c_coeff_constant(n, i)) * boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(n - i));
}

std::vector<std::vector<Poly>> c_coeff_recurrence(int max_n) {
  if (max_n < 0) throw std::invalid_argument("c_coeff_recurrence: max_n must be nonnegative");
  const Poly pp = Poly::monomial(1, 1);
  const Poly pp2 = Poly::monomial(1, 2);
  std::vector<std::vector<Poly>> rows{{Poly::constant(1)}};
  for (int n = 0; n < max_n; ++n) {
    const auto& cur = rows.back();
    auto at = [&](int i) { return (i >= 0 && i <= n) ? cur[static_cast<std::size_t>(i)] : Poly{}; };
    std::vector<Poly> next(static_cast<std::size_t>(n) + 2);
    next[0] = pp * at(0) + pp2 * at(1);
    for (int i = 1; i <= n + 1; ++i) {
      next[static_cast<std::size_t>(i)] = at(i - 1) + BigInt(2) * pp * at(i) + pp2 * at(i + 1);
    }
    rows.push_back(std::move(next));
  }
  return rows;
}

BigInt main_term(std::int64_t p, int n) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("main_term: n must be even and positive");
  return c_coeff(n / 2, 0, p) * p;
}

Sixths weighted_moment(std::int64_t p, int n, std::int64_t m) { return weighted_impl(p, n, m, direct_hurwitz); }

Sixths weighted_moment(std::int64_t p, int n, std::int64_t m, const classnum::HurwitzTable& table) {
  if (table.limit() < 4 * p) throw std::invalid_argument("weighted_moment: Hurwitz table too small");
  return weighted_impl(p, n, m, [&table](std::int64_t d) { return table.weighted(d).sixths; });
}

std::int64_t ApHistogram::count(std::int64_t a) const {
  if (a < -bound || a > bound) return 0;
  return counts[static_cast<std::size_t>(a + bound)];
}

ApHistogram ap_histogram(std::int64_t p) {
  if (p <= 3 || !arith::is_prime(p)) throw std::invalid_argument("ap_histogram: p must be a prime > 3");
  const curves::QuadraticCharacter chi(p);
  ApHistogram h{p, trace_bound(p), {}};
  h.counts.assign(static_cast<std::size_t>(2 * h.bound + 1), 0);
  for (std::int64_t a = 0; a < p; ++a) {
    const std::int64_t a3 = a * a % p * a % p;
    for (std::int64_t b = 0; b < p; ++b) {
      if ((4 * a3 + 27 * (b * b % p)) % p == 0) continue;
      const std::int64_t ap = -curves::cubic_character_sum(a, b, chi);
      ++h.counts[static_cast<std::size_t>(ap + h.bound)];
    }
  }
  return h;
}

BigInt brute_moment(const ApHistogram& histogram, int n) {
  if (n < 1) throw std::invalid_argument("brute_moment: n must be positive");
  BigInt total = 0;
  for (std::int64_t a = -histogram.bound; a <= histogram.bound; ++a) {
    total += boost::multiprecision::pow(BigInt(a), static_cast<unsigned>(n)) * histogram.count(a);
  }
  return total;
}

BigInt brute_moment(std::int64_t p, int n) { return brute_moment(ap_histogram(p), n); }

std::int64_t hurwitz_mass_sixths(std::int64_t a, std::int64_t p) {
  return level_mass(a, p, 1, direct_hurwitz);
}

std::int64_t hyperbolic_correction(std::int64_t p, std::int64_t m) {
  const std::int64_t allowed = std::gcd(m, p - 1);
  std::int64_t s = 0;
  for (const std::int64_t c : arith::divisors(m)) {
    const std::int64_t g = std::gcd(c, m / c);
    if (allowed % g == 0) s += arith::euler_phi(g);
  }
  return s;
}

Sixths eichler_selberg_trace(std::int64_t p, int weight, std::int64_t m) {
  require_level(p, m);
  if (weight < 2 || weight % 2 != 0) throw std::invalid_argument("weight must be even and at least 2");
  const int k = weight / 2;
  const std::int64_t bound = trace_bound(p);
  BigInt elliptic = 0;  // sum_a Q(a, k-1) * mass, in sixths
  for (std::int64_t a = -bound; a <= bound; ++a) {
    const std::int64_t mass = level_mass(a, p, m, direct_hurwitz);
    if (mass != 0) elliptic += q_weight(a, p, k - 1) * mass;
  }
  BigInt t = -exact_half(elliptic, "eichler_selberg_trace") - 6 * BigInt(hyperbolic_correction(p, m));
  if (weight == 2) t += 6 * BigInt(p + 1);
  return {t};
}

Sixths moment_via_trace(std::int64_t p, int n, std::int64_t m) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("moment_via_trace: n must be even and positive");
  const BigInt corr = 6 * BigInt(hyperbolic_correction(p, m));
  BigInt total = 0;
  for (int i = 0; i <= n / 2; ++i) {
    BigInt bracket = -eichler_selberg_trace(p, 2 * i + 2, m).sixths - corr;
    if (i == 0) bracket += 6 * BigInt(p + 1);
    total += c_coeff(n / 2, i, p) * bracket;
  }
  return {total};
}

std::vector<BigInt> eta_tau(int limit) {
  if (limit < 1) throw std::invalid_argument("eta_tau: limit must be positive");
  const auto len = static_cast<std::size_t>(limit);  // series in q mod q^limit
  std::vector<BigInt> e(len, BigInt(0));
  // Pentagonal numbers k(3k -+ 1)/2 carry sign (-1)^k.
  e[0] = 1;
  for (std::int64_t k = 1;; ++k) {
    const std::int64_t g1 = k * (3 * k - 1) / 2;
    const std::int64_t g2 = k * (3 * k + 1) / 2;
    if (g1 >= limit) break;
    const int sign = k % 2 == 0 ? 1 : -1;
    e[static_cast<std::size_t>(g1)] += sign;
    if (g2 < limit) e[static_cast<std::size_t>(g2)] += sign;
  }
  auto mul = [len](const std::vector<BigInt>& x, const std::vector<BigInt>& y) {
    std::vector<BigInt> z(len, BigInt(0));
    for (std::size_t i = 0; i < len; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; i + j < len; ++j) z[i + j] += x[i] * y[j];
    }
    return z;
  };
  const auto e2 = mul(e, e);
  const auto e4 = mul(e2, e2);
  const auto e8 = mul(e4, e4);
  const auto e16 = mul(e8, e8);
  const auto e24 = mul(e16, e8);
  std::vector<BigInt> tau(len + 1, BigInt(0));
  for (std::size_t n = 1; n <= len; ++n) tau[n] = e24[n - 1];
  return tau;
}

MomentReport moment_report(std::int64_t p, int n, std::int64_t m, const ApHistogram* histogram) {
  MomentReport r;
  r.p = p;
  r.n = n;
  r.m = m;
  r.weighted = weighted_moment(p, n, m);
  bool ok = true;
  if (histogram != nullptr && m == 1) {
    r.brute = brute_moment(*histogram, n);
    ok = ok && (*r.brute * 6 == r.weighted.sixths * (p - 1));
  }
  if (n % 2 == 0) {
    r.via_trace = moment_via_trace(p, n, m);
    r.main_term = main_term(p, n);
    ok = ok && (*r.via_trace == r.weighted);
  } else {
    ok = ok && r.weighted.sixths == 0;
  }
  r.ok = ok;
  return r;
}

}  // namespace ellsum::moments
