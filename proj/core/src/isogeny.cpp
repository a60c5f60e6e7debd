#include "ellsum/isogeny.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

#include "ellsum/bigint.hpp"
#include "ellsum/classnum.hpp"

namespace ellsum::isogeny {

using arith::mod;

namespace {

void require_odd_modulus(std::int64_t m) {
  if (m < 1 || m % 2 == 0) throw std::invalid_argument("M must be odd and positive, got " + std::to_string(m));
}

void require_odd_prime(std::int64_t l) {
  if (l == 2) throw std::invalid_argument("l = 2 is not supported");
  if (!arith::is_prime(l)) throw std::invalid_argument("l must be prime, got " + std::to_string(l));
}

void require_valid_gap(std::int64_t d, std::int64_t f) {
  if (f < 1 || d % (f * f) != 0 || !arith::is_negative_discriminant(d / (f * f))) {
    throw std::invalid_argument("invalid conductor gap f=" + std::to_string(f) + " for discriminant " +
                                std::to_string(d));
  }
}

}  // namespace

FrobeniusClass FrobeniusClass::make(std::int64_t a, std::int64_t p) {
  if (!arith::is_prime(p)) throw std::invalid_argument("p must be prime, got " + std::to_string(p));
  if (a == 0) throw std::invalid_argument("a = 0 is supersingular; only ordinary traces are supported");
  if (a * a >= 4 * p) throw std::invalid_argument("trace outside the Hasse interval");
  return {a, p, arith::factor_discriminant(a * a - 4 * p)};
}

ConductorGap ConductorGap::make(const FrobeniusClass& frob, std::int64_t f, std::int64_t l) {
  require_valid_gap(frob.disc.disc, f);
  const std::int64_t c = frob.disc.conductor;
  return {f, arith::ord_at(c, l), arith::ord_at(c / f, l)};
}

std::vector<std::int64_t> conductor_gaps(std::int64_t d) {
  if (!arith::is_negative_discriminant(d)) throw std::invalid_argument("not a negative discriminant");
  std::vector<std::int64_t> out;
  for (std::int64_t f = 1; f * f <= -d; ++f) {
    if (d % (f * f) == 0 && arith::is_negative_discriminant(d / (f * f))) out.push_back(f);
  }
  return out;
}

std::vector<std::int64_t> valid_conductor_gaps(std::int64_t a, std::int64_t p) {
  return conductor_gaps(FrobeniusClass::make(a, p).disc.disc);
}

namespace {

std::int64_t sigma_unchecked(std::int64_t a, std::int64_t f, std::int64_t p, std::int64_t m) {
  const std::int64_t modulus = std::gcd(m, f) * m;
  std::int64_t count = 0;
  for (std::int64_t x = 0; x < m; ++x) {
    if (mod(x * x - a * x + p, modulus) == 0) ++count;
  }
  return count;
}

std::int64_t psi_ratio(std::int64_t f, std::int64_t m) {
  const std::int64_t mf = std::gcd(m, f);
  const std::int64_t num = classnum::psi(m);
  const std::int64_t den = classnum::psi(m / mf);
  if (num % den != 0) throw std::logic_error("psi ratio is not integral");
  return num / den;
}

}  // namespace

std::int64_t sigma(std::int64_t a, std::int64_t f, std::int64_t p, std::int64_t m) {
  require_odd_modulus(m);
  const auto frob = FrobeniusClass::make(a, p);
  require_valid_gap(frob.disc.disc, f);
  return sigma_unchecked(a, f, p, m);
}

std::int64_t subgroup_weight(std::int64_t a, std::int64_t f, std::int64_t p, std::int64_t m) {
  require_odd_modulus(m);
  return psi_ratio(f, m) * sigma_unchecked(a, f, p, m);
}

std::int64_t count_mine(std::int64_t a, std::int64_t f, std::int64_t p, std::int64_t m) {
  return psi_ratio(f, m) * sigma(a, f, p, m);
}

std::int64_t count_ito(std::int64_t a, std::int64_t f, std::int64_t p, std::int64_t l, int eps) {
  require_odd_prime(l);
  if (eps < 1) throw std::invalid_argument("count_ito: eps must be positive");
  const auto frob = FrobeniusClass::make(a, p);
  const auto gap = ConductorGap::make(frob, f, l);
  if (gap.eps_e > gap.eps_a) throw std::logic_error("count_ito: eps_E exceeds eps_a");
  const int ea = gap.eps_a;
  const int ee = gap.eps_e;
  if (eps <= ea - ee) return (l + 1) * arith::ipow(l, eps - 1);
  if (eps <= ea + ee) return arith::ipow(l, (eps + ea - ee) / 2);
  switch (arith::jacobi(frob.disc.fundamental, l)) {
    case 1: return 2 * arith::ipow(l, ea);
    case -1: return 0;
    default: return eps == ea + ee + 1 ? arith::ipow(l, ea) : 0;
  }
}

std::int64_t count_ogg(std::int64_t a, std::int64_t p, std::int64_t m) {
  const auto frob = FrobeniusClass::make(a, p);
  if (m < 1 || std::gcd(m, 2 * -frob.disc.disc) != 1) {
    throw std::invalid_argument("count_ogg: M must be coprime to 2(a^2 - 4p)");
  }
  std::int64_t n = 1;
  for (const auto& [q, e] : arith::factorize(m)) n *= 1 + arith::jacobi(frob.disc.disc, q);
  return n;
}

std::int64_t quad_roots_count_naive(std::int64_t aa, std::int64_t bb, std::int64_t l, int m, int target) {
  require_odd_prime(l);
  const std::int64_t range = arith::ipow(l, m);
  const std::int64_t modulus = arith::ipow(l, target);
  std::int64_t count = 0;
  for (std::int64_t x = 0; x < range; ++x) {
    const Int128 v = static_cast<Int128>(x) * x - static_cast<Int128>(aa) * x + bb;
    if (v % modulus == 0) ++count;
  }
  return count;
}

std::int64_t quad_roots_count(std::int64_t aa, std::int64_t bb, std::int64_t l, int m, int target) {
  require_odd_prime(l);
  if (m < 1 || target < 1) throw std::invalid_argument("quad_roots_count: m and target must be positive");
  const std::int64_t disc = aa * aa - 4 * bb;
  // g(aa/2 + beta) = beta^2 - disc/4, with 2 invertible mod l.
  if (disc == 0 || arith::ord_at(disc, l) >= 2) {
    const int m0 = disc == 0 ? target : arith::ord_at(disc, l) / 2;
    if (target == m && m <= m0) return arith::ipow(l, m / 2);
    if (m == m0 && target == 2 * m0) return 1;
  } else if (arith::ord_at(disc, l) == 1) {
    return target == 1 ? arith::ipow(l, m - 1) : 0;
  }
  return quad_roots_count_naive(aa, bb, l, m, target);
}

std::vector<std::array<std::int64_t, 2>> cyclic_subgroup_generators(std::int64_t m) {
  require_odd_modulus(m);
  std::vector<std::array<std::int64_t, 2>> gens;
  std::vector<bool> covered(static_cast<std::size_t>(m * m), false);
  for (std::int64_t x = 0; x < m; ++x) {
    for (std::int64_t y = 0; y < m; ++y) {
      if (std::gcd(std::gcd(x, y), m) != 1) continue;  // not of exact order M
      if (covered[static_cast<std::size_t>(x * m + y)]) continue;
      gens.push_back({x, y});
      for (std::int64_t k = 0; k < m; ++k) covered[static_cast<std::size_t>((k * x % m) * m + k * y % m)] = true;
    }
  }
  if (static_cast<std::int64_t>(gens.size()) != classnum::psi(m)) {
    throw std::logic_error("cyclic subgroup count differs from psi(M)");
  }
  return gens;
}

std::array<std::int64_t, 4> frobenius_matrix(std::int64_t a, std::int64_t f, std::int64_t p) {
  const std::int64_t disc = a * a - 4 * p;
  require_valid_gap(disc, f);
  const std::int64_t d = disc / (f * f);
  // pi = u + f w, w^2 = d w - (d^2 - d)/4.
  if ((a - f * d) % 2 != 0) throw std::logic_error("frobenius_matrix: parity failure");
  const std::int64_t u = (a - f * d) / 2;
  const std::int64_t norm_w = (d * d - d) / 4;
  return {u, f, -f * norm_w, u + f * d};
}

std::int64_t frobenius_subgroup_oracle(std::int64_t a, std::int64_t f, std::int64_t p, std::int64_t m,
                                       const std::vector<std::array<std::int64_t, 2>>& generators) {
  FrobeniusClass::make(a, p);
  const auto mat = frobenius_matrix(a, f, p);
  const std::int64_t m00 = mod(mat[0], m), m10 = mod(mat[1], m), m01 = mod(mat[2], m), m11 = mod(mat[3], m);
  std::int64_t stable = 0;
  for (const auto& [x, y] : generators) {
    const std::int64_t ix = (m00 * x + m01 * y) % m;
    const std::int64_t iy = (m10 * x + m11 * y) % m;
    // v has exact order M, so A v lies in <v> iff det(v, A v) = 0 mod M.
    if (mod(x * iy - y * ix, m) == 0) ++stable;
  }
  return stable;
}

std::int64_t frobenius_subgroup_oracle(std::int64_t a, std::int64_t f, std::int64_t p, std::int64_t m) {
  return frobenius_subgroup_oracle(a, f, p, m, cyclic_subgroup_generators(m));
}

}  // namespace ellsum::isogeny
