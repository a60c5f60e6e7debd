#include "ellsum/arith.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "ellsum/bigint.hpp"

namespace ellsum {

std::string to_string(Int128 v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  std::string s;
  while (u != 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

}  // namespace ellsum

namespace ellsum::arith {

std::vector<std::int64_t> sieve_primes(std::int64_t limit) {
  std::vector<std::int64_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  for (std::int64_t i = 2; i <= limit; ++i) {
    if (composite[static_cast<std::size_t>(i)]) continue;
    primes.push_back(i);
    for (std::int64_t j = i * i; j <= limit; j += i) composite[static_cast<std::size_t>(j)] = true;
  }
  return primes;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t q = 3; q * q <= n; q += 2) {
    if (n % q == 0) return false;
  }
  return true;
}

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>(static_cast<Int128>(mod(a, m)) * mod(b, m) % m);
}

std::int64_t powmod(std::int64_t base, std::int64_t e, std::int64_t m) {
  std::int64_t result = 1 % m;
  std::int64_t b = mod(base, m);
  while (e > 0) {
    if (e & 1) result = mulmod(result, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return result;
}

std::int64_t ipow(std::int64_t base, int e) {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

int jacobi(std::int64_t a, std::int64_t n) {
  if (n <= 0 || n % 2 == 0) {
    throw std::invalid_argument("jacobi: modulus must be odd and positive, got " + std::to_string(n));
  }
  a = mod(a, n);
  int result = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const std::int64_t r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

int ord_at(std::int64_t n, std::int64_t l) {
  if (n == 0) throw std::invalid_argument("ord_at: n must be nonzero");
  if (l < 2) throw std::invalid_argument("ord_at: l must be at least 2");
  int e = 0;
  while (n % l == 0) {
    n /= l;
    ++e;
  }
  return e;
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  std::vector<std::pair<std::int64_t, int>> out;
  n = std::llabs(n);
  for (std::int64_t q = 2; q * q <= n; q += (q == 2 ? 1 : 2)) {
    if (n % q != 0) continue;
    int e = 0;
    while (n % q == 0) {
      n /= q;
      ++e;
    }
    out.emplace_back(q, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::int64_t euler_phi(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("euler_phi: n must be positive");
  std::int64_t phi = n;
  for (const auto& [q, e] : factorize(n)) phi = phi / q * (q - 1);
  return phi;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> divs{1};
  for (const auto& [q, e] : factorize(n)) {
    const std::size_t base = divs.size();
    std::int64_t qk = 1;
    for (int k = 1; k <= e; ++k) {
      qk *= q;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * qk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

bool is_fundamental_discriminant(std::int64_t d) {
  if (d >= 0) return false;
  auto squarefree = [](std::int64_t m) {
    for (const auto& [q, e] : factorize(m)) {
      if (e > 1) return false;
    }
    return true;
  };
  if (mod(d, 4) == 1) return squarefree(d);
  if (mod(d, 4) != 0) return false;
  const std::int64_t m = d / 4;
  const std::int64_t r = mod(m, 4);
  return (r == 2 || r == 3) && squarefree(m);
}

DiscriminantFactorization factor_discriminant(std::int64_t d) {
  if (!is_negative_discriminant(d)) {
    throw std::invalid_argument("factor_discriminant: not a negative discriminant: " + std::to_string(d));
  }
  // d = s^2 * core with core squarefree and negative.
  std::int64_t s = 1;
  std::int64_t core = -1;
  for (const auto& [q, e] : factorize(d)) {
    s *= ipow(q, e / 2);
    if (e % 2 == 1) core *= q;
  }
  if (mod(core, 4) == 1) return {d, core, s};
  // core = 2,3 mod 4 forces s even.
  return {d, 4 * core, s / 2};
}

}  // namespace ellsum::arith
