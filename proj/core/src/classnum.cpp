#include "ellsum/classnum.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

#include "ellsum/arith.hpp"

namespace ellsum::classnum {

namespace {

void require_discriminant(std::int64_t d) {
  if (!arith::is_negative_discriminant(d)) {
    throw std::invalid_argument("not a negative discriminant: " + std::to_string(d));
  }
}

HurwitzValue weight(std::int64_t d, std::int64_t h) {
  if (d == -3) return {2};
  if (d == -4) return {3};
  return {6 * h};
}

}  // namespace

std::int64_t class_number(std::int64_t d) {
  require_discriminant(d);
  const std::int64_t n = -d;
  std::int64_t h = 0;
  for (std::int64_t a = 1; 3 * a * a <= n; ++a) {
    for (std::int64_t b = -a + 1; b <= a; ++b) {
      const std::int64_t num = b * b + n;
      if (num % (4 * a) != 0) continue;
      const std::int64_t c = num / (4 * a);
      if (c < a) continue;
      if (c == a && b < 0) continue;
      if (std::gcd(std::gcd(a, b), c) != 1) continue;
      ++h;
    }
  }
  return h;
}

HurwitzValue hurwitz_weighted(std::int64_t d) { return weight(d, class_number(d)); }

std::int64_t psi(std::int64_t m) {
  if (m < 1) throw std::invalid_argument("psi: m must be positive");
  std::int64_t r = m;
  for (const auto& [q, e] : arith::factorize(m)) r = r / q * (q + 1);
  return r;
}

HurwitzTable::HurwitzTable(std::int64_t limit) : limit_(limit) {
  if (limit < 3) throw std::invalid_argument("HurwitzTable: limit must be at least 3");
  counts_.assign(static_cast<std::size_t>(limit) + 1, 0);
  for (std::int64_t a = 1; 3 * a * a <= limit; ++a) {
    for (std::int64_t b = -a + 1; b <= a; ++b) {
      const std::int64_t g = std::gcd(a, b);
      // |d| = 4ac - b^2 grows by 4a per step in c.
      std::int64_t c = a;
      if (b < 0) ++c;  // (a, b, a) with b < 0 is not reduced
      std::int64_t n = 4 * a * c - b * b;
      const std::int64_t step = 4 * a;
      if (g == 1) {
        for (; n <= limit; n += step) ++counts_[static_cast<std::size_t>(n)];
      } else {
        for (; n <= limit; n += step, ++c) {
          if (std::gcd(g, c) == 1) ++counts_[static_cast<std::size_t>(n)];
        }
      }
    }
  }
}

std::int64_t HurwitzTable::class_number(std::int64_t d) const {
  require_discriminant(d);
  if (-d > limit_) throw std::out_of_range("HurwitzTable: discriminant beyond table limit");
  return counts_[static_cast<std::size_t>(-d)];
}

HurwitzValue HurwitzTable::weighted(std::int64_t d) const { return weight(d, class_number(d)); }

}  // namespace ellsum::classnum
