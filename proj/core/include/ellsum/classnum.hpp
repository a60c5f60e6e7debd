#pragma once

// Class numbers of imaginary quadratic orders from reduced primitive forms,
// and the automorphism-weighted variant h_w stored in exact sixths.

#include <cstdint>
#include <vector>

namespace ellsum::classnum {

/// h_w as an integer multiple of 1/6.
struct HurwitzValue {
  std::int64_t sixths = 0;

  double value() const { return static_cast<double>(sixths) / 6.0; }
  friend bool operator==(const HurwitzValue&, const HurwitzValue&) = default;
};

/// Number of reduced primitive forms (a, b, c) of discriminant d:
/// |b| <= a <= c, b >= 0 when |b| == a or a == c, gcd(a, b, c) == 1.
std::int64_t class_number(std::int64_t d);

/// h(d) for d < -4, 1/2 at d = -4, 1/3 at d = -3.
HurwitzValue hurwitz_weighted(std::int64_t d);

/// m * prod over primes q | m of (1 + 1/q).
std::int64_t psi(std::int64_t m);

/// h and h_w for every discriminant in [-limit, -3], built in one pass over
/// reduced forms.
class HurwitzTable {
 public:
  explicit HurwitzTable(std::int64_t limit);

  std::int64_t limit() const { return limit_; }
  /// d must be a negative discriminant with |d| <= limit.
  std::int64_t class_number(std::int64_t d) const;
  HurwitzValue weighted(std::int64_t d) const;

 private:
  std::int64_t limit_;
  std::vector<std::int32_t> counts_;  // indexed by |d|
};

}  // namespace ellsum::classnum
