#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "ellsum/bigint.hpp"

namespace ellsum {

/// Univariate polynomial over Z, coefficients in ascending degree.
/// The zero polynomial has degree -1 and an empty coefficient list.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<BigInt> coeffs);
  Poly(std::initializer_list<std::int64_t> coeffs);

  static Poly constant(const BigInt& c);
  /// c * t^k
  static Poly monomial(const BigInt& c, int k);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return degree() <= 0; }

  /// Coefficient of t^k (zero beyond the degree).
  const BigInt& operator[](int k) const;
  const std::vector<BigInt>& coefficients() const { return coeffs_; }
  const BigInt& leading() const;

  /// gcd of the coefficients, nonnegative; zero for the zero polynomial.
  BigInt content() const;
  /// Divided by its content, with a positive leading coefficient.
  Poly primitive_part() const;
  Poly derivative() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const BigInt& c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Poly& b) { return a *= b; }
  friend Poly operator*(Poly a, const BigInt& c) { return a *= c; }
  friend Poly operator*(const BigInt& c, Poly a) { return a *= c; }
  friend Poly operator-(Poly a);
  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

  Poly pow(int e) const;

  /// Coefficients reduced to [0, p).
  std::vector<std::int64_t> reduce_mod(std::int64_t p) const;
  std::int64_t eval_mod(std::int64_t t, std::int64_t p) const;

  std::string to_string(const std::string& var = "t") const;

 private:
  void trim();
  std::vector<BigInt> coeffs_;
};

/// Evaluate reduced coefficients (from Poly::reduce_mod) at t mod p.
std::int64_t eval_reduced(const std::vector<std::int64_t>& coeffs, std::int64_t t, std::int64_t p);

/// Monic-over-Q gcd, returned as a primitive integer polynomial with positive
/// leading coefficient. gcd(0, 0) is zero.
Poly poly_gcd(const Poly& a, const Poly& b);

/// a / b in Q[t], scaled to a primitive integer polynomial. Throws
/// std::domain_error if b does not divide a.
Poly divide_exact(const Poly& a, const Poly& b);

struct SquarefreeFactor {
  Poly factor;  // squarefree, primitive, positive degree
  int multiplicity = 0;
};

/// Yun decomposition over Q: f = c * prod factor_i^multiplicity_i with the
/// factors squarefree and pairwise coprime. Throws std::invalid_argument for f = 0.
std::vector<SquarefreeFactor> squarefree_decomposition(const Poly& f);

}  // namespace ellsum
