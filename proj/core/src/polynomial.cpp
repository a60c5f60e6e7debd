#include "ellsum/polynomial.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "ellsum/arith.hpp"

namespace ellsum {

namespace {

using Rational = boost::multiprecision::cpp_rational;
using RatPoly = std::vector<Rational>;

const BigInt kZero = 0;

void trim(RatPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

RatPoly to_rat(const Poly& p) {
  RatPoly r;
  r.reserve(p.coefficients().size());
  for (const auto& c : p.coefficients()) r.emplace_back(c);
  return r;
}

Poly from_rat(RatPoly r) {
  trim(r);
  if (r.empty()) return {};
  BigInt den = 1;
  for (const auto& c : r) {
    const BigInt d = boost::multiprecision::denominator(c);
    den = den / boost::multiprecision::gcd(den, d) * d;
  }
  std::vector<BigInt> out;
  out.reserve(r.size());
  for (const auto& c : r) {
    out.push_back(boost::multiprecision::numerator(c) * (den / boost::multiprecision::denominator(c)));
  }
  return Poly(std::move(out)).primitive_part();
}

// Quotient and remainder over Q.
std::pair<RatPoly, RatPoly> divmod(RatPoly a, const RatPoly& b) {
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  RatPoly q;
  trim(a);
  if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Rational(0));
  while (!a.empty() && a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    const Rational coef = a.back() / b.back();
    q[shift] = coef;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= coef * b[i];
    a.pop_back();
    trim(a);
  }
  trim(q);
  return {std::move(q), std::move(a)};
}

}  // namespace

Poly::Poly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Poly::Poly(std::initializer_list<std::int64_t> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (auto c : coeffs) coeffs_.emplace_back(c);
  trim();
}

Poly Poly::constant(const BigInt& c) { return Poly(std::vector<BigInt>{c}); }

Poly Poly::monomial(const BigInt& c, int k) {
  std::vector<BigInt> v(static_cast<std::size_t>(k) + 1, BigInt(0));
  v.back() = c;
  return Poly(std::move(v));
}

const BigInt& Poly::operator[](int k) const {
  if (k < 0 || k > degree()) return kZero;
  return coeffs_[static_cast<std::size_t>(k)];
}

const BigInt& Poly::leading() const { return is_zero() ? kZero : coeffs_.back(); }

BigInt Poly::content() const {
  BigInt g = 0;
  for (const auto& c : coeffs_) g = boost::multiprecision::gcd(g, c);
  return boost::multiprecision::abs(g);
}

Poly Poly::primitive_part() const {
  if (is_zero()) return {};
  BigInt g = content();
  if (leading() < 0) g = -g;
  std::vector<BigInt> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c / g);
  return Poly(std::move(out));
}

Poly Poly::derivative() const {
  if (degree() <= 0) return {};
  std::vector<BigInt> out(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) out[k - 1] = coeffs_[k] * static_cast<std::int64_t>(k);
  return Poly(std::move(out));
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  trim();
  return *this;
}

Poly& Poly::operator*=(const Poly& o) {
  if (is_zero() || o.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<BigInt> out(coeffs_.size() + o.coeffs_.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  coeffs_ = std::move(out);
  trim();
  return *this;
}

Poly& Poly::operator*=(const BigInt& c) {
  for (auto& x : coeffs_) x *= c;
  trim();
  return *this;
}

Poly operator-(Poly a) {
  for (auto& x : a.coeffs_) x = -x;
  return a;
}

Poly Poly::pow(int e) const {
  Poly r = Poly::constant(1);
  for (int i = 0; i < e; ++i) r *= *this;
  return r;
}

std::vector<std::int64_t> Poly::reduce_mod(std::int64_t p) const {
  std::vector<std::int64_t> out;
  out.reserve(coeffs_.size());
  const BigInt bp = p;
  for (const auto& c : coeffs_) {
    BigInt r = c % bp;
    if (r < 0) r += bp;
    out.push_back(r.convert_to<std::int64_t>());
  }
  return out;
}

std::int64_t eval_reduced(const std::vector<std::int64_t>& coeffs, std::int64_t t, std::int64_t p) {
  std::int64_t acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc = static_cast<std::int64_t>((static_cast<Int128>(acc) * t + *it) % p);
  }
  return acc;
}

std::int64_t Poly::eval_mod(std::int64_t t, std::int64_t p) const {
  return eval_reduced(reduce_mod(p), arith::mod(t, p), p);
}

std::string Poly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const BigInt& c = coeffs_[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    BigInt mag = boost::multiprecision::abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0 || mag != 1) os << mag;
    if (k > 0) {
      if (mag != 1) os << "*";
      os << var;
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Poly poly_gcd(const Poly& a, const Poly& b) {
  RatPoly x = to_rat(a);
  RatPoly y = to_rat(b);
  trim(x);
  trim(y);
  while (!y.empty()) {
    auto [q, r] = divmod(x, y);
    x = std::move(y);
    y = std::move(r);
    // Keep the running remainder monic to bound coefficient growth.
    if (!y.empty()) {
      const Rational lc = y.back();
      for (auto& c : y) c /= lc;
    }
  }
  return from_rat(std::move(x));
}

Poly divide_exact(const Poly& a, const Poly& b) {
  auto [q, r] = divmod(to_rat(a), to_rat(b));
  if (!r.empty()) throw std::domain_error("divide_exact: divisor does not divide dividend");
  return from_rat(std::move(q));
}

std::vector<SquarefreeFactor> squarefree_decomposition(const Poly& f) {
  if (f.is_zero()) throw std::invalid_argument("squarefree_decomposition: zero polynomial");
  std::vector<SquarefreeFactor> out;
  if (f.degree() == 0) return out;

  auto derivative = [](const RatPoly& p) {
    RatPoly d(p.size() > 1 ? p.size() - 1 : 0);
    for (std::size_t k = 1; k < p.size(); ++k) d[k - 1] = p[k] * static_cast<long long>(k);
    return d;
  };
  auto subtract = [](RatPoly a, const RatPoly& b) {
    if (b.size() > a.size()) a.resize(b.size(), Rational(0));
    for (std::size_t k = 0; k < b.size(); ++k) a[k] -= b[k];
    trim(a);
    return a;
  };

  // Yun: w = f / gcd(f, f'), z = f'/gcd - w'; each step peels g_i = gcd(w, z).
  const RatPoly fr = to_rat(f);
  const RatPoly df = derivative(fr);
  const RatPoly c = to_rat(poly_gcd(f, f.derivative()));
  RatPoly w = divmod(fr, c).first;
  RatPoly z = subtract(divmod(df, c).first, derivative(w));
  for (int i = 1; w.size() > 1; ++i) {
    const Poly g = poly_gcd(from_rat(w), from_rat(z));
    if (g.degree() > 0) out.push_back({g, i});
    const RatPoly gr = to_rat(g);
    w = divmod(w, gr).first;
    z = subtract(divmod(z, gr).first, derivative(w));
  }
  return out;
}

}  // namespace ellsum
