#include "ellsum/nagao.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

#include "ellsum/arith.hpp"
#include "ellsum/classnum.hpp"
#include "ellsum/moments.hpp"
#include "ellsum/parallel.hpp"
#include "ellsum/polynomial.hpp"

namespace ellsum::nagao {

Preset parse_preset(std::string_view name) {
  if (name == "thm-e2") return Preset::ThmE2;
  if (name == "thm-modular") return Preset::ThmModular;
  throw std::invalid_argument("unknown preset '" + std::string(name) + "' (expected thm-e2 or thm-modular)");
}

series::Exponent preset_exponent(Preset preset, int n) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  return preset == Preset::ThmE2 ? series::Exponent{n, 1} : series::Exponent{n / 2 + 1, 1};
}

bool drive(series::SeriesAccumulator& acc, const TermFn& term, unsigned workers,
           const std::function<bool()>& should_stop) {
  std::vector<std::int64_t> primes;
  for (const std::int64_t p : arith::sieve_primes(acc.xmax())) {
    if (p > acc.last_prime()) primes.push_back(p);
  }
  const bool done = ordered_parallel_map(
      primes, workers, [&term](std::int64_t p) { return term(p); },
      [&acc](std::int64_t p, std::optional<BigInt> value) {
        if (value) {
          acc.add(p, *value);
        } else {
          acc.skip(p);
        }
      },
      64, should_stop);
  if (done) acc.finish();
  return done;
}

TermFn fiber_sum_term(const curves::WeierstrassFamily& family, int n) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  return [&family, n](std::int64_t p) { return curves::fiber_power_sum(family, p, n); };
}

TermFn weighted_moment_term(std::int64_t m, int n, const classnum::HurwitzTable& table) {
  return [m, n, &table](std::int64_t p) -> std::optional<BigInt> {
    if (p <= 3 || m % p == 0) return std::nullopt;
    return moments::weighted_moment(p, n, m, table).sixths;
  };
}

ResidueSeries residue_estimate(const curves::WeierstrassFamily& family, int n, series::Exponent lambda,
                               std::int64_t xmax, const series::CheckpointGrid& grid, unsigned workers) {
  series::SeriesAccumulator acc(grid, xmax, lambda, -1);
  drive(acc, fiber_sum_term(family, n), workers);
  return {family.label(), n, lambda, acc.checkpoints()};
}

double nagao_rank_sum(const curves::WeierstrassFamily& family, std::int64_t xmax, unsigned workers) {
  if (xmax < 5) throw std::invalid_argument("nagao_rank_sum: X must be at least 5");
  return residue_estimate(family, 1, {1, 1}, xmax, {}, workers).last().raw;
}

ResidueSeries weighted_residue_estimate(std::int64_t m, int n, std::int64_t xmax, const series::CheckpointGrid& grid,
                                        unsigned workers) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("weighted_residue_estimate: n must be even");
  if (m < 1 || m % 2 == 0) throw std::invalid_argument("weighted_residue_estimate: M must be odd");
  const classnum::HurwitzTable table(4 * xmax);
  const series::Exponent lambda{n / 2 + 1, 1};
  series::SeriesAccumulator acc(grid, xmax, lambda, +1, 1.0 / 6.0);
  drive(acc, weighted_moment_term(m, n, table), workers);
  return {"level-" + std::to_string(m), n, lambda, acc.checkpoints()};
}

std::string_view to_string(TwistOrder order) {
  switch (order) {
    case TwistOrder::Split: return "split";
    case TwistOrder::Quadratic: return "quadratic";
    case TwistOrder::Cubic: return "cubic";
    case TwistOrder::Quartic: return "quartic";
    case TwistOrder::Sextic: return "sextic";
    case TwistOrder::NotIsotrivial: return "not-isotrivial";
  }
  return "unknown";
}

namespace {

// Order of the class of g in K*/K*^k, constants ignored.
int class_order(const Poly& g, int k) {
  int e = k;
  for (const auto& f : squarefree_decomposition(g)) e = std::gcd(e, f.multiplicity);
  return k / e;
}

IsotrivialClass with_prediction(int order) {
  IsotrivialClass c;
  c.twist_order = static_cast<TwistOrder>(order);
  if (order == 2) c.predicted_residue = -1;
  if (order == 3 || order == 4 || order == 6) c.predicted_residue = 0;
  return c;
}

}  // namespace

IsotrivialClass classify_isotrivial(const curves::WeierstrassFamily& family) {
  const Poly& c4 = family.c4();
  const Poly& c6 = family.c6();
  const Poly& disc = family.discriminant();
  if (c4.is_zero()) return with_prediction(class_order(c6, 6));
  if (c6.is_zero()) return with_prediction(class_order(c4, 4));
  const Poly c4cubed = c4.pow(3);
  if (!(c4cubed * disc.leading() == disc * c4cubed.leading())) return {};
  // (A, B) = (g^2 A0, g^3 B0) with g proportional to B/A ~ c6/c4.
  return with_prediction(class_order(c4 * c6, 2));
}

}  // namespace ellsum::nagao
