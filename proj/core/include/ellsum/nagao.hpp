#pragma once

// Prime-averaged estimators for Nagao rank sums and a_p^n residues, and
// isotrivial twist classification.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ellsum/bigint.hpp"
#include "ellsum/classnum.hpp"
#include "ellsum/curves.hpp"
#include "ellsum/series.hpp"

namespace ellsum::nagao {

/// "thm-e2": lambda = n.  "thm-modular": lambda = floor(n/2) + 1.
enum class Preset { ThmE2, ThmModular };

Preset parse_preset(std::string_view name);
series::Exponent preset_exponent(Preset preset, int n);

struct ResidueSeries {
  std::string label;
  int n = 1;
  series::Exponent lambda;
  std::vector<series::Checkpoint> checkpoints;

  const series::Checkpoint& last() const { return checkpoints.back(); }
};

/// Term for one prime; std::nullopt skips the prime.
using TermFn = std::function<std::optional<BigInt>(std::int64_t p)>;

/// Feed every prime in (acc.last_prime(), acc.xmax()] to the accumulator in
/// ascending order, computing terms on `workers` threads. Returns false if
/// should_stop fired first; the accumulator then holds a consistent prefix.
bool drive(series::SeriesAccumulator& acc, const TermFn& term, unsigned workers,
           const std::function<bool()>& should_stop = {});

/// A_p(n) over the affine fibers of the family, skipping bad primes.
TermFn fiber_sum_term(const curves::WeierstrassFamily& family, int n);

/// Level-M weighted moment in sixths for 3 < p, p not dividing M. The table
/// must cover 4 xmax and outlive the returned function.
TermFn weighted_moment_term(std::int64_t m, int n, const classnum::HurwitzTable& table);

/// -(1/X) sum_{p <= X good} log p * A_p(n) / p^lambda on the checkpoint grid.
ResidueSeries residue_estimate(const curves::WeierstrassFamily& family, int n, series::Exponent lambda,
                               std::int64_t xmax, const series::CheckpointGrid& grid = {}, unsigned workers = 1);

/// S(F, X) = -(1/X) sum_{p <= X good} (log p / p) A_p(1).
double nagao_rank_sum(const curves::WeierstrassFamily& family, std::int64_t xmax, unsigned workers = 1);

/// +(1/X) sum_{3 < p <= X, p not dividing M} log p * W_p / p^{n/2+1}, W_p the
/// level-M weighted moment. Tends to n!/((n/2)!(n/2+1)!); the residue of the
/// log-derivative series is its negative. n must be even.
ResidueSeries weighted_residue_estimate(std::int64_t m, int n, std::int64_t xmax,
                                        const series::CheckpointGrid& grid = {}, unsigned workers = 1);

enum class TwistOrder { Split = 1, Quadratic = 2, Cubic = 3, Quartic = 4, Sextic = 6, NotIsotrivial = 0 };

std::string_view to_string(TwistOrder order);

struct IsotrivialClass {
  TwistOrder twist_order = TwistOrder::NotIsotrivial;
  /// 0 for cubic/quartic/sextic, -1 for quadratic, empty otherwise.
  std::optional<int> predicted_residue;
};

/// Constant j = c4^3/Delta decides isotriviality; the twist order is the order
/// of the twisting function in K*/K*^6 (j = 0), K*/K*^4 (j = 1728) or
/// K*/K*^2 (other j), read off its squarefree decomposition.
IsotrivialClass classify_isotrivial(const curves::WeierstrassFamily& family);

}  // namespace ellsum::nagao
