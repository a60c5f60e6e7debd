#pragma once

// Running prime-indexed partial sums  sign/X * sum_{p <= X} log p * T_p / p^lambda
// evaluated on a geometric checkpoint grid, with exact T_p, a trailing-window
// Cesaro mean, and a text checkpoint format that resumes bit-exactly.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ellsum/bigint.hpp"

namespace ellsum::series {

/// Positive rational exponent num/den.
struct Exponent {
  std::int64_t num = 1;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string to_string() const;
  /// "2", "3/2" or a terminating decimal such as "1.5".
  static Exponent parse(std::string_view text);
  friend bool operator==(const Exponent&, const Exponent&) = default;
};

/// Checkpoints start, start*ratio, start*ratio^2, ... (floored, deduplicated),
/// then xmax itself. Smoothing averages raw values over the checkpoints in
/// [X / window, X].
struct CheckpointGrid {
  double ratio = 1.25;
  std::int64_t start = 10;
  double window = 10.0;

  std::vector<std::int64_t> points(std::int64_t xmax) const;
  std::string to_string() const;
  /// "geometric:<ratio>" with optional ",start=<n>" and ",window=<w>".
  static CheckpointGrid parse(std::string_view text);
};

struct Checkpoint {
  std::int64_t x = 0;
  double raw = 0.0;
  double smoothed = 0.0;
};

class SeriesAccumulator {
 public:
  /// sign is +1 or -1; each exact term T_p enters the float layer as T_p * scale.
  SeriesAccumulator(CheckpointGrid grid, std::int64_t xmax, Exponent lambda, int sign, double scale = 1.0);

  /// Feed the term for prime p. Primes must arrive in ascending order.
  void add(std::int64_t p, const BigInt& term);
  /// Mark p as processed without a term (bad prime).
  void skip(std::int64_t p);
  /// Emit all checkpoints up to xmax.
  void finish();

  const std::vector<Checkpoint>& checkpoints() const { return emitted_; }
  std::int64_t last_prime() const { return last_prime_; }
  const BigInt& exact_sum() const { return exact_sum_; }
  double float_sum() const { return float_sum_; }
  std::int64_t xmax() const { return xmax_; }
  bool finished() const { return next_ >= grid_points_.size(); }

  /// Checkpoint file text. `fingerprint` identifies the job configuration.
  std::string serialize(const std::string& fingerprint) const;
  /// Restores state from serialize() output. Throws std::runtime_error when the
  /// fingerprint differs or the file is malformed.
  void restore(std::string_view text, const std::string& fingerprint);

 private:
  void emit_through(std::int64_t x_exclusive);
  void emit(std::int64_t x);

  CheckpointGrid grid_;
  std::int64_t xmax_;
  Exponent lambda_;
  int sign_;
  double scale_;
  std::vector<std::int64_t> grid_points_;
  std::size_t next_ = 0;
  std::int64_t last_prime_ = 1;
  BigInt exact_sum_ = 0;
  double float_sum_ = 0.0;
  std::vector<Checkpoint> emitted_;
};

std::string hex_double(double v);
double parse_hex_double(const std::string& s);

}  // namespace ellsum::series
