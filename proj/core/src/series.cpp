#include "ellsum/series.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ellsum::series {

std::string Exponent::to_string() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

Exponent Exponent::parse(std::string_view text) {
  const std::string s(text);
  auto parse_int = [&](const std::string& t) {
    std::size_t used = 0;
    const long long v = std::stoll(t, &used);
    if (used != t.size()) throw std::invalid_argument("bad exponent '" + s + "'");
    return static_cast<std::int64_t>(v);
  };
  Exponent e;
  try {
    if (const auto slash = s.find('/'); slash != std::string::npos) {
      e = {parse_int(s.substr(0, slash)), parse_int(s.substr(slash + 1))};
    } else if (const auto dot = s.find('.'); dot != std::string::npos) {
      const std::string frac = s.substr(dot + 1);
      std::int64_t den = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
      e = {parse_int(s.substr(0, dot) + frac), den};
    } else {
      e = {parse_int(s), 1};
    }
  } catch (const std::logic_error&) {
    throw std::invalid_argument("bad exponent '" + s + "'");
  }
  if (e.num <= 0 || e.den <= 0) throw std::invalid_argument("exponent must be positive: '" + s + "'");
  const std::int64_t g = std::gcd(e.num, e.den);
  return {e.num / g, e.den / g};
}

std::vector<std::int64_t> CheckpointGrid::points(std::int64_t xmax) const {
  std::vector<std::int64_t> pts;
  double x = static_cast<double>(start);
  while (true) {
    const auto xi = static_cast<std::int64_t>(std::floor(x));
    if (xi >= xmax) break;
    if (pts.empty() || xi > pts.back()) pts.push_back(xi);
    x *= ratio;
  }
  pts.push_back(xmax);
  return pts;
}

std::string CheckpointGrid::to_string() const {
  std::ostringstream os;
  os << "geometric:" << ratio << ",start=" << start << ",window=" << window;
  return os.str();
}

CheckpointGrid CheckpointGrid::parse(std::string_view text) {
  constexpr std::string_view kPrefix = "geometric:";
  if (text.substr(0, kPrefix.size()) != kPrefix) {
    throw std::invalid_argument("checkpoint grid must look like geometric:<ratio>");
  }
  CheckpointGrid g;
  std::stringstream ss{std::string(text.substr(kPrefix.size()))};
  std::string item;
  bool first = true;
  try {
    while (std::getline(ss, item, ',')) {
      if (first) {
        g.ratio = std::stod(item);
        first = false;
      } else if (item.rfind("start=", 0) == 0) {
        g.start = std::stoll(item.substr(6));
      } else if (item.rfind("window=", 0) == 0) {
        g.window = std::stod(item.substr(7));
      } else {
        throw std::invalid_argument("unknown grid option '" + item + "'");
      }
    }
  } catch (const std::logic_error& e) {
    throw std::invalid_argument(std::string("bad checkpoint grid: ") + e.what());
  }
  if (!(g.ratio > 1.0) || g.start < 2 || !(g.window >= 1.0)) {
    throw std::invalid_argument("checkpoint grid needs ratio > 1, start >= 2, window >= 1");
  }
  return g;
}

std::string hex_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

double parse_hex_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') throw std::runtime_error("bad floating value '" + s + "'");
  return v;
}

SeriesAccumulator::SeriesAccumulator(CheckpointGrid grid, std::int64_t xmax, Exponent lambda, int sign,
                                     double scale)
    : grid_(grid), xmax_(xmax), lambda_(lambda), sign_(sign), scale_(scale), grid_points_(grid.points(xmax)) {
  if (xmax < 2) throw std::invalid_argument("series: xmax must be at least 2");
  if (sign != 1 && sign != -1) throw std::invalid_argument("series: sign must be +1 or -1");
}

void SeriesAccumulator::emit(std::int64_t x) {
  const double raw = sign_ * float_sum_ / static_cast<double>(x);
  double total = raw;
  int count = 1;
  for (auto it = emitted_.rbegin(); it != emitted_.rend(); ++it) {
    if (static_cast<double>(it->x) * grid_.window < static_cast<double>(x)) break;
    total += it->raw;
    ++count;
  }
  emitted_.push_back({x, raw, total / count});
}

void SeriesAccumulator::emit_through(std::int64_t x_exclusive) {
  while (next_ < grid_points_.size() && grid_points_[next_] < x_exclusive) emit(grid_points_[next_++]);
}

void SeriesAccumulator::add(std::int64_t p, const BigInt& term) {
  if (p <= last_prime_) throw std::logic_error("series: primes must be fed in ascending order");
  if (p > xmax_) throw std::logic_error("series: prime beyond xmax");
  emit_through(p);
  exact_sum_ += term;
  const double t = term.convert_to<double>() * scale_;
  float_sum_ += std::log(static_cast<double>(p)) * t / std::pow(static_cast<double>(p), lambda_.value());
  last_prime_ = p;
}

void SeriesAccumulator::skip(std::int64_t p) {
  if (p <= last_prime_) throw std::logic_error("series: primes must be fed in ascending order");
  emit_through(p);
  last_prime_ = p;
}

void SeriesAccumulator::finish() { emit_through(xmax_ + 1); }

std::string SeriesAccumulator::serialize(const std::string& fingerprint) const {
  std::ostringstream os;
  os << "ellsum-checkpoint 1\n";
  os << "config=" << fingerprint << "\n";
  os << "p_last=" << last_prime_ << "\n";
  os << "exact_sum=" << exact_sum_.str() << "\n";
  os << "float_sum=" << hex_double(float_sum_) << "\n";
  os << "emitted=" << emitted_.size() << "\n";
  for (const auto& c : emitted_) os << "row=" << c.x << " " << hex_double(c.raw) << " " << hex_double(c.smoothed) << "\n";
  return os.str();
}

void SeriesAccumulator::restore(std::string_view text, const std::string& fingerprint) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != "ellsum-checkpoint 1") throw std::runtime_error("not an ellsum checkpoint file");
  std::map<std::string, std::string> kv;
  std::vector<Checkpoint> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::runtime_error("malformed checkpoint line '" + line + "'");
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    if (key == "row") {
      std::istringstream rs(value);
      Checkpoint c;
      std::string raw, smoothed;
      if (!(rs >> c.x >> raw >> smoothed)) throw std::runtime_error("malformed checkpoint row");
      c.raw = parse_hex_double(raw);
      c.smoothed = parse_hex_double(smoothed);
      rows.push_back(c);
    } else {
      kv[key] = value;
    }
  }
  for (const char* key : {"config", "p_last", "exact_sum", "float_sum", "emitted"}) {
    if (!kv.count(key)) throw std::runtime_error(std::string("checkpoint is missing '") + key + "'");
  }
  if (kv["config"] != fingerprint) throw std::runtime_error("checkpoint was written for a different configuration");
  if (std::stoull(kv["emitted"]) != rows.size()) throw std::runtime_error("checkpoint row count mismatch");
  last_prime_ = std::stoll(kv["p_last"]);
  exact_sum_ = BigInt(kv["exact_sum"]);
  float_sum_ = parse_hex_double(kv["float_sum"]);
  emitted_ = std::move(rows);
  next_ = 0;
  while (next_ < grid_points_.size() && next_ < emitted_.size()) {
    if (grid_points_[next_] != emitted_[next_].x) throw std::runtime_error("checkpoint grid mismatch");
    ++next_;
  }
  if (next_ != emitted_.size()) throw std::runtime_error("checkpoint grid mismatch");
}

}  // namespace ellsum::series
