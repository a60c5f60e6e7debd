#include "ellsum_cli.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>
#include <variant>

#include "CLI11.hpp"
#include "json.hpp"

#include "ellsum/arith.hpp"
#include "ellsum/classnum.hpp"
#include "ellsum/curves.hpp"
#include "ellsum/family_io.hpp"
#include "ellsum/geometry.hpp"
#include "ellsum/isogeny.hpp"
#include "ellsum/moments.hpp"
#include "ellsum/nagao.hpp"
#include "ellsum/parallel.hpp"
#include "ellsum/series.hpp"

namespace ellsum::cli {

namespace {

std::atomic<bool> g_stop{false};

using Json = nlohmann::ordered_json;
using Cell = std::variant<std::string, std::int64_t, double>;

struct Report {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  Json params = Json::object();
  Json summary = Json::object();
  /// "OK" / "FAIL" for check commands.
  std::optional<std::string> status;
};

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_cell(const Cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) {
    if (s->find_first_of(",\"\n") == std::string::npos) return *s;
    std::string q = "\"";
    for (const char ch : *s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  }
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  return format_double(std::get<double>(c));
}

Json json_cell(const Cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  if (const auto* i = std::get_if<std::int64_t>(&c)) return *i;
  return std::get<double>(c);
}

std::string render(const Report& r, const std::string& command, Format format) {
  std::ostringstream os;
  if (format == Format::Csv) {
    for (std::size_t i = 0; i < r.columns.size(); ++i) os << (i ? "," : "") << r.columns[i];
    os << "\n";
    for (const auto& row : r.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
      os << "\n";
    }
    if (r.status) os << *r.status << "\n";
    return os.str();
  }
  Json j = Json::object();
  j["command"] = command;
  j["params"] = r.params;
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json o = Json::object();
    for (std::size_t i = 0; i < row.size(); ++i) o[r.columns[i]] = json_cell(row[i]);
    rows.push_back(std::move(o));
  }
  j["rows"] = std::move(rows);
  j["summary"] = r.summary;
  if (r.status) j["status"] = *r.status;
  os << j.dump(2) << "\n";
  return os.str();
}

std::string command_name(Command c) {
  switch (c) {
    case Command::Ap: return "ap";
    case Command::Rank: return "rank";
    case Command::Residue: return "residue";
    case Command::WeightedResidue: return "weighted-residue";
    case Command::Classnum: return "classnum";
    case Command::Trace: return "trace";
    case Command::MomentCheck: return "moment-check";
    case Command::MassCheck: return "mass-check";
    case Command::IsogenyCount: return "isogeny-count";
    case Command::Geometry: return "geometry";
  }
  return "?";
}

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

curves::WeierstrassFamily load_family(const JobConfig& cfg) {
  require(cfg.family_path.has_value(), "--family is required");
  try {
    return io::parse_family(*cfg.family_path);
  } catch (const io::ParseError& e) {
    throw UsageError(cfg.family_path->string() + ": " + e.what());
  }
}

std::string sixths_string(std::int64_t sixths) { return moments::Sixths{sixths}.to_string(); }

// Series jobs: the only place that checkpoints and honors interrupts.
class SeriesJob {
 public:
  SeriesJob(const JobConfig& cfg, std::string fingerprint, series::SeriesAccumulator& acc)
      : cfg_(cfg), fingerprint_(std::move(fingerprint)), acc_(acc) {}

  void maybe_restore(std::ostream& err) {
    if (!cfg_.checkpoint_path || !std::filesystem::exists(*cfg_.checkpoint_path)) return;
    std::ifstream in(*cfg_.checkpoint_path);
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
      acc_.restore(ss.str(), fingerprint_);
    } catch (const std::runtime_error& e) {
      throw UsageError("refusing to resume from " + cfg_.checkpoint_path->string() + ": " + e.what());
    }
    err << "resuming after p=" << acc_.last_prime() << "\n";
  }

  /// True when the series completed.
  bool drive(const nagao::TermFn& term) {
    std::int64_t batches = 0;
    const bool done = nagao::drive(acc_, term, cfg_.workers, [&] {
      save();
      if (g_stop.load()) return true;
      return cfg_.halt_after && batches++ >= *cfg_.halt_after;
    });
    save();
    return done;
  }

 private:
  void save() const {
    if (!cfg_.checkpoint_path) return;
    const auto tmp = std::filesystem::path(cfg_.checkpoint_path->string() + ".tmp");
    {
      std::ofstream out(tmp, std::ios::trunc);
      out << acc_.serialize(fingerprint_);
      if (!out) throw std::runtime_error("cannot write checkpoint " + tmp.string());
    }
    std::filesystem::rename(tmp, *cfg_.checkpoint_path);
  }

  const JobConfig& cfg_;
  std::string fingerprint_;
  series::SeriesAccumulator& acc_;
};

std::string one_line(std::string s) {
  for (char& c : s) {
    if (c == '\n') c = ';';
  }
  return s;
}

series::Exponent resolve_lambda(const JobConfig& cfg) {
  require(!(cfg.preset && cfg.lambda), "--preset and --lambda are mutually exclusive");
  try {
    if (cfg.lambda) return series::Exponent::parse(*cfg.lambda);
    return nagao::preset_exponent(nagao::parse_preset(cfg.preset.value_or("thm-modular")), cfg.n);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

series::CheckpointGrid resolve_grid(const JobConfig& cfg) {
  try {
    return series::CheckpointGrid::parse(cfg.grid);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

void add_checkpoint_rows(Report& r, const series::SeriesAccumulator& acc) {
  for (const auto& c : acc.checkpoints()) r.rows.push_back({c.x, c.raw, c.smoothed});
}

// Returns std::nullopt when interrupted.
std::optional<Report> run_residue(const JobConfig& cfg, std::ostream& err) {
  const auto family = load_family(cfg);
  require(cfg.n >= 1, "--n must be positive");
  require(cfg.xmax >= 5, "--xmax must be at least 5");
  const auto lambda = resolve_lambda(cfg);
  const auto grid = resolve_grid(cfg);
  series::SeriesAccumulator acc(grid, cfg.xmax, lambda, -1);
  const std::string fp = "residue|" + one_line(io::format_family(family)) + "|n=" + std::to_string(cfg.n) +
                         "|lambda=" + lambda.to_string() + "|xmax=" + std::to_string(cfg.xmax) +
                         "|grid=" + grid.to_string();
  SeriesJob job(cfg, fp, acc);
  job.maybe_restore(err);
  if (!job.drive(nagao::fiber_sum_term(family, cfg.n))) return std::nullopt;

  Report r;
  r.columns = {"X", "raw", "smoothed"};
  add_checkpoint_rows(r, acc);
  const auto cls = nagao::classify_isotrivial(family);
  r.params = {{"family", family.label()}, {"n", cfg.n},          {"lambda", lambda.to_string()},
              {"xmax", cfg.xmax},         {"grid", grid.to_string()}};
  r.summary["exact_sum"] = acc.exact_sum().str();
  r.summary["raw"] = acc.checkpoints().back().raw;
  r.summary["smoothed"] = acc.checkpoints().back().smoothed;
  r.summary["twist_order"] = std::string(nagao::to_string(cls.twist_order));
  r.summary["predicted_residue"] = cls.predicted_residue ? Json(*cls.predicted_residue) : Json(nullptr);
  return r;
}

std::optional<Report> run_rank(const JobConfig& cfg, std::ostream& err) {
  const auto family = load_family(cfg);
  require(cfg.xmax >= 5, "--xmax must be at least 5");
  series::SeriesAccumulator acc({}, cfg.xmax, {1, 1}, -1);
  const std::string fp = "rank|" + one_line(io::format_family(family)) + "|xmax=" + std::to_string(cfg.xmax);
  SeriesJob job(cfg, fp, acc);
  job.maybe_restore(err);
  if (!job.drive(nagao::fiber_sum_term(family, 1))) return std::nullopt;
  Report r;
  r.columns = {"label", "X", "S"};
  r.rows.push_back({family.label(), cfg.xmax, acc.checkpoints().back().raw});
  r.params = {{"family", family.label()}, {"xmax", cfg.xmax}};
  r.summary["exact_sum"] = acc.exact_sum().str();
  return r;
}

std::optional<Report> run_weighted_residue(const JobConfig& cfg, std::ostream& err) {
  require(cfg.level >= 1 && cfg.level % 2 == 1, "--level must be odd and positive");
  require(cfg.n >= 2 && cfg.n % 2 == 0, "--n must be even and at least 2");
  require(cfg.xmax >= 5, "--xmax must be at least 5");
  const auto grid = resolve_grid(cfg);
  const series::Exponent lambda{cfg.n / 2 + 1, 1};
  series::SeriesAccumulator acc(grid, cfg.xmax, lambda, +1, 1.0 / 6.0);
  const std::string fp = "weighted-residue|M=" + std::to_string(cfg.level) + "|n=" + std::to_string(cfg.n) +
                         "|xmax=" + std::to_string(cfg.xmax) + "|grid=" + grid.to_string();
  SeriesJob job(cfg, fp, acc);
  job.maybe_restore(err);
  const classnum::HurwitzTable table(4 * cfg.xmax);
  if (!job.drive(nagao::weighted_moment_term(cfg.level, cfg.n, table))) return std::nullopt;

  Report r;
  r.columns = {"X", "raw", "smoothed", "paper_residue"};
  for (const auto& c : acc.checkpoints()) r.rows.push_back({c.x, c.raw, c.smoothed, -c.smoothed});
  const BigInt constant = moments::main_term(1, cfg.n);
  r.params = {{"level", cfg.level}, {"n", cfg.n}, {"xmax", cfg.xmax}, {"grid", grid.to_string()}};
  r.summary["exact_sixths"] = acc.exact_sum().str();
  r.summary["estimate"] = acc.checkpoints().back().smoothed;
  r.summary["paper_residue"] = -acc.checkpoints().back().smoothed;
  r.summary["limit"] = constant.str();
  return r;
}

Report run_ap(const JobConfig& cfg) {
  const auto family = load_family(cfg);
  require(cfg.prime > 3 && arith::is_prime(cfg.prime), "--prime must be a prime greater than 3");
  require(family.is_good_prime(cfg.prime), "p=" + std::to_string(cfg.prime) + " is bad for this family");
  Report r;
  r.columns = {"t", "ap", "reduction"};
  std::int64_t s1 = 0;
  std::int64_t s2 = 0;
  for (std::int64_t t = 0; t < cfg.prime; ++t) {
    const auto red = *curves::specialize(family, t, cfg.prime);
    s1 += red.ap;
    s2 += red.ap * red.ap;
    r.rows.push_back({t, red.ap, std::string(curves::to_string(red.kind))});
  }
  r.params = {{"family", family.label()}, {"prime", cfg.prime}};
  r.summary["A1"] = s1;
  r.summary["A2"] = s2;
  return r;
}

Report run_classnum(const JobConfig& cfg) {
  require(cfg.disc.has_value() != cfg.disc_max.has_value(), "give exactly one of --disc and --disc-max");
  Report r;
  r.columns = {"D", "h", "h_w", "h_w_sixths"};
  auto row = [&r](std::int64_t d, std::int64_t h, std::int64_t sixths) {
    r.rows.push_back({d, h, sixths_string(sixths), sixths});
  };
  if (cfg.disc) {
    require(arith::is_negative_discriminant(*cfg.disc), "--disc must be a negative discriminant");
    row(*cfg.disc, classnum::class_number(*cfg.disc), classnum::hurwitz_weighted(*cfg.disc).sixths);
    r.params = {{"disc", *cfg.disc}};
  } else {
    require(*cfg.disc_max >= 3, "--disc-max must be at least 3");
    const classnum::HurwitzTable table(*cfg.disc_max);
    for (std::int64_t d = -3; d >= -*cfg.disc_max; --d) {
      if (!arith::is_negative_discriminant(d)) continue;
      row(d, table.class_number(d), table.weighted(d).sixths);
    }
    r.params = {{"disc_max", *cfg.disc_max}};
  }
  return r;
}

Report run_trace(const JobConfig& cfg) {
  require(cfg.level >= 1 && cfg.level % 2 == 1, "--level must be odd and positive");
  require(cfg.weight >= 2 && cfg.weight % 2 == 0, "--weight must be even and at least 2");
  require(cfg.prime_max >= 2, "--prime-max must be at least 2");
  Report r;
  r.columns = {"p", "trace"};
  for (const std::int64_t p : arith::sieve_primes(cfg.prime_max)) {
    if (cfg.level % p == 0) continue;
    r.rows.push_back({p, moments::eichler_selberg_trace(p, cfg.weight, cfg.level).to_string()});
  }
  r.params = {{"level", cfg.level}, {"weight", cfg.weight}, {"prime_max", cfg.prime_max}};
  return r;
}

std::optional<Report> run_moment_check(const JobConfig& cfg) {
  require(cfg.prime_max >= 5, "--prime-max must be at least 5");
  require(cfg.n_max >= 1, "--n-max must be positive");
  require(!cfg.levels.empty(), "--levels must not be empty");
  for (const auto m : cfg.levels) require(m >= 1 && m % 2 == 1, "levels must be odd and positive");
  std::vector<std::int64_t> primes;
  for (const std::int64_t p : arith::sieve_primes(cfg.prime_max)) {
    if (p > 3) primes.push_back(p);
  }
  Report r;
  r.columns = {"p", "n", "M", "brute", "weighted", "via_trace", "main_term", "status"};
  bool all_ok = true;
  const bool done = ordered_parallel_map(
      primes, cfg.workers,
      [&cfg](std::int64_t p) {
        const auto hist = moments::ap_histogram(p);
        std::vector<moments::MomentReport> out;
        for (const auto m : cfg.levels) {
          if (m % p == 0) continue;
          for (int n = 1; n <= cfg.n_max; ++n) out.push_back(moments::moment_report(p, n, m, &hist));
        }
        return out;
      },
      [&](std::int64_t, std::vector<moments::MomentReport> reports) {
        for (const auto& m : reports) {
          all_ok = all_ok && m.ok;
          r.rows.push_back({m.p, static_cast<std::int64_t>(m.n), m.m, m.brute ? m.brute->str() : std::string(),
                            m.weighted.to_string(), m.via_trace ? m.via_trace->to_string() : std::string(),
                            m.main_term ? m.main_term->str() : std::string(), std::string(m.ok ? "ok" : "FAIL")});
        }
      },
      4, [] { return g_stop.load(); });
  if (!done) return std::nullopt;
  r.params = {{"prime_max", cfg.prime_max}, {"n_max", cfg.n_max}, {"levels", cfg.levels}};
  r.status = all_ok ? "OK" : "FAIL";
  return r;
}

std::optional<Report> run_mass_check(const JobConfig& cfg) {
  require(cfg.prime_max >= 5, "--prime-max must be at least 5");
  std::vector<std::int64_t> primes;
  for (const std::int64_t p : arith::sieve_primes(cfg.prime_max)) {
    if (p > 3) primes.push_back(p);
  }
  Report r;
  r.columns = {"p", "traces", "status"};
  bool all_ok = true;
  const bool done = ordered_parallel_map(
      primes, cfg.workers,
      [](std::int64_t p) {
        const auto hist = moments::ap_histogram(p);
        std::int64_t checked = 0;
        bool ok = true;
        for (std::int64_t a = -hist.bound; a <= hist.bound; ++a) {
          if (a == 0 || a * a >= 4 * p) continue;
          ok = ok && 12 * hist.count(a) == (p - 1) * moments::hurwitz_mass_sixths(a, p);
          ++checked;
        }
        return std::pair{checked, ok};
      },
      [&](std::int64_t p, std::pair<std::int64_t, bool> res) {
        all_ok = all_ok && res.second;
        r.rows.push_back({p, res.first, std::string(res.second ? "ok" : "FAIL")});
      },
      4, [] { return g_stop.load(); });
  if (!done) return std::nullopt;
  r.params = {{"prime_max", cfg.prime_max}};
  r.status = all_ok ? "OK" : "FAIL";
  return r;
}

Report run_isogeny_count(const JobConfig& cfg) {
  require(cfg.prime > 3 && arith::is_prime(cfg.prime), "--prime must be a prime greater than 3");
  require(cfg.a != 0 && cfg.a * cfg.a < 4 * cfg.prime, "--a must satisfy 0 < a^2 < 4p");
  require(cfg.level >= 1 && cfg.level % 2 == 1, "--level must be odd and positive");
  const auto gaps = isogeny::valid_conductor_gaps(cfg.a, cfg.prime);
  require(std::find(gaps.begin(), gaps.end(), cfg.f) != gaps.end(), "--f is not a valid conductor gap for (a, p)");
  const std::int64_t mine = isogeny::count_mine(cfg.a, cfg.f, cfg.prime, cfg.level);
  const std::int64_t oracle = isogeny::frobenius_subgroup_oracle(cfg.a, cfg.f, cfg.prime, cfg.level);
  bool ok = mine == oracle;
  Cell ito = std::string();
  const auto fac = arith::factorize(cfg.level);
  if (fac.size() == 1) {
    const std::int64_t v = isogeny::count_ito(cfg.a, cfg.f, cfg.prime, fac[0].first, fac[0].second);
    ok = ok && v == mine;
    ito = v;
  }
  Cell ogg = std::string();
  const std::int64_t d = cfg.a * cfg.a - 4 * cfg.prime;
  if (std::gcd(cfg.level, 2 * d) == 1) {
    const std::int64_t v = isogeny::count_ogg(cfg.a, cfg.prime, cfg.level);
    ok = ok && v == mine;
    ogg = v;
  }
  Report r;
  r.columns = {"p", "a", "f", "M", "mine", "oracle", "ito", "ogg"};
  r.rows.push_back({cfg.prime, cfg.a, cfg.f, cfg.level, mine, oracle, ito, ogg});
  r.params = {{"prime", cfg.prime}, {"a", cfg.a}, {"f", cfg.f}, {"level", cfg.level}};
  r.status = ok ? "OK" : "FAIL";
  return r;
}

Report run_geometry(const JobConfig& cfg) {
  const auto family = load_family(cfg);
  const auto dm = geometry::disc_multiplicities(family);
  std::vector<std::int64_t> components(dm.multiset.begin(), dm.multiset.end());
  Report r;
  r.columns = {"factor", "multiplicity", "degree", "multiplicative"};
  for (const auto& f : dm.factors) {
    r.rows.push_back({f.factor.to_string(), static_cast<std::int64_t>(f.multiplicity),
                      static_cast<std::int64_t>(f.factor.degree()), std::string(f.multiplicative ? "yes" : "no")});
  }
  const std::int64_t sing = geometry::fiber_square_singular_count(components);
  r.params = {{"family", family.label()}};
  r.summary["multiset"] = components;
  r.summary["semistable"] = dm.semistable;
  r.summary["sum_m_squared"] = sing;
  if (cfg.mw_rank) {
    require(*cfg.mw_rank >= 0, "--mw-rank must be nonnegative");
    const std::int64_t rank = geometry::shioda_tate_rank({*cfg.mw_rank, components});
    r.summary["shioda_tate_rank"] = rank;
    r.summary["divisor_count"] = geometry::divisor_count_list2(rank, sing);
  }
  if (!cfg.b.empty() || !cfg.ranks.empty()) {
    require(cfg.b.size() == cfg.ranks.size() && cfg.b.size() >= 2, "--b and --ranks need the same length, at least 2");
    try {
      r.summary["thm_e2_rhs"] =
          geometry::thm_e2_rhs(static_cast<int>(cfg.b.size()), cfg.b, cfg.ranks).str();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  return r;
}

std::vector<std::int64_t> parse_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("malformed integer list '" + text + "'");
    }
  }
  return out;
}

}  // namespace

void request_stop() noexcept { g_stop.store(true); }
void reset_stop() noexcept { g_stop.store(false); }

unsigned default_workers() {
  if (const char* env = std::getenv("ELLSUM_WORKERS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("ELLSUM_WORKERS must be a positive integer, got '") + env + "'");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

JobConfig parse_args(int argc, const char* const* argv, std::ostream& out, bool& help) {
  help = false;
  JobConfig cfg;
  CLI::App app{"Frobenius trace sums over elliptic families, weighted moments and trace formulas", "ellsum"};
  app.require_subcommand(1);
  std::string format = "csv";
  std::string output;
  std::string checkpoint;
  std::string family;
  std::string levels;
  std::string b_list;
  std::string ranks_list;
  std::int64_t workers = 0;
  std::int64_t halt_after = -1;
  std::int64_t disc = 0;
  std::int64_t disc_max = 0;
  std::int64_t mw_rank = -1;
  std::string preset;
  std::string lambda;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", format, "Report format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--output", output, "Write the report to this file instead of stdout");
    sub->add_option("--workers", workers, "Worker threads (default: ELLSUM_WORKERS or hardware threads)")
        ->check(CLI::PositiveNumber);
  };
  auto series_opts = [&](CLI::App* sub) {
    sub->add_option("--xmax", cfg.xmax, "Largest prime bound X")->required();
    sub->add_option("--checkpoint", checkpoint, "Checkpoint file; resumed when present");
    sub->add_option("--halt-after", halt_after)->group("");
  };

  auto* ap = app.add_subcommand("ap", "Fiber traces of a family at one prime");
  ap->add_option("--family", family)->required();
  ap->add_option("--prime", cfg.prime)->required();
  common(ap);

  auto* rank = app.add_subcommand("rank", "Nagao rank sum S(F, X)");
  rank->add_option("--family", family)->required();
  series_opts(rank);
  common(rank);

  auto* residue = app.add_subcommand("residue", "Residue estimator for sum_t ap^n");
  residue->add_option("--family", family)->required();
  residue->add_option("--n", cfg.n)->required();
  residue->add_option("--preset", preset, "thm-e2 (lambda = n) or thm-modular (lambda = n/2 + 1)");
  residue->add_option("--lambda", lambda, "Explicit exponent, e.g. 2 or 3/2");
  residue->add_option("--checkpoints", cfg.grid, "Checkpoint grid, geometric:<ratio>[,start=][,window=]");
  series_opts(residue);
  common(residue);

  auto* weighted = app.add_subcommand("weighted-residue", "Class-number weighted residue at level M");
  weighted->add_option("--level", cfg.level)->default_val(1);
  weighted->add_option("--n", cfg.n)->required();
  weighted->add_option("--checkpoints", cfg.grid);
  series_opts(weighted);
  common(weighted);

  auto* cn = app.add_subcommand("classnum", "Class numbers h and h_w");
  cn->add_option("--disc", disc);
  cn->add_option("--disc-max", disc_max);
  common(cn);

  auto* trace = app.add_subcommand("trace", "Trace of T_p on S_k(Gamma_0(M))");
  trace->add_option("--level", cfg.level)->default_val(1);
  trace->add_option("--weight", cfg.weight)->required();
  trace->add_option("--prime-max", cfg.prime_max)->required();
  common(trace);

  auto* mc = app.add_subcommand("moment-check", "Brute, weighted and trace-formula moments agree");
  mc->add_option("--prime-max", cfg.prime_max)->default_val(199);
  mc->add_option("--n-max", cfg.n_max)->default_val(6);
  mc->add_option("--levels", levels, "Comma-separated odd levels")->default_val("1,3,5,9,15");
  common(mc);

  auto* mass = app.add_subcommand("mass-check", "Curve counts per trace against Hurwitz class numbers");
  mass->add_option("--prime-max", cfg.prime_max)->default_val(199);
  common(mass);

  auto* iso = app.add_subcommand("isogeny-count", "Rational cyclic M-subgroups for trace a and gap f");
  iso->add_option("--prime", cfg.prime)->required();
  iso->add_option("--a", cfg.a)->required();
  iso->add_option("--f", cfg.f)->default_val(1);
  iso->add_option("--level", cfg.level)->required();
  common(iso);

  auto* geo = app.add_subcommand("geometry", "Discriminant multiplicities and rank counts");
  geo->add_option("--family", family)->required();
  geo->add_option("--mw-rank", mw_rank);
  geo->add_option("--b", b_list, "b_1,...,b_n");
  geo->add_option("--ranks", ranks_list, "rank_1,...,rank_n");
  common(geo);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    help = true;
    return cfg;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    help = true;
    return cfg;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  const std::map<CLI::App*, Command> commands{
      {ap, Command::Ap},       {rank, Command::Rank},       {residue, Command::Residue},
      {weighted, Command::WeightedResidue},                 {cn, Command::Classnum},
      {trace, Command::Trace}, {mc, Command::MomentCheck},  {mass, Command::MassCheck},
      {iso, Command::IsogenyCount},                         {geo, Command::Geometry}};
  for (const auto& [sub, command] : commands) {
    if (sub->parsed()) {
      cfg.command = command;
    }
  }
  cfg.format = format == "json" ? Format::Json : Format::Csv;
  if (!output.empty()) cfg.output_path = output;
  if (!checkpoint.empty()) cfg.checkpoint_path = checkpoint;
  if (!family.empty()) cfg.family_path = family;
  if (!preset.empty()) cfg.preset = preset;
  if (!lambda.empty()) cfg.lambda = lambda;
  if (halt_after >= 0) cfg.halt_after = halt_after;
  if (cn->count("--disc")) cfg.disc = disc;
  if (cn->count("--disc-max")) cfg.disc_max = disc_max;
  if (geo->count("--mw-rank")) cfg.mw_rank = mw_rank;
  if (!levels.empty()) cfg.levels = parse_list(levels);
  if (!b_list.empty()) cfg.b = parse_list(b_list);
  if (!ranks_list.empty()) cfg.ranks = parse_list(ranks_list);
  cfg.workers = workers > 0 ? static_cast<unsigned>(workers) : default_workers();
  return cfg;
}

int run(const JobConfig& cfg, std::ostream& out, std::ostream& err) {
  std::optional<Report> report;
  switch (cfg.command) {
    case Command::Ap: report = run_ap(cfg); break;
    case Command::Rank: report = run_rank(cfg, err); break;
    case Command::Residue: report = run_residue(cfg, err); break;
    case Command::WeightedResidue: report = run_weighted_residue(cfg, err); break;
    case Command::Classnum: report = run_classnum(cfg); break;
    case Command::Trace: report = run_trace(cfg); break;
    case Command::MomentCheck: report = run_moment_check(cfg); break;
    case Command::MassCheck: report = run_mass_check(cfg); break;
    case Command::IsogenyCount: report = run_isogeny_count(cfg); break;
    case Command::Geometry: report = run_geometry(cfg); break;
  }
  if (!report) {
    err << "interrupted";
    if (cfg.checkpoint_path) err << "; checkpoint in " << cfg.checkpoint_path->string();
    err << "\n";
    return kExitInterrupted;
  }
  const std::string text = render(*report, command_name(cfg.command), cfg.format);
  if (cfg.output_path) {
    std::ofstream file(*cfg.output_path, std::ios::trunc);
    file << text;
    if (!file) throw std::runtime_error("cannot write " + cfg.output_path->string());
  } else {
    out << text;
  }
  return report->status == std::optional<std::string>("FAIL") ? kExitCheckFailed : kExitOk;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    bool help = false;
    const JobConfig cfg = parse_args(argc, argv, out, help);
    if (help) return kExitOk;
    return run(cfg, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "fatal: " << e.what() << "\n";
    return kExitCheckFailed;
  }
}

}  // namespace ellsum::cli
