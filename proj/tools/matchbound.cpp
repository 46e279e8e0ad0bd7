// matchbound: generate point sets, count and verify crossing-free matchings,
// estimate growth bases, draw vertical decompositions.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "matchbound/matchbound.hpp"

namespace fs = std::filesystem;
using namespace matchbound;

namespace {

enum Exit : int { kOk = 0, kViolation = 1, kUsage = 2, kIo = 3, kNonConvergent = 4 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("cannot read '" + path + "'");
  return ss.str();
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << data;
  out.flush();
  if (!out) throw IoError("cannot write '" + path + "'");
}

PointSet load_points(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return read_point_set(text);
  } catch (const std::runtime_error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

// Hard caps, optionally lowered by MATCHBOUND_CAP.
struct Caps {
  std::size_t enumeration = kHardEnumerationCap;
  std::size_t structural = kHardStructuralCap;
};

Caps effective_caps() {
  Caps c;
  if (const char* env = std::getenv("MATCHBOUND_CAP")) {
    std::int64_t v = 0;
    if (!detail::parse_int(env, v) || v < 0) throw UsageError("MATCHBOUND_CAP must be a nonnegative integer");
    const auto lim = static_cast<std::size_t>(v);
    c.enumeration = std::min(c.enumeration, lim);
    c.structural = std::min(c.structural, lim);
  }
  return c;
}

std::size_t checked_cap(std::optional<std::size_t> requested, std::size_t fallback, std::size_t hard,
                        const char* what) {
  const std::size_t v = requested.value_or(std::min(fallback, hard));
  if (v > hard) throw UsageError(std::string(what) + " " + std::to_string(v) + " exceeds the limit " + std::to_string(hard));
  return v;
}

std::pair<std::size_t, std::size_t> parse_n_range(const std::string& s) {
  std::int64_t lo = 0, hi = 0;
  if (auto dots = s.find(".."); dots != std::string::npos) {
    if (!detail::parse_int(std::string_view(s).substr(0, dots), lo) ||
        !detail::parse_int(std::string_view(s).substr(dots + 2), hi)) {
      throw UsageError("--n expects N or A..B, got '" + s + "'");
    }
  } else {
    if (!detail::parse_int(s, lo)) throw UsageError("--n expects N or A..B, got '" + s + "'");
    hi = lo;
  }
  if (lo < 1 || hi < lo) throw UsageError("--n range is empty or nonpositive: '" + s + "'");
  return {static_cast<std::size_t>(lo), static_cast<std::size_t>(hi)};
}

// "--seeds 50" is a count starting at --seed; "--seeds 3,7,9" is a list.
std::vector<std::uint64_t> parse_seeds(const std::string& s, std::uint64_t base) {
  std::vector<std::uint64_t> out;
  if (s.find(',') == std::string::npos) {
    std::int64_t count = 0;
    if (!detail::parse_int(s, count) || count < 1) throw UsageError("--seeds expects a positive count or a list");
    return CampaignConfig::seed_range(base, static_cast<std::size_t>(count));
  }
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::int64_t v = 0;
    if (!detail::parse_int(tok, v) || v < 0) throw UsageError("bad seed '" + tok + "'");
    out.push_back(static_cast<std::uint64_t>(v));
  }
  if (out.empty()) throw UsageError("seed list is empty");
  return out;
}

std::vector<std::size_t> parse_sizes(const std::string& s) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::int64_t v = 0;
    if (!detail::parse_int(tok, v) || v < 1) throw UsageError("bad size '" + tok + "'");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

std::string format_count_row(const CountTable& t) {
  std::string row;
  for (std::size_t m = 0; m < t.counts.size(); ++m) row += (m ? "," : "") + std::to_string(t.counts[m]);
  return row;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Crossing-free matching enumeration and bound verification"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a random point set in general position");
  std::size_t gen_n = 0;
  std::uint64_t gen_seed = 0;
  std::int64_t gen_bound = kCoordinateLimit;
  std::string gen_out;
  gen->add_option("--n", gen_n, "Number of points")->required();
  gen->add_option("--seed", gen_seed, "Random seed");
  gen->add_option("--bound", gen_bound, "Coordinate bound (|x|,|y| <= bound)");
  gen->add_option("--out", gen_out, "Output file (default: stdout)");

  // count
  auto* count = app.add_subcommand("count", "Count crossing-free matchings by size");
  std::string count_file;
  std::optional<std::size_t> count_convex, count_cap;
  unsigned count_jobs = default_jobs();
  bool count_total = false;
  count->add_option("points", count_file, "Point-set file");
  count->add_option("--convex", count_convex, "Use n points in convex position instead of a file");
  count->add_option("--cap", count_cap, "Enumeration cap");
  count->add_option("--jobs", count_jobs, "Worker threads");
  count->add_flag("--total", count_total, "Append the total as a last column");

  // verify
  auto* verify = app.add_subcommand("verify", "Run every check over a campaign of point sets");
  std::string v_n = "4..8", v_seeds, v_out, v_format = "text", v_convex;
  std::uint64_t v_seed = 0;
  std::int64_t v_bound = kCoordinateLimit;
  std::optional<std::size_t> v_cap, v_structural_cap;
  std::size_t v_witnesses = kDefaultWitnessLimit;
  unsigned v_jobs = default_jobs();
  std::vector<std::string> v_points;
  bool v_brute = false, v_no_estimator = false;
  verify->add_option("--n", v_n, "Point count N or range A..B");
  verify->add_option("--seed", v_seed, "Base seed for --seeds COUNT");
  verify->add_option("--seeds", v_seeds, "Seed count (from --seed) or comma list");
  verify->add_option("--bound", v_bound, "Coordinate bound for generated sets");
  verify->add_option("--convex", v_convex, "Comma list of convex-position sizes");
  verify->add_option("--points", v_points, "Point-set files (repeatable)");
  verify->add_option("--cap", v_cap, "Enumeration cap");
  verify->add_option("--structural-cap", v_structural_cap, "Largest n for structural checks");
  verify->add_option("--witnesses", v_witnesses, "Witnesses kept per check");
  verify->add_option("--out", v_out, "Output directory (default: text report on stdout)");
  verify->add_option("--format", v_format, "Comma list of text,csv");
  verify->add_option("--jobs", v_jobs, "Worker threads");
  verify->add_flag("--brute-force", v_brute, "Use the brute-force visibility oracle");
  verify->add_flag("--no-estimator", v_no_estimator, "Skip the growth estimator section");

  // growth
  auto* growth = app.add_subcommand("growth", "Estimate the growth base implied by the recurrence");
  std::string g_c4 = "24", g_c5 = "48";
  long long g_n = 10000;
  growth->add_option("--c4", g_c4, "k=4 constant (p/q, integer or decimal)");
  growth->add_option("--c5", g_c5, "k=5 constant");
  growth->add_option("--n", g_n, "Even n >= 1000");

  // svg
  auto* svg = app.add_subcommand("svg", "Draw the vertical decomposition of a matching");
  std::string s_file, s_matching, s_out;
  std::optional<std::size_t> s_convex;
  svg->add_option("points", s_file, "Point-set file");
  svg->add_option("--convex", s_convex, "Use n points in convex position instead of a file");
  svg->add_option("--matching", s_matching, "Edges as \"u-w u-w\" (sorted indices)");
  svg->add_option("--out", s_out, "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  auto points_from = [](const std::string& file, const std::optional<std::size_t>& convex) {
    if (convex && !file.empty()) throw UsageError("give either a point-set file or --convex, not both");
    if (convex) return convex_position(*convex);
    if (file.empty()) throw UsageError("a point-set file or --convex is required");
    return load_points(file);
  };

  try {
    const Caps caps = effective_caps();

    if (*gen) {
      const PointSet ps = generate_point_set(gen_n, gen_seed, gen_bound);
      if (gen_out.empty()) {
        std::cout << write_point_set(ps);
        std::cerr << digest(ps) << "\n";
      } else {
        write_file(gen_out, write_point_set(ps));
        std::cout << digest(ps) << "\n";
      }
      return kOk;
    }

    if (*count) {
      const PointSet ps = points_from(count_file, count_convex);
      const std::size_t cap = checked_cap(count_cap, kDefaultEnumerationCap, caps.enumeration, "--cap");
      const CountTable t = count_by_size_parallel(ps, count_jobs, cap);
      std::cout << format_count_row(t) << (count_total ? "," + std::to_string(t.total()) : "") << "\n";
      return kOk;
    }

    if (*verify) {
      CampaignConfig cfg;
      std::tie(cfg.n_min, cfg.n_max) = parse_n_range(v_n);
      const bool explicit_inputs = !v_points.empty() || !v_convex.empty();
      if (!v_seeds.empty()) cfg.seeds = parse_seeds(v_seeds, v_seed);
      else if (!explicit_inputs) cfg.seeds = CampaignConfig::seed_range(v_seed, 50);
      cfg.bound = v_bound;
      if (!v_convex.empty()) cfg.convex = parse_sizes(v_convex);
      for (const auto& f : v_points) cfg.files.push_back({load_points(f), "file " + fs::path(f).filename().string()});
      cfg.verify.cap = checked_cap(v_cap, kDefaultEnumerationCap, caps.enumeration, "--cap");
      cfg.verify.structural_cap =
          checked_cap(v_structural_cap, kDefaultStructuralCap, caps.structural, "--structural-cap");
      cfg.verify.witness_limit = v_witnesses;
      cfg.verify.jobs = std::max(1u, v_jobs);
      cfg.verify.mode = v_brute ? VisibilityMode::BruteForce : VisibilityMode::Trapezoid;
      cfg.estimator = !v_no_estimator;

      bool want_text = false, want_csv = false;
      std::stringstream ss(v_format);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        if (tok == "text") want_text = true;
        else if (tok == "csv") want_csv = true;
        else throw UsageError("--format entries must be text or csv, got '" + tok + "'");
      }
      if (!want_text && !want_csv) throw UsageError("--format is empty");

      const CampaignReport rep = run_campaign(cfg);
      if (v_out.empty()) {
        if (want_text) std::cout << write_text_report(rep);
        if (want_csv) std::cout << write_csv_report(rep);
      } else {
        std::error_code ec;
        fs::create_directories(v_out, ec);
        if (ec) throw IoError("cannot create '" + v_out + "': " + ec.message());
        if (want_text) write_file((fs::path(v_out) / "report.txt").string(), write_text_report(rep));
        if (want_csv) write_file((fs::path(v_out) / "report.csv").string(), write_csv_report(rep));
      }
      std::cerr << "classical violations: " << rep.violations(Category::Classical)
                << ", improved-claim violations: " << rep.violations(Category::Improved) << "\n";
      return rep.classical_ok() ? kOk : kViolation;
    }

    if (*growth) {
      const Rational c4 = parse_rational(g_c4), c5 = parse_rational(g_c5);
      const GrowthEstimate e = growth_base_estimate(c4, c5, g_n);
      std::cout << "strategy: " << kGrowthStrategy << "\n"
                << "c4: " << to_string(c4) << "\n"
                << "c5: " << to_string(c5) << "\n"
                << "n: " << g_n << "\n"
                << "base: " << detail::fixed(e.base, 6) << "\n"
                << "iterated_base: " << detail::fixed(e.iterated_base, 6) << "\n"
                << "iterations: " << e.iterations << "\n"
                << "converged: " << (e.converged ? "yes" : "no") << "\n";
      return e.converged ? kOk : kNonConvergent;
    }

    if (*svg) {
      const PointSet ps = points_from(s_file, s_convex);
      const Matching m = read_matching(ps, s_matching);
      const std::string out = render_svg(ps, m);
      if (s_out.empty()) std::cout << out;
      else write_file(s_out, out);
      return kOk;
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kOk;
}
