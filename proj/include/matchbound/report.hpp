#pragma once

#include <algorithm>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <tuple>
#include <string>
#include <vector>

#include "matchbound/bounds.hpp"
#include "matchbound/geom.hpp"
#include "matchbound/parallel.hpp"
#include "matchbound/verifier.hpp"

namespace matchbound {

inline constexpr const char* kReportFormat = "matchbound-report 1";

/// A point set queued for verification plus how it was produced.
struct CampaignInstance {
  PointSet points;
  std::string label;
};

struct CampaignConfig {
  std::size_t n_min = 4;
  std::size_t n_max = 8;
  std::vector<std::uint64_t> seeds;
  std::int64_t bound = kCoordinateLimit;
  std::vector<std::size_t> convex;  // extra convex-position sizes
  std::vector<CampaignInstance> files;
  VerifyOptions verify;
  bool estimator = true;
  long long estimator_n = 10000;

  static std::vector<std::uint64_t> seed_range(std::uint64_t base, std::size_t count) {
    std::vector<std::uint64_t> s(count);
    for (std::size_t i = 0; i < count; ++i) s[i] = base + i;
    return s;
  }
};

struct EstimatorLine {
  std::string constants;
  GrowthEstimate estimate;
};

struct CampaignReport {
  CampaignConfig config;
  std::vector<InstanceReport> instances;  // sorted by digest, then label
  std::vector<CheckResult> totals;        // indexed by CheckId
  std::vector<EstimatorLine> estimator;

  std::uint64_t violations(Category c) const {
    std::uint64_t v = 0;
    for (const auto& t : totals)
      if (t.category() == c) v += t.violations;
    return v;
  }
  bool classical_ok() const { return violations(Category::Classical) == 0; }
};

inline std::vector<CampaignInstance> campaign_instances(const CampaignConfig& cfg) {
  if (cfg.n_min > cfg.n_max) throw UsageError("campaign: empty n range");
  std::vector<CampaignInstance> out;
  if (!cfg.seeds.empty()) {
    for (std::size_t n = cfg.n_min; n <= cfg.n_max; ++n) {
      for (auto seed : cfg.seeds) {
        out.push_back({generate_point_set(n, seed, cfg.bound),
                       "random n=" + std::to_string(n) + " seed=" + std::to_string(seed) +
                           " bound=" + std::to_string(cfg.bound)});
      }
    }
  }
  for (auto n : cfg.convex) out.push_back({convex_position(n), "convex n=" + std::to_string(n)});
  for (const auto& f : cfg.files) out.push_back(f);
  if (out.empty()) throw UsageError("campaign: no instances");
  return out;
}

inline CampaignReport run_campaign(const CampaignConfig& cfg) {
  const auto inst = campaign_instances(cfg);
  for (const auto& i : inst) {
    if (i.points.size() > cfg.verify.cap) {
      throw UsageError("campaign: instance '" + i.label + "' exceeds enumeration cap " +
                       std::to_string(cfg.verify.cap));
    }
  }
  // Many instances: one worker per instance. Few: parallelize inside each.
  const bool outer = inst.size() >= cfg.verify.jobs;
  VerifyOptions inner = cfg.verify;
  inner.jobs = outer ? 1 : cfg.verify.jobs;
  CampaignReport rep;
  rep.config = cfg;
  rep.instances = parallel_map(inst.size(), outer ? cfg.verify.jobs : 1u,
                               [&](std::size_t i) { return verify_instance(inst[i].points, inner, inst[i].label); });
  std::stable_sort(rep.instances.begin(), rep.instances.end(), [](const InstanceReport& a, const InstanceReport& b) {
    return std::tie(a.digest, a.label) < std::tie(b.digest, b.label);
  });
  rep.totals = detail::fresh_checks();
  for (const auto& r : rep.instances)
    for (std::size_t c = 0; c < kCheckCount; ++c) rep.totals[c].merge(r.checks[c], cfg.verify.witness_limit);

  if (cfg.estimator) {
    const BoundSet& b = bounds();
    rep.estimator.push_back({"24,48", growth_base_estimate(b.c4_classic, b.c5_classic, cfg.estimator_n)});
    rep.estimator.push_back({"68/3,89/2", growth_base_estimate(b.c4_improved, b.c5_improved, cfg.estimator_n)});
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Serialization.

namespace detail {

inline std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

inline std::string opt_rational(const std::optional<Rational>& r) { return r ? to_string(*r) : "-"; }
inline std::string opt_ll(const std::optional<long long>& v) { return v ? std::to_string(*v) : "-"; }

inline std::string seeds_text(const std::vector<std::uint64_t>& seeds) {
  if (seeds.empty()) return "-";
  bool contiguous = true;
  for (std::size_t i = 1; i < seeds.size(); ++i) contiguous = contiguous && seeds[i] == seeds[i - 1] + 1;
  if (contiguous && seeds.size() > 1) return std::to_string(seeds.front()) + ".." + std::to_string(seeds.back());
  std::string out;
  for (auto s : seeds) out += (out.empty() ? "" : ",") + std::to_string(s);
  return out;
}

inline void write_check(std::ostream& os, const std::string& prefix, const CheckResult& c) {
  os << prefix << c.name() << " category=" << to_string(c.category()) << " instances=" << c.instances
     << " violations=" << c.violations << " min_margin=" << opt_rational(c.min_margin)
     << " max_observed=" << opt_ll(c.max_observed) << "\n";
}

inline void write_witness(std::ostream& os, const std::string& prefix, const Witness& w) {
  os << prefix << "points=" << w.points << " | matching=" << w.matching
     << " | point=" << (w.point ? std::to_string(*w.point) : "-") << " | side=" << (w.side ? to_string(*w.side) : "-")
     << " | observed=" << w.observed << " | bound=" << (w.bound.empty() ? "-" : w.bound)
     << " | note=" << (w.note.empty() ? "-" : w.note) << "\n";
}

}  // namespace detail

/// Key-value text report. Field order is fixed; nothing depends on timing or
/// worker count.
inline std::string write_text_report(const CampaignReport& rep) {
  std::ostringstream os;
  const auto& cfg = rep.config;
  os << "format: " << kReportFormat << "\n";
  os << "config.n: " << cfg.n_min << ".." << cfg.n_max << "\n";
  os << "config.seeds: " << detail::seeds_text(cfg.seeds) << "\n";
  os << "config.bound: " << cfg.bound << "\n";
  os << "config.convex: ";
  for (std::size_t i = 0; i < cfg.convex.size(); ++i) os << (i ? "," : "") << cfg.convex[i];
  os << (cfg.convex.empty() ? "-" : "") << "\n";
  os << "config.files: " << cfg.files.size() << "\n";
  os << "config.cap: " << cfg.verify.cap << "\n";
  os << "config.structural_cap: " << cfg.verify.structural_cap << "\n";
  os << "config.visibility: " << (cfg.verify.mode == VisibilityMode::Trapezoid ? "trapezoid" : "brute-force") << "\n";
  os << "config.witness_limit: " << cfg.verify.witness_limit << "\n";
  os << "interpretation.separation: two isolated points are separated when some matching edge spans both "
        "x-coordinates with one point above it and the other below\n";
  os << "interpretation.distinct_constellations: two points see different constellations when their left or their "
        "right bifurcation points differ\n";
  os << "interpretation.shared_bifurcation: a lies above b when the edge directly below a spans b and passes above "
        "it; candidates are reinsertions (x,y) with x<a<y restoring the edge below a and all four bifurcation points\n";
  os << "interpretation.bad_constellation: q' is recorded as its index among isolated points met walking from q "
        "towards q'; candidates restore the same bifurcation edge, class and side counts at that index on the same "
        "side of q (unique-undirected drops the side)\n";
  os << "interpretation.charging: a Good constellation with one-sided k4 >= 11 charges each of its members; charges "
        "are counted per distinct (side, bifurcation edge)\n";
  os << "interpretation.good_members: members = chosen endpoints of insertable edges on that side plus isolated "
        "points visible from them; contributors = the visible isolated points only\n";

  os << "improved.summary: violations do not affect the exit status\n";
  for (auto id : {CheckId::ImprovedK4, CheckId::ImprovedK5}) detail::write_check(os, "improved.", rep.totals[static_cast<std::size_t>(id)]);
  os << "summary.instances: " << rep.instances.size() << "\n";
  for (auto c : {Category::Classical, Category::Improved, Category::Structural, Category::Informational})
    os << "summary." << to_string(c) << "_violations: " << rep.violations(c) << "\n";
  os << "summary.status: " << (rep.classical_ok() ? "pass" : "fail") << "\n";

  for (const auto& c : rep.totals) detail::write_check(os, "total.", c);

  for (const auto& e : rep.estimator) {
    os << "estimator.strategy: " << kGrowthStrategy << "\n";
    os << "estimator[" << e.constants << "].n: " << cfg.estimator_n << "\n";
    os << "estimator[" << e.constants << "].base: " << detail::fixed(e.estimate.base, 6) << "\n";
    os << "estimator[" << e.constants << "].iterated_base: " << detail::fixed(e.estimate.iterated_base, 6) << "\n";
    os << "estimator[" << e.constants << "].iterations: " << e.estimate.iterations << "\n";
    os << "estimator[" << e.constants << "].converged: " << (e.estimate.converged ? "yes" : "no") << "\n";
    os << "estimator[" << e.constants << "].first_bounded_level: " << e.estimate.first_bounded_level << "\n";
    os << "estimator[" << e.constants << "].best_start_level: " << e.estimate.best_start_level << "\n";
  }

  for (const auto& r : rep.instances) {
    const std::string pre = "instance[" + r.digest + "].";
    os << pre << "label: " << r.label << "\n";
    os << pre << "n: " << r.n << "\n";
    os << pre << "points: " << r.points << "\n";
    os << pre << "counts: ";
    for (std::size_t m = 0; m < r.counts.counts.size(); ++m) os << (m ? "," : "") << r.counts.counts[m];
    os << "\n";
    os << pre << "structural: " << (r.structural_evaluated ? "yes" : "no") << "\n";
    for (const auto& g : r.margins) {
      os << pre << "margin m=" << g.m << " s=" << g.s << " Ma_m=" << g.ma_m << " Ma_m-1=" << g.ma_prev
         << " S4=" << g.s4 << " bound4=" << to_string(g.bound4) << " margin4=" << to_string(g.margin4)
         << " S5=" << g.s5 << " bound5=" << to_string(g.bound5) << " margin5=" << to_string(g.margin5) << "\n";
    }
    for (const auto& c : r.checks) {
      if (c.instances == 0) continue;
      detail::write_check(os, pre + "check.", c);
      for (std::size_t i = 0; i < c.witnesses.size(); ++i)
        detail::write_witness(os, pre + "witness." + c.name() + "[" + std::to_string(i) + "]: ", c.witnesses[i]);
    }
  }
  return os.str();
}

/// One row per check per point set.
inline std::string write_csv_report(const CampaignReport& rep) {
  std::ostringstream os;
  os << "instance,label,check,category,instances,violations,min_margin,max_observed\n";
  for (const auto& r : rep.instances) {
    for (const auto& c : r.checks) {
      os << r.digest << ",\"" << r.label << "\"," << c.name() << "," << to_string(c.category()) << "," << c.instances
         << "," << c.violations << "," << detail::opt_rational(c.min_margin) << "," << detail::opt_ll(c.max_observed)
         << "\n";
    }
  }
  return os.str();
}

}  // namespace matchbound
