#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <tuple>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "matchbound/bounds.hpp"
#include "matchbound/geom.hpp"
#include "matchbound/insertion.hpp"
#include "matchbound/matching.hpp"
#include "matchbound/parallel.hpp"
#include "matchbound/trapezoid.hpp"

namespace matchbound {

inline constexpr std::size_t kDefaultStructuralCap = 7;
inline constexpr std::size_t kHardEnumerationCap = 12;
inline constexpr std::size_t kHardStructuralCap = 8;
inline constexpr std::size_t kDefaultWitnessLimit = 10;

/// classical: peer-reviewed bounds, decide the exit status.
/// improved: the sharpened constants under test; reported, never fatal.
/// structural: lemma probes with a documented interpretation; reported.
/// informational: two readings evaluated side by side, no verdict.
enum class Category { Classical, Improved, Structural, Informational };

inline const char* to_string(Category c) {
  switch (c) {
    case Category::Classical: return "classical";
    case Category::Improved: return "improved";
    case Category::Structural: return "structural";
    case Category::Informational: return "informational";
  }
  return "?";
}

enum class CheckId : std::size_t {
  InsertK4,
  InsertK5,
  OneSidedK3,
  IsolatedBifK4,
  IsolatedBifK5,
  IsolatedBifL0,
  GoodPointK4,
  GoodPointK5,
  RankK4,
  RankK5,
  SandwichK4Lower,
  SandwichK4Upper,
  SandwichK5Lower,
  SandwichK5Upper,
  InsertionIdentity,
  Charging,
  ImprovedK4,
  ImprovedK5,
  DistinctBifurcations,
  MatchedBifurcationK4,
  TupleInventoryK4Is12,
  TupleInventoryK4Is11,
  SharedBifUnique,
  SharedBifRule,
  BadConstellationUnique,
  BadConstellationUndirected,
  GoodMembersK4Members,
  GoodMembersK4Contributors,
  GoodMembersK5Members,
  GoodMembersK5Contributors,
  Count_
};

inline constexpr std::size_t kCheckCount = static_cast<std::size_t>(CheckId::Count_);

struct CheckSpec {
  const char* name;
  Category category;
  bool structural;  // only evaluated when n <= structural cap
};

inline const std::array<CheckSpec, kCheckCount>& check_specs() {
  static const std::array<CheckSpec, kCheckCount> specs{{
      {"insert.k4<=24", Category::Classical, false},
      {"insert.k5<=48", Category::Classical, false},
      {"one-sided.k3<=6", Category::Classical, false},
      {"isolated-bifurcation.k4<=10", Category::Classical, false},
      {"isolated-bifurcation.k5<=17", Category::Classical, false},
      {"isolated-bifurcation.l0<=1", Category::Classical, false},
      {"good-point.k4<=22", Category::Classical, false},
      {"good-point.k5<=41", Category::Classical, false},
      {"rank.k4>=2n-6s", Category::Classical, false},
      {"rank.k5>=3n-7s", Category::Classical, false},
      {"sandwich.k4.lower", Category::Classical, false},
      {"sandwich.k4.upper(24)", Category::Classical, false},
      {"sandwich.k5.lower", Category::Classical, false},
      {"sandwich.k5.upper(48)", Category::Classical, false},
      {"insertion-count-identity", Category::Classical, false},
      {"charging<=2", Category::Classical, true},
      {"improved.k4<=68/3", Category::Improved, false},
      {"improved.k5<=89/2", Category::Improved, false},
      {"distinct-bifurcations>=k+1", Category::Structural, true},
      {"k4>=11=>matched-bifurcation", Category::Structural, true},
      {"tuple-inventory.k4=12", Category::Structural, true},
      {"tuple-inventory.k4=11", Category::Structural, true},
      {"shared-bifurcation.unique", Category::Structural, true},
      {"shared-bifurcation.rule-reproduces", Category::Structural, true},
      {"bad-constellation.unique", Category::Structural, true},
      {"bad-constellation.unique-undirected", Category::Informational, true},
      {"good-members.k4.members", Category::Informational, true},
      {"good-members.k4.contributors", Category::Informational, true},
      {"good-members.k5.members", Category::Informational, true},
      {"good-members.k5.contributors", Category::Informational, true},
  }};
  return specs;
}

inline const CheckSpec& spec_of(CheckId id) { return check_specs()[static_cast<std::size_t>(id)]; }

/// Everything needed to replay one violation from the report alone.
struct Witness {
  std::string points;    // "x y;x y;..."
  std::string matching;  // "u-w u-w"
  std::optional<std::size_t> point;
  std::optional<Side> side;
  std::string observed;
  std::string bound;
  std::string note;

  friend bool operator==(const Witness&, const Witness&) = default;
};

struct CheckResult {
  CheckId id{};
  std::uint64_t instances = 0;
  std::uint64_t violations = 0;
  std::vector<Witness> witnesses;
  std::optional<Rational> min_margin;     // min over instances of (bound - observed), or (observed - bound) for lower bounds
  std::optional<long long> max_observed;  // check-specific statistic

  const char* name() const { return spec_of(id).name; }
  Category category() const { return spec_of(id).category; }

  void note_margin(const Rational& m) {
    if (!min_margin || m < *min_margin) min_margin = m;
  }
  void note_observed(long long v) {
    if (!max_observed || v > *max_observed) max_observed = v;
  }

  /// Appends other (which covers later stream positions) into this result.
  void merge(const CheckResult& other, std::size_t witness_limit) {
    instances += other.instances;
    violations += other.violations;
    for (const auto& w : other.witnesses) {
      if (witnesses.size() >= witness_limit) break;
      witnesses.push_back(w);
    }
    if (other.min_margin) note_margin(*other.min_margin);
    if (other.max_observed) note_observed(*other.max_observed);
  }

  friend bool operator==(const CheckResult&, const CheckResult&) = default;
};

struct VerifyOptions {
  VisibilityMode mode = VisibilityMode::Trapezoid;
  std::size_t cap = kDefaultEnumerationCap;
  std::size_t structural_cap = kDefaultStructuralCap;
  std::size_t witness_limit = kDefaultWitnessLimit;
  unsigned jobs = 1;
  std::size_t chunk = 128;  // matchings per work unit; fixed so results do not depend on jobs
};

/// Exact margins of the sharpened double-counting claims at one size m.
struct ImprovedMargin {
  std::size_t m = 0;
  std::size_t s = 0;
  std::uint64_t ma_m = 0;
  std::uint64_t ma_prev = 0;
  long long s4 = 0;
  long long s5 = 0;
  Rational bound4;
  Rational bound5;
  Rational margin4;
  Rational margin5;

  friend bool operator==(const ImprovedMargin&, const ImprovedMargin&) = default;
};

struct InstanceReport {
  std::string digest;
  std::string label;
  std::string points;  // compact "x y;x y"
  std::size_t n = 0;
  CountTable counts;
  bool structural_evaluated = false;
  std::vector<CheckResult> checks;  // indexed by CheckId
  std::vector<ImprovedMargin> margins;

  const CheckResult& check(CheckId id) const { return checks[static_cast<std::size_t>(id)]; }
  friend bool operator==(const InstanceReport&, const InstanceReport&) = default;
};

inline std::string compact_points(const PointSet& ps) {
  std::string out;
  for (const auto& p : ps) {
    if (!out.empty()) out += ';';
    out += std::to_string(p.x) + " " + std::to_string(p.y);
  }
  return out;
}

namespace detail {

inline std::vector<CheckResult> fresh_checks() {
  std::vector<CheckResult> v(kCheckCount);
  for (std::size_t i = 0; i < kCheckCount; ++i) v[i].id = static_cast<CheckId>(i);
  return v;
}

inline std::string join(const std::vector<std::size_t>& xs) {
  std::string out;
  for (auto x : xs) {
    if (!out.empty()) out += ',';
    out += std::to_string(x);
  }
  return out;
}

inline std::string join_counts(std::span<const std::size_t> xs, std::size_t upto) {
  std::string out = "(";
  for (std::size_t i = 0; i <= upto; ++i) {
    if (i) out += ',';
    out += std::to_string(i < xs.size() ? xs[i] : 0);
  }
  return out + ")";
}

// Per-chunk accumulation. Vectors indexed by the size of the matching the
// insertion starts from (m - 1 in double-counting terms).
struct Tally {
  std::vector<CheckResult> checks = fresh_checks();
  std::vector<long long> s4, s5;
  std::vector<std::uint64_t> insertions, pairs;

  Tally() = default;
  explicit Tally(std::size_t n) : s4(n / 2 + 1, 0), s5(n / 2 + 1, 0), insertions(n / 2 + 1, 0), pairs(n / 2 + 1, 0) {}

  void merge(const Tally& o, std::size_t limit) {
    for (std::size_t i = 0; i < kCheckCount; ++i) checks[i].merge(o.checks[i], limit);
    for (std::size_t m = 0; m < s4.size(); ++m) {
      s4[m] += o.s4[m];
      s5[m] += o.s5[m];
      insertions[m] += o.insertions[m];
      pairs[m] += o.pairs[m];
    }
  }
};

class MatchingAnalyzer {
 public:
  MatchingAnalyzer(const PointSet& ps, const VerifyOptions& opt, bool structural)
      : ps_(ps), opt_(opt), structural_(structural), points_text_(compact_points(ps)) {}

  void run(const Matching& m, Tally& t) const {
    const Trapezoidation trap(ps_, m);
    const auto iso = isolated_vertices(m);
    const std::size_t n = ps_.size();
    const long long s = static_cast<long long>(m.isolated_count());
    const std::string mtext = write_matching(m);
    const BoundSet& b = bounds();

    auto check = [&](CheckId id) -> CheckResult& { return t.checks[static_cast<std::size_t>(id)]; };
    auto upper = [&](CheckId id, long long observed, const Rational& bound, std::optional<std::size_t> p,
                     std::optional<Side> side, std::string note = {}) {
      auto& c = check(id);
      ++c.instances;
      const Rational margin = bound - observed;
      c.note_margin(margin);
      if (margin < 0) {
        ++c.violations;
        if (c.witnesses.size() < opt_.witness_limit)
          c.witnesses.push_back({points_text_, mtext, p, side, std::to_string(observed), to_string(bound), note});
      }
    };
    auto predicate = [&](CheckId id, bool ok, std::optional<std::size_t> p, std::optional<Side> side,
                         std::string observed, std::string note) {
      auto& c = check(id);
      ++c.instances;
      if (!ok) {
        ++c.violations;
        if (c.witnesses.size() < opt_.witness_limit)
          c.witnesses.push_back({points_text_, mtext, p, side, std::move(observed), "", std::move(note)});
      }
    };

    // Rank inequalities on m itself.
    const RankProfile rp = rank_profile(ps_, m, opt_.mode);
    {
      const long long lhs4 = weighted_rank_sum(rp, 4), rhs4 = 2 * static_cast<long long>(n) - 6 * s;
      const long long lhs5 = weighted_rank_sum(rp, 5), rhs5 = 3 * static_cast<long long>(n) - 7 * s;
      for (auto [id, lhs, rhs] : {std::tuple{CheckId::RankK4, lhs4, rhs4}, std::tuple{CheckId::RankK5, lhs5, rhs5}}) {
        auto& c = check(id);
        ++c.instances;
        c.note_margin(Rational(lhs - rhs));
        if (lhs < rhs) {
          ++c.violations;
          if (c.witnesses.size() < opt_.witness_limit)
            c.witnesses.push_back({points_text_, mtext, std::nullopt, std::nullopt, std::to_string(lhs),
                                   std::to_string(rhs), "v=" + join_counts(rp.v, 5)});
        }
      }
    }

    std::vector<PointAnalysis> analyses;
    analyses.reserve(iso.size());
    for (auto p : iso) analyses.push_back(analyze_point(p, ps_, m, trap, opt_.mode));

    std::vector<bool> good(n, false);
    for (auto p : iso) good[p] = is_good_point(trap, m, p);

    const std::size_t msize = m.size();
    for (const auto& a : analyses) {
      const std::size_t p = a.profile.point;
      const long long k4 = weighted_sum(a.profile, 4, SideSel::Both);
      const long long k5 = weighted_sum(a.profile, 5, SideSel::Both);
      t.s4[msize] += k4;
      t.s5[msize] += k5;
      t.insertions[msize] += a.profile.insertions();
      t.pairs[msize] += 1;

      upper(CheckId::InsertK4, k4, b.c4_classic, p, std::nullopt);
      upper(CheckId::InsertK5, k5, b.c5_classic, p, std::nullopt);
      if (good[p]) {
        upper(CheckId::GoodPointK4, k4, b.good_k4, p, std::nullopt);
        upper(CheckId::GoodPointK5, k5, b.good_k5, p, std::nullopt);
      }
      for (Side side : {Side::Left, Side::Right}) {
        const Constellation& c = a.constellation(side);
        const std::string counts_text = join_counts(c.counts, 5);
        upper(CheckId::OneSidedK3, weighted(c.counts, 3), b.one_sided_k3, p, side, counts_text);
        if (c.bifurcation && m.is_isolated(*c.bifurcation)) {
          upper(CheckId::IsolatedBifK4, weighted(c.counts, 4), b.one_sided_k4_isolated, p, side, counts_text);
          upper(CheckId::IsolatedBifK5, weighted(c.counts, 5), b.one_sided_k5_isolated, p, side, counts_text);
          upper(CheckId::IsolatedBifL0, static_cast<long long>(c.counts[0]), Rational(1), p, side, counts_text);
        }
      }
    }

    if (!structural_) return;

    // Per-constellation probes.
    struct ChargeKey {
      Side side;
      Edge edge;
      auto operator<=>(const ChargeKey&) const = default;
    };
    std::vector<std::set<ChargeKey>> charged_by(n);
    for (const auto& a : analyses) {
      const std::size_t p = a.profile.point;
      for (Side side : {Side::Left, Side::Right}) {
        const Constellation& c = a.constellation(side);
        const auto cls = classify_constellation(c);
        const long long v4 = weighted(c.counts, 4);
        const long long v5 = weighted(c.counts, 5);
        const std::string counts_text = join_counts(c.counts, 5);

        if (v4 >= 11) {
          const bool matched = c.bifurcation && !m.is_isolated(*c.bifurcation);
          predicate(CheckId::MatchedBifurcationK4, matched, p, side, std::to_string(v4), counts_text);
          if (cls == ConstellationClass::Good) {
            for (auto v : c.members) charged_by[v].insert({side, *c.bifurcation_edge});
          }
        }
        if (v4 == 12 || v4 == 11) {
          static const std::set<std::array<std::size_t, 4>> twelve{{0, 2, 2, 2}, {0, 1, 3, 3}, {0, 0, 4, 4}};
          static const std::set<std::array<std::size_t, 4>> eleven{{0, 0, 3, 5}, {0, 0, 4, 3}, {0, 1, 2, 4}, {0, 1, 3, 2}};
          const std::array<std::size_t, 4> tuple{c.counts[0], c.counts[1], c.counts[2], c.counts[3]};
          const bool listed = v4 == 12 ? twelve.contains(tuple) : eleven.contains(tuple);
          predicate(v4 == 12 ? CheckId::TupleInventoryK4Is12 : CheckId::TupleInventoryK4Is11, listed, p, side,
                    counts_text, "");
        }
        auto good_among = [&](const std::vector<std::size_t>& xs) {
          return static_cast<long long>(std::count_if(xs.begin(), xs.end(), [&](std::size_t v) { return good[v]; }));
        };
        if (v4 >= 11 && v4 <= 12) {
          const long long need = v4 == 12 ? 4 : 2;
          for (auto [id, xs] : {std::pair{CheckId::GoodMembersK4Members, &c.members},
                                std::pair{CheckId::GoodMembersK4Contributors, &c.contributors}}) {
            const long long g = good_among(*xs);
            const bool ok = v4 == 12 ? g == need : g >= need;
            predicate(id, ok, p, side, std::to_string(g), "k4=" + std::to_string(v4) + " " + counts_text);
            check(id).note_observed(g);
          }
        }
        if (v5 >= 21) {
          for (auto [id, xs] : {std::pair{CheckId::GoodMembersK5Members, &c.members},
                                std::pair{CheckId::GoodMembersK5Contributors, &c.contributors}}) {
            const long long g = good_among(*xs);
            predicate(id, g >= 2, p, side, std::to_string(g), "k5=" + std::to_string(v5) + " " + counts_text);
            check(id).note_observed(g);
          }
        }
        if (cls == ConstellationClass::Bad) {
          const auto out = check_bad_constellation_removal(p, side, ps_, m, opt_.mode);
          predicate(CheckId::BadConstellationUnique, out.unique && out.rule_reproduces, p, side,
                    "candidates=" + std::to_string(out.candidates),
                    "removed=" + std::to_string(out.removed_edge.u) + "-" + std::to_string(out.removed_edge.w));
          if (out.observed_index) check(CheckId::BadConstellationUnique).note_observed(static_cast<long long>(*out.observed_index));
          predicate(CheckId::BadConstellationUndirected, out.candidates_undirected == 1, p, side,
                    "candidates=" + std::to_string(out.candidates_undirected),
                    "removed=" + std::to_string(out.removed_edge.u) + "-" + std::to_string(out.removed_edge.w));
        }
      }
    }

    for (auto v : iso) {
      const auto k = static_cast<long long>(charged_by[v].size());
      auto& c = check(CheckId::Charging);
      ++c.instances;
      c.note_margin(Rational(2 - k));
      c.note_observed(k);
      if (k > 2) {
        ++c.violations;
        if (c.witnesses.size() < opt_.witness_limit)
          c.witnesses.push_back({points_text_, mtext, v, std::nullopt, std::to_string(k), "2", ""});
      }
    }

    distinct_bifurcations(m, trap, iso, [&](bool ok, const std::string& observed, const std::string& note) {
      predicate(CheckId::DistinctBifurcations, ok, std::nullopt, std::nullopt, observed, note);
    });

    for (auto a : iso) {
      for (auto bpt : iso) {
        if (a == bpt) continue;
        std::optional<ReconstructionOutcome> out;
        try {
          out = check_unique_edge_reconstruction(a, bpt, ps_, m);
        } catch (const PreconditionError&) {
          continue;
        }
        const std::string note = "a=" + std::to_string(a) + " b=" + std::to_string(bpt) + " removed=" +
                                 std::to_string(out->removed_edge.u) + "-" + std::to_string(out->removed_edge.w);
        predicate(CheckId::SharedBifUnique, out->unique, a, std::nullopt,
                  "candidates=" + std::to_string(out->candidates), note);
        std::string rule = out->rule_edge
                               ? std::to_string(out->rule_edge->u) + "-" + std::to_string(out->rule_edge->w)
                               : std::string("none");
        predicate(CheckId::SharedBifRule, out->rule_reproduces, a, std::nullopt, "rule=" + rule, note);
      }
    }
  }

 private:
  bool separated_by_edge(const Matching& m, std::size_t p, std::size_t q) const {
    for (const auto& e : m.edges()) {
      if (spans_strictly(e, p) && spans_strictly(e, q) && point_above(ps_, p, e) != point_above(ps_, q, e)) return true;
    }
    return false;
  }

  // Sets of >= 2 isolated points, pairwise separated by an edge and pairwise
  // differing in at least one bifurcation point.
  template <typename F>
  void distinct_bifurcations(const Matching& m, const Trapezoidation& trap, const std::vector<std::size_t>& iso,
                             F&& report) const {
    std::vector<std::size_t> cand = iso;
    const std::size_t k = cand.size();
    if (k < 2) return;
    std::vector<detail::Bifurcations> bif;
    for (auto v : cand) bif.push_back(detail::bifurcations(trap, m, v));
    std::vector<std::vector<bool>> ok(k, std::vector<bool>(k, false));
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        const bool separated = separated_by_edge(m, cand[i], cand[j]);
        const bool distinct = bif[i].left != bif[j].left || bif[i].right != bif[j].right;
        ok[i][j] = ok[j][i] = separated && distinct;
      }
    }
    for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
      if (std::popcount(mask) < 2) continue;
      bool clique = true;
      std::vector<std::size_t> members;
      std::set<std::size_t> points;
      for (std::size_t i = 0; i < k && clique; ++i) {
        if (!(mask >> i & 1)) continue;
        for (auto j : members) {
          if (!ok[i][j]) {
            clique = false;
            break;
          }
        }
        members.push_back(i);
        if (bif[i].left) points.insert(*bif[i].left);
        if (bif[i].right) points.insert(*bif[i].right);
      }
      if (!clique) continue;
      std::vector<std::size_t> set_pts;
      for (auto i : members) set_pts.push_back(cand[i]);
      report(points.size() >= members.size() + 1, std::to_string(points.size()),
             "set=" + join(set_pts) + " need=" + std::to_string(members.size() + 1));
    }
  }

  const PointSet& ps_;
  const VerifyOptions& opt_;
  bool structural_;
  std::string points_text_;
};

}  // namespace detail

/// Runs every check on every crossing-free matching of ps.
inline InstanceReport verify_instance(const PointSet& ps, const VerifyOptions& opt, std::string label = {}) {
  if (opt.cap > kHardEnumerationCap || opt.structural_cap > kHardStructuralCap) {
    throw UsageError("verify: caps exceed hard limits");
  }
  const std::size_t n = ps.size();
  const bool structural = n <= opt.structural_cap;
  const auto matchings = all_matchings(ps, opt.cap);

  const std::size_t chunks = (matchings.size() + opt.chunk - 1) / opt.chunk;
  const detail::MatchingAnalyzer analyzer(ps, opt, structural);
  auto parts = parallel_map(chunks, opt.jobs, [&](std::size_t c) {
    detail::Tally t(n);
    const std::size_t hi = std::min(matchings.size(), (c + 1) * opt.chunk);
    for (std::size_t i = c * opt.chunk; i < hi; ++i) analyzer.run(matchings[i], t);
    return t;
  });
  detail::Tally total(n);
  for (const auto& p : parts) total.merge(p, opt.witness_limit);

  InstanceReport rep;
  rep.digest = digest(ps);
  rep.label = std::move(label);
  rep.points = compact_points(ps);
  rep.n = n;
  rep.structural_evaluated = structural;
  rep.counts = CountTable{n, std::vector<std::uint64_t>(n / 2 + 1, 0)};
  for (const auto& m : matchings) ++rep.counts.counts[m.size()];

  auto& checks = total.checks;
  auto check = [&](CheckId id) -> CheckResult& { return checks[static_cast<std::size_t>(id)]; };
  const BoundSet& b = bounds();
  const std::string mt;  // per-m witnesses have no single matching

  for (std::size_t m = 1; 2 * m <= n; ++m) {
    const std::uint64_t ma = rep.counts.at(m), prev = rep.counts.at(m - 1);
    if (ma == 0) continue;
    const long long s = static_cast<long long>(n - 2 * m);
    const long long nn = static_cast<long long>(n);
    const long long s4 = total.s4[m - 1], s5 = total.s5[m - 1];
    const std::string note = "m=" + std::to_string(m);
    auto emit = [&](CheckId id, const Rational& margin, std::string observed, std::string bound) {
      auto& c = check(id);
      ++c.instances;
      c.note_margin(margin);
      if (margin < 0) {
        ++c.violations;
        if (c.witnesses.size() < opt.witness_limit)
          c.witnesses.push_back({rep.points, mt, std::nullopt, std::nullopt, std::move(observed), std::move(bound), note});
      }
    };
    const Rational lo4((2 * nn - 6 * s) * static_cast<long long>(ma));
    const Rational lo5((3 * nn - 7 * s) * static_cast<long long>(ma));
    const Rational scale((s + 2) * static_cast<long long>(prev));
    const Rational up4 = b.c4_classic * scale, up5 = b.c5_classic * scale;
    const Rational im4 = b.c4_improved * scale, im5 = b.c5_improved * scale;
    emit(CheckId::SandwichK4Lower, Rational(s4) - lo4, std::to_string(s4), to_string(lo4));
    emit(CheckId::SandwichK4Upper, up4 - s4, std::to_string(s4), to_string(up4));
    emit(CheckId::SandwichK5Lower, Rational(s5) - lo5, std::to_string(s5), to_string(lo5));
    emit(CheckId::SandwichK5Upper, up5 - s5, std::to_string(s5), to_string(up5));
    emit(CheckId::ImprovedK4, im4 - s4, std::to_string(s4), to_string(im4));
    emit(CheckId::ImprovedK5, im5 - s5, std::to_string(s5), to_string(im5));

    // Each size-m matching arises from m edges times two endpoints; each
    // size-(m-1) matching contributes one (M, p) pair per isolated point.
    const bool identity = total.insertions[m - 1] == 2 * m * ma &&
                          total.pairs[m - 1] == prev * static_cast<std::uint64_t>(s + 2);
    {
      auto& c = check(CheckId::InsertionIdentity);
      ++c.instances;
      if (!identity) {
        ++c.violations;
        if (c.witnesses.size() < opt.witness_limit)
          c.witnesses.push_back({rep.points, mt, std::nullopt, std::nullopt, std::to_string(total.insertions[m - 1]),
                                 std::to_string(2 * m * ma), note});
      }
    }

    rep.margins.push_back(ImprovedMargin{m, static_cast<std::size_t>(s), ma, prev, s4, s5, im4, im5, im4 - s4, im5 - s5});
  }
  rep.checks = std::move(checks);
  return rep;
}

inline InstanceReport verify_instance(const PointSet& ps, std::string label = {}) {
  return verify_instance(ps, VerifyOptions{}, std::move(label));
}

}  // namespace matchbound
