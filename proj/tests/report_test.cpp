#include <gtest/gtest.h>

#include <sstream>

#include "matchbound/report.hpp"
#include "matchbound/svg.hpp"

using namespace matchbound;

namespace {

CampaignConfig small_config(unsigned jobs) {
  CampaignConfig cfg;
  cfg.n_min = 3;
  cfg.n_max = 7;
  cfg.seeds = CampaignConfig::seed_range(0, 4);
  cfg.bound = 1000;
  cfg.convex = {4, 6};
  cfg.verify.jobs = jobs;
  cfg.estimator_n = 2000;
  return cfg;
}

std::size_t count_lines_with(const std::string& text, const std::string& needle) {
  std::istringstream in(text);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) n += line.find(needle) != std::string::npos;
  return n;
}

}  // namespace

TEST(Campaign, InstancesAndLabels) {
  const auto inst = campaign_instances(small_config(1));
  EXPECT_EQ(inst.size(), 5u * 4u + 2u);
  EXPECT_EQ(inst.front().label, "random n=3 seed=0 bound=1000");
  EXPECT_EQ(inst.back().label, "convex n=6");
  CampaignConfig empty;
  EXPECT_THROW(campaign_instances(empty), UsageError);
}

TEST(Campaign, ReportsIndependentOfJobs) {
  const auto a = run_campaign(small_config(1));
  for (unsigned jobs : {2u, 8u, 64u}) {
    const auto b = run_campaign(small_config(jobs));
    EXPECT_EQ(write_text_report(a), write_text_report(b));
    EXPECT_EQ(write_csv_report(a), write_csv_report(b));
  }
}

TEST(Campaign, SortedByDigest) {
  const auto rep = run_campaign(small_config(4));
  for (std::size_t i = 1; i < rep.instances.size(); ++i)
    EXPECT_LE(rep.instances[i - 1].digest, rep.instances[i].digest);
  EXPECT_TRUE(rep.classical_ok());
}

TEST(Campaign, RejectsInstanceAboveCap) {
  CampaignConfig cfg = small_config(1);
  cfg.verify.cap = 6;
  EXPECT_THROW(run_campaign(cfg), UsageError);
}

TEST(TextReport, HasMarginLinePerInstanceAndSize) {
  const auto rep = run_campaign(small_config(2));
  const std::string text = write_text_report(rep);
  std::size_t expected = 0;
  for (const auto& r : rep.instances) expected += r.margins.size();
  EXPECT_EQ(count_lines_with(text, "].margin m="), expected);
  EXPECT_EQ(text.rfind("format: matchbound-report 1\n", 0), 0u);
  EXPECT_NE(text.find("estimator[24,48].base: "), std::string::npos);
  EXPECT_NE(text.find("summary.status: pass\n"), std::string::npos);
  // The improved claims are summarized before any per-instance data.
  EXPECT_LT(text.find("improved.improved.k4<=68/3"), text.find("instance["));
}

TEST(CsvReport, OneRowPerCheckPerInstance) {
  const auto rep = run_campaign(small_config(2));
  const std::string csv = write_csv_report(rep);
  EXPECT_EQ(count_lines_with(csv, ","), 1 + rep.instances.size() * kCheckCount);
  EXPECT_EQ(csv.rfind("instance,label,check,category,instances,violations,min_margin,max_observed\n", 0), 0u);
  EXPECT_NE(csv.find(",improved.k4<=68/3,improved,"), std::string::npos);
}

TEST(Svg, Deterministic) {
  const PointSet ps = generate_point_set(6, 2, 100);
  const auto all = all_matchings(ps);
  EXPECT_EQ(render_svg(ps, all.back()), render_svg(ps, all.back()));
}

TEST(Svg, SinglePointHasUnboundedMarkers) {
  const std::string svg = render_svg(PointSet({{0, 0}}), Matching(1));
  EXPECT_EQ(count_lines_with(svg, "<circle "), 1u);
  EXPECT_EQ(count_lines_with(svg, "data-wall="), 1u);
  EXPECT_NE(svg.find("data-unbounded=\"0-down\""), std::string::npos);
  EXPECT_NE(svg.find("data-unbounded=\"0-up\""), std::string::npos);
}

TEST(Svg, RejectsCrossingMatching) {
  const PointSet ps({{0, 0}, {1, 3}, {2, -3}, {3, 1}});
  std::vector<Edge> es{{0, 3}};
  const Matching m = Matching::from_edges(4, es).with({1, 2});
  EXPECT_THROW(render_svg(ps, m), UsageError);
}
