#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "json.hpp"
#include "qheis/verification.hpp"

namespace qheis {
namespace {

using json = nlohmann::json;

SuiteConfig pentagon_only(double lambda) {
  SuiteConfig c;
  c.lambdas = {lambda};
  c.suites = {"pentagon"};
  c.threads = 1;
  return c;
}

const CheckRecord& find(const VerificationReport& r, const std::string& identity) {
  const auto it = std::find_if(r.records.begin(), r.records.end(), [&](const auto& x) { return x.identity == identity; });
  if (it == r.records.end()) throw std::runtime_error("missing record " + identity);
  return *it;
}

TEST(SuiteRegistry, NamesAreOrderedAndDescribed) {
  const auto& names = suite_names();
  ASSERT_EQ(names.size(), 10u);
  EXPECT_EQ(names.front(), "core");
  EXPECT_EQ(names.back(), "trace");
  for (const auto& n : names) EXPECT_FALSE(suite_description(n).empty());
  EXPECT_THROW(suite_description("nope"), std::invalid_argument);
}

TEST(SuiteConfig, ValidateRejectsBadInput) {
  SuiteConfig c;
  EXPECT_NO_THROW(c.validate());
  c.suites = {"unknown"};
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.lambdas.clear();
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.tolerances["pentagon"] = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.threads = -1;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(SuiteConfig, JsonRoundTrip) {
  SuiteConfig c;
  c.lambdas = {0.0, -0.25};
  c.quad.nodes_per_axis = 12;
  c.quad.refinement_levels = 2;
  c.quad.rule = QuadratureRule::gauss_legendre;
  c.box.half_width_r = 5;
  c.seed = 42;
  c.suites = {"core", "trace"};
  c.tolerances["trace"] = 2e-3;
  c.report_path = "r.json";
  const SuiteConfig back = config_from_json(config_json(c));
  EXPECT_EQ(back.lambdas, c.lambdas);
  EXPECT_EQ(back.quad.nodes_per_axis, 12);
  EXPECT_EQ(back.quad.refinement_levels, 2);
  EXPECT_EQ(back.quad.rule, QuadratureRule::gauss_legendre);
  EXPECT_DOUBLE_EQ(back.box.half_width_r, 5.0);
  EXPECT_EQ(back.seed, 42u);
  EXPECT_EQ(back.suites, c.suites);
  EXPECT_DOUBLE_EQ(back.tolerances.at("trace"), 2e-3);
  EXPECT_EQ(back.report_path, "r.json");
}

TEST(SuiteConfig, PartialJsonKeepsBase) {
  SuiteConfig base;
  base.seed = 7;
  const SuiteConfig c = config_from_json(R"({"lambdas": [0.5], "quad": {"nodes_per_axis": 20}})", base);
  EXPECT_EQ(c.lambdas, std::vector<double>{0.5});
  EXPECT_EQ(c.quad.nodes_per_axis, 20);
  EXPECT_EQ(c.seed, 7u);
}

TEST(SuiteConfig, MalformedJsonIsAnInvalidArgument) {
  EXPECT_THROW(config_from_json("{"), std::invalid_argument);
  EXPECT_THROW(config_from_json("[1, 2]"), std::invalid_argument);
  EXPECT_THROW(config_from_json(R"({"n": "one"})"), std::invalid_argument);
  EXPECT_THROW(config_from_json(R"({"quad": {"rule": "simpson"}})"), std::invalid_argument);
  EXPECT_THROW(config_from_json(R"({"suites": ["nope"]})"), std::invalid_argument);
}

TEST(Run, PentagonSuitePassesAndCatchesTheMutation) {
  const auto report = run(pentagon_only(0.5));
  EXPECT_TRUE(report.overall_pass());
  const auto& neg = find(report, "negative_control");
  EXPECT_TRUE(neg.pass);
  EXPECT_GT(neg.residual, neg.tolerance);
  EXPECT_LE(find(report, "pentagon_U").residual, 1e-11);
  EXPECT_EQ(report.unitaries.size(), 4u);
}

TEST(Run, ToleranceOverridesResolveMostSpecificFirst) {
  auto c = pentagon_only(0.2);
  c.tolerances["pentagon"] = 1e3;              // swallows the negative control
  c.tolerances["pentagon/pentagon_U"] = 1e-30;  // unreachable
  c.tolerances["unitarity_certificate_U"] = 0.5;
  const auto report = run(c);
  EXPECT_FALSE(report.overall_pass());
  EXPECT_FALSE(find(report, "pentagon_U").pass);
  EXPECT_DOUBLE_EQ(find(report, "pentagon_U").tolerance, 1e-30);
  EXPECT_DOUBLE_EQ(find(report, "unitarity_certificate_U").tolerance, 0.5);
  EXPECT_DOUBLE_EQ(find(report, "pentagon_U_hat").tolerance, 1e3);
  const auto& neg = find(report, "negative_control");
  EXPECT_FALSE(neg.pass);
  EXPECT_EQ(neg.note, "mutation went undetected");
}

TEST(Run, FailedDependencyBlocksDependents) {
  SuiteConfig c;
  c.lambdas = {0.0};
  c.suites = {"core", "hopf_ahat"};
  c.quad.nodes_per_axis = 8;
  c.quad.refinement_levels = 1;
  c.tolerances["core/gaussian_integral"] = 1e-300;
  c.threads = 1;
  const auto report = run(c);
  EXPECT_FALSE(report.overall_pass());
  for (const auto& r : report.records) {
    if (r.suite != "hopf_ahat") continue;
    EXPECT_FALSE(r.pass);
    EXPECT_EQ(r.note, "not run: suite 'core' failed");
    EXPECT_TRUE(std::isnan(r.residual));
  }
}

TEST(Run, ThreadCountDoesNotChangeTheRecords) {
  auto c = pentagon_only(-0.5);
  const auto serial = report_json(run(c), false);
  c.threads = 3;
  EXPECT_EQ(report_json(run(c), false), serial);
}

TEST(Report, JsonCarriesSchemaAndSummary) {
  const auto report = run(pentagon_only(0.0));
  const json j = json::parse(report_json(report));
  EXPECT_EQ(j["schema"], kReportSchema);
  EXPECT_EQ(j["summary"]["overall"], "PASS");
  EXPECT_EQ(j["summary"]["records"].get<std::size_t>(), report.records.size());
  ASSERT_FALSE(j["records"].empty());
  const auto& rec = j["records"][0];
  for (const char* key : {"suite", "identity", "anchor", "lambda", "residual", "tolerance", "pass", "level", "nodes",
                          "trend", "trend_nodes", "samples", "note", "runtime_s"})
    EXPECT_TRUE(rec.contains(key)) << key;
  EXPECT_FALSE(json::parse(report_json(report, false))["records"][0].contains("runtime_s"));
}

TEST(Report, ConvergenceCsvHasOneRowPerLevel) {
  SuiteConfig c;
  c.lambdas = {0.2};
  c.suites = {"core"};
  c.quad.nodes_per_axis = 8;
  c.quad.refinement_levels = 2;
  c.threads = 1;
  const std::string csv = convergence_study(c, "core");
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "suite,identity,lambda,level,nodes,residual,tolerance");
  int rows = 0;
  while (std::getline(in, line)) {
    EXPECT_EQ(line.rfind("core,", 0), 0u);
    ++rows;
  }
  EXPECT_EQ(rows, 4 * 2);
}

TEST(Report, EmptyConvergenceStudyIsHeaderOnly) {
  EXPECT_EQ(convergence_study(SuiteConfig{}, ""), "suite,identity,lambda,level,nodes,residual,tolerance\n");
}

TEST(Report, EmptyReportIsNotAPass) {
  EXPECT_FALSE(VerificationReport{}.overall_pass());
}

}  // namespace
}  // namespace qheis
