#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "pnfield/cli.hpp"
#include "pnfield/errors.hpp"
#include "pnfield/verify.hpp"

namespace pnfield::cli {
namespace {

TEST(ParseTest, FieldSpecForms) {
  auto s = parseFieldSpec("3^2:4");
  EXPECT_EQ(s.p, 3u);
  EXPECT_EQ(s.k, 2u);
  EXPECT_EQ(s.n, 4u);
  s = parseFieldSpec("9:4");
  EXPECT_EQ(s.p, 3u);
  EXPECT_EQ(s.k, 2u);
  s = parseFieldSpec("2^1:4::1,1,0,0,1");
  ASSERT_TRUE(s.extModulus.has_value());
  EXPECT_EQ(*s.extModulus, Poly({1, 1, 0, 0, 1}));
}

TEST(ParseTest, FieldSpecErrorsCarryPosition) {
  try {
    parseFieldSpec("3^2:x");
    FAIL();
  } catch (const UsageError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
  EXPECT_THROW(parseFieldSpec("6:2"), UsageError);
  EXPECT_THROW(parseFieldSpec(""), UsageError);
}

TEST(ParseTest, ElementsAndPolynomials) {
  const auto F = buildFromSpec(parseFieldSpec("3^2:2"));
  EXPECT_EQ(parseElement(*F, "4,1").coords, (std::vector<polyfq::Coeff>{4, 1}));
  EXPECT_EQ(parseElement(*F, "1/1").coords, (std::vector<polyfq::Coeff>{4, 0}));
  EXPECT_THROW(parseElement(*F, "9"), UsageError);
  EXPECT_EQ(parsePoly("1,0,2", 3), Poly({1, 0, 2}));
  EXPECT_THROW(parsePoly("1,,2", 3), UsageError);
  EXPECT_EQ(formatElement(parseElement(*F, "4,1")), "4,1");
}

TEST(ParseTest, Ranges) {
  EXPECT_TRUE(parseRange("").empty());
  EXPECT_EQ(parseRange("16").size(), counting::fieldsUpTo(16, 2).size());
  EXPECT_EQ(parseRange("2..5x2..3").size(), 8u);
  EXPECT_THROW(parseRange("2..x"), UsageError);
}

TEST(ParseTest, SubsetSpecs) {
  const auto F = buildFromSpec(parseFieldSpec("19:3"));
  const auto s = parseSubsetSpec(*F, R"({"kind":"heightBox","d":2,"H":1})");
  ASSERT_TRUE(std::holds_alternative<subsets::HeightBoxSpec>(s));
  EXPECT_EQ(std::get<subsets::HeightBoxSpec>(s).d, 2u);
  EXPECT_TRUE(std::holds_alternative<subsets::WeightBallSpec>(
      parseSubsetSpec(*F, R"({"kind":"weightBall","w":1})")));
  EXPECT_THROW(parseSubsetSpec(*F, R"({"kind":"cube"})"), UsageError);
  EXPECT_THROW(parseSubsetSpec(*F, "{"), UsageError);
}

TEST(CommandTest, FieldInfoJson) {
  RunConfig cfg;
  cfg.fieldSpec = "2^1:4";
  cfg.format = Format::kJson;
  std::ostringstream out;
  cmdFieldInfo(cfg, out);
  const auto j = nlohmann::json::parse(out.str());
  EXPECT_EQ(j["order"], 16);
  EXPECT_EQ(j["phi"], 8);
  EXPECT_EQ(j["Phi"], 8);
}

TEST(CommandTest, VerifyIsDeterministicAndPasses) {
  RunConfig cfg;
  cfg.range = "32";
  std::ostringstream a, b;
  EXPECT_EQ(cmdVerify(cfg, a), 0);
  EXPECT_EQ(cmdVerify(cfg, b), 0);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(a.str().find("FAIL,"), std::string::npos);
}

TEST(CommandTest, SweepRespectsBudget) {
  RunConfig cfg;
  cfg.range = "2..2x20..20";
  cfg.budget = 1000;
  std::ostringstream out;
  EXPECT_THROW(cmdSweep(cfg, out), ResourceError);
  EXPECT_TRUE(out.str().empty());
}

TEST(CommandTest, SearchAndExperiment) {
  RunConfig cfg;
  cfg.fieldSpec = "19:3";
  cfg.subset = R"({"kind":"heightBox","d":2,"H":1})";
  cfg.format = Format::kJson;
  std::ostringstream out;
  cmdSearch(cfg, out);
  const auto j = nlohmann::json::parse(out.str());
  EXPECT_EQ(j["subsetSize"], 26);
  EXPECT_FALSE(j["structured"].get<bool>());

  cfg.fieldSpec = "2:8";
  cfg.subset.clear();
  cfg.trials = 5;
  cfg.format = Format::kCsv;
  std::ostringstream csv;
  cmdExperiment(cfg, csv);
  std::istringstream lines(csv.str());
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) ++count;
  EXPECT_EQ(count, 6);
}

TEST(CommandTest, ConjectureHypotheses) {
  const auto F = buildFromSpec(parseFieldSpec("3:5"));
  EXPECT_THROW(checkConjectureHypotheses(*F, F->zero()), DomainError);
  EXPECT_THROW(checkConjectureHypotheses(*F, F->one()), DomainError);
  EXPECT_THROW(checkConjectureHypotheses(*F, F->fromBase(2)), DomainError);
  const auto F2 = buildFromSpec(parseFieldSpec("2:5"));
  EXPECT_THROW(checkConjectureHypotheses(*F2, F2->generator()), DomainError);

  RunConfig cfg;
  cfg.fieldSpec = "3:2";
  cfg.range = "2..4";
  std::ostringstream out;
  cmdConjecture(cfg, out);
  std::istringstream lines(out.str());
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) ++count;
  EXPECT_EQ(count, 4);
}

TEST(VerifyTest, ReportsKnownDiscrepancies) {
  verify::VerifyOptions opts;
  opts.fields = {{2, 1, 2}, {3, 1, 2}};
  const auto r = verify::runVerify(opts);
  EXPECT_EQ(r.exitCode(), 0);
  EXPECT_EQ(r.count(verify::Status::kFail), 0u);
  EXPECT_GT(r.discrepancies(), 0u);
  bool sawF4 = false;
  for (const auto& c : r.claims) sawF4 |= c.id == "claim.f4-normal-count" && c.discrepancy;
  EXPECT_TRUE(sawF4);
  std::ostringstream js;
  verify::writeJson(js, r);
  EXPECT_EQ(nlohmann::json::parse(js.str())["schema"], "pnfield/1");
}

TEST(VerifyTest, BudgetCheckedBeforeWork) {
  verify::VerifyOptions opts;
  opts.fields = {{2, 1, 30}};
  opts.budget = 1u << 20;
  EXPECT_THROW(verify::runVerify(opts), ResourceError);
}

}  // namespace
}  // namespace pnfield::cli
