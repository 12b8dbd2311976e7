#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "pnfield/errors.hpp"
#include "pnfield/subsets.hpp"

namespace pnfield::subsets {
namespace {

using field::buildField;

TEST(MetricTest, HammingWeight) {
  EXPECT_EQ(hammingWeight(Poly({1, 0, 3, 0, 2})), 3u);
  EXPECT_EQ(hammingWeight(Poly()), 0u);
  EXPECT_EQ(hammingWeight(ExtElement{{0, 4, 0, 1}}), 2u);
}

TEST(MetricTest, HeightUsesCenteredRepresentatives) {
  const auto F = buildField(7, 1, 3);
  EXPECT_EQ(height(*F, ExtElement{{6, 0, 1}}), 1u);  // 6 = -1
  EXPECT_EQ(height(*F, ExtElement{{4, 2, 0}}), 3u);  // 4 = -3
  EXPECT_EQ(height(*F, F->zero()), 0u);
}

TEST(MetricTest, HammingTriangleInequality) {
  const auto F = buildField(3, 1, 4);
  for (std::uint64_t i = 0; i < F->order(); i += 7) {
    for (std::uint64_t j = 0; j < F->order(); j += 5) {
      const auto a = F->fromIndex(i), b = F->fromIndex(j);
      EXPECT_LE(hammingWeight(F->add(a, b)), hammingWeight(a) + hammingWeight(b));
      EXPECT_LE(height(*F, F->add(a, b)), height(*F, a) + height(*F, b));
    }
  }
}

TEST(FamilyTest, BitLength) {
  EXPECT_EQ(bitLength(2), 1u);
  EXPECT_EQ(bitLength(23), 5u);
  EXPECT_EQ(bitLength(32), 5u);
  EXPECT_EQ(bitLength(33), 6u);
}

TEST(FamilyTest, HammingBallPrimeField) {
  const auto F = buildField(23, 1, 1);
  const auto ball = enumerateHammingBall(*F, F->zero(), 3);
  // c in [0, 22] with popcount <= 3 excludes only 15 = 0b1111.
  EXPECT_EQ(ball.size(), 22u);
  for (const auto& e : ball) EXPECT_NE(e.coords[0], 15u);
}

TEST(FamilyTest, HeightBoxProperties) {
  const auto F = buildField(19, 1, 3);
  const auto box = enumerateHeightBox(*F, 2, 1);
  std::set<ExtElement> unique(box.begin(), box.end());
  EXPECT_EQ(unique.size(), box.size());
  // 3^3 - 1 primitive tuples over {-1, 0, 1}, all distinct mod 19.
  EXPECT_EQ(box.size(), 26u);
  for (const auto& e : box) EXPECT_LE(height(*F, e), 1u);
  EXPECT_THROW(enumerateHeightBox(*F, 3, 1), DomainError);
  EXPECT_THROW(enumerateHeightBox(*F, 2, 0), DomainError);
}

TEST(FamilyTest, WeightBallCount) {
  const auto F = buildField(3, 1, 4);
  // Nonzero elements of weight <= 2: 4*2 + 6*4.
  EXPECT_EQ(enumerateWeightBall(*F, 2).size(), 32u);
}

TEST(StructureTest, RecognisesSubspacesAndSubfields) {
  const auto F = buildField(2, 1, 4);
  std::vector<ExtElement> sub = {F->zero(), F->one(), F->generator(),
                                 F->add(F->one(), F->generator())};
  EXPECT_TRUE(isStructured(*F, sub).structured);
  // F_4 inside F_16 without zero.
  std::vector<ExtElement> f4;
  for (std::uint64_t i = 1; i < 16; ++i) {
    const auto a = F->fromIndex(i);
    if (F->pow(a, 4) == a) f4.push_back(a);
  }
  ASSERT_EQ(f4.size(), 3u);
  const auto v = isStructured(*F, f4);
  EXPECT_TRUE(v.structured);
  EXPECT_NE(v.reason.find("subfield"), std::string::npos);
  EXPECT_FALSE(isStructured(*F, {F->generator(), F->pow(F->generator(), 3)}).structured);
  EXPECT_THROW(isStructured(*F, {}), DomainError);
}

TEST(ThresholdTest, SizeFormula) {
  const auto F = buildField(2, 1, 8);
  const double L = std::log(256.0);
  EXPECT_NEAR(thresholdSize(*F, 0.1), L * std::pow(std::log(L), 1.1), 1e-9);
  EXPECT_EQ(thresholdCount(*F, 0.1), static_cast<std::uint64_t>(std::ceil(thresholdSize(*F, 0.1))));
  const auto small = buildField(2, 1, 1);
  EXPECT_EQ(thresholdCount(*small, 0.1), 1u);
}

TEST(SearchTest, WholeFieldFindsEveryPrimitiveNormal) {
  const auto F = buildField(3, 1, 3);
  const auto rep = searchPrimitiveNormal(*F, WholeFieldSpec{}, 0.1, kEnumerationCap);
  std::uint64_t expected = 0;
  for (std::uint64_t i = 1; i < F->order(); ++i) {
    expected += field::isPrimitiveNormal(*F, F->fromIndex(i));
  }
  EXPECT_EQ(rep.witnesses.size(), expected);
  EXPECT_TRUE(rep.hit);
  EXPECT_GT(rep.multiplications, 0u);
}

TEST(SearchTest, MaterializeBudget) {
  const auto F = buildField(2, 1, 10);
  EXPECT_THROW(materialize(*F, WholeFieldSpec{}, 100), ResourceError);
}

TEST(ExperimentTest, DeterministicAndNonstructured) {
  const auto F = buildField(2, 1, 8);
  const auto a = thresholdExperiment(*F, WholeFieldSpec{}, 0.1, 30, 9, 1.0, kEnumerationCap);
  const auto b = thresholdExperiment(*F, WholeFieldSpec{}, 0.1, 30, 9, 1.0, kEnumerationCap);
  ASSERT_EQ(a.rows.size(), 30u);
  EXPECT_EQ(a.hits, b.hits);
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].witnessCount, b.rows[i].witnessCount);
    EXPECT_EQ(a.rows[i].size, a.sampleSize);
    EXPECT_EQ(a.rows[i].hit, a.rows[i].witnessCount > 0);
  }
  EXPECT_EQ(a.sampleSize, thresholdCount(*F, 0.1));
  EXPECT_THROW(thresholdExperiment(*F, WholeFieldSpec{}, 0.1, 0, 9, 1.0, kEnumerationCap),
               DomainError);
}

}  // namespace
}  // namespace pnfield::subsets
