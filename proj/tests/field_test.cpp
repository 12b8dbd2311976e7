#include <gtest/gtest.h>

#include "pnfield/errors.hpp"
#include "pnfield/field.hpp"
#include "pnfield/rng.hpp"

namespace pnfield::field {
namespace {

struct Case {
  std::uint64_t p;
  unsigned k, n;
};

const Case kCases[] = {{2, 1, 2}, {2, 1, 6}, {3, 1, 3}, {2, 2, 3}, {3, 2, 2},
                       {5, 1, 4}, {7, 1, 2}, {2, 3, 2}, {13, 1, 2}, {3, 1, 6}};

class FieldProps : public ::testing::TestWithParam<Case> {
 protected:
  void SetUp() override {
    const auto c = GetParam();
    F = buildField(c.p, c.k, c.n);
  }
  CtxPtr F;
};

std::uint64_t bruteOrder(const FieldCtx& F, const ExtElement& a) {
  ExtElement c = a;
  std::uint64_t e = 1;
  while (c != F.one()) {
    c = F.mul(c, a);
    ++e;
  }
  return e;
}

TEST_P(FieldProps, IndexRoundTrip) {
  for (std::uint64_t i = 0; i < F->order(); ++i) EXPECT_EQ(F->index(F->fromIndex(i)), i);
}

TEST_P(FieldProps, RingAxiomsOnRandomTriples) {
  rng::Engine eng = rng::engineFor(11, F->order());
  for (int t = 0; t < 200; ++t) {
    const auto a = F->fromIndex(rng::uniformBelow(eng, F->order()));
    const auto b = F->fromIndex(rng::uniformBelow(eng, F->order()));
    const auto c = F->fromIndex(rng::uniformBelow(eng, F->order()));
    EXPECT_EQ(F->mul(a, F->mul(b, c)), F->mul(F->mul(a, b), c));
    EXPECT_EQ(F->mul(a, F->add(b, c)), F->add(F->mul(a, b), F->mul(a, c)));
    EXPECT_EQ(F->sub(F->add(a, b), b), a);
    if (!F->isZero(a)) {
      EXPECT_EQ(F->mul(a, F->inv(a)), F->one());
    }
  }
}

TEST_P(FieldProps, FrobeniusIsAutomorphismOfOrderN) {
  rng::Engine eng = rng::engineFor(12, F->order());
  for (int t = 0; t < 100; ++t) {
    const auto a = F->fromIndex(rng::uniformBelow(eng, F->order()));
    const auto b = F->fromIndex(rng::uniformBelow(eng, F->order()));
    EXPECT_EQ(F->frobenius1(a), F->pow(a, F->q()));
    EXPECT_EQ(frobenius(*F, F->mul(a, b), 1), F->mul(F->frobenius1(a), F->frobenius1(b)));
    EXPECT_EQ(frobenius(*F, a, F->n()), a);
  }
}

TEST_P(FieldProps, TraceAndNormProperties) {
  std::vector<std::uint64_t> traceHist(F->p(), 0);
  for (std::uint64_t i = 0; i < F->order(); ++i) {
    const auto a = F->fromIndex(i);
    ++traceHist[trace(*F, a)];
    // Trace is the sum of all p-power conjugates.
    ExtElement s = F->zero(), c = a;
    for (unsigned j = 0; j < F->k() * F->n(); ++j) {
      s = F->add(s, c);
      c = F->pow(c, F->p());
    }
    EXPECT_EQ(s, F->fromBase(trace(*F, a)));
  }
  for (auto h : traceHist) EXPECT_EQ(h, F->order() / F->p());
  rng::Engine eng = rng::engineFor(13, F->order());
  for (int t = 0; t < 50; ++t) {
    const auto a = F->fromIndex(rng::uniformBelow(eng, F->order()));
    const auto b = F->fromIndex(rng::uniformBelow(eng, F->order()));
    EXPECT_EQ(norm(*F, F->mul(a, b)), norm(*F, a) * norm(*F, b) % F->p());
  }
}

TEST_P(FieldProps, TraceFunctionalMatchesTrace) {
  rng::Engine eng = rng::engineFor(14, F->order());
  const auto a = F->fromIndex(1 + rng::uniformBelow(eng, F->order() - 1));
  const auto w = F->traceFunctional(a);
  for (int t = 0; t < 50; ++t) {
    const auto c = F->fromIndex(rng::uniformBelow(eng, F->order()));
    std::uint64_t s = 0;
    for (unsigned i = 0; i < F->n(); ++i) {
      const auto d = F->base().digits(c.coords[i]);
      for (unsigned j = 0; j < F->k(); ++j) s += d[j] * w[i * F->k() + j];
    }
    EXPECT_EQ(s % F->p(), F->absoluteTrace(F->mul(c, a)));
  }
}

TEST_P(FieldProps, OrdersAndPredicatesAgreeWithBruteForce) {
  const std::uint64_t Q = F->order() - 1;
  for (std::uint64_t i = 1; i < F->order(); ++i) {
    const auto a = F->fromIndex(i);
    const auto ord = multiplicativeOrder(*F, a);
    EXPECT_EQ(ord, bruteOrder(*F, a));
    EXPECT_EQ(isPrimitive(*F, a), ord == Q);
    EXPECT_EQ(isNormal(*F, a, NormalTest::kDivisor), isNormal(*F, a, NormalTest::kRank));
    // The additive order annihilates a and has degree n iff a is normal.
    const Poly r = additiveOrder(*F, a);
    EXPECT_TRUE(F->isZero(applyLinearized(*F, r, a)));
    EXPECT_EQ(r.degree() == static_cast<long>(F->n()), isNormal(*F, a));
  }
  EXPECT_THROW(multiplicativeOrder(*F, F->zero()), DomainError);
  EXPECT_THROW(isPrimitive(*F, F->zero()), DomainError);
}

TEST_P(FieldProps, ReferenceElementIsFirstPrimitiveNormal) {
  const auto tau = findReferencePrimitiveNormal(*F);
  EXPECT_TRUE(isPrimitiveNormal(*F, tau));
  for (std::uint64_t i = 1; i < F->index(tau); ++i) {
    EXPECT_FALSE(isPrimitiveNormal(*F, F->fromIndex(i)));
  }
  ASSERT_TRUE(F->referenceTau().has_value());
  EXPECT_EQ(F->tau(), tau);
}

TEST_P(FieldProps, LinearizedActionIsModuleAction) {
  rng::Engine eng = rng::engineFor(15, F->order());
  const auto& B = F->base();
  auto randPoly = [&] {
    std::vector<polyfq::Coeff> c(F->n() + 1);
    for (auto& x : c) x = rng::uniformBelow(eng, F->q());
    return Poly(c);
  };
  for (int t = 0; t < 30; ++t) {
    const auto a = F->fromIndex(rng::uniformBelow(eng, F->order()));
    const Poly r = randPoly(), s = randPoly();
    EXPECT_EQ(applyLinearized(*F, polyfq::mul(B, r, s), a),
              applyLinearized(*F, r, applyLinearized(*F, s, a)));
  }
}

INSTANTIATE_TEST_SUITE_P(Fields, FieldProps, ::testing::ValuesIn(kCases));

TEST(BuildFieldTest, RejectsBadModuli) {
  EXPECT_THROW(buildField(2, 1, 2, std::nullopt, Poly({1, 0, 1})), ValidationError);
  EXPECT_THROW(buildField(2, 1, 64), ResourceError);
}

TEST(BuildFieldTest, CustomModulusGivesIsomorphicCounts) {
  const auto A = buildField(2, 1, 4);
  const auto B = buildField(2, 1, 4, std::nullopt, Poly({1, 1, 1, 1, 1}));
  std::uint64_t na = 0, nb = 0;
  for (std::uint64_t i = 1; i < 16; ++i) {
    na += isNormal(*A, A->fromIndex(i));
    nb += isNormal(*B, B->fromIndex(i));
  }
  EXPECT_EQ(na, nb);
  EXPECT_EQ(na, 8u);
}

TEST(OpCounterTest, CountsMultiplications) {
  const auto F = buildField(3, 1, 3);
  OpCounter ops;
  F->mul(F->generator(), F->generator());
  EXPECT_GE(ops.elapsed(), 1u);
}

}  // namespace
}  // namespace pnfield::field
