#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "pnfield/errors.hpp"
#include "pnfield/numtheory.hpp"
#include "pnfield/polyfq.hpp"

namespace pnfield::polyfq {
namespace {

// Every monic polynomial of degree d over F, constant term first.
std::vector<Poly> allMonic(const BaseField& F, unsigned d) {
  std::vector<Poly> out;
  std::vector<Coeff> c(d + 1, 0);
  c[d] = 1;
  while (true) {
    out.push_back(Poly(c));
    unsigned i = 0;
    while (i < d && ++c[i] == F.q()) c[i++] = 0;
    if (i == d) break;
  }
  return out;
}

bool bruteIrreducible(const BaseField& F, const Poly& f) {
  for (unsigned d = 1; 2 * d <= f.degree(); ++d) {
    for (const auto& g : allMonic(F, d)) {
      if (mod(F, f, g).isZero()) return false;
    }
  }
  return f.degree() >= 1;
}

// Residues mod f of degree < deg f coprime to f.
std::uint64_t brutePhi(const BaseField& F, const Poly& f) {
  std::uint64_t count = 0;
  const auto d = static_cast<unsigned>(f.degree());
  std::vector<Coeff> c(d, 0);
  while (true) {
    const Poly r(c);
    if (!r.isZero() && gcd(F, r, f) == Poly::constant(1)) ++count;
    unsigned i = 0;
    while (i < d && ++c[i] == F.q()) c[i++] = 0;
    if (i == d) break;
  }
  return count;
}

TEST(BaseFieldTest, ExtensionAxioms) {
  const auto F = BaseField::extension(3, {2, 2, 1});  // y^2 + 2y + 2 over F_3
  ASSERT_EQ(F->q(), 9u);
  for (Coeff a = 0; a < 9; ++a) {
    EXPECT_EQ(F->add(a, F->neg(a)), 0u);
    EXPECT_EQ(F->fromDigits(F->digits(a)), a);
    if (a) {
      EXPECT_EQ(F->mul(a, F->inv(a)), 1u);
    }
    EXPECT_EQ(F->pow(a, 9), a);
    for (Coeff b = 0; b < 9; ++b) {
      EXPECT_EQ(F->mul(a, b), F->mul(b, a));
      for (Coeff c = 0; c < 9; ++c) {
        EXPECT_EQ(F->mul(a, F->add(b, c)), F->add(F->mul(a, b), F->mul(a, c)));
      }
    }
  }
  EXPECT_THROW(F->inv(0), DomainError);
}

TEST(BaseFieldTest, RejectsReducibleModulus) {
  EXPECT_THROW(BaseField::extension(2, {1, 0, 1}), ValidationError);  // (y+1)^2
}

TEST(BaseFieldTest, TraceToPrimeIsSurjectiveAndBalanced) {
  const auto F = BaseField::extension(2, {1, 1, 0, 1});
  std::vector<int> hist(2, 0);
  for (Coeff a = 0; a < 8; ++a) ++hist[F->traceToPrime(a)];
  EXPECT_EQ(hist[0], 4);
  EXPECT_EQ(hist[1], 4);
}

TEST(PolyTest, DivmodReconstructs) {
  const auto F = BaseField::prime(7);
  const Poly a({3, 0, 5, 1, 6, 2});
  const Poly b({1, 4, 1});
  Poly q, r;
  divmod(*F, a, b, &q, &r);
  EXPECT_LT(r.degree(), b.degree());
  EXPECT_EQ(add(*F, mul(*F, q, b), r), a);
  EXPECT_THROW(divmod(*F, a, Poly(), &q, &r), DomainError);
}

TEST(PolyTest, IrreducibilityMatchesBruteForce) {
  for (std::uint64_t p : {2, 3, 5}) {
    const auto F = BaseField::prime(p);
    for (unsigned d = 1; d <= (p == 2 ? 6u : 4u); ++d) {
      for (const auto& f : allMonic(*F, d)) {
        EXPECT_EQ(isIrreducible(*F, f), bruteIrreducible(*F, f));
      }
    }
  }
}

TEST(PolyTest, SmallestIrreducible) {
  const auto F2 = BaseField::prime(2);
  EXPECT_EQ(smallestIrreducible(*F2, 2), Poly({1, 1, 1}));
  // (a_0, a_1, a_2) = (1, 0, 1) precedes (1, 1, 0).
  EXPECT_EQ(smallestIrreducible(*F2, 3), Poly({1, 0, 1, 1}));
  EXPECT_EQ(smallestIrreducible(*F2, 4), Poly({1, 0, 0, 1, 1}));
  const auto F3 = BaseField::prime(3);
  EXPECT_EQ(smallestIrreducible(*F3, 2), Poly({1, 0, 1}));
}

TEST(FactorTest, XnMinus1FactorizationsAreValid) {
  for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9, 11, 16, 25}) {
    std::uint64_t p;
    unsigned k;
    ASSERT_TRUE(numtheory::isPrimePower(q, &p, &k));
    const auto F = k == 1 ? BaseField::prime(p)
                          : BaseField::extension(p, [&] {
                              const auto Fp = BaseField::prime(p);
                              return smallestIrreducible(*Fp, k).coeffs();
                            }());
    for (unsigned n = 1; n <= 24; ++n) {
      const auto f = factorXnMinus1(*F, n);
      EXPECT_TRUE(f.isValid(*F)) << q << " " << n;
      EXPECT_EQ(f.value(), xnMinus1(*F, n));
      const auto prof = cyclotomicFactorCounts(q, n);
      EXPECT_EQ(prof.omega, f.entries().size());
      if (std::pow(static_cast<double>(q), n) < 1e18) {
        EXPECT_EQ(polyPhi(f), phiXnMinus1(q, n));
      }
    }
  }
}

TEST(FactorTest, PolyPhiMatchesResidueCount) {
  for (std::uint64_t p : {2, 3, 5}) {
    const auto F = BaseField::prime(p);
    for (unsigned n = 1; n <= (p == 5 ? 4u : 7u); ++n) {
      const auto f = factorXnMinus1(*F, n);
      EXPECT_EQ(polyPhi(f), brutePhi(*F, f.value())) << p << " " << n;
    }
  }
}

TEST(FactorTest, DivisorsSumProperties) {
  const auto F = BaseField::prime(3);
  for (unsigned n = 1; n <= 12; ++n) {
    const auto f = factorXnMinus1(*F, n);
    const auto divs = monicDivisors(*F, f);
    std::uint64_t phiSum = 0, sigma = 0;
    int mobSum = 0;
    std::set<Poly> seen;
    for (const auto& d : divs) {
      EXPECT_TRUE(mod(*F, f.value(), d.value()).isZero());
      seen.insert(d.value());
      phiSum += polyPhi(d);
      sigma += static_cast<std::uint64_t>(std::pow(3.0, d.degree()));
      mobSum += polyMobius(d);
    }
    EXPECT_EQ(seen.size(), divs.size());
    // sum over d | f of Phi(d) = q^{deg f}
    EXPECT_EQ(phiSum, static_cast<std::uint64_t>(std::pow(3.0, n)));
    EXPECT_EQ(sigma, polySigma(f));
    EXPECT_EQ(mobSum, 0);
  }
}

TEST(FactorTest, QuadraticAndCubicFormulas) {
  for (std::uint64_t q : {3, 5, 7, 9, 11, 13, 25, 27}) {
    EXPECT_EQ(phiXnMinus1(q, 2), (q - 1) * (q - 1));
  }
  EXPECT_EQ(phiXnMinus1(2, 2), 2u);
  EXPECT_EQ(phiXnMinus1(2, 3), 3u);
  EXPECT_EQ(phiXnMinus1(7, 3), 216u);
  EXPECT_EQ(phiXnMinus1(3, 3), 18u);
}

TEST(FactorTest, SigmaPhiNaturalFormHolds) {
  const auto F = BaseField::prime(2);
  for (unsigned n = 1; n <= 10; ++n) {
    const auto r = sigmaPhiIdentityCheck(*F, n);
    EXPECT_TRUE(r.naturalHolds) << n;
  }
}

}  // namespace
}  // namespace pnfield::polyfq
