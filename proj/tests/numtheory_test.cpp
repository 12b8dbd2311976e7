#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "pnfield/errors.hpp"
#include "pnfield/numtheory.hpp"
#include "pnfield/rng.hpp"

namespace pnfield::numtheory {
namespace {

bool trialPrime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint64_t gcdCount(std::uint64_t n) {
  std::uint64_t c = 0;
  for (std::uint64_t k = 1; k <= n; ++k) c += std::gcd(k, n) == 1;
  return c;
}

TEST(NumTheoryTest, IsPrimeMatchesTrialDivision) {
  for (std::uint64_t n = 0; n < 20000; ++n) EXPECT_EQ(isPrime(n), trialPrime(n)) << n;
}

TEST(NumTheoryTest, IsPrimeLargeKnownValues) {
  EXPECT_TRUE(isPrime(18446744073709551557ull));  // largest 64-bit prime
  EXPECT_FALSE(isPrime(3215031751ull));            // strong pseudoprime to 2, 3, 5, 7
  EXPECT_FALSE(isPrime(4294967297ull));            // 641 * 6700417
  EXPECT_TRUE(isPrime(1000000007ull));
}

TEST(NumTheoryTest, IsPrimePower) {
  std::uint64_t p = 0;
  unsigned e = 0;
  EXPECT_TRUE(isPrimePower(1024, &p, &e));
  EXPECT_EQ(p, 2u);
  EXPECT_EQ(e, 10u);
  EXPECT_TRUE(isPrimePower(6561, &p, &e));
  EXPECT_EQ(p, 3u);
  EXPECT_EQ(e, 8u);
  EXPECT_FALSE(isPrimePower(1));
  EXPECT_FALSE(isPrimePower(12));
  EXPECT_TRUE(isPrimePower(31));
}

TEST(NumTheoryTest, FactorizeReconstructsValue) {
  rng::Engine eng = rng::engineFor(3, 0);
  for (int i = 0; i < 300; ++i) {
    const std::uint64_t n = 2 + rng::uniformBelow(eng, (1ull << 62));
    const Factorization f = factorize(n);
    EXPECT_TRUE(f.isValid()) << n;
    EXPECT_EQ(f.value(), n);
  }
}

TEST(NumTheoryTest, FactorizeSemiprimeOfLargePrimes) {
  const Factorization f = factorize(1000000007ull * 998244353ull);
  ASSERT_EQ(f.entries().size(), 2u);
  EXPECT_EQ(f.entries()[0].prime, 998244353u);
  EXPECT_EQ(f.entries()[1].prime, 1000000007u);
}

TEST(NumTheoryTest, FactorizeRejectsSmallInput) {
  EXPECT_THROW(factorize(0), DomainError);
  EXPECT_THROW(factorize(1), DomainError);
}

TEST(NumTheoryTest, PhiMatchesGcdCount) {
  EXPECT_EQ(eulerPhi(1), 1u);
  for (std::uint64_t n = 1; n <= 2000; ++n) EXPECT_EQ(eulerPhi(n), gcdCount(n)) << n;
}

TEST(NumTheoryTest, SievesAgreeWithDirectFunctions) {
  const auto mu = mobiusSieve(5000);
  const auto phi = phiSieve(5000);
  for (std::uint32_t n = 1; n <= 5000; ++n) {
    EXPECT_EQ(mu[n], mobius(n)) << n;
    EXPECT_EQ(phi[n], eulerPhi(n)) << n;
  }
}

TEST(NumTheoryTest, MobiusSumOverDivisorsVanishes) {
  for (std::uint64_t n = 2; n <= 3000; ++n) {
    int s = 0;
    for (auto d : divisors(n)) s += mobius(d);
    EXPECT_EQ(s, 0) << n;
  }
}

TEST(NumTheoryTest, PhiMultiplicativeProperty) {
  rng::Engine eng = rng::engineFor(4, 0);
  for (int i = 0; i < 2000; ++i) {
    const std::uint64_t m = 1 + rng::uniformBelow(eng, 100000);
    const std::uint64_t n = 1 + rng::uniformBelow(eng, 100000);
    const std::uint64_t d = std::gcd(m, n);
    EXPECT_EQ(eulerPhi(m * n) * eulerPhi(d), d * eulerPhi(m) * eulerPhi(n));
  }
}

TEST(NumTheoryTest, DivisorsSortedAndComplete) {
  const auto d = divisors(360);
  EXPECT_EQ(d.size(), 24u);
  EXPECT_TRUE(std::is_sorted(d.begin(), d.end()));
  for (auto x : d) EXPECT_EQ(360 % x, 0u);
}

TEST(NumTheoryTest, MultiplicativeOrderBrute) {
  for (std::uint64_t m = 2; m < 200; ++m) {
    for (std::uint64_t a = 1; a < m; ++a) {
      if (std::gcd(a, m) != 1) continue;
      std::uint64_t e = 1, x = a % m;
      while (x != 1 % m) {
        x = x * a % m;
        ++e;
      }
      EXPECT_EQ(multiplicativeOrder(a, m), e);
    }
  }
}

TEST(NumTheoryTest, MertensReportIdentities) {
  const auto r = mertensReport(10000);
  EXPECT_EQ(r.weightedFloorSum, 1);
  EXPECT_LT(r.identityResidual, 1e-9);
  EXPECT_EQ(r.mertens, -23);  // M(10^4)
  EXPECT_THROW(mertensReport(0), DomainError);
  EXPECT_THROW(mertensReport(kMaxMertensX + 1), ResourceError);
}

TEST(NumTheoryTest, PhiBoundsReport) {
  for (std::uint64_t n = 5; n < 5000; ++n) {
    const auto r = phiBoundsReport(n);
    EXPECT_TRUE(r.lowerOK) << n;
    EXPECT_TRUE(r.rsUpperOK) << n;
    EXPECT_DOUBLE_EQ(r.ratio, static_cast<double>(eulerPhi(n)) / n);
  }
  EXPECT_TRUE(phiBoundsReport(kRosserSchoenfeldException).rsException);
  EXPECT_THROW(phiBoundsReport(4), DomainError);
}

}  // namespace
}  // namespace pnfield::numtheory
