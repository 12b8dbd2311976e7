#pragma once

// Integer-side arithmetic: deterministic factorization, Möbius and totient
// functions, multiplicative orders, and the summatory / extreme-value
// reports used by the claim verifier.

#include <cstdint>
#include <vector>

namespace pnfield::numtheory {

struct PrimePower {
  std::uint64_t prime;
  std::uint32_t exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Multiset of prime powers with the value they multiply to. Entries are
// sorted by strictly increasing prime.
class Factorization {
 public:
  Factorization() = default;  // the empty product, value 1
  Factorization(std::vector<PrimePower> entries, std::uint64_t value);

  const std::vector<PrimePower>& entries() const { return entries_; }
  std::uint64_t value() const { return value_; }
  std::vector<std::uint64_t> primes() const;

  // Re-checks every invariant: primality of bases, ordering, and product.
  bool isValid() const;

  friend bool operator==(const Factorization&, const Factorization&) = default;

 private:
  std::vector<PrimePower> entries_;
  std::uint64_t value_ = 1;
};

std::uint64_t mulMod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powMod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

// Deterministic Miller-Rabin over the first twelve prime bases; exact for
// every 64-bit input.
bool isPrime(std::uint64_t n);

// Returns true and sets (prime, exponent) iff q = prime^exponent, exponent>=1.
bool isPrimePower(std::uint64_t q, std::uint64_t* prime = nullptr,
                  unsigned* exponent = nullptr);

// Trial division to 10^6, then Brent's rho with a fixed seed schedule.
// Throws DomainError for n < 2.
Factorization factorize(std::uint64_t n);

int mobius(std::uint64_t n);
int mobius(const Factorization& f);

// phi(1) = 1.
std::uint64_t eulerPhi(std::uint64_t n);
std::uint64_t eulerPhi(const Factorization& f);

std::vector<std::uint64_t> divisors(std::uint64_t n);
std::vector<std::uint64_t> divisors(const Factorization& f);

// Least e >= 1 with a^e = 1 (mod m). Requires m >= 2 and gcd(a, m) = 1.
std::uint64_t multiplicativeOrder(std::uint64_t a, std::uint64_t m);

// Sieves over [0, limit]; index 0 is unused and holds 0.
std::vector<std::int8_t> mobiusSieve(std::uint32_t limit);
std::vector<std::uint32_t> phiSieve(std::uint32_t limit);

struct SummatoryReport {
  std::uint64_t x = 0;
  std::int64_t mertens = 0;           // sum_{n<=x} mu(n)
  long double reciprocalSum = 0;      // sum_{n<=x} mu(n)/n
  long double fractionalSum = 0;      // sum_{n<=x} mu(n){x/n}
  std::int64_t weightedFloorSum = 0;  // sum_{n<=x} mu(n) floor(x/n), always 1
  // |x * reciprocalSum - fractionalSum - 1|
  long double identityResidual = 0;
  // Each statistic divided by its bound shape with c = 1:
  // mertens / (x e^{-sqrt log x}), reciprocalSum / e^{-sqrt log x},
  // (fractionalSum + 1) / (x e^{-sqrt log x}).
  double boundRatios[3] = {0, 0, 0};
};

inline constexpr std::uint64_t kMaxMertensX = 10'000'000;

// Throws ResourceError for x > kMaxMertensX, DomainError for x == 0.
SummatoryReport mertensReport(std::uint64_t x);

struct PhiBoundsReport {
  double ratio = 0;        // phi(n)/n
  bool rsUpperOK = false;  // n/phi(n) < e^g loglog n + 5/(2 loglog n)
  bool rsException = false;  // n == 2*3*5*...*23, excused from the above
  bool lowerOK = false;    // phi(n)/n >= (3/(e^g pi^2)) / loglog n
};

// The primorial 2*3*5*7*11*13*17*19*23, the only exception to the upper
// bound on n/phi(n).
inline constexpr std::uint64_t kRosserSchoenfeldException = 223092870;

// 3 / (e^gamma pi^2)
inline constexpr double kPhiLowerConstant = 0.17066321832663749538636772818453;

// Throws DomainError for n < 5.
PhiBoundsReport phiBoundsReport(std::uint64_t n);

}  // namespace pnfield::numtheory
