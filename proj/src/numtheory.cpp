#include "pnfield/numtheory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pnfield/errors.hpp"

namespace pnfield::numtheory {
namespace {

constexpr std::uint64_t kTrialLimit = 1'000'000;

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(long double v) {
    long double t = sum_ + v;
    if (std::fabs(sum_) >= std::fabs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  long double value() const { return sum_ + comp_; }

 private:
  long double sum_ = 0;
  long double comp_ = 0;
};

std::uint64_t rhoStep(std::uint64_t y, std::uint64_t c, std::uint64_t n) {
  return (mulMod(y, y, n) + c) % n;
}

// Brent's cycle-finding variant of Pollard rho. Returns a nontrivial factor
// of the odd composite n, trying increasing constants c = 1, 2, ...
std::uint64_t brentFactor(std::uint64_t n) {
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t y = 2, x = 2, ys = 2, g = 1, q = 1;
    const std::uint64_t m = 128;
    std::uint64_t r = 1;
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = rhoStep(y, c, n);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = rhoStep(y, c, n);
          q = mulMod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = rhoStep(ys, c, n);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void splitInto(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (isPrime(n)) {
    out.push_back(n);
    return;
  }
  std::uint64_t d = brentFactor(n);
  splitInto(d, out);
  splitInto(n / d, out);
}

void collectDivisors(const std::vector<PrimePower>& e, std::size_t i,
                     std::uint64_t acc, std::vector<std::uint64_t>& out) {
  if (i == e.size()) {
    out.push_back(acc);
    return;
  }
  std::uint64_t v = acc;
  for (std::uint32_t j = 0; j <= e[i].exponent; ++j) {
    collectDivisors(e, i + 1, v, out);
    v *= e[i].prime;
  }
}

}  // namespace

Factorization::Factorization(std::vector<PrimePower> entries,
                             std::uint64_t value)
    : entries_(std::move(entries)), value_(value) {
  if (!isValid()) throw ValidationError("inconsistent integer factorization");
}

std::vector<std::uint64_t> Factorization::primes() const {
  std::vector<std::uint64_t> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.prime);
  return out;
}

bool Factorization::isValid() const {
  unsigned __int128 prod = 1;
  std::uint64_t last = 0;
  for (const auto& e : entries_) {
    if (e.exponent == 0 || e.prime <= last || !isPrime(e.prime)) return false;
    last = e.prime;
    for (std::uint32_t j = 0; j < e.exponent; ++j) {
      prod *= e.prime;
      if (prod > value_) return false;
    }
  }
  return prod == value_;
}

std::uint64_t mulMod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powMod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mulMod(result, base, m);
    base = mulMod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool isPrime(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::uint64_t kBases[] = {2,  3,  5,  7,  11, 13,
                                             17, 19, 23, 29, 31, 37};
  for (std::uint64_t p : kBases) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : kBases) {
    std::uint64_t x = powMod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulMod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

bool isPrimePower(std::uint64_t q, std::uint64_t* prime, unsigned* exponent) {
  if (q < 2) return false;
  Factorization f = factorize(q);
  if (f.entries().size() != 1) return false;
  if (prime) *prime = f.entries()[0].prime;
  if (exponent) *exponent = f.entries()[0].exponent;
  return true;
}

Factorization factorize(std::uint64_t n) {
  if (n < 2) throw DomainError("factorize: n must be at least 2");
  std::vector<PrimePower> entries;
  std::uint64_t m = n;
  for (std::uint64_t p = 2; p <= kTrialLimit && p * p <= m; p += (p == 2 ? 1 : 2)) {
    if (m % p) continue;
    std::uint32_t e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    entries.push_back({p, e});
  }
  if (m > 1) {
    std::vector<std::uint64_t> big;
    splitInto(m, big);
    std::sort(big.begin(), big.end());
    for (std::uint64_t p : big) {
      if (!entries.empty() && entries.back().prime == p) {
        ++entries.back().exponent;
      } else {
        entries.push_back({p, 1});
      }
    }
  }
  return Factorization(std::move(entries), n);
}

int mobius(const Factorization& f) {
  for (const auto& e : f.entries()) {
    if (e.exponent > 1) return 0;
  }
  return f.entries().size() % 2 ? -1 : 1;
}

int mobius(std::uint64_t n) {
  if (n == 0) throw DomainError("mobius: n must be positive");
  return n == 1 ? 1 : mobius(factorize(n));
}

std::uint64_t eulerPhi(const Factorization& f) {
  std::uint64_t result = f.value();
  for (const auto& e : f.entries()) result = result / e.prime * (e.prime - 1);
  return result;
}

std::uint64_t eulerPhi(std::uint64_t n) {
  if (n == 0) throw DomainError("eulerPhi: n must be positive");
  return n == 1 ? 1 : eulerPhi(factorize(n));
}

std::vector<std::uint64_t> divisors(const Factorization& f) {
  std::vector<std::uint64_t> out;
  collectDivisors(f.entries(), 0, 1, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  if (n == 0) throw DomainError("divisors: n must be positive");
  if (n == 1) return {1};
  return divisors(factorize(n));
}

std::uint64_t multiplicativeOrder(std::uint64_t a, std::uint64_t m) {
  if (m < 2) throw DomainError("multiplicativeOrder: modulus must be >= 2");
  a %= m;
  if (std::gcd(a, m) != 1) {
    throw DomainError("multiplicativeOrder: argument not a unit");
  }
  std::uint64_t phi = eulerPhi(m);
  if (phi == 1) return 1;
  std::uint64_t order = phi;
  const Factorization f = factorize(phi);
  for (const auto& e : f.entries()) {
    for (std::uint32_t j = 0; j < e.exponent; ++j) {
      if (powMod(a, order / e.prime, m) != 1) break;
      order /= e.prime;
    }
  }
  return order;
}

std::vector<std::int8_t> mobiusSieve(std::uint32_t limit) {
  std::vector<std::int8_t> mu(limit + 1, 1);
  std::vector<bool> composite(limit + 1, false);
  mu[0] = 0;
  for (std::uint64_t p = 2; p <= limit; ++p) {
    if (composite[p]) continue;
    for (std::uint64_t j = p; j <= limit; j += p) {
      if (j > p) composite[j] = true;
      mu[j] = static_cast<std::int8_t>(-mu[j]);
    }
    for (std::uint64_t j = p * p; j <= limit; j += p * p) mu[j] = 0;
  }
  return mu;
}

std::vector<std::uint32_t> phiSieve(std::uint32_t limit) {
  std::vector<std::uint32_t> phi(limit + 1);
  std::iota(phi.begin(), phi.end(), 0u);
  for (std::uint64_t p = 2; p <= limit; ++p) {
    if (phi[p] != p) continue;
    for (std::uint64_t j = p; j <= limit; j += p) phi[j] -= phi[j] / p;
  }
  return phi;
}

SummatoryReport mertensReport(std::uint64_t x) {
  if (x == 0) throw DomainError("mertensReport: x must be positive");
  if (x > kMaxMertensX) throw ResourceError("mertensReport: x exceeds 10^7");
  auto mu = mobiusSieve(static_cast<std::uint32_t>(x));
  SummatoryReport r;
  r.x = x;
  CompensatedSum recip, frac;
  for (std::uint64_t n = 1; n <= x; ++n) {
    if (mu[n] == 0) continue;
    r.mertens += mu[n];
    r.weightedFloorSum += mu[n] * static_cast<std::int64_t>(x / n);
    recip.add(static_cast<long double>(mu[n]) / n);
    frac.add(static_cast<long double>(mu[n]) * (x % n) / n);
  }
  r.reciprocalSum = recip.value();
  r.fractionalSum = frac.value();
  r.identityResidual = std::fabs(static_cast<long double>(x) * r.reciprocalSum -
                                 r.fractionalSum - 1);
  double shape = std::exp(-std::sqrt(std::log(static_cast<double>(x))));
  double xs = static_cast<double>(x) * shape;
  r.boundRatios[0] = static_cast<double>(r.mertens) / xs;
  r.boundRatios[1] = static_cast<double>(r.reciprocalSum) / shape;
  r.boundRatios[2] = static_cast<double>(r.fractionalSum + 1) / xs;
  return r;
}

PhiBoundsReport phiBoundsReport(std::uint64_t n) {
  if (n < 5) throw DomainError("phiBoundsReport: n must be at least 5");
  constexpr double kEulerGamma = 0.57721566490153286061;
  PhiBoundsReport r;
  double phi = static_cast<double>(eulerPhi(n));
  double nd = static_cast<double>(n);
  double ll = std::log(std::log(nd));
  r.ratio = phi / nd;
  r.rsException = n == kRosserSchoenfeldException;
  r.rsUpperOK = r.rsException || nd / phi < std::exp(kEulerGamma) * ll + 2.5 / ll;
  r.lowerOK = r.ratio >= kPhiLowerConstant / ll;
  return r;
}

}  // namespace pnfield::numtheory
