#include "pnfield/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <set>

#include <json.hpp>

#include "pnfield/characters.hpp"
#include "pnfield/errors.hpp"
#include "pnfield/field.hpp"
#include "pnfield/numtheory.hpp"
#include "pnfield/polyfq.hpp"
#include "pnfield/rng.hpp"
#include "pnfield/subsets.hpp"

namespace pnfield::verify {
namespace {

using characters::DiscreteLog;
using field::ExtElement;
using field::FieldCtx;
using field::Poly;

constexpr std::uint64_t kFullCheckOrder = 4096;
constexpr std::uint64_t kGaussOrder = 1024;
constexpr std::uint64_t kFourierOrder = 256;
constexpr std::uint64_t kOracleOrder = 256;
constexpr std::uint32_t kNumberLimit = 10'000;
constexpr std::uint32_t kPhiBoundLimit = 100'000;
constexpr int kRandomPairs = 200;
constexpr int kMetricTriples = 1000;
constexpr int kGaussPairs = 50;
constexpr double kGaussTolerance = 1e-6;
constexpr double kFourierTolerance = 1e-8;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string str(std::uint64_t v) { return std::to_string(v); }

std::string str128(__int128 v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  std::string out;
  for (; u; u /= 10) out.insert(out.begin(), static_cast<char>('0' + u % 10));
  return neg ? "-" + out : out;
}

std::uint64_t ipow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

class Recorder {
 public:
  explicit Recorder(std::vector<ClaimRecord>* out) : out_(out) {}

  void check(const std::string& id, const std::string& field, bool ok,
             const std::string& detail) {
    out_->push_back({id, field, ok ? Status::kAssertedPass : Status::kFail, false, detail});
  }

  void report(const std::string& id, const std::string& field, bool holds,
              const std::string& detail) {
    out_->push_back({id, field, Status::kReported, !holds, detail});
  }

  // Runs `fn`; an exception becomes a FAIL record for `id`.
  void guard(const std::string& id, const std::string& field, const std::function<void()>& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      out_->push_back({id, field, Status::kFail, false, std::string("exception: ") + e.what()});
    }
  }

 private:
  std::vector<ClaimRecord>* out_;
};

// Number of k in [1, n] coprime to n, by striking multiples of the primes
// of n (found with a smallest-prime-factor table) from [1, n].
class CoprimeCounter {
 public:
  explicit CoprimeCounter(std::uint32_t limit) : spf_(limit + 1, 0) {
    for (std::uint32_t i = 2; i <= limit; ++i) {
      if (spf_[i]) continue;
      for (std::uint64_t j = i; j <= limit; j += i) {
        if (!spf_[j]) spf_[j] = i;
      }
    }
  }

  std::uint64_t count(std::uint32_t n) {
    if (n == 1) return 1;
    mark_.assign(n + 1, 1);
    mark_[0] = 0;
    for (std::uint32_t m = n; m > 1;) {
      const std::uint32_t p = spf_[m];
      for (std::uint32_t j = p; j <= n; j += p) mark_[j] = 0;
      while (m % p == 0) m /= p;
    }
    return static_cast<std::uint64_t>(std::count(mark_.begin(), mark_.end(), 1));
  }

 private:
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint8_t> mark_;
};

void globalClaims(Recorder& rec, std::uint64_t seed) {
  const std::string g = "-";
  rec.guard("nt.phi-counting", g, [&] {
    CoprimeCounter cc(kNumberLimit);
    std::uint64_t bad = 0;
    for (std::uint32_t n = 1; n <= kNumberLimit; ++n) bad += numtheory::eulerPhi(n) != cc.count(n);
    rec.check("nt.phi-counting", g, bad == 0,
              "product form vs coprime count for n <= " + str(kNumberLimit) + ", mismatches " + str(bad));
  });
  rec.guard("nt.phi-divisor-sum", g, [&] {
    const auto phi = numtheory::phiSieve(kNumberLimit);
    std::vector<std::uint64_t> sum(kNumberLimit + 1, 0);
    for (std::uint32_t d = 1; d <= kNumberLimit; ++d) {
      for (std::uint32_t m = d; m <= kNumberLimit; m += d) sum[m] += phi[d];
    }
    std::uint64_t bad = 0;
    for (std::uint32_t n = 1; n <= kNumberLimit; ++n) bad += sum[n] != n;
    rec.check("nt.phi-divisor-sum", g, bad == 0,
              "sum of phi(d) over d | n equals n for n <= " + str(kNumberLimit) + ", mismatches " + str(bad));
  });
  rec.guard("nt.phi-gcd-relation", g, [&] {
    rng::Engine eng = rng::engineFor(seed, 0xa11ce);
    std::uint64_t bad = 0;
    for (int i = 0; i < 10'000; ++i) {
      const std::uint64_t m = 1 + rng::uniformBelow(eng, 1'000'000);
      const std::uint64_t n = 1 + rng::uniformBelow(eng, 1'000'000);
      const std::uint64_t d = std::gcd(m, n);
      const unsigned __int128 lhs = static_cast<unsigned __int128>(numtheory::eulerPhi(m * n)) *
                                    numtheory::eulerPhi(d);
      const unsigned __int128 rhs = static_cast<unsigned __int128>(d) * numtheory::eulerPhi(m) *
                                    numtheory::eulerPhi(n);
      bad += lhs != rhs;
    }
    rec.check("nt.phi-gcd-relation", g, bad == 0,
              "phi(mn) phi(d) = d phi(m) phi(n) on 10000 seeded pairs, mismatches " + str(bad));
  });
  rec.guard("nt.phi-inverse-identity", g, [&] {
    double worst = 0;
    for (std::uint32_t n = 1; n <= kNumberLimit; ++n) {
      long double s = 0;
      for (auto d : numtheory::divisors(n)) {
        const int mu = numtheory::mobius(d);
        s += static_cast<long double>(mu * mu) / numtheory::eulerPhi(d);
      }
      const long double lhs = 1.0L / numtheory::eulerPhi(n);
      worst = std::max(worst, static_cast<double>(std::fabs(lhs - s / n) / lhs));
    }
    rec.check("nt.phi-inverse-identity", g, worst < 1e-12,
              "1/phi(n) = (1/n) sum mu^2(d)/phi(d) for n <= " + str(kNumberLimit) +
                  ", max relative error " + num(worst));
  });
  rec.guard("nt.mobius-floor-sum", g, [&] {
    const auto mu = numtheory::mobiusSieve(kNumberLimit);
    std::uint64_t bad = 0;
    for (std::uint32_t x = 1; x <= kNumberLimit; ++x) {
      std::int64_t s = 0;
      for (std::uint32_t n = 1; n <= x; ++n) s += mu[n] * static_cast<std::int64_t>(x / n);
      bad += s != 1;
    }
    rec.check("nt.mobius-floor-sum", g, bad == 0,
              "sum mu(n) floor(x/n) = 1 for x <= " + str(kNumberLimit) + ", failures " + str(bad));
  });
  rec.guard("nt.mertens-identity", g, [&] {
    const auto r = numtheory::mertensReport(kNumberLimit);
    rec.check("nt.mertens-identity", g, r.identityResidual < 1e-9,
              "x = " + str(r.x) + ", residual " + num(static_cast<double>(r.identityResidual)));
    rec.report("claim.mertens-bound-shapes", g, true,
               "ratios with c = 1: mertens " + num(r.boundRatios[0]) + ", reciprocal " +
                   num(r.boundRatios[1]) + ", fractional " + num(r.boundRatios[2]));
  });
  rec.guard("nt.phi-bounds", g, [&] {
    std::uint64_t lowerBad = 0, upperBad = 0;
    for (std::uint64_t n = 5; n <= kPhiBoundLimit; ++n) {
      const auto r = numtheory::phiBoundsReport(n);
      lowerBad += !r.lowerOK;
      upperBad += !r.rsUpperOK && !r.rsException;
    }
    rec.check("nt.phi-lower-bound", g, lowerBad == 0,
              "phi(n)/n >= 0.1707/loglog n for 5 <= n <= " + str(kPhiBoundLimit) + ", failures " + str(lowerBad));
    rec.check("nt.phi-upper-bound", g, upperBad == 0,
              "n/phi(n) < e^gamma loglog n + 5/(2 loglog n) for 5 <= n <= " + str(kPhiBoundLimit) +
                  ", failures " + str(upperBad));
  });
  rec.report("claim.phi-of-one", g, numtheory::eulerPhi(1) == 0,
             "counting k < n coprime to n gives phi(1) = 0; the library uses phi(1) = " +
                 str(numtheory::eulerPhi(1)));
  rec.guard("claim.totient-divisor-sum-literal", g, [&] {
    // Literal reading: sum over d | q^n - 1 of phi(q^d - 1), at q = 2, n = 2.
    std::uint64_t s = 0;
    for (auto d : numtheory::divisors(3)) s += numtheory::eulerPhi(ipow(2, d) - 1);
    rec.report("claim.totient-divisor-sum-literal", g, s == 3,
               "q = 2, n = 2: sum of phi(2^d - 1) over d | 3 is " + str(s) +
                   ", not 3; the standard sum of phi(d) over d | m equals m");
  });
  rec.guard("claim.hamming-ball-listing", g, [&] {
    auto ctx = field::buildField(23, 1, 2);
    const auto ball = subsets::enumerateHammingBall(*ctx, ctx->generator(), 3);
    rec.report("claim.hamming-ball-listing", g, ball.size() == 14,
               "q = 23, radius 3: the weight rule gives " + str(ball.size()) +
                   " elements (c = 0..22 except 15); the printed list has 14 entries with a repeat");
  });
  rec.guard("claim.height-norm", g, [&] {
    // N(a) = a^{(q^d - 1)/(q - 1)} on F_19 with d = 2 is a^20 = a^2.
    std::uint64_t notUnit = 0;
    for (std::uint64_t a = 1; a < 19; ++a) {
      const std::uint64_t v = numtheory::powMod(a, 20, 19);
      notUnit += v != 1 && v != 18;
    }
    rec.report("claim.height-norm", g, notUnit == 0,
               "q = 19, d = 2: " + str(notUnit) +
                   " of 18 nonzero a have a^{(q^d-1)/(q-1)} outside {1, -1}; centered representatives used instead");
  });
  rec.guard("claim.unit-sphere-subfield", g, [&] {
    auto ctx = field::buildField(2, 1, 4);
    const auto sphere = subsets::enumerateWeightBall(*ctx, 4);  // all nonzero, degree <= 3
    auto sub = ctx->order();
    for (unsigned d = 1; d < 4; ++d) {
      if (4 % d == 0 && ipow(2, d) == sphere.size() + 1) sub = ipow(2, d);
    }
    rec.report("claim.unit-sphere-subfield", g, sub != ctx->order(),
               "the " + str(sphere.size()) +
                   " nonzero polynomials of degree <= 3 over F_2 match no proper subfield of F_{2^4}");
  });
}

struct FieldData {
  field::CtxPtr ctx;
  std::string label;
  std::uint64_t phi = 0;  // phi(q^n - 1)
  std::uint64_t Phi = 0;  // Phi(x^n - 1)
};

// Phi of the divisor of x^n - 1 with the given exponents.
std::uint64_t phiOfExponents(const FieldCtx& ctx, const std::vector<unsigned>& e) {
  std::uint64_t r = 1;
  const auto& entries = ctx.addFactorization().entries();
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (!e[i]) continue;
    const std::uint64_t qd = ipow(ctx.q(), entries[i].factor.degree());
    r *= ipow(qd, e[i] - 1) * (qd - 1);
  }
  return r;
}

ExtElement randomElement(const FieldCtx& ctx, rng::Engine& eng) {
  return ctx.fromIndex(rng::uniformBelow(eng, ctx.order()));
}

ExtElement randomNonzero(const FieldCtx& ctx, rng::Engine& eng) {
  return ctx.fromIndex(1 + rng::uniformBelow(eng, ctx.order() - 1));
}

Poly randomPoly(const FieldCtx& ctx, rng::Engine& eng, unsigned len) {
  std::vector<polyfq::Coeff> c(len);
  for (auto& x : c) x = rng::uniformBelow(eng, ctx.q());
  return Poly(std::move(c));
}

void countingClaims(Recorder& rec, const FieldData& fd, std::uint64_t budget) {
  const FieldCtx& ctx = *fd.ctx;
  const std::string& L = fd.label;
  const std::uint64_t q = ctx.q(), n = ctx.n(), qn = ctx.order();
  rec.guard("count.marginals", L, [&] {
    const auto r = counting::exactCounts(ctx, budget);
    rec.check("count.marginals", L, r.numPrimitive == fd.phi && r.numNormal == fd.Phi,
              "primitive " + str(r.numPrimitive) + " = phi " + str(fd.phi) + ", normal " +
                  str(r.numNormal) + " = Phi " + str(fd.Phi));
    rec.check("count.primitive-normal-exists", L,
              r.numPrimitiveNormal > 0 &&
                  r.numPrimitiveNormal <= std::min(r.numPrimitive, r.numNormal),
              "primitive normal " + str(r.numPrimitiveNormal) + ", delta " + num(r.correction));
    if (n == 2) {
      rec.report("claim.pn2-equals-phi", L, r.numPrimitiveNormal == fd.phi,
                 "primitive normal " + str(r.numPrimitiveNormal) + " vs phi(q^2-1) " + str(fd.phi));
    }
  });
  rec.guard("order.histograms", L, [&] {
    const auto h = counting::orderHistograms(ctx, budget);
    std::uint64_t total = 0, bad = 0;
    for (const auto& [d, c] : h.multiplicative) {
      total += c;
      bad += (qn - 1) % d != 0 || c != numtheory::eulerPhi(d);
    }
    const auto top = h.multiplicative.find(qn - 1);
    rec.check("order.multiplicative", L,
              total == qn - 1 && bad == 0 && top != h.multiplicative.end() && top->second == fd.phi,
              "classes " + str(h.multiplicative.size()) + ", total " + str(total) +
                  ", class sizes equal to phi(d)");
    total = 0;
    bad = 0;
    std::vector<unsigned> full;
    for (const auto& e : ctx.addFactorization().entries()) full.push_back(e.exponent);
    for (const auto& [e, c] : h.additive) {
      total += c;
      bad += c != phiOfExponents(ctx, e);
    }
    const auto fullIt = h.additive.find(full);
    rec.check("order.additive", L,
              total == qn && bad == 0 && fullIt != h.additive.end() && fullIt->second == fd.Phi,
              "classes " + str(h.additive.size()) + ", total " + str(total) +
                  ", class sizes equal to Phi(d)");
    rec.check("order.character-count", L, total == qn,
              "characters psi_c grouped by order sum to q^n = " + str(qn));
    rec.report("claim.order-class-sum", L, total == fd.Phi,
               "sum over elements and divisors of #{Ord = d} is " + str(total) + ", claimed Phi = " + str(fd.Phi));
  });
  rec.guard("poly.divisor-phi-sum", L, [&] {
    std::uint64_t s = 0;
    for (const auto& d : polyfq::monicDivisors(ctx.base(), ctx.addFactorization())) {
      s += polyfq::polyPhi(d);
    }
    rec.check("poly.divisor-phi-sum", L, s == qn, "sum of Phi(d) over d | x^n - 1 is " + str(s));
    rec.report("claim.divisor-phi-sum", L, s == fd.Phi,
               "sum of Phi(d) is " + str(s) + ", claimed Phi(x^n - 1) = " + str(fd.Phi));
  });
  rec.guard("factor.omega", L, [&] {
    const auto prof = polyfq::cyclotomicFactorCounts(q, n);
    const auto& fact = ctx.addFactorization();
    rec.check("factor.omega", L,
              fact.isValid(ctx.base()) && fact.entries().size() == prof.omega &&
                  fd.Phi == polyfq::phiXnMinus1(q, n),
              "factors " + str(fact.entries().size()) + ", omega " + str(prof.omega));
    if (std::gcd(q, n) == 1) {
      const std::uint64_t phiN = numtheory::eulerPhi(n);
      rec.report("claim.omega-le-phi", L, prof.omega <= phiN,
                 "omega " + str(prof.omega) + " vs phi(n) " + str(phiN));
      if (n > 2 && numtheory::isPrime(n) && numtheory::multiplicativeOrder(q % n, n) == n - 1) {
        rec.check("factor.omega-prime-case", L, prof.omega == 2, "omega " + str(prof.omega));
      }
    }
  });
  rec.guard("claim.identities", L, [&] {
    long double prod = 1;
    for (auto r : ctx.multFactorization().primes()) prod *= 1 + 1.0L / (r - 1);
    const long double lit = fd.phi / static_cast<long double>(qn) * prod;
    const long double alt = fd.phi / static_cast<long double>(qn - 1) * prod;
    rec.report("claim.primitive-product-identity", L, std::fabs(lit - 1) < 1e-12,
               "phi(q^n-1)/q^n prod(1 + 1/(r-1)) = " + num(static_cast<double>(lit)) +
                   "; with q^n - 1 in the denominator it is " + num(static_cast<double>(alt)));
    prod = 1;
    for (const auto& e : ctx.addFactorization().entries()) {
      prod *= 1 + 1.0L / (std::pow(static_cast<long double>(q), e.factor.degree()) - 1);
    }
    const long double v = fd.Phi / static_cast<long double>(qn) * prod;
    rec.report("claim.normal-product-identity", L, std::fabs(v - 1) < 1e-12,
               "Phi/q^n prod(1 + 1/(q^deg r - 1)) = " + num(static_cast<double>(v)));
    const auto sp = polyfq::sigmaPhiIdentityCheck(ctx.base(), ctx.n());
    rec.report("claim.sigma-phi-literal", L, sp.literalHolds,
               "lhs " + num(static_cast<double>(sp.literalLhs)) + ", rhs " +
                   num(static_cast<double>(sp.literalRhs)));
    rec.check("poly.sigma-phi", L, sp.naturalHolds,
              "sigma Phi / q^{2n} = " + num(static_cast<double>(sp.naturalLhs)) + " vs " +
                  num(static_cast<double>(sp.naturalRhs)));
    if (n == 2) {
      rec.report("claim.phi-x2-minus-1", L, fd.Phi == (q - 1) * (q - 1),
                 "Phi(x^2-1) = " + str(fd.Phi) + ", (q-1)^2 = " + str((q - 1) * (q - 1)));
      if (ctx.p() >= 5) {
        rec.report("claim.phi-le-Phi-quadratic", L, fd.phi <= fd.Phi,
                   "phi(q^2-1) " + str(fd.phi) + " vs Phi(x^2-1) " + str(fd.Phi));
      }
    }
    if (n == 3) {
      std::uint64_t expect;
      std::string which;
      if (q % 3 == 0) {
        expect = q * q * (q - 1);
        which = "q^2(q-1)";
      } else if ((q - 1) % 3 == 0) {
        expect = (q - 1) * (q - 1) * (q - 1);
        which = "(q-1)^3";
      } else {
        expect = (q - 1) * (q * q - 1);
        which = "(q-1)(q^2-1)";
      }
      rec.check("count.phi-x3-minus-1", L, fd.Phi == expect,
                "Phi(x^3-1) = " + str(fd.Phi) + ", " + which + " = " + str(expect));
    }
    if ((q - 1) % n == 0) {
      rec.check("count.phi-split-case", L, fd.Phi == ipow(q - 1, n),
                "n | q-1: Phi = " + str(fd.Phi) + ", (q-1)^n = " + str(ipow(q - 1, n)));
    }
  });
  if (n < 2) return;
  rec.guard("bound.phi-poly", L, [&] {
    const auto b = counting::phiPolyLowerBoundCheck(q, n);
    rec.check("bound.phi-poly-log", L, b.logBoundOK,
              "ratio " + num(b.ratio) + " >= 1/(5 log q^n) = " + num(b.logBound));
    if (b.loglogBoundOK) {
      rec.report("claim.phi-poly-loglog", L, *b.loglogBoundOK,
                 "ratio " + num(b.ratio) + " vs 1/(5 loglog q^n)");
    }
    if (b.probExpansionResidual) {
      rec.report("claim.normal-probability-expansion", L, *b.probExpansionWithin,
                 "|ratio - (1 - n/q)| = " + num(*b.probExpansionResidual) + " vs n(n-1)/q^2");
    }
  });
}

void fieldIdentityClaims(Recorder& rec, const FieldData& fd, rng::Engine& eng) {
  const FieldCtx& ctx = *fd.ctx;
  const std::string& L = fd.label;
  rec.guard("field.identities", L, [&] {
    std::uint64_t frob = 0, trace = 0, norm = 0, assoc = 0;
    const std::uint64_t p = ctx.p();
    for (int i = 0; i < kRandomPairs; ++i) {
      const auto a = randomElement(ctx, eng), b = randomElement(ctx, eng);
      frob += ctx.frobenius1(ctx.add(a, b)) != ctx.add(ctx.frobenius1(a), ctx.frobenius1(b)) ||
              ctx.frobenius1(ctx.mul(a, b)) != ctx.mul(ctx.frobenius1(a), ctx.frobenius1(b));
      const std::uint64_t c = rng::uniformBelow(eng, p);
      const auto ca = ctx.scale(a, ctx.base().embed(c));
      trace += field::trace(ctx, ctx.add(a, b)) != (field::trace(ctx, a) + field::trace(ctx, b)) % p ||
               field::trace(ctx, ca) != c * field::trace(ctx, a) % p;
      norm += field::norm(ctx, ctx.mul(a, b)) != field::norm(ctx, a) * field::norm(ctx, b) % p;
      const Poly r = randomPoly(ctx, eng, ctx.n() + 2), s = randomPoly(ctx, eng, ctx.n() + 2);
      const Poly rs = polyfq::mul(ctx.base(), r, s);
      assoc += field::applyLinearized(ctx, rs, a) !=
               field::applyLinearized(ctx, r, field::applyLinearized(ctx, s, a));
    }
    const std::string tail = " failures in " + str(kRandomPairs) + " seeded pairs";
    rec.check("field.frobenius-automorphism", L, frob == 0, str(frob) + tail);
    rec.check("field.trace-linear", L, trace == 0, str(trace) + tail);
    rec.check("field.norm-multiplicative", L, norm == 0, str(norm) + tail);
    rec.check("field.module-associative", L, assoc == 0, str(assoc) + tail);
    bool surjective = true;
    if (ctx.order() <= kFullCheckOrder) {
      std::set<std::uint64_t> seen;
      for (std::uint64_t i = 0; i < ctx.order(); ++i) seen.insert(field::trace(ctx, ctx.fromIndex(i)));
      surjective = seen.size() == p;
    } else {
      std::set<std::uint64_t> seen;
      for (std::uint64_t i = 0; i < ctx.order() && seen.size() < p; ++i) {
        seen.insert(field::trace(ctx, ctx.fromIndex(i)));
      }
      surjective = seen.size() == p;
    }
    rec.check("field.trace-surjective", L, surjective, "every value of F_p is a trace");
  });
  if (ctx.order() > kFullCheckOrder) return;
  rec.guard("field.exhaustive", L, [&] {
    std::uint64_t disagree = 0, notMinimal = 0;
    const auto& fact = ctx.addFactorization();
    for (std::uint64_t i = 0; i < ctx.order(); ++i) {
      const auto a = ctx.fromIndex(i);
      disagree += field::isNormal(ctx, a, field::NormalTest::kDivisor) !=
                  field::isNormal(ctx, a, field::NormalTest::kRank);
      const Poly d = field::additiveOrder(ctx, a);
      Poly quo, rem;
      polyfq::divmod(ctx.base(), fact.value(), d, &quo, &rem);
      bool ok = rem.isZero() && ctx.isZero(field::applyLinearized(ctx, d, a));
      for (const auto& e : fact.entries()) {
        Poly dq, dr;
        polyfq::divmod(ctx.base(), d, e.factor, &dq, &dr);
        if (dr.isZero() && ctx.isZero(field::applyLinearized(ctx, dq, a))) ok = false;
      }
      notMinimal += !ok;
    }
    rec.check("normal.tests-agree", L, disagree == 0,
              "divisor and rank tests disagree on " + str(disagree) + " elements");
    rec.check("order.additive-minimal", L, notMinimal == 0,
              "additive order fails to divide, annihilate or be minimal on " + str(notMinimal) + " elements");
  });
}

void characterClaims(Recorder& rec, const FieldData& fd, rng::Engine& eng,
                     std::uint64_t trials, std::uint64_t seed) {
  const FieldCtx& ctx = *fd.ctx;
  const std::string& L = fd.label;
  const std::uint64_t qn = ctx.order();
  if (qn > kFullCheckOrder || qn < 3) return;
  const std::uint64_t m = qn - 1;
  DiscreteLog dl(fd.ctx);
  characters::DivisorFreePrimitive dfp(dl);
  characters::DivisorFreeNormal dfn(dl, ctx.tau());
  characters::DivisorDependentNormal ddn(fd.ctx);

  rec.guard("indicator", L, [&] {
    std::uint64_t pdd = 0, pdf = 0, ndf = 0, ndd = 0, period = 0, literal = 0;
    std::uint64_t u = 1;
    if (m > 2) {
      do u = 2 + rng::uniformBelow(eng, m - 2);
      while (std::gcd(u, m) != 1);
    }
    for (std::uint64_t i = 1; i < qn; ++i) {
      const auto a = ctx.fromIndex(i);
      const int P = field::isPrimitive(ctx, a), N = field::isNormal(ctx, a);
      pdd += characters::indicatorPrimitiveDD(dl, a) != P;
      const int df = dfp.evaluate(a);
      pdf += df != P;
      ndf += dfn.evaluate(a) != N;
      if (auto v = ddn.evaluate(a)) ndd += *v != N;
      if (qn <= kGaussOrder) period += dfp.evaluatePermuted(a, u) != df;
      const auto shifted = ctx.sub(a, ctx.one());  // a + (q^n - 1) in F_{q^n}
      if (!ctx.isZero(shifted)) literal += dfp.evaluate(shifted) != df;
    }
    rec.check("indicator.primitive-dd", L, pdd == 0, "mismatches " + str(pdd));
    rec.check("indicator.primitive-df", L, pdf == 0, "mismatches " + str(pdf));
    rec.check("indicator.normal-df", L, ndf == 0, "mismatches " + str(ndf));
    if (ddn.applicable()) rec.check("indicator.normal-dd", L, ndd == 0, "mismatches " + str(ndd));
    if (qn <= kGaussOrder) {
      rec.check("indicator.periodicity", L, period == 0,
                "residues enumerated as " + str(u) + "*s: mismatches " + str(period));
    }
    rec.report("claim.indicator-shift", L, literal == 0,
               "Psi(a) vs Psi(a + q^n - 1) = Psi(a - 1): " + str(literal) + " differences");
  });

  if (qn <= kGaussOrder) {
    rec.guard("gauss", L, [&] {
      const double root = std::sqrt(static_cast<double>(qn));
      const auto c = randomNonzero(ctx, eng);
      const auto g00 = characters::gaussSum(dl, 0, ctx.zero());
      const auto g01 = characters::gaussSum(dl, 0, c);
      bool exact = g00.exact && *g00.exact == static_cast<std::int64_t>(m) && g01.exact &&
                   *g01.exact == -1 && std::abs(g00.value - double(m)) < kGaussTolerance &&
                   std::abs(g01.value + 1.0) < kGaussTolerance;
      if (m >= 2) {
        const auto g10 = characters::gaussSum(dl, 1 + rng::uniformBelow(eng, m - 1), ctx.zero());
        exact = exact && g10.exact && *g10.exact == 0 && std::abs(g10.value) < kGaussTolerance;
      }
      rec.check("gauss.exact-values", L, exact, "G(1,1) = q^n - 1, G(1,psi) = -1, G(chi,1) = 0");
      if (m >= 2) {
        double worst = 0;
        for (int i = 0; i < kGaussPairs; ++i) {
          const std::uint64_t b = 1 + rng::uniformBelow(eng, m - 1);
          const auto cc = randomNonzero(ctx, eng);
          worst = std::max(worst, std::fabs(std::abs(characters::gaussSum(dl, b, cc).value) - root));
        }
        rec.check("gauss.magnitude", L, worst <= kGaussTolerance,
                  "max ||G| - q^{n/2}| over " + str(kGaussPairs) + " seeded pairs " + num(worst));
      }
      if (qn <= kFourierOrder) {
        const auto fr = characters::fourierResiduals(dl, c, m >= 2 ? 1 + rng::uniformBelow(eng, m - 1) : 0);
        rec.check("gauss.fourier", L,
                  fr.additive <= kFourierTolerance && fr.multiplicative <= kFourierTolerance,
                  "residuals " + num(fr.additive) + ", " + num(fr.multiplicative));
      }
    });
    rec.guard("claim.additive-order-sum", L, [&] {
      // Characters of order r are psi_c with c != 0 in ker(r o .).
      std::uint64_t mismatches = 0;
      const auto& fact = ctx.addFactorization();
      for (std::size_t j = 0; j < fact.entries().size(); ++j) {
        const Poly& r = fact.entries()[j].factor;
        std::vector<ExtElement> kernel;
        for (std::uint64_t i = 1; i < qn; ++i) {
          const auto c = ctx.fromIndex(i);
          if (ctx.isZero(field::applyLinearized(ctx, r, c))) kernel.push_back(c);
        }
        const std::int64_t full = static_cast<std::int64_t>(ipow(ctx.q(), r.degree())) - 1;
        for (std::uint64_t i = 1; i < qn; ++i) {
          const auto a = ctx.fromIndex(i);
          std::uint64_t zeros = 0;
          for (const auto& c : kernel) zeros += ctx.absoluteTrace(ctx.mul(c, a)) == 0;
          const std::int64_t s = zeros == kernel.size() ? full : -1;
          const bool divides = field::additiveOrderExponents(ctx, a)[j] > 0;
          mismatches += s != (divides ? full : -1);
        }
      }
      rec.report("claim.additive-order-sum", L, mismatches == 0,
                 "sum over characters of order r at a vs r | Ord(a): " + str(mismatches) + " mismatches");
    });
    rec.guard("expsum", L, [&] {
      std::uint64_t bad = 0, within = 0, total = 0;
      double worstOracle = 0;
      for (std::uint64_t i = 1; i < qn; ++i) {
        const auto a = ctx.fromIndex(i);
        if (dfp.evaluate(a)) continue;
        const auto r = characters::primitiveExpSum(dfp, dl, a);
        ++total;
        bad += r.exactValue != -static_cast<std::int64_t>(fd.phi);
        within += r.withinBound;
        if (qn <= kOracleOrder) {
          const std::uint64_t La = dl.log(a);
          long double s = 0;
          for (std::uint64_t sv : dfp.residues()) {
            const std::uint64_t diff = (sv + qn - La) % qn;
            for (std::uint64_t t = 1; t < qn; ++t) {
              s += std::cos(6.283185307179586476925L * static_cast<long double>(diff * t % qn) / qn);
            }
          }
          worstOracle = std::max(worstOracle, std::fabs(static_cast<double>(s) - r.exactValue));
        }
      }
      rec.check("expsum.exact", L, bad == 0 && worstOracle < 1e-6,
                str(total) + " non-primitive elements, value -phi = -" + str(fd.phi) +
                    ", mismatches " + str(bad) + ", oracle error " + num(worstOracle));
      rec.report("claim.expsum-bound", L, within == total,
                 str(within) + " of " + str(total) + " within q^n e^{-sqrt(log q^n)}");
    });
  }

  rec.guard("charsum", L, [&] {
    const auto r = characters::charSumBoundSuite(dl, trials, rng::deriveSeed(seed, qn));
    rec.check("charsum.product", L, r.productPass,
              "max ratio " + num(r.maxProductRatio) + " over " + str(trials) + " pairs");
    if (r.maxShiftedRatio) {
      rec.check("charsum.shifted", L, r.shiftedPass, "max ratio " + num(*r.maxShiftedRatio));
    }
    rec.report("claim.units-sum", L, r.unitsRatio <= 1 + characters::kCharSumTolerance,
               "|sum over normal u of psi(u)| / q^{n/2} = " + num(r.unitsRatio));
  });

  rec.guard("subsum.ledger", L, [&] {
    std::vector<ExtElement> A;
    for (auto i : rng::sampleDistinct(eng, m, std::min<std::uint64_t>(32, m))) {
      A.push_back(ctx.fromIndex(i + 1));
    }
    const auto led = characters::subsumLedger(dl, dfp, dfn, A);
    rec.check("subsum.ledger", L, led.sumMatches,
              "four subsums add up to q^{2n} x " + str(led.primitiveNormal) + " over " +
                  str(led.setSize) + " elements");
    rec.report("claim.subsum-n01-vanishes", L, led.n01 == 0,
               "N01 scaled by q^{2n} is " + str128(led.n01));
    rec.report("claim.subsum-n10-vanishes", L, led.n10 == 0,
               "N10 scaled by q^{2n} is " + str128(led.n10));
  });
}

void subsetClaims(Recorder& rec, const FieldData& fd, rng::Engine& eng) {
  const FieldCtx& ctx = *fd.ctx;
  const std::string& L = fd.label;
  rec.guard("metric", L, [&] {
    std::uint64_t wBad = 0, hBad = 0;
    for (int i = 0; i < kMetricTriples; ++i) {
      const auto r = randomElement(ctx, eng), s = randomElement(ctx, eng), u = randomElement(ctx, eng);
      auto check = [&](auto dist) {
        const auto rs = dist(r, s), sr = dist(s, r), su = dist(s, u), ru = dist(r, u);
        return ((rs == 0) != (r == s)) || rs != sr || ru > dist(r, s) + su;
      };
      wBad += check([&](const auto& a, const auto& b) {
        return static_cast<std::uint64_t>(subsets::hammingWeight(ctx.sub(b, a)));
      });
      hBad += check([&](const auto& a, const auto& b) { return subsets::height(ctx, ctx.sub(b, a)); });
    }
    rec.check("metric.hamming", L, wBad == 0, str(wBad) + " failing triples of " + str(kMetricTriples));
    rec.check("metric.height", L, hBad == 0, str(hBad) + " failing triples of " + str(kMetricTriples));
  });
  rec.guard("subsets.hamming-ball-full", L, [&] {
    const auto center = randomElement(ctx, eng);
    const auto ball = subsets::enumerateHammingBall(ctx, center, subsets::bitLength(ctx.p()));
    std::set<std::uint64_t> idx;
    for (const auto& a : ball) idx.insert(ctx.index(a));
    rec.check("subsets.hamming-ball-full", L, ball.size() == ctx.p() && idx.size() == ctx.p(),
              str(idx.size()) + " distinct elements, p = " + str(ctx.p()));
  });
  if (ctx.n() >= 3) {
    rec.guard("subsets.height-box", L, [&] {
      const auto A = subsets::enumerateHeightBox(ctx, 2, 1);
      std::set<std::uint64_t> idx;
      for (const auto& a : A) idx.insert(ctx.index(a));
      bool closed = true;
      for (std::size_t i = 0; i < A.size() && closed; ++i) {
        for (std::size_t j = 0; j < A.size() && closed; ++j) {
          const auto s = ctx.add(A[i], A[j]);
          closed = ctx.isZero(s) || idx.count(ctx.index(s));
        }
      }
      const auto v = subsets::isStructured(ctx, A);
      rec.check("subsets.height-box-nonstructured", L, closed || !v.structured,
                "A_2(1) has " + str(A.size()) + " elements: " + v.reason);
    });
  }
  rec.guard("subsets.search", L, [&] {
    const auto rep = subsets::searchPrimitiveNormal(ctx, subsets::WeightBallSpec{1},
                                                    subsets::kDefaultEpsilon, subsets::kEnumerationCap);
    const auto pool = subsets::enumerateWeightBall(ctx, 1);
    std::set<std::uint64_t> idx;
    for (const auto& a : pool) idx.insert(ctx.index(a));
    bool ok = rep.hit == !rep.witnesses.empty();
    for (const auto& w : rep.witnesses) ok = ok && idx.count(ctx.index(w)) && field::isPrimitiveNormal(ctx, w);
    rec.check("subsets.search-witnesses", L, ok,
              str(rep.witnesses.size()) + " witnesses among " + str(rep.subsetSize) + " weight-1 elements");
  });
}

std::string fieldLabel(const counting::FieldParams& f) {
  return str(f.p) + "^" + str(f.k) + ":" + str(f.n);
}

}  // namespace

const char* statusName(Status s) {
  switch (s) {
    case Status::kAssertedPass:
      return "ASSERTED-PASS";
    case Status::kReported:
      return "REPORTED";
    case Status::kFail:
      return "FAIL";
  }
  return "?";
}

std::size_t VerifyReport::count(Status s) const {
  return static_cast<std::size_t>(
      std::count_if(claims.begin(), claims.end(), [s](const auto& c) { return c.status == s; }));
}

std::size_t VerifyReport::discrepancies() const {
  return static_cast<std::size_t>(std::count_if(claims.begin(), claims.end(), [](const auto& c) {
    return c.status == Status::kReported && c.discrepancy;
  }));
}

VerifyReport runVerify(const VerifyOptions& opts) {
  std::vector<counting::FieldParams> fields = opts.fields;
  std::sort(fields.begin(), fields.end(), [](const auto& a, const auto& b) {
    return std::pair(a.q(), a.n) < std::pair(b.q(), b.n);
  });
  fields.erase(std::unique(fields.begin(), fields.end()), fields.end());
  for (const auto& f : fields) {
    if (std::pow(static_cast<long double>(f.q()), f.n) > opts.budget) {
      throw ResourceError("field " + fieldLabel(f) + " exceeds the element budget " + str(opts.budget));
    }
  }
  VerifyReport report;
  if (fields.empty()) return report;
  Recorder rec(&report.claims);
  globalClaims(rec, opts.seed);
  for (const auto& f : fields) {
    const std::string label = fieldLabel(f);
    FieldData fd;
    fd.label = label;
    try {
      fd.ctx = field::buildField(f.p, f.k, f.n);
      fd.phi = numtheory::eulerPhi(fd.ctx->multFactorization());
      fd.Phi = polyfq::polyPhi(fd.ctx->addFactorization());
    } catch (const std::exception& e) {
      rec.check("field.build", label, false, std::string("exception: ") + e.what());
      continue;
    }
    rng::Engine eng = rng::engineFor(rng::deriveSeed(opts.seed, f.p), f.k * 1024ull + f.n);
    countingClaims(rec, fd, opts.budget);
    fieldIdentityClaims(rec, fd, eng);
    characterClaims(rec, fd, eng, opts.trials, opts.seed);
    subsetClaims(rec, fd, eng);
    if (f.p == 2 && f.k == 1 && f.n == 2) {
      rec.report("claim.f4-normal-count", label, fd.Phi == 1,
                 "stated 1 normal element; x^2 - 1 = (x + 1)^2 gives Phi = " + str(fd.Phi) +
                     ", matching brute force");
    }
  }
  return report;
}

void writeText(std::ostream& out, const VerifyReport& report) {
  for (const auto& c : report.claims) {
    out << statusName(c.status);
    if (c.status == Status::kReported) out << (c.discrepancy ? " [discrepancy]" : " [holds]");
    out << "  " << c.field << "  " << c.id << "  " << c.detail << '\n';
  }
  out << "summary: " << report.count(Status::kAssertedPass) << " asserted-pass, "
      << report.count(Status::kFail) << " fail, " << report.count(Status::kReported)
      << " reported (" << report.discrepancies() << " discrepancies)\n";
}

void writeJson(std::ostream& out, const VerifyReport& report) {
  nlohmann::ordered_json j;
  j["schema"] = "pnfield/1";
  j["kind"] = "verify";
  j["summary"] = {{"assertedPass", report.count(Status::kAssertedPass)},
                  {"fail", report.count(Status::kFail)},
                  {"reported", report.count(Status::kReported)},
                  {"discrepancies", report.discrepancies()}};
  j["claims"] = nlohmann::ordered_json::array();
  for (const auto& c : report.claims) {
    nlohmann::ordered_json e;
    e["id"] = c.id;
    e["field"] = c.field;
    e["status"] = statusName(c.status);
    if (c.status == Status::kReported) e["discrepancy"] = c.discrepancy;
    e["detail"] = c.detail;
    j["claims"].push_back(std::move(e));
  }
  out << j.dump(2) << '\n';
}

}  // namespace pnfield::verify
