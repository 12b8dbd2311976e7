#include "pnfield/characters.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pnfield/errors.hpp"
#include "pnfield/numtheory.hpp"
#include "pnfield/rng.hpp"

namespace pnfield::characters {
namespace {

constexpr long double kTwoPi = 6.283185307179586476925286766559L;
constexpr std::uint64_t kTraceTableLimit = 1u << 24;
constexpr std::uint64_t kGaussLimit = 1u << 22;
constexpr std::uint64_t kLiteralTermLimit = 1u << 24;
constexpr std::uint64_t kMaxSubsetSize = 48;

using i128 = __int128;

// e^{2 pi i j / den} for j in [0, den).
std::vector<std::complex<double>> rootsOfUnity(std::uint64_t den) {
  std::vector<std::complex<double>> r(den);
  for (std::uint64_t j = 0; j < den; ++j) {
    long double a = kTwoPi * static_cast<long double>(j) / den;
    r[j] = {static_cast<double>(std::cos(a)), static_cast<double>(std::sin(a))};
  }
  return r;
}

std::complex<double> rootOfUnity(std::uint64_t num, std::uint64_t den) {
  long double a = kTwoPi * static_cast<long double>(num % den) / den;
  return {static_cast<double>(std::cos(a)), static_cast<double>(std::sin(a))};
}

void requireNonzero(const FieldCtx& ctx, const ExtElement& a, const char* what) {
  if (ctx.isZero(a)) throw DomainError(what);
}

}  // namespace

// ---------------------------------------------------------------------------
// DiscreteLog

DiscreteLog::DiscreteLog(CtxPtr ctx) : ctx_(std::move(ctx)) {
  const FieldCtx& F = *ctx_;
  const ExtElement& tau = F.tau();
  const std::uint64_t order = F.order();
  const std::uint64_t m = order - 1;
  if (order <= kFullTableLimit) {
    log_.assign(order, 0);
    exp_.assign(m, 0);
    ExtElement x = F.one();
    for (std::uint64_t j = 0; j < m; ++j) {
      std::uint64_t idx = F.index(x);
      exp_[j] = static_cast<std::uint32_t>(idx);
      log_[idx] = static_cast<std::uint32_t>(j);
      x = F.mul(x, tau);
    }
    if (x != F.one()) throw InternalError("reference element is not primitive");
    return;
  }
  if (m > kMaxGroupOrder) {
    throw ResourceError("discrete logarithm group too large");
  }
  babySteps_ = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(m))));
  while (babySteps_ * babySteps_ < m) ++babySteps_;
  baby_.reserve(babySteps_ * 2);
  ExtElement x = F.one();
  for (std::uint64_t j = 0; j < babySteps_; ++j) {
    baby_.emplace(F.index(x), j);
    x = F.mul(x, tau);
  }
  giant_ = F.inv(x);
}

std::uint64_t DiscreteLog::logOfIndex(std::uint64_t index) const {
  if (index == 0) throw DomainError("discrete logarithm of zero");
  if (!log_.empty()) return log_[index];
  return log(ctx_->fromIndex(index));
}

std::uint64_t DiscreteLog::log(const ExtElement& a) const {
  const FieldCtx& F = *ctx_;
  if (F.isZero(a)) throw DomainError("discrete logarithm of zero");
  if (!log_.empty()) return log_[F.index(a)];
  ExtElement g = a;
  for (std::uint64_t i = 0; i <= babySteps_; ++i) {
    auto it = baby_.find(F.index(g));
    if (it != baby_.end()) return (i * babySteps_ + it->second) % groupOrder();
    g = F.mul(g, giant_);
  }
  throw InternalError("discrete logarithm not found");
}

ExtElement DiscreteLog::exp(std::uint64_t e) const {
  e %= groupOrder();
  if (!exp_.empty()) return ctx_->fromIndex(exp_[e]);
  return ctx_->pow(ctx_->tau(), e);
}

std::uint64_t DiscreteLog::expIndex(std::uint64_t e) const {
  e %= groupOrder();
  if (!exp_.empty()) return exp_[e];
  return ctx_->index(exp(e));
}

// ---------------------------------------------------------------------------
// Characters

UnitComplex UnitComplex::fromAngle(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw DomainError("root of unity with zero denominator");
  UnitComplex u;
  u.num = num % den;
  u.den = den;
  u.value = rootOfUnity(u.num, den);
  return u;
}

UnitComplex evalChar(const DiscreteLog& dl, const CharSpec& spec,
                     const ExtElement& a) {
  const FieldCtx& F = dl.ctx();
  if (spec.kind == CharSpec::Kind::kAdditive) {
    F.check(spec.c);
    return UnitComplex::fromAngle(F.absoluteTrace(F.mul(spec.c, a)), F.p());
  }
  requireNonzero(F, a, "multiplicative character at zero");
  const std::uint64_t m = dl.groupOrder();
  return UnitComplex::fromAngle(numtheory::mulMod(spec.b % m, dl.log(a), m), m);
}

field::Poly additiveCharOrder(const FieldCtx& ctx, const ExtElement& c) {
  return field::additiveOrder(ctx, c);
}

std::vector<std::uint32_t> traceTable(const FieldCtx& ctx, const ExtElement& a) {
  const std::uint64_t order = ctx.order();
  if (order > kTraceTableLimit) throw ResourceError("trace table too large");
  const std::uint64_t p = ctx.p();
  const auto w = ctx.traceFunctional(a);
  std::vector<std::uint32_t> t(order, 0);
  std::uint64_t block = 1;
  for (std::uint64_t wj : w) {
    for (std::uint64_t d = 1; d < p; ++d) {
      const std::uint64_t shift = d * wj % p;
      std::uint32_t* dst = t.data() + d * block;
      for (std::uint64_t i = 0; i < block; ++i) {
        std::uint64_t v = t[i] + shift;
        dst[i] = static_cast<std::uint32_t>(v >= p ? v - p : v);
      }
    }
    block *= p;
  }
  return t;
}

GaussSum gaussSum(const DiscreteLog& dl, std::uint64_t b, const ExtElement& c) {
  const FieldCtx& F = dl.ctx();
  F.check(c);
  const std::uint64_t order = F.order();
  if (order > kGaussLimit) throw ResourceError("Gauss sum field too large");
  const std::uint64_t m = dl.groupOrder();
  const std::uint64_t p = F.p();
  b %= m;
  const bool trivialAdd = F.isZero(c);
  std::vector<std::uint32_t> tr;
  if (!trivialAdd) tr = traceTable(F, c);
  const auto multRoots = rootsOfUnity(m);
  const auto addRoots = rootsOfUnity(p);

  std::complex<long double> sum = 0;
  std::vector<std::uint64_t> traceCounts(p, 0);
  ExtElement rho = F.one();
  for (std::uint64_t j = 0; j < m; ++j) {
    std::uint64_t idx = dl.hasFullTable() ? dl.expIndex(j) : F.index(rho);
    std::complex<double> v = multRoots[numtheory::mulMod(b, j, m)];
    if (!trivialAdd) {
      v *= addRoots[tr[idx]];
      ++traceCounts[tr[idx]];
    }
    sum += std::complex<long double>(v.real(), v.imag());
    if (!dl.hasFullTable()) rho = F.mul(rho, F.tau());
  }
  GaussSum g;
  g.value = {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
  if (trivialAdd) {
    g.exact = b == 0 ? static_cast<std::int64_t>(m) : 0;
  } else if (b == 0) {
    for (std::uint64_t j = 2; j < p; ++j) {
      if (traceCounts[j] != traceCounts[1]) {
        throw InternalError("trace values are not equidistributed");
      }
    }
    g.exact = static_cast<std::int64_t>(traceCounts[0]) -
              static_cast<std::int64_t>(traceCounts[1]);
  }
  return g;
}

FourierResiduals fourierResiduals(const DiscreteLog& dl, const ExtElement& c,
                                  std::uint64_t b) {
  const FieldCtx& F = dl.ctx();
  const std::uint64_t order = F.order();
  if (order > (1u << 10)) throw ResourceError("Fourier check field too large");
  const std::uint64_t m = dl.groupOrder();
  const std::uint64_t p = F.p();
  const auto multRoots = rootsOfUnity(m);
  const auto addRoots = rootsOfUnity(p);
  const auto tc = traceTable(F, c);

  // G(conj chi_j, psi_c) = G(chi_{m-j}, psi_c).
  std::vector<std::complex<double>> gAdd(m);
  for (std::uint64_t j = 0; j < m; ++j) gAdd[j] = gaussSum(dl, (m - j) % m, c).value;
  // G(chi_b, conj psi_e) = G(chi_b, psi_{-e}), indexed by e.
  std::vector<std::complex<double>> gMul(order);
  for (std::uint64_t e = 0; e < order; ++e) {
    gMul[e] = gaussSum(dl, b, F.neg(F.fromIndex(e))).value;
  }
  FourierResiduals r;
  for (std::uint64_t i = 1; i < order; ++i) {
    const std::uint64_t L = dl.logOfIndex(i);
    std::complex<long double> s = 0;
    for (std::uint64_t j = 0; j < m; ++j) {
      auto v = multRoots[numtheory::mulMod(j, L, m)] * gAdd[j];
      s += std::complex<long double>(v.real(), v.imag());
    }
    const auto psi = addRoots[tc[i]];
    r.additive = std::max(r.additive,
                          std::abs(std::complex<double>(psi) -
                                   std::complex<double>(static_cast<double>(s.real() / m),
                                                        static_cast<double>(s.imag() / m))));
    const auto ta = traceTable(F, F.fromIndex(i));  // tr(e a) for every e
    s = 0;
    for (std::uint64_t e = 0; e < order; ++e) {
      auto v = gMul[e] * addRoots[ta[e]];
      s += std::complex<long double>(v.real(), v.imag());
    }
    const auto chi = multRoots[numtheory::mulMod(b % m, L, m)];
    r.multiplicative = std::max(
        r.multiplicative,
        std::abs(chi - std::complex<double>(static_cast<double>(s.real() / order),
                                            static_cast<double>(s.imag() / order))));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Primitive indicators

int indicatorPrimitiveDD(const DiscreteLog& dl, const ExtElement& a) {
  const FieldCtx& F = dl.ctx();
  requireNonzero(F, a, "indicator of zero");
  const std::uint64_t m = dl.groupOrder();
  if (m == 1) return 1;
  const std::uint64_t L = dl.log(a);
  const auto primes = F.multFactorization().primes();
  const std::uint64_t phiM = numtheory::eulerPhi(F.multFactorization());
  // Sum over squarefree d | m of mu(d) (phi(m)/phi(d)) c_d(L), where the
  // Ramanujan sum is multiplicative: c_r(L) = r - 1 if r | L, else -1.
  i128 total = 0;
  const std::size_t w = primes.size();
  for (std::uint64_t mask = 0; mask < (1ull << w); ++mask) {
    i128 phiD = 1, ram = 1;
    int mu = 1;
    for (std::size_t i = 0; i < w; ++i) {
      if (!(mask >> i & 1)) continue;
      const std::uint64_t r = primes[i];
      phiD *= r - 1;
      ram *= (L % r == 0) ? static_cast<i128>(r - 1) : -1;
      mu = -mu;
    }
    total += mu * (static_cast<i128>(phiM) / phiD) * ram;
  }
  if (total == 0) return 0;
  if (total == static_cast<i128>(m)) return 1;
  throw InternalError("divisor-dependent primitive indicator is not 0 or 1");
}

double indicatorPrimitiveDDFloat(const DiscreteLog& dl, const ExtElement& a) {
  const FieldCtx& F = dl.ctx();
  requireNonzero(F, a, "indicator of zero");
  const std::uint64_t m = dl.groupOrder();
  if (m > kGaussLimit) throw ResourceError("character sum too large");
  if (m == 1) return 1.0;
  const std::uint64_t L = dl.log(a);
  const auto roots = rootsOfUnity(m);
  const auto primes = F.multFactorization().primes();
  long double re = 0;
  for (std::uint64_t b = 0; b < m; ++b) {
    std::uint64_t d = m / std::gcd(b, m);  // order of chi_b
    long double phiD = 1;
    int mu = 1;
    for (auto r : primes) {
      if (d % r) continue;
      if (d % (r * r) == 0) {
        mu = 0;
        break;
      }
      mu = -mu;
      phiD *= static_cast<long double>(r - 1);
    }
    if (mu == 0) continue;
    re += mu / phiD * roots[numtheory::mulMod(b, L, m)].real();
  }
  const long double phiM = static_cast<long double>(numtheory::eulerPhi(F.multFactorization()));
  return static_cast<double>(phiM / m * re);
}

DivisorFreePrimitive::DivisorFreePrimitive(const DiscreteLog& dl) : dl_(dl) {
  const std::uint64_t m = dl.groupOrder();
  if (m < 2) throw DomainError("divisor-free indicator needs q^n >= 3");
  isResidue_.assign(m, false);
  for (std::uint64_t s = 1; s < m; ++s) {
    if (std::gcd(s, m) == 1) {
      residues_.push_back(s);
      isResidue_[s] = true;
    }
  }
}

int DivisorFreePrimitive::evaluateLog(std::uint64_t logA) const {
  return isResidue_.at(logA) ? 1 : 0;
}

int DivisorFreePrimitive::evaluate(const ExtElement& a) const {
  requireNonzero(dl_.ctx(), a, "indicator of zero");
  return evaluateLog(dl_.log(a));
}

int DivisorFreePrimitive::evaluatePermuted(const ExtElement& a,
                                           std::uint64_t u) const {
  requireNonzero(dl_.ctx(), a, "indicator of zero");
  const std::uint64_t m = dl_.groupOrder();
  if (std::gcd(u % m, m) != 1) throw DomainError("permutation multiplier is not a unit");
  const std::uint64_t L = dl_.log(a);
  int hits = 0;
  for (std::uint64_t s : residues_) {
    if (numtheory::mulMod(u % m, s, m) == L) ++hits;
  }
  return hits;
}

double DivisorFreePrimitive::evaluateLiteral(const ExtElement& a) const {
  requireNonzero(dl_.ctx(), a, "indicator of zero");
  const std::uint64_t qn = dl_.ctx().order();
  if (residues_.size() * qn > kLiteralTermLimit) {
    throw ResourceError("literal double sum too large");
  }
  const std::uint64_t L = dl_.log(a);
  const auto roots = rootsOfUnity(qn);
  long double re = 0;
  for (std::uint64_t s : residues_) {
    const std::uint64_t diff = (s + qn - L) % qn;
    std::uint64_t angle = 0;
    for (std::uint64_t t = 0; t < qn; ++t) {
      re += roots[angle].real();
      angle += diff;
      if (angle >= qn) angle -= qn;
    }
  }
  return static_cast<double>(re / qn);
}

// ---------------------------------------------------------------------------
// Normal indicators

DivisorDependentNormal::DivisorDependentNormal(CtxPtr ctx) : ctx_(std::move(ctx)) {
  const FieldCtx& F = *ctx_;
  applicable_ = F.n() % F.p() != 0;
  if (!applicable_) return;
  if (F.order() > kMaxOrder) throw ResourceError("field too large for character grouping");
  const auto& fact = F.addFactorization();
  const auto& base = F.base();
  const std::size_t w = fact.entries().size();
  std::vector<field::Poly> cofactors;
  for (const auto& e : fact.entries()) {
    field::Poly cof, rem;
    polyfq::divmod(base, fact.value(), e.factor, &cof, &rem);
    cofactors.push_back(std::move(cof));
  }
  mask_.resize(F.order());
  for (std::uint64_t i = 0; i < F.order(); ++i) {
    ExtElement c = F.fromIndex(i);
    std::uint64_t mask = 0;
    for (std::size_t j = 0; j < w; ++j) {
      if (!F.isZero(field::applyLinearized(F, cofactors[j], c))) mask |= 1ull << j;
    }
    mask_[i] = mask;
  }
  phiOf_.assign(1ull << w, 1);
  for (std::uint64_t mask = 0; mask < phiOf_.size(); ++mask) {
    for (std::size_t j = 0; j < w; ++j) {
      if (!(mask >> j & 1)) continue;
      std::uint64_t qd = 1;
      for (long t = 0; t < fact.entries()[j].factor.degree(); ++t) qd *= F.q();
      phiOf_[mask] *= qd - 1;
    }
  }
  phiF_ = phiOf_.back();
}

std::optional<int> DivisorDependentNormal::evaluate(const ExtElement& a) const {
  if (!applicable_) return std::nullopt;
  const FieldCtx& F = *ctx_;
  const auto tr = traceTable(F, a);
  const std::size_t masks = phiOf_.size();
  std::vector<std::uint64_t> zeros(masks, 0), totals(masks, 0);
  for (std::uint64_t i = 0; i < F.order(); ++i) {
    ++totals[mask_[i]];
    if (tr[i] == 0) ++zeros[mask_[i]];
  }
  const std::uint64_t p = F.p();
  i128 total = 0;
  for (std::size_t mask = 0; mask < masks; ++mask) {
    const std::uint64_t nonzero = totals[mask] - zeros[mask];
    if (nonzero % (p - 1)) throw InternalError("character values are not balanced");
    // The F_p^* scaling symmetry makes every nonzero trace value equally
    // frequent, and the p-1 nontrivial roots of unity sum to -1.
    i128 s = static_cast<i128>(zeros[mask]) - static_cast<i128>(nonzero / (p - 1));
    int mu = __builtin_popcountll(mask) % 2 ? -1 : 1;
    total += mu * static_cast<i128>(phiF_ / phiOf_[mask]) * s;
  }
  if (total == 0) return 0;
  if (total == static_cast<i128>(F.order())) return 1;
  throw InternalError("divisor-dependent normal indicator is not 0 or 1");
}

std::optional<double> DivisorDependentNormal::evaluateFloat(const ExtElement& a) const {
  if (!applicable_) return std::nullopt;
  const FieldCtx& F = *ctx_;
  const auto tr = traceTable(F, a);
  const auto roots = rootsOfUnity(F.p());
  long double re = 0;
  for (std::uint64_t i = 0; i < F.order(); ++i) {
    const std::uint64_t mask = mask_[i];
    int mu = __builtin_popcountll(mask) % 2 ? -1 : 1;
    re += mu * static_cast<long double>(roots[tr[i]].real()) / phiOf_[mask];
  }
  return static_cast<double>(re * phiF_ / F.order());
}

DivisorFreeNormal::DivisorFreeNormal(const DiscreteLog& dl, const ExtElement& eta)
    : dl_(dl) {
  const FieldCtx& F = dl.ctx();
  F.check(eta);
  if (dl.groupOrder() < 2) throw DomainError("divisor-free indicator needs q^n >= 3");
  if (!field::isNormal(F, eta)) throw DomainError("reference element is not normal");
  const auto& base = F.base();
  const field::Poly xn = F.addFactorization().value();
  hits_.assign(dl.groupOrder(), 0);
  for (std::uint64_t i = 1; i < F.order(); ++i) {
    field::Poly s(F.fromIndex(i).coords);
    if (polyfq::gcd(base, s, xn).degree() != 0) continue;
    std::uint64_t L = dl.log(field::applyLinearized(F, s, eta));
    logs_.push_back(L);
    ++hits_[L];
  }
}

int DivisorFreeNormal::evaluateLog(std::uint64_t logA) const {
  const std::uint32_t h = hits_.at(logA);
  if (h > 1) throw InternalError("distinct units map to the same element");
  return static_cast<int>(h);
}

int DivisorFreeNormal::evaluate(const ExtElement& a) const {
  requireNonzero(dl_.ctx(), a, "indicator of zero");
  return evaluateLog(dl_.log(a));
}

double DivisorFreeNormal::evaluateLiteral(const ExtElement& a) const {
  requireNonzero(dl_.ctx(), a, "indicator of zero");
  const std::uint64_t qn = dl_.ctx().order();
  if (logs_.size() * qn > kLiteralTermLimit) {
    throw ResourceError("literal double sum too large");
  }
  const std::uint64_t L = dl_.log(a);
  const auto roots = rootsOfUnity(qn);
  long double re = 0;
  for (std::uint64_t Ls : logs_) {
    const std::uint64_t diff = (Ls + qn - L) % qn;
    std::uint64_t angle = 0;
    for (std::uint64_t t = 0; t < qn; ++t) {
      re += roots[angle].real();
      angle += diff;
      if (angle >= qn) angle -= qn;
    }
  }
  return static_cast<double>(re / qn);
}

// ---------------------------------------------------------------------------
// Incomplete sums

std::complex<double> bilinearCharSum(const DiscreteLog& dl, const ExtElement& c,
                                     const std::vector<ExtElement>& U,
                                     const std::vector<ExtElement>& V) {
  const FieldCtx& F = dl.ctx();
  if (F.isZero(c)) throw DomainError("additive character must be nontrivial");
  const auto roots = rootsOfUnity(F.p());
  std::complex<long double> sum = 0;
  for (const auto& u : U) {
    ExtElement cu = F.mul(c, u);
    for (const auto& v : V) {
      auto z = roots[F.absoluteTrace(F.mul(cu, v))];
      sum += std::complex<long double>(z.real(), z.imag());
    }
  }
  return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

std::complex<double> shiftedCharSum(const DiscreteLog& dl, std::uint64_t b,
                                    const std::vector<ExtElement>& U,
                                    const std::vector<ExtElement>& V) {
  const FieldCtx& F = dl.ctx();
  const std::uint64_t m = dl.groupOrder();
  if (b % m == 0) throw DomainError("multiplicative character must be nontrivial");
  std::complex<long double> sum = 0;
  for (const auto& u : U) {
    for (const auto& v : V) {
      ExtElement s = F.add(u, v);
      if (F.isZero(s)) continue;
      auto z = rootOfUnity(numtheory::mulMod(b % m, dl.log(s), m), m);
      sum += std::complex<long double>(z.real(), z.imag());
    }
  }
  return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

CharSumReport charSumBoundSuite(const DiscreteLog& dl, std::uint64_t trials,
                                std::uint64_t seed) {
  const FieldCtx& F = dl.ctx();
  const std::uint64_t order = F.order();
  if (order > kCharSumMaxOrder) throw ResourceError("field too large for direct double sums");
  const std::uint64_t m = dl.groupOrder();
  const double root = std::sqrt(static_cast<double>(order));
  CharSumReport rep;
  rep.trials = trials;
  if (m >= 2) rep.maxShiftedRatio = 0.0;
  const std::uint64_t cap = std::min<std::uint64_t>(kMaxSubsetSize, order);
  auto draw = [&](rng::Engine& eng) {
    std::uint64_t size = 1 + rng::uniformBelow(eng, cap);
    std::vector<ExtElement> S;
    for (auto idx : rng::sampleDistinct(eng, order, size)) S.push_back(F.fromIndex(idx));
    return S;
  };
  for (std::uint64_t t = 0; t < trials; ++t) {
    rng::Engine eng = rng::engineFor(seed, t);
    ExtElement c = F.fromIndex(1 + rng::uniformBelow(eng, order - 1));
    auto U = draw(eng);
    auto V = draw(eng);
    const double scale = root * std::sqrt(static_cast<double>(U.size() * V.size()));
    rep.maxProductRatio = std::max(rep.maxProductRatio,
                                   std::abs(bilinearCharSum(dl, c, U, V)) / scale);
    if (m >= 2) {
      std::uint64_t b = 1 + rng::uniformBelow(eng, m - 1);
      rep.maxShiftedRatio = std::max(*rep.maxShiftedRatio,
                                     std::abs(shiftedCharSum(dl, b, U, V)) / scale);
    }
  }
  std::complex<long double> units = 0;
  const auto roots = rootsOfUnity(F.p());
  for (std::uint64_t i = 1; i < order; ++i) {
    ExtElement u = F.fromIndex(i);
    if (!field::isNormal(F, u)) continue;
    auto z = roots[F.absoluteTrace(u)];
    units += std::complex<long double>(z.real(), z.imag());
  }
  rep.unitsRatio = static_cast<double>(std::abs(units)) / root;
  rep.productPass = rep.maxProductRatio <= 1 + kCharSumTolerance;
  rep.shiftedPass = !rep.maxShiftedRatio || *rep.maxShiftedRatio <= 1 + kCharSumTolerance;
  return rep;
}

ExpSumRecord primitiveExpSum(const DivisorFreePrimitive& ind, const DiscreteLog& dl,
                             const ExtElement& a) {
  const FieldCtx& F = dl.ctx();
  requireNonzero(F, a, "exponential sum at zero");
  const std::uint64_t L = dl.log(a);
  const std::int64_t inS = ind.evaluateLog(L);
  if (inS) throw DomainError("exponential sum needs a non-primitive element");
  const std::uint64_t qn = F.order();
  // For each residue s the sum over t in [1, q^n - 1] is q^n - 1 when s = L
  // and -1 otherwise, since 0 < |s - L| < q^n.
  const auto count = static_cast<std::int64_t>(ind.residues().size());
  ExpSumRecord r;
  r.exactValue = inS * static_cast<std::int64_t>(qn - 1) - (count - inS);
  r.phiValue = static_cast<std::uint64_t>(count);
  const double lq = std::log(static_cast<double>(qn));
  r.literatureBound = static_cast<double>(qn) * std::exp(-std::sqrt(lq));
  r.withinBound = std::fabs(static_cast<double>(r.exactValue)) <= r.literatureBound;
  return r;
}

SubsumLedger subsumLedger(const DiscreteLog& dl, const DivisorFreePrimitive& prim,
                          const DivisorFreeNormal& normal,
                          const std::vector<ExtElement>& A) {
  const FieldCtx& F = dl.ctx();
  const i128 qn = F.order();
  const i128 phi = prim.residues().size();
  const i128 Phi = normal.unitCount();
  SubsumLedger led;
  led.setSize = A.size();
  led.scale = qn * qn;
  for (const auto& a : A) {
    requireNonzero(F, a, "subsum ledger over a set containing zero");
    const std::uint64_t L = dl.log(a);
    const int P = prim.evaluateLog(L);
    const int N = normal.evaluateLog(L);
    led.primitiveNormal += static_cast<std::uint64_t>(P * N);
    const i128 a1 = qn * P - phi;  // q^n times the t1 != 0 part
    const i128 b1 = qn * N - Phi;  // q^n times the t2 != 0 part
    led.n00 += phi * Phi;
    led.n01 += a1 * Phi;
    led.n10 += phi * b1;
    led.n11 += a1 * b1;
  }
  led.sumMatches = led.n00 + led.n01 + led.n10 + led.n11 ==
                   led.scale * static_cast<i128>(led.primitiveNormal);
  return led;
}

}  // namespace pnfield::characters
