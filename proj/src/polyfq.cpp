#include "pnfield/polyfq.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "pnfield/errors.hpp"
#include "pnfield/numtheory.hpp"

namespace pnfield::polyfq {
namespace {

constexpr std::uint64_t kTableLimit = 1u << 16;
constexpr std::uint64_t kAddTableLimit = 256;
constexpr std::uint64_t kSplitSeed = 0x5eed5eed12345678ULL;

using u128 = unsigned __int128;

// Returns false if the product overflows `limit`.
bool checkedMul(u128 a, u128 b, u128 limit, u128* out) {
  if (a != 0 && b > limit / a) return false;
  *out = a * b;
  return *out <= limit;
}

std::uint64_t checkedPow(std::uint64_t base, std::uint64_t e, u128 limit,
                         const char* what) {
  u128 r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (!checkedMul(r, base, limit, &r)) throw ResourceError(what);
  }
  return static_cast<std::uint64_t>(r);
}

Poly xPoly() { return Poly({0, 1}); }

Poly randomBelow(std::mt19937_64& rng, const BaseField& F, long degree) {
  std::vector<Coeff> c(static_cast<std::size_t>(degree));
  for (auto& x : c) x = rng() % F.q();
  return Poly(std::move(c));
}

void equalDegreeSplit(const BaseField& F, const Poly& g, long d,
                      std::mt19937_64& rng, std::vector<Poly>& out) {
  if (g.degree() == d) {
    out.push_back(g);
    return;
  }
  const std::uint64_t q = F.q();
  const Poly one = Poly::constant(1);
  for (;;) {
    Poly a = randomBelow(rng, F, g.degree());
    if (a.degree() < 1) continue;
    Poly b;
    if (q % 2 == 1) {
      Poly t = a, acc = a;
      for (long j = 1; j < d; ++j) {
        t = powmod(F, t, q, g);
        acc = mulmod(F, acc, t, g);
      }
      b = sub(F, powmod(F, acc, (q - 1) / 2, g), one);
    } else {
      // Absolute trace map a + a^2 + ... + a^{2^{kd-1}} mod g.
      Poly t = a;
      b = a;
      for (long j = 1; j < static_cast<long>(F.k()) * d; ++j) {
        t = mulmod(F, t, t, g);
        b = add(F, b, t);
      }
    }
    if (b.isZero()) continue;
    Poly h = gcd(F, b, g);
    if (h.degree() > 0 && h.degree() < g.degree()) {
      Poly rest, r;
      divmod(F, g, h, &rest, &r);
      equalDegreeSplit(F, h, d, rng, out);
      equalDegreeSplit(F, rest, d, rng, out);
      return;
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// BaseField

std::shared_ptr<const BaseField> BaseField::prime(std::uint64_t p) {
  if (!numtheory::isPrime(p)) throw DomainError("characteristic must be prime");
  auto F = std::shared_ptr<BaseField>(new BaseField());
  F->p_ = p;
  F->k_ = 1;
  F->q_ = p;
  F->modulus_ = {0, 1};
  return F;
}

std::shared_ptr<const BaseField> BaseField::extension(
    std::uint64_t p, std::vector<Coeff> modulus) {
  auto Fp = prime(p);
  Poly f(modulus);
  if (f.degree() < 1 || !f.isMonic()) {
    throw ValidationError("base modulus must be monic of positive degree");
  }
  for (Coeff c : f.coeffs()) {
    if (c >= p) throw ValidationError("base modulus coefficient exceeds p");
  }
  if (f.degree() == 1) return Fp;
  if (!isIrreducible(*Fp, f)) throw ValidationError("base modulus is reducible");
  auto F = std::shared_ptr<BaseField>(new BaseField());
  F->p_ = p;
  F->k_ = static_cast<unsigned>(f.degree());
  F->q_ = checkedPow(p, F->k_, (u128(1) << 63) - 1, "base field too large");
  F->modulus_ = f.coeffs();
  F->buildTables();
  return F;
}

void BaseField::buildTables() {
  if (q_ <= kAddTableLimit && p_ != 2) {
    addTable_.resize(q_ * q_);
    for (Coeff a = 0; a < q_; ++a) {
      auto da = digits(a);
      for (Coeff b = 0; b < q_; ++b) {
        auto db = digits(b);
        std::vector<Coeff> s(k_);
        for (unsigned i = 0; i < k_; ++i) s[i] = (da[i] + db[i]) % p_;
        addTable_[a * q_ + b] = static_cast<std::uint32_t>(fromDigits(s));
      }
    }
  }
  if (q_ > kTableLimit) return;
  auto primes = numtheory::factorize(q_ - 1).primes();
  auto slowPow = [&](Coeff a, std::uint64_t e) {
    Coeff r = 1;
    while (e) {
      if (e & 1) r = slowMul(r, a);
      a = slowMul(a, a);
      e >>= 1;
    }
    return r;
  };
  Coeff g = 2;
  for (;; ++g) {
    bool ok = true;
    for (auto r : primes) {
      if (slowPow(g, (q_ - 1) / r) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) break;
  }
  exp_.resize(2 * (q_ - 1));
  log_.assign(q_, 0);
  Coeff x = 1;
  for (std::uint64_t i = 0; i < q_ - 1; ++i) {
    exp_[i] = exp_[i + q_ - 1] = static_cast<std::uint32_t>(x);
    log_[x] = static_cast<std::uint32_t>(i);
    x = slowMul(x, g);
  }
}

std::vector<Coeff> BaseField::digits(Coeff a) const {
  std::vector<Coeff> d(k_);
  for (unsigned i = 0; i < k_; ++i) {
    d[i] = a % p_;
    a /= p_;
  }
  return d;
}

Coeff BaseField::fromDigits(const std::vector<Coeff>& d) const {
  Coeff a = 0;
  for (std::size_t i = d.size(); i-- > 0;) a = a * p_ + d[i] % p_;
  return a;
}

Coeff BaseField::add(Coeff a, Coeff b) const {
  if (k_ == 1) {
    Coeff s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  if (p_ == 2) return a ^ b;
  if (!addTable_.empty()) return addTable_[a * q_ + b];
  Coeff r = 0, scale = 1;
  for (unsigned i = 0; i < k_; ++i) {
    Coeff s = a % p_ + b % p_;
    if (s >= p_) s -= p_;
    r += s * scale;
    scale *= p_;
    a /= p_;
    b /= p_;
  }
  return r;
}

Coeff BaseField::neg(Coeff a) const {
  if (k_ == 1) return a == 0 ? 0 : p_ - a;
  if (p_ == 2) return a;
  Coeff r = 0, scale = 1;
  for (unsigned i = 0; i < k_; ++i) {
    Coeff d = a % p_;
    r += (d == 0 ? 0 : p_ - d) * scale;
    scale *= p_;
    a /= p_;
  }
  return r;
}

Coeff BaseField::sub(Coeff a, Coeff b) const {
  if (k_ == 1) return a >= b ? a - b : a + (p_ - b);
  return add(a, neg(b));
}

Coeff BaseField::slowMul(Coeff a, Coeff b) const {
  auto da = digits(a), db = digits(b);
  std::vector<Coeff> prod(2 * k_ - 1, 0);
  for (unsigned i = 0; i < k_; ++i) {
    if (da[i] == 0) continue;
    for (unsigned j = 0; j < k_; ++j) {
      prod[i + j] = (prod[i + j] + numtheory::mulMod(da[i], db[j], p_)) % p_;
    }
  }
  for (std::size_t i = prod.size(); i-- > k_;) {
    Coeff c = prod[i];
    if (c == 0) continue;
    for (unsigned j = 0; j < k_; ++j) {
      Coeff t = numtheory::mulMod(c, modulus_[j], p_);
      std::size_t idx = i - k_ + j;
      prod[idx] = (prod[idx] + p_ - t) % p_;
    }
    prod[i] = 0;
  }
  prod.resize(k_);
  return fromDigits(prod);
}

Coeff BaseField::mul(Coeff a, Coeff b) const {
  if (k_ == 1) {
    return p_ < (1ull << 32) ? a * b % p_ : numtheory::mulMod(a, b, p_);
  }
  if (a == 0 || b == 0) return 0;
  if (!exp_.empty()) return exp_[log_[a] + log_[b]];
  return slowMul(a, b);
}

Coeff BaseField::inv(Coeff a) const {
  if (a == 0) throw DomainError("inverse of zero");
  if (k_ == 1) return numtheory::powMod(a, p_ - 2, p_);
  if (!exp_.empty()) return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  return pow(a, q_ - 2);
}

Coeff BaseField::pow(Coeff a, std::uint64_t e) const {
  Coeff r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t BaseField::traceToPrime(Coeff a) const {
  Coeff t = a, s = a;
  for (unsigned j = 1; j < k_; ++j) {
    t = pow(t, p_);
    s = add(s, t);
  }
  if (s >= p_) throw InternalError("trace left the prime field");
  return s;
}

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(std::vector<Coeff> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Poly Poly::monomial(unsigned degree, Coeff c) {
  std::vector<Coeff> v(degree + 1, 0);
  v[degree] = c;
  return Poly(std::move(v));
}

bool operator<(const Poly& a, const Poly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return a.coeffs_ < b.coeffs_;
}

Poly add(const BaseField& F, const Poly& a, const Poly& b) {
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  std::vector<Coeff> r(std::max(x.size(), y.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] = F.add(i < x.size() ? x[i] : 0, i < y.size() ? y[i] : 0);
  }
  return Poly(std::move(r));
}

Poly sub(const BaseField& F, const Poly& a, const Poly& b) {
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  std::vector<Coeff> r(std::max(x.size(), y.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] = F.sub(i < x.size() ? x[i] : 0, i < y.size() ? y[i] : 0);
  }
  return Poly(std::move(r));
}

Poly mul(const BaseField& F, const Poly& a, const Poly& b) {
  if (a.isZero() || b.isZero()) return Poly();
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  std::vector<Coeff> r(x.size() + y.size() - 1, 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) {
      r[i + j] = F.add(r[i + j], F.mul(x[i], y[j]));
    }
  }
  return Poly(std::move(r));
}

Poly scale(const BaseField& F, const Poly& a, Coeff c) {
  std::vector<Coeff> r(a.coeffs());
  for (auto& v : r) v = F.mul(v, c);
  return Poly(std::move(r));
}

Poly monic(const BaseField& F, const Poly& a) {
  if (a.isZero() || a.isMonic()) return a;
  return scale(F, a, F.inv(a.leading()));
}

void divmod(const BaseField& F, const Poly& a, const Poly& b, Poly* quot,
            Poly* rem) {
  if (b.isZero()) throw DomainError("polynomial division by zero");
  std::vector<Coeff> r(a.coeffs());
  const auto& d = b.coeffs();
  const long db = b.degree();
  const Coeff lcInv = F.inv(b.leading());
  long dr = a.degree();
  std::vector<Coeff> qv(dr >= db ? dr - db + 1 : 0, 0);
  for (; dr >= db; --dr) {
    Coeff c = r[dr];
    if (c == 0) continue;
    Coeff t = F.mul(c, lcInv);
    qv[dr - db] = t;
    for (long j = 0; j <= db; ++j) {
      r[dr - db + j] = F.sub(r[dr - db + j], F.mul(t, d[j]));
    }
  }
  if (quot) *quot = Poly(std::move(qv));
  if (rem) *rem = Poly(std::move(r));
}

Poly mod(const BaseField& F, const Poly& a, const Poly& b) {
  if (a.degree() < b.degree()) {
    if (b.isZero()) throw DomainError("polynomial division by zero");
    return a;
  }
  Poly r;
  divmod(F, a, b, nullptr, &r);
  return r;
}

Poly mulmod(const BaseField& F, const Poly& a, const Poly& b, const Poly& m) {
  return mod(F, mul(F, a, b), m);
}

Poly powmod(const BaseField& F, const Poly& base, std::uint64_t e,
            const Poly& m) {
  Poly r = mod(F, Poly::constant(1), m);
  Poly b = mod(F, base, m);
  while (e) {
    if (e & 1) r = mulmod(F, r, b, m);
    e >>= 1;
    if (e) b = mulmod(F, b, b, m);
  }
  return r;
}

Poly gcd(const BaseField& F, const Poly& a, const Poly& b) {
  if (a.isZero() && b.isZero()) throw DomainError("gcd of two zero polynomials");
  Poly x = a, y = b;
  while (!y.isZero()) {
    Poly r = mod(F, x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return monic(F, x);
}

Coeff evaluate(const BaseField& F, const Poly& a, Coeff x) {
  Coeff r = 0;
  const auto& c = a.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) r = F.add(F.mul(r, x), c[i]);
  return r;
}

Poly derivative(const BaseField& F, const Poly& a) {
  const auto& c = a.coeffs();
  if (c.size() < 2) return Poly();
  std::vector<Coeff> r(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); ++i) {
    r[i - 1] = F.mul(c[i], F.embed(i % F.p()));
  }
  return Poly(std::move(r));
}

Poly xnMinus1(const BaseField& F, unsigned n) {
  std::vector<Coeff> c(n + 1, 0);
  c[0] = F.neg(1);
  c[n] = F.add(c[n], 1);
  return Poly(std::move(c));
}

bool isIrreducible(const BaseField& F, const Poly& f) {
  const long d = f.degree();
  if (d < 1) return false;
  if (d == 1) return true;
  const Poly x = xPoly();
  std::vector<Poly> frob(d + 1);  // frob[j] = x^{q^j} mod f
  frob[0] = mod(F, x, f);
  for (long j = 1; j <= d; ++j) frob[j] = powmod(F, frob[j - 1], F.q(), f);
  if (frob[d] != frob[0]) return false;
  for (auto r : numtheory::factorize(static_cast<std::uint64_t>(d)).primes()) {
    Poly g = gcd(F, sub(F, frob[d / r], x), f);
    if (g.degree() != 0) return false;
  }
  return true;
}

Poly smallestIrreducible(const BaseField& F, unsigned degree) {
  if (degree == 0) throw DomainError("irreducible polynomials have degree >= 1");
  const std::uint64_t q = F.q();
  // digits[0] is a_0, the most significant position in the ordering.
  std::vector<Coeff> a(degree, 0);
  if (degree >= 2) a[0] = 1;  // a_0 = 0 gives a multiple of x
  for (;;) {
    std::vector<Coeff> c(a);
    c.push_back(1);
    Poly f(std::move(c));
    if (isIrreducible(F, f)) return f;
    std::size_t i = degree;
    while (i-- > 0) {
      if (++a[i] < q) break;
      a[i] = 0;
      if (i == 0) throw InternalError("no irreducible polynomial found");
    }
  }
}

// ---------------------------------------------------------------------------
// Factorizations

PolyFactorization::PolyFactorization(std::uint64_t q,
                                     std::vector<PolyFactor> entries,
                                     Poly value)
    : q_(q), entries_(std::move(entries)), value_(std::move(value)) {}

bool PolyFactorization::isValid(const BaseField& F) const {
  if (F.q() != q_) return false;
  Poly prod = Poly::constant(1);
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (e.exponent == 0 || !e.factor.isMonic()) return false;
    if (i > 0 && !(entries_[i - 1].factor < e.factor)) return false;
    if (!isIrreducible(F, e.factor)) return false;
    for (unsigned j = 0; j < e.exponent; ++j) prod = mul(F, prod, e.factor);
  }
  return prod == value_;
}

PolyFactorization factorXnMinus1(const BaseField& F, unsigned n) {
  if (n == 0) throw DomainError("x^n - 1 needs n >= 1");
  unsigned m = n, pv = 1;
  while (m % F.p() == 0) {
    m /= static_cast<unsigned>(F.p());
    pv *= static_cast<unsigned>(F.p());
  }
  std::vector<Poly> factors;
  Poly rem = xnMinus1(F, m);
  const Poly x = xPoly();
  std::mt19937_64 rng(kSplitSeed);
  Poly h = mod(F, x, rem);
  for (long i = 1; rem.degree() >= 2 * i; ++i) {
    h = powmod(F, h, F.q(), rem);
    Poly g = gcd(F, sub(F, h, x), rem);
    if (g.degree() > 0) {
      equalDegreeSplit(F, g, i, rng, factors);
      Poly quot, r;
      divmod(F, rem, g, &quot, &r);
      rem = std::move(quot);
      h = mod(F, h, rem);
    }
  }
  if (rem.degree() > 0) factors.push_back(monic(F, rem));
  std::sort(factors.begin(), factors.end());
  std::vector<PolyFactor> entries;
  entries.reserve(factors.size());
  for (auto& f : factors) entries.push_back({std::move(f), pv});
  return PolyFactorization(F.q(), std::move(entries), xnMinus1(F, n));
}

std::vector<PolyFactorization> monicDivisors(const BaseField& F,
                                             const PolyFactorization& f) {
  const auto& e = f.entries();
  std::vector<unsigned> exps(e.size(), 0);
  std::vector<PolyFactorization> out;
  for (;;) {
    std::vector<PolyFactor> entries;
    Poly value = Poly::constant(1);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (exps[i] == 0) continue;
      entries.push_back({e[i].factor, exps[i]});
      for (unsigned j = 0; j < exps[i]; ++j) value = mul(F, value, e[i].factor);
    }
    out.emplace_back(f.q(), std::move(entries), std::move(value));
    std::size_t i = 0;
    for (; i < e.size(); ++i) {
      if (++exps[i] <= e[i].exponent) break;
      exps[i] = 0;
    }
    if (i == e.size()) break;
  }
  return out;
}

CyclotomicProfile cyclotomicFactorCounts(std::uint64_t q, std::uint64_t n) {
  std::uint64_t p = 0;
  if (!numtheory::isPrimePower(q, &p)) throw DomainError("q must be a prime power");
  if (n == 0) throw DomainError("x^n - 1 needs n >= 1");
  CyclotomicProfile prof;
  std::uint64_t m = n;
  while (m % p == 0) {
    m /= p;
    ++prof.pExponent;
  }
  prof.m = m;
  for (std::uint64_t d : numtheory::divisors(m)) {
    std::uint64_t ord = d == 1 ? 1 : numtheory::multiplicativeOrder(q % d, d);
    std::uint64_t count = numtheory::eulerPhi(d) / ord;
    prof.rows.push_back({d, ord, count});
    prof.omega += count;
  }
  return prof;
}

std::uint64_t phiXnMinus1(std::uint64_t q, std::uint64_t n) {
  const u128 limit = (u128(1) << 63) - 1;
  checkedPow(q, n, limit, "q^n exceeds 63 bits");
  auto prof = cyclotomicFactorCounts(q, n);
  u128 r = checkedPow(q, n - prof.m, limit, "q^n exceeds 63 bits");
  for (const auto& row : prof.rows) {
    u128 f = checkedPow(q, row.orderOfQ, limit, "q^n exceeds 63 bits") - 1;
    for (std::uint64_t j = 0; j < row.count; ++j) {
      if (!checkedMul(r, f, limit, &r)) throw ResourceError("Phi overflow");
    }
  }
  return static_cast<std::uint64_t>(r);
}

std::uint64_t polyPhi(const PolyFactorization& f) {
  const u128 limit = std::numeric_limits<std::uint64_t>::max();
  u128 r = 1;
  for (const auto& e : f.entries()) {
    auto d = static_cast<std::uint64_t>(e.factor.degree());
    u128 qd = checkedPow(f.q(), d, limit, "polyPhi overflow");
    if (!checkedMul(r, qd - 1, limit, &r)) throw ResourceError("polyPhi overflow");
    for (unsigned j = 1; j < e.exponent; ++j) {
      if (!checkedMul(r, qd, limit, &r)) throw ResourceError("polyPhi overflow");
    }
  }
  return static_cast<std::uint64_t>(r);
}

int polyMobius(const PolyFactorization& f) {
  for (const auto& e : f.entries()) {
    if (e.exponent > 1) return 0;
  }
  return f.entries().size() % 2 ? -1 : 1;
}

std::uint64_t polySigma(const PolyFactorization& f) {
  const u128 limit = std::numeric_limits<std::uint64_t>::max();
  u128 r = 1;
  for (const auto& e : f.entries()) {
    auto d = static_cast<std::uint64_t>(e.factor.degree());
    u128 qd = checkedPow(f.q(), d, limit, "polySigma overflow");
    u128 term = 0, pw = 1;
    for (unsigned j = 0; j <= e.exponent; ++j) {
      term += pw;
      if (term > limit) throw ResourceError("polySigma overflow");
      if (j < e.exponent && !checkedMul(pw, qd, limit, &pw)) {
        throw ResourceError("polySigma overflow");
      }
    }
    if (!checkedMul(r, term, limit, &r)) throw ResourceError("polySigma overflow");
  }
  return static_cast<std::uint64_t>(r);
}

SigmaPhiReport sigmaPhiIdentityCheck(const BaseField& F, unsigned n) {
  auto fact = factorXnMinus1(F, n);
  SigmaPhiReport r;
  r.q = F.q();
  r.n = n;
  r.sigma = polySigma(fact);
  r.phi = polyPhi(fact);
  const long double q = static_cast<long double>(F.q());
  const long double qn = std::pow(q, static_cast<long double>(n));
  r.literalLhs = (r.sigma / (qn - 1)) * (r.phi / (qn - 1));
  r.naturalLhs = (r.sigma / qn) * (r.phi / qn);
  r.literalRhs = 1;
  r.naturalRhs = 1;
  for (const auto& e : fact.entries()) {
    long double deg = static_cast<long double>(e.factor.degree());
    r.literalRhs *= 1 - std::pow(q, -deg);
    r.naturalRhs *= 1 - std::pow(q, -deg * (e.exponent + 1));
  }
  auto close = [](long double a, long double b) {
    return std::fabs(a - b) <= 1e-12L * std::max<long double>(1, std::fabs(b));
  };
  r.literalHolds = close(r.literalLhs, r.literalRhs);
  r.naturalHolds = close(r.naturalLhs, r.naturalRhs);
  return r;
}

}  // namespace pnfield::polyfq
