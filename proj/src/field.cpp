#include "pnfield/field.hpp"

#include <utility>

#include "pnfield/errors.hpp"

namespace pnfield::field {
namespace {

constexpr std::uint64_t kBaseTraceTableLimit = 1u << 16;

thread_local std::uint64_t tMultiplications = 0;

std::uint64_t checkedOrder(std::uint64_t p, unsigned kn) {
  unsigned __int128 r = 1;
  for (unsigned i = 0; i < kn; ++i) {
    r *= p;
    if (r > kMaxFieldOrder) throw ResourceError("field order exceeds 2^63 - 1");
  }
  return static_cast<std::uint64_t>(r);
}

// Builds the cofactor of an exponent vector against x^n - 1.
Poly productOf(const polyfq::BaseField& F,
               const polyfq::PolyFactorization& fact,
               const std::vector<unsigned>& exps) {
  Poly r = Poly::constant(1);
  const auto& e = fact.entries();
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (unsigned j = 0; j < exps[i]; ++j) r = polyfq::mul(F, r, e[i].factor);
  }
  return r;
}

}  // namespace

std::uint64_t multiplicationCount() { return tMultiplications; }

CtxPtr buildField(std::uint64_t p, unsigned k, unsigned n,
                  std::optional<Poly> baseModulus,
                  std::optional<Poly> extModulus) {
  if (!numtheory::isPrime(p)) throw DomainError("p must be prime");
  if (k == 0 || n == 0) throw DomainError("k and n must be positive");
  auto ctx = std::shared_ptr<FieldCtx>(new FieldCtx());
  ctx->p_ = p;
  ctx->k_ = k;
  ctx->n_ = n;
  ctx->order_ = checkedOrder(p, k * n);
  ctx->q_ = checkedOrder(p, k);

  auto Fp = polyfq::BaseField::prime(p);
  if (baseModulus) {
    if (baseModulus->degree() != static_cast<long>(k)) {
      throw ValidationError("base modulus has the wrong degree");
    }
    ctx->baseModulus_ = *baseModulus;
  } else {
    ctx->baseModulus_ = polyfq::smallestIrreducible(*Fp, k);
  }
  if (k == 1) {
    Poly f = ctx->baseModulus_;
    if (!f.isMonic() || f.coeff(0) >= p) {
      throw ValidationError("base modulus must be monic over F_p");
    }
    ctx->base_ = Fp;
  } else {
    ctx->base_ = polyfq::BaseField::extension(p, ctx->baseModulus_.coeffs());
  }
  const auto& F = *ctx->base_;

  if (extModulus) {
    const Poly& f = *extModulus;
    if (f.degree() != static_cast<long>(n) || !f.isMonic()) {
      throw ValidationError("extension modulus must be monic of degree n");
    }
    for (Coeff c : f.coeffs()) {
      if (c >= ctx->q_) throw ValidationError("extension modulus coefficient out of range");
    }
    if (!polyfq::isIrreducible(F, f)) {
      throw ValidationError("extension modulus is reducible");
    }
    ctx->extModulus_ = f;
  } else {
    ctx->extModulus_ = polyfq::smallestIrreducible(F, n);
  }

  if (ctx->order_ - 1 >= 2) {
    ctx->multFactorization_ = numtheory::factorize(ctx->order_ - 1);
  }
  ctx->addFactorization_ = polyfq::factorXnMinus1(F, n);

  const Poly& f = ctx->extModulus_;
  auto toElement = [&](const Poly& a) {
    ExtElement e{std::vector<Coeff>(n, 0)};
    for (unsigned i = 0; i < n; ++i) e.coords[i] = a.coeff(i);
    return e;
  };
  Poly xq = polyfq::powmod(F, Poly({0, 1}), ctx->q_, f);
  Poly col = polyfq::mod(F, Poly::constant(1), f);
  for (unsigned i = 0; i < n; ++i) {
    ctx->frobCols_.push_back(toElement(col));
    col = polyfq::mulmod(F, col, xq, f);
  }

  if (ctx->q_ <= kBaseTraceTableLimit) {
    ctx->baseTraceTable_.resize(ctx->q_);
    for (Coeff c = 0; c < ctx->q_; ++c) {
      ctx->baseTraceTable_[c] = F.traceToPrime(c);
    }
  }
  ctx->traceOfBasis_.resize(n);
  ExtElement basis = ctx->one();
  for (unsigned i = 0; i < n; ++i) {
    ExtElement conj = basis, sum = ctx->zero();
    for (unsigned j = 0; j < n; ++j) {
      sum = ctx->add(sum, conj);
      conj = ctx->frobenius1(conj);
    }
    for (unsigned j = 1; j < n; ++j) {
      if (sum.coords[j] != 0) throw InternalError("relative trace left F_q");
    }
    ctx->traceOfBasis_[i] = sum.coords[0];
    basis = ctx->mul(basis, ctx->generator());
  }

  ctx->tau_ = findReferencePrimitiveNormal(*ctx);
  return ctx;
}

const ExtElement& FieldCtx::tau() const {
  if (!tau_) throw InternalError("field has no reference primitive normal element");
  return *tau_;
}

ExtElement FieldCtx::one() const { return fromBase(1); }

ExtElement FieldCtx::generator() const {
  if (n_ == 1) {
    // x reduces to -f_0 modulo a linear modulus.
    return fromBase(base_->neg(extModulus_.coeff(0)));
  }
  ExtElement e = zero();
  e.coords[1] = 1;
  return e;
}

ExtElement FieldCtx::fromBase(Coeff c) const {
  ExtElement e = zero();
  e.coords[0] = c;
  return e;
}

ExtElement FieldCtx::fromIndex(std::uint64_t index) const {
  if (index >= order_) throw DomainError("element index out of range");
  ExtElement e = zero();
  for (unsigned i = 0; i < n_; ++i) {
    e.coords[i] = index % q_;
    index /= q_;
  }
  return e;
}

std::uint64_t FieldCtx::index(const ExtElement& a) const {
  std::uint64_t r = 0;
  for (unsigned i = n_; i-- > 0;) r = r * q_ + a.coords[i];
  return r;
}

bool FieldCtx::isZero(const ExtElement& a) const {
  for (Coeff c : a.coords) {
    if (c) return false;
  }
  return true;
}

void FieldCtx::check(const ExtElement& a) const {
  if (a.coords.size() != n_) throw ValidationError("element has the wrong length");
  for (Coeff c : a.coords) {
    if (c >= q_) throw ValidationError("element coordinate out of range");
  }
}

ExtElement FieldCtx::add(const ExtElement& a, const ExtElement& b) const {
  ExtElement r{std::vector<Coeff>(n_)};
  for (unsigned i = 0; i < n_; ++i) r.coords[i] = base_->add(a.coords[i], b.coords[i]);
  return r;
}

ExtElement FieldCtx::sub(const ExtElement& a, const ExtElement& b) const {
  ExtElement r{std::vector<Coeff>(n_)};
  for (unsigned i = 0; i < n_; ++i) r.coords[i] = base_->sub(a.coords[i], b.coords[i]);
  return r;
}

ExtElement FieldCtx::neg(const ExtElement& a) const {
  ExtElement r{std::vector<Coeff>(n_)};
  for (unsigned i = 0; i < n_; ++i) r.coords[i] = base_->neg(a.coords[i]);
  return r;
}

ExtElement FieldCtx::scale(const ExtElement& a, Coeff c) const {
  ExtElement r{std::vector<Coeff>(n_)};
  for (unsigned i = 0; i < n_; ++i) r.coords[i] = base_->mul(a.coords[i], c);
  return r;
}

ExtElement FieldCtx::mul(const ExtElement& a, const ExtElement& b) const {
  ++tMultiplications;
  const auto& F = *base_;
  if (n_ == 1) return ExtElement{{F.mul(a.coords[0], b.coords[0])}};
  std::vector<Coeff> prod(2 * n_ - 1, 0);
  for (unsigned i = 0; i < n_; ++i) {
    Coeff ai = a.coords[i];
    if (ai == 0) continue;
    for (unsigned j = 0; j < n_; ++j) {
      if (b.coords[j] == 0) continue;
      prod[i + j] = F.add(prod[i + j], F.mul(ai, b.coords[j]));
    }
  }
  const auto& f = extModulus_.coeffs();
  for (std::size_t i = prod.size(); i-- > n_;) {
    Coeff c = prod[i];
    if (c == 0) continue;
    for (unsigned j = 0; j < n_; ++j) {
      if (f[j] == 0) continue;
      std::size_t idx = i - n_ + j;
      prod[idx] = F.sub(prod[idx], F.mul(c, f[j]));
    }
  }
  prod.resize(n_);
  return ExtElement{std::move(prod)};
}

ExtElement FieldCtx::pow(const ExtElement& a, std::uint64_t e) const {
  ExtElement r = one(), b = a;
  while (e) {
    if (e & 1) r = mul(r, b);
    e >>= 1;
    if (e) b = mul(b, b);
  }
  return r;
}

ExtElement FieldCtx::inv(const ExtElement& a) const {
  if (isZero(a)) throw DomainError("inverse of zero");
  return pow(a, order_ - 2);
}

ExtElement FieldCtx::frobenius1(const ExtElement& a) const {
  ExtElement r = zero();
  for (unsigned i = 0; i < n_; ++i) {
    Coeff c = a.coords[i];
    if (c == 0) continue;
    const auto& col = frobCols_[i].coords;
    for (unsigned j = 0; j < n_; ++j) {
      if (col[j]) r.coords[j] = base_->add(r.coords[j], base_->mul(c, col[j]));
    }
  }
  return r;
}

Coeff FieldCtx::relativeTrace(const ExtElement& a) const {
  Coeff s = 0;
  for (unsigned i = 0; i < n_; ++i) {
    if (a.coords[i]) s = base_->add(s, base_->mul(a.coords[i], traceOfBasis_[i]));
  }
  return s;
}

std::uint64_t FieldCtx::baseTrace(Coeff c) const {
  return baseTraceTable_.empty() ? base_->traceToPrime(c) : baseTraceTable_[c];
}

std::uint64_t FieldCtx::absoluteTrace(const ExtElement& a) const {
  return baseTrace(relativeTrace(a));
}

std::vector<std::uint64_t> FieldCtx::traceFunctional(const ExtElement& a) const {
  std::vector<std::uint64_t> w(static_cast<std::size_t>(n_) * k_);
  std::uint64_t digitValue = 1;
  for (unsigned j = 0; j < k_; ++j) {
    ExtElement e = zero();
    for (unsigned i = 0; i < n_; ++i) {
      e.coords[i] = digitValue;
      w[i * k_ + j] = absoluteTrace(mul(e, a));
      e.coords[i] = 0;
    }
    digitValue *= p_;
  }
  return w;
}

ExtElement frobenius(const FieldCtx& ctx, const ExtElement& a, std::uint64_t i) {
  ExtElement r = a;
  for (std::uint64_t j = 0; j < i % ctx.n(); ++j) r = ctx.frobenius1(r);
  return r;
}

std::uint64_t trace(const FieldCtx& ctx, const ExtElement& a) {
  return ctx.absoluteTrace(a);
}

std::uint64_t norm(const FieldCtx& ctx, const ExtElement& a) {
  if (ctx.isZero(a)) return 0;
  ExtElement r = ctx.pow(a, (ctx.order() - 1) / (ctx.p() - 1));
  for (unsigned i = 1; i < ctx.n(); ++i) {
    if (r.coords[i]) throw InternalError("norm left the prime field");
  }
  if (r.coords[0] >= ctx.p()) throw InternalError("norm left the prime field");
  return r.coords[0];
}

ExtElement applyLinearized(const FieldCtx& ctx, const Poly& r,
                           const ExtElement& a) {
  ExtElement result = ctx.zero();
  if (r.isZero()) return result;
  const unsigned n = ctx.n();
  std::vector<ExtElement> conj;
  conj.reserve(n);
  conj.push_back(a);
  const auto& F = ctx.base();
  const auto& c = r.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    std::size_t j = i % n;
    if (j == conj.size()) conj.push_back(ctx.frobenius1(conj.back()));
    if (c[i] == 0) continue;
    const auto& v = conj[j].coords;
    for (unsigned t = 0; t < n; ++t) {
      result.coords[t] = F.add(result.coords[t], F.mul(c[i], v[t]));
    }
  }
  return result;
}

std::uint64_t multiplicativeOrder(const FieldCtx& ctx, const ExtElement& a) {
  if (ctx.isZero(a)) throw DomainError("multiplicative order of zero");
  std::uint64_t order = ctx.order() - 1;
  const ExtElement one = ctx.one();
  for (const auto& e : ctx.multFactorization().entries()) {
    for (std::uint32_t j = 0; j < e.exponent; ++j) {
      if (ctx.pow(a, order / e.prime) != one) break;
      order /= e.prime;
    }
  }
  return order;
}

std::vector<unsigned> additiveOrderExponents(const FieldCtx& ctx,
                                             const ExtElement& a) {
  const auto& fact = ctx.addFactorization();
  std::vector<unsigned> exps;
  for (const auto& e : fact.entries()) exps.push_back(e.exponent);
  for (std::size_t i = 0; i < exps.size(); ++i) {
    while (exps[i] > 0) {
      --exps[i];
      Poly d = productOf(ctx.base(), fact, exps);
      if (!ctx.isZero(applyLinearized(ctx, d, a))) {
        ++exps[i];
        break;
      }
    }
  }
  return exps;
}

Poly additiveOrder(const FieldCtx& ctx, const ExtElement& a) {
  return productOf(ctx.base(), ctx.addFactorization(),
                   additiveOrderExponents(ctx, a));
}

bool isPrimitive(const FieldCtx& ctx, const ExtElement& a) {
  if (ctx.isZero(a)) throw DomainError("zero is never primitive");
  const std::uint64_t m = ctx.order() - 1;
  const ExtElement one = ctx.one();
  for (auto r : ctx.multFactorization().primes()) {
    if (ctx.pow(a, m / r) == one) return false;
  }
  return m > 1 || a == one;
}

bool isNormal(const FieldCtx& ctx, const ExtElement& a, NormalTest method) {
  if (ctx.isZero(a)) return false;
  const auto& F = ctx.base();
  const unsigned n = ctx.n();
  if (method == NormalTest::kDivisor) {
    const auto& fact = ctx.addFactorization();
    const Poly xn = fact.value();
    for (const auto& e : fact.entries()) {
      Poly cof, rem;
      polyfq::divmod(F, xn, e.factor, &cof, &rem);
      if (ctx.isZero(applyLinearized(ctx, cof, a))) return false;
    }
    return true;
  }
  std::vector<std::vector<Coeff>> m;
  ExtElement c = a;
  for (unsigned i = 0; i < n; ++i) {
    m.push_back(c.coords);
    c = ctx.frobenius1(c);
  }
  unsigned rank = 0;
  for (unsigned col = 0; col < n && rank < n; ++col) {
    unsigned piv = rank;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) continue;
    std::swap(m[piv], m[rank]);
    Coeff inv = F.inv(m[rank][col]);
    for (unsigned r = rank + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      Coeff t = F.mul(m[r][col], inv);
      for (unsigned j = col; j < n; ++j) {
        m[r][j] = F.sub(m[r][j], F.mul(t, m[rank][j]));
      }
    }
    ++rank;
  }
  return rank == n;
}

bool isPrimitiveNormal(const FieldCtx& ctx, const ExtElement& a) {
  if (ctx.isZero(a)) return false;
  return isNormal(ctx, a) && isPrimitive(ctx, a);
}

ExtElement findReferencePrimitiveNormal(const FieldCtx& ctx) {
  for (std::uint64_t i = 1; i < ctx.order(); ++i) {
    ExtElement a = ctx.fromIndex(i);
    if (isPrimitiveNormal(ctx, a)) return a;
  }
  throw InternalError("no primitive normal element found");
}

}  // namespace pnfield::field
