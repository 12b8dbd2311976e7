#pragma once

// The tower F_p < F_q < F_{q^n}: construction, element arithmetic,
// Frobenius, trace and norm, the linearized F_q[x]-action, and the
// primitive / normal element tests.

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "pnfield/numtheory.hpp"
#include "pnfield/polyfq.hpp"

namespace pnfield::field {

using polyfq::Coeff;
using polyfq::Poly;

// Element of F_{q^n} in the polynomial basis 1, x, ..., x^{n-1} of
// F_q[x]/(extModulus). Each coordinate is an F_q code.
struct ExtElement {
  std::vector<Coeff> coords;

  friend bool operator==(const ExtElement&, const ExtElement&) = default;
  friend auto operator<=>(const ExtElement&, const ExtElement&) = default;
};

enum class NormalTest { kDivisor, kRank };

class FieldCtx;
using CtxPtr = std::shared_ptr<const FieldCtx>;

// Largest q^n accepted by buildField.
inline constexpr std::uint64_t kMaxFieldOrder = (1ull << 63) - 1;

// Moduli default to the smallest monic irreducible of the right degree.
// Supplied moduli must be monic and irreducible (ValidationError).
// ResourceError when q^n exceeds kMaxFieldOrder.
CtxPtr buildField(std::uint64_t p, unsigned k, unsigned n,
                  std::optional<Poly> baseModulus = std::nullopt,
                  std::optional<Poly> extModulus = std::nullopt);

class FieldCtx {
 public:
  std::uint64_t p() const { return p_; }
  unsigned k() const { return k_; }
  std::uint64_t q() const { return q_; }
  unsigned n() const { return n_; }
  std::uint64_t order() const { return order_; }  // q^n
  const polyfq::BaseField& base() const { return *base_; }
  const polyfq::FieldPtr& basePtr() const { return base_; }
  const Poly& baseModulus() const { return baseModulus_; }
  const Poly& extModulus() const { return extModulus_; }
  const numtheory::Factorization& multFactorization() const {
    return multFactorization_;
  }
  const polyfq::PolyFactorization& addFactorization() const {
    return addFactorization_;
  }
  const std::optional<ExtElement>& referenceTau() const { return tau_; }
  // referenceTau or InternalError.
  const ExtElement& tau() const;

  ExtElement zero() const { return ExtElement{std::vector<Coeff>(n_, 0)}; }
  ExtElement one() const;
  ExtElement generator() const;  // the class of x
  ExtElement fromBase(Coeff c) const;
  // Index i = sum_j coords[j] q^j; coordinate 0 runs fastest.
  ExtElement fromIndex(std::uint64_t index) const;
  std::uint64_t index(const ExtElement& a) const;
  bool isZero(const ExtElement& a) const;
  // Throws ValidationError unless a has n reduced coordinates.
  void check(const ExtElement& a) const;

  ExtElement add(const ExtElement& a, const ExtElement& b) const;
  ExtElement sub(const ExtElement& a, const ExtElement& b) const;
  ExtElement neg(const ExtElement& a) const;
  ExtElement scale(const ExtElement& a, Coeff c) const;
  ExtElement mul(const ExtElement& a, const ExtElement& b) const;
  ExtElement pow(const ExtElement& a, std::uint64_t e) const;
  ExtElement inv(const ExtElement& a) const;  // DomainError on 0

  // Relative trace to F_q, as an F_q code.
  Coeff relativeTrace(const ExtElement& a) const;
  // Absolute trace tr(a) in F_p.
  std::uint64_t absoluteTrace(const ExtElement& a) const;
  // Absolute trace of an F_q code.
  std::uint64_t baseTrace(Coeff c) const;
  // Weights w with tr(c * a) = sum_{i,j} digit_j(coords_i(c)) * w[i*k + j]
  // mod p, i.e. the F_p-linear functional c -> tr(c a) in the digit basis.
  std::vector<std::uint64_t> traceFunctional(const ExtElement& a) const;

  // x^{iq} mod extModulus, the images of the basis under Frobenius.
  const std::vector<ExtElement>& frobeniusColumns() const { return frobCols_; }
  ExtElement frobenius1(const ExtElement& a) const;

 private:
  friend CtxPtr buildField(std::uint64_t, unsigned, unsigned,
                           std::optional<Poly>, std::optional<Poly>);
  FieldCtx() = default;

  std::uint64_t p_ = 2, q_ = 2, order_ = 2;
  unsigned k_ = 1, n_ = 1;
  polyfq::FieldPtr base_;
  Poly baseModulus_, extModulus_;
  numtheory::Factorization multFactorization_;
  polyfq::PolyFactorization addFactorization_;
  std::vector<ExtElement> frobCols_;
  std::vector<Coeff> traceOfBasis_;           // Tr(x^i) in F_q
  std::vector<std::uint64_t> baseTraceTable_;  // when q is small
  std::optional<ExtElement> tau_;
};

// Thread-local count of F_{q^n} multiplications, for complexity curves.
std::uint64_t multiplicationCount();

class OpCounter {
 public:
  OpCounter() : start_(multiplicationCount()) {}
  std::uint64_t elapsed() const { return multiplicationCount() - start_; }

 private:
  std::uint64_t start_;
};

// a^{q^i}, i reduced mod n.
ExtElement frobenius(const FieldCtx& ctx, const ExtElement& a, std::uint64_t i);
std::uint64_t trace(const FieldCtx& ctx, const ExtElement& a);
// a^{(p^{kn}-1)/(p-1)} in F_p; norm(0) = 0.
std::uint64_t norm(const FieldCtx& ctx, const ExtElement& a);
// r o a = sum_i r_i a^{q^i}.
ExtElement applyLinearized(const FieldCtx& ctx, const Poly& r,
                           const ExtElement& a);

// DomainError for 0.
std::uint64_t multiplicativeOrder(const FieldCtx& ctx, const ExtElement& a);
// Minimal monic divisor of x^n - 1 annihilating a; the constant 1 for 0.
Poly additiveOrder(const FieldCtx& ctx, const ExtElement& a);
// Exponent vector of additiveOrder against ctx.addFactorization().
std::vector<unsigned> additiveOrderExponents(const FieldCtx& ctx,
                                             const ExtElement& a);

bool isPrimitive(const FieldCtx& ctx, const ExtElement& a);  // DomainError on 0
bool isNormal(const FieldCtx& ctx, const ExtElement& a,
              NormalTest method = NormalTest::kDivisor);
bool isPrimitiveNormal(const FieldCtx& ctx, const ExtElement& a);

// First element in index order that is primitive and normal.
ExtElement findReferencePrimitiveNormal(const FieldCtx& ctx);

}  // namespace pnfield::field
