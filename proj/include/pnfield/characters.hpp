#pragma once

// Discrete logarithms, additive and multiplicative characters, Gauss sums,
// the four indicator functions for primitive and normal elements, and the
// character-sum experiments built on them.

#include <complex>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "pnfield/field.hpp"

namespace pnfield::characters {

using field::CtxPtr;
using field::ExtElement;
using field::FieldCtx;

// Discrete logarithm to the base ctx.referenceTau(). Fields with
// q^n <= kFullTableLimit get complete log / antilog tables; larger ones use
// baby-step giant-step with ceil(sqrt(q^n - 1)) baby steps. All tables are
// built in the constructor and read-only afterwards.
class DiscreteLog {
 public:
  static constexpr std::uint64_t kFullTableLimit = 1u << 16;
  static constexpr std::uint64_t kMaxGroupOrder = 1ull << 40;

  explicit DiscreteLog(CtxPtr ctx);

  const FieldCtx& ctx() const { return *ctx_; }
  const CtxPtr& ctxPtr() const { return ctx_; }
  std::uint64_t groupOrder() const { return ctx_->order() - 1; }
  bool hasFullTable() const { return !log_.empty(); }

  // Result in [0, q^n - 2]; DomainError for 0.
  std::uint64_t log(const ExtElement& a) const;
  std::uint64_t logOfIndex(std::uint64_t index) const;
  ExtElement exp(std::uint64_t e) const;
  // Index of tau^e.
  std::uint64_t expIndex(std::uint64_t e) const;

 private:
  CtxPtr ctx_;
  std::vector<std::uint32_t> log_;  // by element index; log_[0] unused
  std::vector<std::uint32_t> exp_;  // exp_[j] = index of tau^j
  std::uint64_t babySteps_ = 0;
  std::unordered_map<std::uint64_t, std::uint64_t> baby_;
  ExtElement giant_;  // tau^{-babySteps}
};

// A root of unity e^{2 pi i num / den} with the exact angle kept alongside.
struct UnitComplex {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  std::complex<double> value{1.0, 0.0};

  static UnitComplex fromAngle(std::uint64_t num, std::uint64_t den);
};

struct CharSpec {
  enum class Kind { kAdditive, kMultiplicative };
  Kind kind = Kind::kAdditive;
  ExtElement c;        // additive parameter
  std::uint64_t b = 0;  // multiplicative parameter, mod q^n - 1

  static CharSpec additive(ExtElement c) {
    return CharSpec{Kind::kAdditive, std::move(c), 0};
  }
  static CharSpec multiplicative(std::uint64_t b) {
    return CharSpec{Kind::kMultiplicative, {}, b};
  }
};

// psi_c(a) = e^{2 pi i tr(c a) / p}; chi_b(a) = e^{2 pi i b log a / (q^n-1)}.
// DomainError for a multiplicative character at 0.
UnitComplex evalChar(const DiscreteLog& dl, const CharSpec& spec,
                     const ExtElement& a);

// Order of psi_c as a divisor of x^n - 1, equal to additiveOrder(c).
field::Poly additiveCharOrder(const FieldCtx& ctx, const ExtElement& c);

// tr(c * a) for every c, indexed by element index. ResourceError above
// 2^24 elements.
std::vector<std::uint32_t> traceTable(const FieldCtx& ctx, const ExtElement& a);

struct GaussSum {
  std::complex<double> value;
  // Set in the three cases where b = 0 or c = 0.
  std::optional<std::int64_t> exact;
};

// G(chi_b, psi_c) = sum over rho != 0 of chi_b(rho) psi_c(rho), by direct
// summation. ResourceError above 2^22 elements.
GaussSum gaussSum(const DiscreteLog& dl, std::uint64_t b, const ExtElement& c);

struct FourierResiduals {
  double additive = 0;
  double multiplicative = 0;
};

// Max over a != 0 of
//   |psi_c(a) - (1/(q^n-1)) sum_chi chi(a) G(conj chi, psi_c)|  and
//   |chi_b(a) - (1/q^n) sum_e G(chi_b, conj psi_e) psi_e(a)|.
// ResourceError above 2^10 elements.
FourierResiduals fourierResiduals(const DiscreteLog& dl, const ExtElement& c,
                                  std::uint64_t b);

// Divisor-dependent indicator of primitivity, evaluated exactly through
// Ramanujan sums: the characters of order d sum to c_d(log a) at a.
// DomainError for 0.
int indicatorPrimitiveDD(const DiscreteLog& dl, const ExtElement& a);
// Same formula summed over every multiplicative character in floating point.
double indicatorPrimitiveDDFloat(const DiscreteLog& dl, const ExtElement& a);

// Divisor-free indicator of primitivity: s runs over [1, q^n - 1] coprime to
// q^n - 1, t over [0, q^n - 1], with kernel e^{2 pi i (s - log a) t / q^n}.
// Needs q^n >= 3 (DomainError otherwise).
class DivisorFreePrimitive {
 public:
  explicit DivisorFreePrimitive(const DiscreteLog& dl);

  const std::vector<std::uint64_t>& residues() const { return residues_; }

  // Exact: the inner sum is q^n when s = log a and 0 otherwise, so the
  // value is the number of residues equal to log a.
  int evaluate(const ExtElement& a) const;
  int evaluateLog(std::uint64_t logA) const;
  // Exact evaluation with s enumerated as u*s mod (q^n - 1); u must be a
  // unit mod q^n - 1.
  int evaluatePermuted(const ExtElement& a, std::uint64_t u) const;
  // The literal double sum in floating point. ResourceError when the number
  // of terms exceeds 2^24.
  double evaluateLiteral(const ExtElement& a) const;

 private:
  const DiscreteLog& dl_;
  std::vector<std::uint64_t> residues_;
  std::vector<bool> isResidue_;
};

// Divisor-dependent indicator of normality:
//   Psi(a) = (Phi(F)/q^n) sum_{d | F} mu_q(d)/Phi(d) sum_{Ord psi = d} psi(a)
// with F = x^n - 1. The inner sums are exact integers because the
// characters of a given order are closed under F_p^* scaling. Only defined
// here for squarefree F (p not dividing n); otherwise evaluate() returns
// std::nullopt.
class DivisorDependentNormal {
 public:
  static constexpr std::uint64_t kMaxOrder = 1u << 20;

  explicit DivisorDependentNormal(CtxPtr ctx);

  bool applicable() const { return applicable_; }
  std::optional<int> evaluate(const ExtElement& a) const;
  std::optional<double> evaluateFloat(const ExtElement& a) const;
  // Bitmask over the irreducible factors of x^n - 1 giving Ord psi_c.
  std::uint64_t orderMask(std::uint64_t cIndex) const { return mask_[cIndex]; }

 private:
  CtxPtr ctx_;
  bool applicable_ = false;
  std::vector<std::uint64_t> mask_;   // per element index
  std::vector<std::uint64_t> phiOf_;  // Phi(d) per mask
  std::uint64_t phiF_ = 0;
};

// Divisor-free indicator of normality relative to a normal element eta:
// s(x) runs over polynomials of degree < n coprime to x^n - 1, and the
// kernel is e^{2 pi i (log(s o eta) - log a) t / q^n}.
class DivisorFreeNormal {
 public:
  // DomainError unless eta is normal; needs q^n >= 3.
  DivisorFreeNormal(const DiscreteLog& dl, const ExtElement& eta);

  std::size_t unitCount() const { return logs_.size(); }
  // DomainError for 0.
  int evaluate(const ExtElement& a) const;
  int evaluateLog(std::uint64_t logA) const;
  double evaluateLiteral(const ExtElement& a) const;

 private:
  const DiscreteLog& dl_;
  std::vector<std::uint64_t> logs_;  // log(s o eta) per unit s
  std::vector<std::uint32_t> hits_;  // multiplicity by log value
};

// sum_{u in U} sum_{v in V} psi_c(u v); DomainError for c = 0.
std::complex<double> bilinearCharSum(const DiscreteLog& dl, const ExtElement& c,
                                     const std::vector<ExtElement>& U,
                                     const std::vector<ExtElement>& V);
// sum_{u in U} sum_{v in V} chi_b(u + v) with chi_b(0) = 0; DomainError for
// b = 0 mod q^n - 1.
std::complex<double> shiftedCharSum(const DiscreteLog& dl, std::uint64_t b,
                                    const std::vector<ExtElement>& U,
                                    const std::vector<ExtElement>& V);

struct CharSumReport {
  std::uint64_t trials = 0;
  // Max over trials of |sum psi(uv)| / (q^{n/2} sqrt(#U #V)).
  double maxProductRatio = 0;
  // Max over trials of |sum chi(u+v)| / (q^{n/2} sqrt(#U #V)); absent when
  // there is no nontrivial multiplicative character.
  std::optional<double> maxShiftedRatio;
  // |sum over normal u of psi(u)| / q^{n/2}, the units-group sum.
  double unitsRatio = 0;
  bool productPass = false;
  bool shiftedPass = false;
};

inline constexpr double kCharSumTolerance = 1e-9;
inline constexpr std::uint64_t kCharSumMaxOrder = 1u << 14;

// Seeded random subset pairs of size at most 48. ResourceError above 2^14
// elements.
CharSumReport charSumBoundSuite(const DiscreteLog& dl, std::uint64_t trials,
                                std::uint64_t seed);

struct ExpSumRecord {
  std::int64_t exactValue = 0;
  double literatureBound = 0;  // q^n e^{-sqrt(log q^n)}
  std::uint64_t phiValue = 0;
  bool withinBound = false;
};

// sum_{t=1}^{q^n-1} sum_{s coprime} e^{-2 pi i (s - log a) t / q^n} for a
// nonzero non-primitive a, by exact collapse. DomainError for 0 or a
// primitive element.
ExpSumRecord primitiveExpSum(const DivisorFreePrimitive& ind,
                             const DiscreteLog& dl, const ExtElement& a);

// The four subsums of sum_{a in A} Psi(a) Psi_q(a), split by whether the
// t = 0 term or the t != 0 terms of each indicator are taken, all scaled
// by q^{2n} so they are exact integers:
//   n00: t1 = 0, t2 = 0   n01: t1 != 0, t2 = 0
//   n10: t1 = 0, t2 != 0  n11: t1 != 0, t2 != 0
// where t1 belongs to the primitive indicator and t2 to the normal one.
struct SubsumLedger {
  std::uint64_t setSize = 0;
  std::uint64_t primitiveNormal = 0;
  __int128 n00 = 0, n01 = 0, n10 = 0, n11 = 0;
  __int128 scale = 0;  // q^{2n}
  bool sumMatches = false;  // n00 + n01 + n10 + n11 == scale * primitiveNormal
};

SubsumLedger subsumLedger(const DiscreteLog& dl, const DivisorFreePrimitive& prim,
                          const DivisorFreeNormal& normal,
                          const std::vector<ExtElement>& A);

}  // namespace pnfield::characters
