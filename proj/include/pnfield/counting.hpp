#pragma once

// Exhaustive counts of primitive, normal and primitive normal elements,
// order histograms, density sweeps and the lower bounds for Phi_q(x^n - 1).

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <vector>

#include "pnfield/field.hpp"

namespace pnfield::counting {

using field::CtxPtr;
using field::FieldCtx;

inline constexpr std::uint64_t kEnumerationBudget = 1u << 24;

struct DensityRecord {
  std::uint64_t q = 0;
  unsigned k = 1;
  unsigned n = 0;
  std::uint64_t numPrimitive = 0;
  std::uint64_t numNormal = 0;
  std::uint64_t numPrimitiveNormal = 0;
  double predictedProduct = 0;  // phi(q^n - 1) Phi(x^n - 1) / q^n
  double correction = 0;        // numPrimitiveNormal / predictedProduct
  double pnProbability = 0;     // phi(q^n - 1) Phi(x^n - 1) / q^{2n}
};

// Full enumeration with isPrimitive and isNormal. The marginal counts are
// checked against phi(q^n - 1) and Phi_q(x^n - 1) (InternalError on
// mismatch). ResourceError when q^n exceeds `budget`.
DensityRecord exactCounts(const FieldCtx& ctx,
                          std::uint64_t budget = kEnumerationBudget);

struct OrderHistograms {
  // multiplicative order -> number of elements
  std::map<std::uint64_t, std::uint64_t> multiplicative;
  // exponent vector of the additive order against ctx.addFactorization()
  std::map<std::vector<unsigned>, std::uint64_t> additive;
};

OrderHistograms orderHistograms(const FieldCtx& ctx,
                                std::uint64_t budget = kEnumerationBudget);

struct LowerBoundRecord {
  std::uint64_t q = 0, n = 0;
  double ratio = 0;  // Phi_q(x^n - 1) / (q^n - 1)
  double logBound = 0;
  bool logBoundOK = false;
  // ratio >= 1 / (5 log log q^n), only for q >= 8.
  std::optional<bool> loglogBoundOK;
  // When n | q - 1: |ratio - (1 - n/q)| and whether it is at most n(n-1)/q^2.
  std::optional<double> probExpansionResidual;
  std::optional<bool> probExpansionWithin;
};

// DomainError unless q is a prime power and n >= 2.
LowerBoundRecord phiPolyLowerBoundCheck(std::uint64_t q, std::uint64_t n);

struct FieldParams {
  std::uint64_t p = 2;
  unsigned k = 1;
  unsigned n = 1;

  std::uint64_t q() const;
  friend auto operator<=>(const FieldParams&, const FieldParams&) = default;
};

// Prime powers q in [qLo, qHi] crossed with n in [nLo, nHi], sorted by (q, n).
std::vector<FieldParams> fieldGrid(std::uint64_t qLo, std::uint64_t qHi,
                                   unsigned nLo, unsigned nHi);
// Every (q, n) with n >= nMin and q^n <= maxOrder, sorted by (q, n).
std::vector<FieldParams> fieldsUpTo(std::uint64_t maxOrder, unsigned nMin);

std::vector<DensityRecord> densitySweep(const std::vector<FieldParams>& fields,
                                        std::uint64_t budget = kEnumerationBudget);

inline constexpr const char* kDensityCsvHeader =
    "q,k,n,numPrimitive,numNormal,numPN,predicted,delta,pnProbability";

void writeDensityCsv(std::ostream& out, const std::vector<DensityRecord>& rows);
void writeDensityJson(std::ostream& out, const std::vector<DensityRecord>& rows);

}  // namespace pnfield::counting
