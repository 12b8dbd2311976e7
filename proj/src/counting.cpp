#include "pnfield/counting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include <json.hpp>

#include "pnfield/errors.hpp"
#include "pnfield/numtheory.hpp"
#include "pnfield/polyfq.hpp"

namespace pnfield::counting {
namespace {

std::uint64_t ipow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

void checkBudget(const FieldCtx& ctx, std::uint64_t budget) {
  if (ctx.order() > budget) {
    throw ResourceError("field of order " + std::to_string(ctx.order()) +
                        " exceeds the enumeration budget " + std::to_string(budget));
  }
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

DensityRecord exactCounts(const FieldCtx& ctx, std::uint64_t budget) {
  checkBudget(ctx, budget);
  DensityRecord r;
  r.q = ctx.q();
  r.k = ctx.k();
  r.n = ctx.n();
  for (std::uint64_t i = 1; i < ctx.order(); ++i) {
    const auto a = ctx.fromIndex(i);
    const bool prim = field::isPrimitive(ctx, a);
    const bool normal = field::isNormal(ctx, a);
    r.numPrimitive += prim;
    r.numNormal += normal;
    r.numPrimitiveNormal += prim && normal;
  }
  const std::uint64_t phi = numtheory::eulerPhi(ctx.multFactorization());
  const std::uint64_t Phi = polyfq::polyPhi(ctx.addFactorization());
  if (r.numPrimitive != phi) throw InternalError("primitive count differs from phi(q^n - 1)");
  if (r.numNormal != Phi) throw InternalError("normal count differs from Phi(x^n - 1)");
  const double qn = static_cast<double>(ctx.order());
  r.predictedProduct = static_cast<double>(phi) * static_cast<double>(Phi) / qn;
  r.correction = r.numPrimitiveNormal / r.predictedProduct;
  r.pnProbability = r.predictedProduct / qn;
  return r;
}

OrderHistograms orderHistograms(const FieldCtx& ctx, std::uint64_t budget) {
  checkBudget(ctx, budget);
  OrderHistograms h;
  for (std::uint64_t i = 0; i < ctx.order(); ++i) {
    const auto a = ctx.fromIndex(i);
    if (i != 0) ++h.multiplicative[field::multiplicativeOrder(ctx, a)];
    ++h.additive[field::additiveOrderExponents(ctx, a)];
  }
  return h;
}

LowerBoundRecord phiPolyLowerBoundCheck(std::uint64_t q, std::uint64_t n) {
  if (!numtheory::isPrimePower(q)) throw DomainError("q must be a prime power");
  if (n < 2) throw DomainError("n must be at least 2");
  LowerBoundRecord r;
  r.q = q;
  r.n = n;
  const std::uint64_t Phi = polyfq::phiXnMinus1(q, n);
  const long double qn = std::pow(static_cast<long double>(q), static_cast<long double>(n));
  r.ratio = static_cast<double>(Phi / (qn - 1));
  const long double logQn = n * std::log(static_cast<long double>(q));
  r.logBound = static_cast<double>(1 / (5 * logQn));
  r.logBoundOK = r.ratio >= r.logBound;
  if (q >= 8) r.loglogBoundOK = r.ratio >= static_cast<double>(1 / (5 * std::log(logQn)));
  if ((q - 1) % n == 0) {
    const double residual = std::fabs(r.ratio - (1.0 - static_cast<double>(n) / q));
    r.probExpansionResidual = residual;
    r.probExpansionWithin = residual <= static_cast<double>(n * (n - 1)) / (static_cast<double>(q) * q);
  }
  return r;
}

std::uint64_t FieldParams::q() const { return ipow(p, k); }

std::vector<FieldParams> fieldGrid(std::uint64_t qLo, std::uint64_t qHi,
                                   unsigned nLo, unsigned nHi) {
  std::vector<FieldParams> out;
  for (std::uint64_t q = std::max<std::uint64_t>(qLo, 2); q <= qHi; ++q) {
    std::uint64_t p;
    unsigned e;
    if (!numtheory::isPrimePower(q, &p, &e)) continue;
    for (unsigned n = std::max(nLo, 1u); n <= nHi; ++n) out.push_back({p, e, n});
  }
  return out;
}

std::vector<FieldParams> fieldsUpTo(std::uint64_t maxOrder, unsigned nMin) {
  std::vector<FieldParams> out;
  if (nMin == 0) nMin = 1;
  for (std::uint64_t q = 2; q <= maxOrder; ++q) {
    std::uint64_t p;
    unsigned e;
    if (!numtheory::isPrimePower(q, &p, &e)) continue;
    std::uint64_t qn = ipow(q, nMin - 1);
    if (qn > maxOrder / q) break;
    for (unsigned n = nMin;; ++n) {
      if (qn > maxOrder / q) break;
      qn *= q;
      out.push_back({p, e, n});
    }
  }
  return out;
}

std::vector<DensityRecord> densitySweep(const std::vector<FieldParams>& fields,
                                        std::uint64_t budget) {
  std::vector<FieldParams> sorted = fields;
  std::sort(sorted.begin(), sorted.end(), [](const FieldParams& a, const FieldParams& b) {
    return std::pair(a.q(), a.n) < std::pair(b.q(), b.n);
  });
  // Refuse the whole sweep before enumerating anything.
  for (const auto& f : sorted) {
    const long double order = std::pow(static_cast<long double>(f.q()), f.n);
    if (order > budget) {
      throw ResourceError("field " + std::to_string(f.q()) + "^" + std::to_string(f.n) +
                          " exceeds the enumeration budget " + std::to_string(budget));
    }
  }
  std::vector<DensityRecord> rows;
  for (const auto& f : sorted) {
    rows.push_back(exactCounts(*field::buildField(f.p, f.k, f.n), budget));
  }
  return rows;
}

void writeDensityCsv(std::ostream& out, const std::vector<DensityRecord>& rows) {
  out << kDensityCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.q << ',' << r.k << ',' << r.n << ',' << r.numPrimitive << ','
        << r.numNormal << ',' << r.numPrimitiveNormal << ',' << fmt(r.predictedProduct)
        << ',' << fmt(r.correction) << ',' << fmt(r.pnProbability) << '\n';
  }
}

void writeDensityJson(std::ostream& out, const std::vector<DensityRecord>& rows) {
  nlohmann::ordered_json j;
  j["schema"] = "pnfield/1";
  j["kind"] = "densitySweep";
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    j["rows"].push_back({{"q", r.q},
                         {"k", r.k},
                         {"n", r.n},
                         {"numPrimitive", r.numPrimitive},
                         {"numNormal", r.numNormal},
                         {"numPN", r.numPrimitiveNormal},
                         {"predicted", r.predictedProduct},
                         {"delta", r.correction},
                         {"pnProbability", r.pnProbability}});
  }
  out << j.dump(2) << '\n';
}

}  // namespace pnfield::counting
