#pragma once

// Text parsing and the commands behind the pnfield executable. Every
// command writes to a caller-supplied stream so output can be captured and
// compared byte for byte.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "pnfield/counting.hpp"
#include "pnfield/field.hpp"
#include "pnfield/subsets.hpp"

namespace pnfield::cli {

using field::CtxPtr;
using field::ExtElement;
using field::FieldCtx;
using field::Poly;

// "p^k:n[:basePoly][:extPoly]" or "q:n". Polynomials are comma-separated
// coefficients, constant term first; base moduli take integers mod p and
// extension moduli take F_q codes.
struct FieldSpec {
  std::uint64_t p = 2;
  unsigned k = 1;
  unsigned n = 1;
  std::optional<Poly> baseModulus;
  std::optional<Poly> extModulus;
};

// UsageError with the offending character position.
FieldSpec parseFieldSpec(const std::string& text);
// Coefficients below `modulus`; `offset` shifts reported positions.
Poly parsePoly(const std::string& text, std::uint64_t modulus, std::size_t offset = 0);
// Comma-separated coordinates, each an F_q code or F_p digits joined by '/'.
// Missing trailing coordinates are zero.
ExtElement parseElement(const FieldCtx& ctx, const std::string& text);
// "N": every field with n >= 2 and q^n <= N. "a..bxc..d": prime powers q in
// [a, b] crossed with n in [c, d]. Empty text: no fields.
std::vector<counting::FieldParams> parseRange(const std::string& text);
// JSON such as {"kind":"heightBox","d":2,"H":1}.
subsets::SubsetSpec parseSubsetSpec(const FieldCtx& ctx, const std::string& json);

CtxPtr buildFromSpec(const FieldSpec& spec);

std::string formatPoly(const Poly& f);
std::string formatElement(const ExtElement& a);

enum class Format { kCsv, kJson };

inline constexpr std::uint64_t kDefaultBudget = 1u << 24;

// PNFIELD_BUDGET when set and valid, otherwise kDefaultBudget.
std::uint64_t defaultBudget();

struct RunConfig {
  std::string fieldSpec;
  std::string range;
  std::string subset;  // JSON subset spec for search / experiment
  std::string alpha;   // element text for conjecture
  double epsilon = subsets::kDefaultEpsilon;
  double multiplier = 1.0;
  std::uint64_t seed = 1;
  std::uint64_t trials = 100;
  std::uint64_t budget = kDefaultBudget;
  Format format = Format::kCsv;
};

void cmdFieldInfo(const RunConfig& cfg, std::ostream& out);
// Returns the exit code: 0 iff no asserted claim failed.
int cmdVerify(const RunConfig& cfg, std::ostream& out);
void cmdSweep(const RunConfig& cfg, std::ostream& out);
void cmdSearch(const RunConfig& cfg, std::ostream& out);
void cmdExperiment(const RunConfig& cfg, std::ostream& out);
void cmdConjecture(const RunConfig& cfg, std::ostream& out);

// Throws DomainError naming the first violated hypothesis: alpha nonzero,
// alpha != +-1, alpha outside every proper subfield, alpha not a square,
// tr(alpha) != 0.
void checkConjectureHypotheses(const FieldCtx& ctx, const ExtElement& alpha);

}  // namespace pnfield::cli
