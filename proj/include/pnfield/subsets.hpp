#pragma once

// Hamming weight and height metrics, the subset families built from them,
// structure detection, and small-subset searches for primitive normal
// elements.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pnfield/field.hpp"

namespace pnfield::subsets {

using field::ExtElement;
using field::FieldCtx;
using field::Poly;

// Cap on any family enumerated internally.
inline constexpr std::uint64_t kEnumerationCap = 1u << 24;

// Number of nonzero coefficients.
unsigned hammingWeight(const Poly& r);
unsigned hammingWeight(const ExtElement& a);

// Largest |centered representative| in (-p/2, p/2] over all F_p digits of
// all coefficients.
std::uint64_t height(const FieldCtx& ctx, const Poly& r);
std::uint64_t height(const FieldCtx& ctx, const ExtElement& a);

// Bits needed for p - 1, i.e. ceil(log2 p).
unsigned bitLength(std::uint64_t p);

// {center + c : c in F_p, popcount(c) <= H}, c ascending.
std::vector<ExtElement> enumerateHammingBall(const FieldCtx& ctx,
                                             const ExtElement& center, unsigned H);

// A_d(H): sum a_i x^i with i <= d, integer |a_i| <= H and gcd(a_0..a_d) = 1,
// reduced into F_{q^n}. Tuples run with a_0 fastest from -H to H; repeats
// after reduction are dropped. DomainError unless 2 <= d < n and H >= 1.
std::vector<ExtElement> enumerateHeightBox(const FieldCtx& ctx, unsigned d,
                                           std::uint64_t H);

// Nonzero elements of Hamming weight at most w in index order.
std::vector<ExtElement> enumerateWeightBall(const FieldCtx& ctx, unsigned w);

struct HammingBallSpec {
  ExtElement center;
  unsigned radius = 0;
};
struct HeightBoxSpec {
  unsigned d = 2;
  std::uint64_t H = 1;
};
struct WeightBallSpec {
  unsigned w = 1;
};
struct ExplicitSpec {
  std::vector<ExtElement> elements;
};
struct WholeFieldSpec {};

using SubsetSpec =
    std::variant<HammingBallSpec, HeightBoxSpec, WeightBallSpec, ExplicitSpec, WholeFieldSpec>;

std::string describe(const SubsetSpec& spec);

// Duplicate-free, in the order of the underlying enumeration. ResourceError
// when the set would exceed `budget` elements.
std::vector<ExtElement> materialize(const FieldCtx& ctx, const SubsetSpec& spec,
                                    std::uint64_t budget);

struct StructureVerdict {
  bool structured = false;
  std::string reason;  // "subfield F_{q^d}", "F_p-subspace", or why not
};

// Structured when S is an F_p-subspace (0 included, closed under addition)
// or S together with 0 is a subfield F_{q^d}, d | n. DomainError on empty S.
StructureVerdict isStructured(const FieldCtx& ctx, const std::vector<ExtElement>& S);

inline constexpr double kDefaultEpsilon = 0.1;

// (log q^n)(log log q^n)^{1+eps} times `multiplier`, where the power is
// taken only when log log q^n > 0 (otherwise the factor is 1).
double thresholdSize(const FieldCtx& ctx, double epsilon, double multiplier = 1.0);
// ceil(thresholdSize), at least 1.
std::uint64_t thresholdCount(const FieldCtx& ctx, double epsilon, double multiplier = 1.0);

struct SearchReport {
  std::uint64_t subsetSize = 0;
  std::vector<ExtElement> witnesses;
  double thresholdSize = 0;
  bool hit = false;
  std::uint64_t multiplications = 0;  // F_{q^n} products spent on the scan
};

SearchReport searchPrimitiveNormal(const FieldCtx& ctx, const SubsetSpec& spec,
                                   double epsilon, std::uint64_t budget);
SearchReport searchPrimitiveNormal(const FieldCtx& ctx, const std::vector<ExtElement>& S,
                                   double epsilon);

struct TrialRow {
  std::uint64_t trial = 0;
  std::uint64_t size = 0;
  bool hit = false;
  std::uint64_t witnessCount = 0;
};

struct ExperimentReport {
  std::uint64_t poolSize = 0;
  std::uint64_t sampleSize = 0;
  double thresholdSize = 0;
  std::vector<TrialRow> rows;
  std::uint64_t hits = 0;
  double hitFraction = 0;
  std::uint64_t minWitnesses = 0;
  double meanWitnesses = 0;
  // Smallest size 1, 2, 4, ... at which every trial hit; absent if even the
  // whole pool misses in some trial.
  std::optional<std::uint64_t> alwaysHitSize;
  std::uint64_t redraws = 0;  // samples discarded as structured
};

// Random subsets of the pool given by `family`, each of ceil(threshold)
// elements (capped at the pool size), redrawn while structured. Trial t uses
// the stream rng::engineFor(seed, t). DomainError for trials == 0.
ExperimentReport thresholdExperiment(const FieldCtx& ctx, const SubsetSpec& family,
                                     double epsilon, std::uint64_t trials,
                                     std::uint64_t seed, double multiplier,
                                     std::uint64_t budget);

inline constexpr const char* kExperimentCsvHeader = "trial,size,hit,witnessCount";

}  // namespace pnfield::subsets
