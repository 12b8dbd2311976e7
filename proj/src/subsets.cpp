#include "pnfield/subsets.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "pnfield/errors.hpp"
#include "pnfield/rng.hpp"

namespace pnfield::subsets {
namespace {

constexpr int kMaxRedraws = 1000;

std::uint64_t centered(std::uint64_t d, std::uint64_t p) {
  return 2 * d > p ? p - d : d;
}

std::uint64_t coeffHeight(const FieldCtx& ctx, polyfq::Coeff c) {
  std::uint64_t h = 0;
  for (auto d : ctx.base().digits(c)) h = std::max(h, centered(d, ctx.p()));
  return h;
}

// Appends elements not seen before.
struct Dedup {
  const FieldCtx& ctx;
  std::unordered_set<std::uint64_t> seen;
  std::vector<ExtElement> out;

  void add(ExtElement a) {
    if (seen.insert(ctx.index(a)).second) out.push_back(std::move(a));
  }
};

void checkSize(long double size, std::uint64_t budget, const char* what) {
  if (size > static_cast<long double>(budget)) {
    throw ResourceError(std::string(what) + " exceeds the element budget");
  }
}

// Rank over F_p of the digit vectors of S.
unsigned digitRank(const FieldCtx& ctx, const std::vector<ExtElement>& S) {
  const std::uint64_t p = ctx.p();
  const std::size_t width = static_cast<std::size_t>(ctx.k()) * ctx.n();
  std::vector<std::vector<std::uint64_t>> rows;
  for (const auto& a : S) {
    std::vector<std::uint64_t> v;
    v.reserve(width);
    for (auto c : a.coords) {
      auto d = ctx.base().digits(c);
      d.resize(ctx.k(), 0);
      v.insert(v.end(), d.begin(), d.end());
    }
    rows.push_back(std::move(v));
  }
  unsigned rank = 0;
  for (std::size_t col = 0; col < width && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    const std::uint64_t inv = numtheory::powMod(rows[rank][col], p - 2, p);
    for (auto& x : rows[rank]) x = x * inv % p;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      const std::uint64_t f = rows[r][col];
      for (std::size_t c = col; c < width; ++c) {
        rows[r][c] = (rows[r][c] + (p - f) * rows[rank][c]) % p;
      }
    }
    ++rank;
  }
  return rank;
}

bool isPowerOf(std::uint64_t x, std::uint64_t p, unsigned* e) {
  unsigned k = 0;
  while (x > 1 && x % p == 0) {
    x /= p;
    ++k;
  }
  *e = k;
  return x == 1;
}

struct Sampler {
  const FieldCtx& ctx;
  const std::vector<ExtElement>& pool;
  std::unordered_map<std::uint64_t, bool> pnCache;

  bool isPN(const ExtElement& a) {
    const std::uint64_t idx = ctx.index(a);
    auto it = pnCache.find(idx);
    if (it != pnCache.end()) return it->second;
    const bool v = !ctx.isZero(a) && field::isPrimitiveNormal(ctx, a);
    pnCache.emplace(idx, v);
    return v;
  }

  // A sample of `size` pool elements, redrawn while structured. Returns
  // false if every attempt was structured; the last sample is kept.
  bool draw(rng::Engine& eng, std::uint64_t size, std::vector<ExtElement>* S,
            std::uint64_t* redraws) {
    if (size >= pool.size()) {
      *S = pool;
      return !isStructured(ctx, *S).structured;
    }
    for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
      S->clear();
      for (auto i : rng::sampleDistinct(eng, pool.size(), size)) S->push_back(pool[i]);
      if (!isStructured(ctx, *S).structured) return true;
      ++*redraws;
    }
    return false;
  }

  std::uint64_t witnesses(const std::vector<ExtElement>& S) {
    std::uint64_t w = 0;
    for (const auto& a : S) w += isPN(a);
    return w;
  }
};

}  // namespace

unsigned hammingWeight(const Poly& r) {
  return static_cast<unsigned>(
      std::count_if(r.coeffs().begin(), r.coeffs().end(), [](auto c) { return c != 0; }));
}

unsigned hammingWeight(const ExtElement& a) {
  return static_cast<unsigned>(
      std::count_if(a.coords.begin(), a.coords.end(), [](auto c) { return c != 0; }));
}

std::uint64_t height(const FieldCtx& ctx, const Poly& r) {
  std::uint64_t h = 0;
  for (auto c : r.coeffs()) h = std::max(h, coeffHeight(ctx, c));
  return h;
}

std::uint64_t height(const FieldCtx& ctx, const ExtElement& a) {
  std::uint64_t h = 0;
  for (auto c : a.coords) h = std::max(h, coeffHeight(ctx, c));
  return h;
}

unsigned bitLength(std::uint64_t p) {
  return p <= 1 ? 0 : static_cast<unsigned>(std::bit_width(p - 1));
}

std::vector<ExtElement> enumerateHammingBall(const FieldCtx& ctx,
                                             const ExtElement& center, unsigned H) {
  ctx.check(center);
  std::vector<ExtElement> out;
  for (std::uint64_t c = 0; c < ctx.p(); ++c) {
    if (static_cast<unsigned>(std::popcount(c)) <= H) {
      out.push_back(ctx.add(center, ctx.fromBase(ctx.base().embed(c))));
    }
  }
  return out;
}

std::vector<ExtElement> enumerateHeightBox(const FieldCtx& ctx, unsigned d,
                                           std::uint64_t H) {
  if (d < 2 || d >= ctx.n()) throw DomainError("height box needs 2 <= d < n");
  if (H < 1) throw DomainError("height box needs H >= 1");
  const std::uint64_t side = 2 * H + 1;
  checkSize(std::pow(static_cast<long double>(side), d + 1), kEnumerationCap, "height box");
  const auto& F = ctx.base();
  const std::int64_t h = static_cast<std::int64_t>(H);
  const std::int64_t p = static_cast<std::int64_t>(ctx.p());
  std::vector<std::int64_t> a(d + 1, -h);
  Dedup dd{ctx, {}, {}};
  while (true) {
    std::uint64_t g = 0;
    for (auto v : a) g = std::gcd(g, static_cast<std::uint64_t>(v < 0 ? -v : v));
    if (g == 1) {
      ExtElement e = ctx.zero();
      for (unsigned i = 0; i <= d; ++i) e.coords[i] = F.embed(static_cast<std::uint64_t>(((a[i] % p) + p) % p));
      dd.add(std::move(e));
    }
    unsigned i = 0;
    while (i <= d && a[i] == h) a[i++] = -h;
    if (i > d) break;
    ++a[i];
  }
  return std::move(dd.out);
}

std::vector<ExtElement> enumerateWeightBall(const FieldCtx& ctx, unsigned w) {
  const unsigned n = ctx.n();
  const std::uint64_t q = ctx.q();
  w = std::min(w, n);
  long double size = 0, binom = 1;
  for (unsigned j = 1; j <= w; ++j) {
    binom = binom * (n - j + 1) / j;
    size += binom * std::pow(static_cast<long double>(q - 1), j);
  }
  checkSize(size, kEnumerationCap, "weight ball");
  std::vector<std::uint64_t> indices;
  // Extend partial elements one coordinate at a time, tracking the weight.
  struct Partial {
    std::uint64_t index, weight;
  };
  std::vector<Partial> cur{{0, 0}};
  std::uint64_t place = 1;
  for (unsigned i = 0; i < n; ++i) {
    std::vector<Partial> next;
    for (const auto& pr : cur) {
      next.push_back(pr);
      if (pr.weight == w) continue;
      for (std::uint64_t c = 1; c < q; ++c) next.push_back({pr.index + c * place, pr.weight + 1});
    }
    cur = std::move(next);
    place *= q;
  }
  for (const auto& pr : cur) {
    if (pr.index != 0) indices.push_back(pr.index);
  }
  std::sort(indices.begin(), indices.end());
  std::vector<ExtElement> out;
  for (auto i : indices) out.push_back(ctx.fromIndex(i));
  return out;
}

std::string describe(const SubsetSpec& spec) {
  struct V {
    std::string operator()(const HammingBallSpec& s) const {
      return "hammingBall(radius=" + std::to_string(s.radius) + ")";
    }
    std::string operator()(const HeightBoxSpec& s) const {
      return "heightBox(d=" + std::to_string(s.d) + ",H=" + std::to_string(s.H) + ")";
    }
    std::string operator()(const WeightBallSpec& s) const {
      return "weightBall(w=" + std::to_string(s.w) + ")";
    }
    std::string operator()(const ExplicitSpec& s) const {
      return "explicit(" + std::to_string(s.elements.size()) + ")";
    }
    std::string operator()(const WholeFieldSpec&) const { return "field"; }
  };
  return std::visit(V{}, spec);
}

std::vector<ExtElement> materialize(const FieldCtx& ctx, const SubsetSpec& spec,
                                    std::uint64_t budget) {
  if (auto* s = std::get_if<HammingBallSpec>(&spec)) {
    checkSize(ctx.p(), budget, "Hamming ball");
    return enumerateHammingBall(ctx, s->center, s->radius);
  }
  if (auto* s = std::get_if<HeightBoxSpec>(&spec)) {
    checkSize(std::pow(2.0L * s->H + 1, s->d + 1), budget, "height box");
    return enumerateHeightBox(ctx, s->d, s->H);
  }
  if (auto* s = std::get_if<WeightBallSpec>(&spec)) {
    auto out = enumerateWeightBall(ctx, s->w);
    checkSize(out.size(), budget, "weight ball");
    return out;
  }
  if (auto* s = std::get_if<ExplicitSpec>(&spec)) {
    checkSize(s->elements.size(), budget, "explicit set");
    Dedup dd{ctx, {}, {}};
    for (const auto& a : s->elements) {
      ctx.check(a);
      dd.add(a);
    }
    return std::move(dd.out);
  }
  checkSize(ctx.order(), budget, "field");
  std::vector<ExtElement> out;
  for (std::uint64_t i = 0; i < ctx.order(); ++i) out.push_back(ctx.fromIndex(i));
  return out;
}

StructureVerdict isStructured(const FieldCtx& ctx, const std::vector<ExtElement>& S) {
  if (S.empty()) throw DomainError("structure test on an empty set");
  std::set<std::uint64_t> idx;
  for (const auto& a : S) idx.insert(ctx.index(a));
  const bool hasZero = idx.count(0) > 0;
  const std::uint64_t withZero = idx.size() + (hasZero ? 0 : 1);

  std::uint64_t qd = 1;
  for (unsigned d = 1; d <= ctx.n(); ++d) {
    qd *= ctx.q();
    if (ctx.n() % d != 0 || qd != withZero) continue;
    bool closed = true;
    for (auto i : idx) {
      const auto a = ctx.fromIndex(i);
      if (field::frobenius(ctx, a, d) != a) {
        closed = false;
        break;
      }
    }
    if (closed) {
      return {true, "subfield F_{q^" + std::to_string(d) + "}"};
    }
  }
  unsigned e = 0;
  if (hasZero && isPowerOf(idx.size(), ctx.p(), &e) && digitRank(ctx, S) == e) {
    return {true, "F_p-subspace of dimension " + std::to_string(e)};
  }
  return {false, "neither an F_p-subspace nor a subfield"};
}

double thresholdSize(const FieldCtx& ctx, double epsilon, double multiplier) {
  const double L = std::log(static_cast<double>(ctx.order()));
  const double LL = std::log(L);
  const double factor = LL > 0 ? std::pow(LL, 1.0 + epsilon) : 1.0;
  return multiplier * L * factor;
}

std::uint64_t thresholdCount(const FieldCtx& ctx, double epsilon, double multiplier) {
  const double t = std::ceil(thresholdSize(ctx, epsilon, multiplier));
  return t < 1 ? 1 : static_cast<std::uint64_t>(t);
}

SearchReport searchPrimitiveNormal(const FieldCtx& ctx, const std::vector<ExtElement>& S,
                                   double epsilon) {
  SearchReport r;
  field::OpCounter ops;
  r.subsetSize = S.size();
  r.thresholdSize = thresholdSize(ctx, epsilon);
  for (const auto& a : S) {
    if (!ctx.isZero(a) && field::isPrimitiveNormal(ctx, a)) r.witnesses.push_back(a);
  }
  r.hit = !r.witnesses.empty();
  r.multiplications = ops.elapsed();
  return r;
}

SearchReport searchPrimitiveNormal(const FieldCtx& ctx, const SubsetSpec& spec,
                                   double epsilon, std::uint64_t budget) {
  return searchPrimitiveNormal(ctx, materialize(ctx, spec, budget), epsilon);
}

ExperimentReport thresholdExperiment(const FieldCtx& ctx, const SubsetSpec& family,
                                     double epsilon, std::uint64_t trials,
                                     std::uint64_t seed, double multiplier,
                                     std::uint64_t budget) {
  if (trials == 0) throw DomainError("threshold experiment needs at least one trial");
  const auto pool = materialize(ctx, family, budget);
  if (pool.empty()) throw DomainError("subset family is empty");
  ExperimentReport rep;
  rep.poolSize = pool.size();
  rep.thresholdSize = thresholdSize(ctx, epsilon, multiplier);
  rep.sampleSize = std::min<std::uint64_t>(thresholdCount(ctx, epsilon, multiplier), pool.size());
  Sampler sampler{ctx, pool, {}};
  std::vector<ExtElement> S;
  std::uint64_t witnessTotal = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    rng::Engine eng = rng::engineFor(seed, t);
    if (!sampler.draw(eng, rep.sampleSize, &S, &rep.redraws)) {
      throw DomainError("family has no nonstructured subsets of size " +
                        std::to_string(rep.sampleSize));
    }
    TrialRow row;
    row.trial = t;
    row.size = S.size();
    row.witnessCount = sampler.witnesses(S);
    row.hit = row.witnessCount > 0;
    rep.hits += row.hit;
    witnessTotal += row.witnessCount;
    rep.minWitnesses = t == 0 ? row.witnessCount : std::min(rep.minWitnesses, row.witnessCount);
    rep.rows.push_back(row);
  }
  rep.hitFraction = static_cast<double>(rep.hits) / trials;
  rep.meanWitnesses = static_cast<double>(witnessTotal) / trials;

  // Doubling search on independent streams; structured samples are allowed
  // here once redrawing fails, since the largest sizes may cover the pool.
  std::uint64_t unused = 0;
  for (std::uint64_t size = 1;; size = std::min<std::uint64_t>(size * 2, pool.size())) {
    const std::uint64_t stream = rng::deriveSeed(seed, 0x5ca1e000ULL + size);
    bool all = true;
    for (std::uint64_t t = 0; t < trials && all; ++t) {
      rng::Engine eng = rng::engineFor(stream, t);
      sampler.draw(eng, size, &S, &unused);
      all = sampler.witnesses(S) > 0;
    }
    if (all) {
      rep.alwaysHitSize = size;
      break;
    }
    if (size == pool.size()) break;
  }
  return rep;
}

}  // namespace pnfield::subsets
