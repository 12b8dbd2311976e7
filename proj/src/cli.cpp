#include "pnfield/cli.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "pnfield/errors.hpp"
#include "pnfield/numtheory.hpp"
#include "pnfield/polyfq.hpp"
#include "pnfield/verify.hpp"

namespace pnfield::cli {
namespace {

using json = nlohmann::ordered_json;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Reads an unsigned decimal starting at text[*pos].
std::uint64_t readNumber(const std::string& text, std::size_t* pos, std::size_t offset,
                         const char* what) {
  const std::size_t start = *pos;
  std::uint64_t v = 0;
  while (*pos < text.size() && std::isdigit(static_cast<unsigned char>(text[*pos]))) {
    const unsigned d = text[*pos] - '0';
    if (v > (std::numeric_limits<std::uint64_t>::max() - d) / 10) {
      throw UsageError(std::string(what) + " is too large", offset + start);
    }
    v = v * 10 + d;
    ++*pos;
  }
  if (*pos == start) throw UsageError(std::string("expected ") + what, offset + start);
  return v;
}

void expectEnd(const std::string& text, std::size_t pos, std::size_t offset) {
  if (pos != text.size()) throw UsageError("unexpected character", offset + pos);
}

std::pair<std::uint64_t, std::uint64_t> parseSpan(const std::string& text, std::size_t* pos,
                                                  std::size_t offset) {
  const std::uint64_t lo = readNumber(text, pos, offset, "range start");
  if (text.compare(*pos, 2, "..") != 0) return {lo, lo};
  *pos += 2;
  const std::uint64_t hi = readNumber(text, pos, offset, "range end");
  return {lo, hi};
}

std::string csvQuote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string r = "\"";
  for (char c : s) {
    if (c == '"') r += '"';
    r += c;
  }
  return r + "\"";
}

ExtElement liftPolynomial(const FieldCtx& ctx, const std::vector<polyfq::Coeff>& coeffs) {
  ExtElement r = ctx.zero();
  const ExtElement x = ctx.generator();
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    r = ctx.add(ctx.mul(r, x), ctx.fromBase(*it));
  }
  return r;
}

json elementJson(const ExtElement& a) { return formatElement(a); }

}  // namespace

FieldSpec parseFieldSpec(const std::string& text) {
  FieldSpec spec;
  std::size_t pos = 0;
  const std::uint64_t first = readNumber(text, &pos, 0, "prime or prime power");
  if (pos < text.size() && text[pos] == '^') {
    ++pos;
    const std::size_t kPos = pos;
    const std::uint64_t k = readNumber(text, &pos, 0, "exponent k");
    if (!numtheory::isPrime(first)) throw UsageError("base is not prime", 0);
    if (k == 0 || k > 64) throw UsageError("exponent k out of range", kPos);
    spec.p = first;
    spec.k = static_cast<unsigned>(k);
  } else {
    std::uint64_t p;
    unsigned e;
    if (!numtheory::isPrimePower(first, &p, &e)) throw UsageError("not a prime power", 0);
    spec.p = p;
    spec.k = e;
  }
  if (pos >= text.size() || text[pos] != ':') throw UsageError("expected ':'", pos);
  ++pos;
  const std::size_t nPos = pos;
  const std::uint64_t n = readNumber(text, &pos, 0, "extension degree n");
  if (n == 0 || n > 64) throw UsageError("extension degree out of range", nPos);
  spec.n = static_cast<unsigned>(n);
  std::uint64_t q = 1;
  for (unsigned i = 0; i < spec.k; ++i) q *= spec.p;
  for (int part = 0; pos < text.size(); ++part) {
    if (text[pos] != ':' || part >= 2) throw UsageError("unexpected character", pos);
    ++pos;
    std::size_t end = text.find(':', pos);
    if (end == std::string::npos) end = text.size();
    const std::string body = text.substr(pos, end - pos);
    if (!body.empty()) {
      if (part == 0) {
        spec.baseModulus = parsePoly(body, spec.p, pos);
      } else {
        spec.extModulus = parsePoly(body, q, pos);
      }
    }
    pos = end;
  }
  return spec;
}

Poly parsePoly(const std::string& text, std::uint64_t modulus, std::size_t offset) {
  std::vector<polyfq::Coeff> c;
  std::size_t pos = 0;
  while (true) {
    const std::size_t start = pos;
    const std::uint64_t v = readNumber(text, &pos, offset, "coefficient");
    if (v >= modulus) throw UsageError("coefficient out of range", offset + start);
    c.push_back(v);
    if (pos == text.size()) break;
    if (text[pos] != ',') throw UsageError("expected ','", offset + pos);
    ++pos;
  }
  return Poly(std::move(c));
}

ExtElement parseElement(const FieldCtx& ctx, const std::string& text) {
  ExtElement a = ctx.zero();
  std::size_t pos = 0, i = 0;
  if (text.empty()) throw UsageError("empty element", 0);
  while (true) {
    if (i >= ctx.n()) throw UsageError("too many coordinates", pos);
    const std::size_t start = pos;
    std::vector<polyfq::Coeff> digits{readNumber(text, &pos, 0, "coordinate")};
    while (pos < text.size() && text[pos] == '/') {
      ++pos;
      const std::size_t dPos = pos;
      digits.push_back(readNumber(text, &pos, 0, "digit"));
      if (digits.back() >= ctx.p()) throw UsageError("digit out of range", dPos);
    }
    if (digits.size() == 1) {
      if (digits[0] >= ctx.q()) throw UsageError("coordinate out of range", start);
      a.coords[i] = digits[0];
    } else {
      if (digits[0] >= ctx.p()) throw UsageError("digit out of range", start);
      if (digits.size() > ctx.k()) throw UsageError("too many digits", start);
      a.coords[i] = ctx.base().fromDigits(digits);
    }
    ++i;
    if (pos == text.size()) break;
    if (text[pos] != ',') throw UsageError("expected ','", pos);
    ++pos;
  }
  return a;
}

std::vector<counting::FieldParams> parseRange(const std::string& text) {
  if (text.empty()) return {};
  std::size_t pos = 0;
  if (text.find('x') == std::string::npos) {
    const std::uint64_t maxOrder = readNumber(text, &pos, 0, "maximum field order");
    expectEnd(text, pos, 0);
    return counting::fieldsUpTo(maxOrder, 2);
  }
  const auto [qLo, qHi] = parseSpan(text, &pos, 0);
  if (pos >= text.size() || text[pos] != 'x') throw UsageError("expected 'x'", pos);
  ++pos;
  const auto [nLo, nHi] = parseSpan(text, &pos, 0);
  expectEnd(text, pos, 0);
  if (nHi > 64) throw UsageError("extension degree out of range", pos);
  return counting::fieldGrid(qLo, qHi, static_cast<unsigned>(nLo), static_cast<unsigned>(nHi));
}

subsets::SubsetSpec parseSubsetSpec(const FieldCtx& ctx, const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError("malformed subset JSON", e.byte > 0 ? e.byte - 1 : 0);
  }
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "heightBox") {
      return subsets::HeightBoxSpec{j.at("d").get<unsigned>(), j.at("H").get<std::uint64_t>()};
    }
    if (kind == "hammingBall") {
      const ExtElement center =
          j.contains("center") ? parseElement(ctx, j["center"].get<std::string>()) : ctx.zero();
      return subsets::HammingBallSpec{center, j.at("radius").get<unsigned>()};
    }
    if (kind == "weightBall") return subsets::WeightBallSpec{j.at("w").get<unsigned>()};
    if (kind == "explicit") {
      subsets::ExplicitSpec s;
      for (const auto& e : j.at("elements")) s.elements.push_back(parseElement(ctx, e.get<std::string>()));
      return s;
    }
    if (kind == "field") return subsets::WholeFieldSpec{};
    throw UsageError("unknown subset kind '" + kind + "'", 0);
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad subset spec: ") + e.what(), 0);
  }
}

CtxPtr buildFromSpec(const FieldSpec& spec) {
  return field::buildField(spec.p, spec.k, spec.n, spec.baseModulus, spec.extModulus);
}

std::string formatPoly(const Poly& f) {
  if (f.isZero()) return "0";
  std::string out;
  for (long i = f.degree(); i >= 0; --i) {
    const auto c = f.coeff(i);
    if (c == 0) continue;
    if (!out.empty()) out += " + ";
    if (c != 1 || i == 0) out += std::to_string(c);
    if (i >= 1) out += "x";
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out;
}

std::string formatElement(const ExtElement& a) {
  std::string out;
  for (std::size_t i = 0; i < a.coords.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(a.coords[i]);
  }
  return out;
}

std::uint64_t defaultBudget() {
  const char* env = std::getenv("PNFIELD_BUDGET");
  if (!env || !*env) return kDefaultBudget;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || v == 0) return kDefaultBudget;
  return v;
}

void cmdFieldInfo(const RunConfig& cfg, std::ostream& out) {
  const auto ctx = buildFromSpec(parseFieldSpec(cfg.fieldSpec));
  const auto& mf = ctx->multFactorization();
  const auto& af = ctx->addFactorization();
  std::string multText, addText;
  for (const auto& e : mf.entries()) {
    if (!multText.empty()) multText += " * ";
    multText += std::to_string(e.prime);
    if (e.exponent > 1) multText += "^" + std::to_string(e.exponent);
  }
  if (multText.empty()) multText = "1";
  for (const auto& e : af.entries()) {
    if (!addText.empty()) addText += " * ";
    addText += "(" + formatPoly(e.factor) + ")";
    if (e.exponent > 1) addText += "^" + std::to_string(e.exponent);
  }
  if (addText.empty()) addText = "1";
  const std::uint64_t phi = numtheory::eulerPhi(mf);
  const std::uint64_t Phi = polyfq::polyPhi(af);
  const std::uint64_t omega = af.entries().size();
  if (cfg.format == Format::kJson) {
    json j;
    j["schema"] = "pnfield/1";
    j["kind"] = "fieldInfo";
    j["p"] = ctx->p();
    j["k"] = ctx->k();
    j["n"] = ctx->n();
    j["q"] = ctx->q();
    j["order"] = ctx->order();
    j["baseModulus"] = formatPoly(ctx->baseModulus());
    j["extModulus"] = formatPoly(ctx->extModulus());
    j["multFactorization"] = multText;
    j["addFactorization"] = addText;
    j["phi"] = phi;
    j["Phi"] = Phi;
    j["omega"] = omega;
    j["referenceElement"] = formatElement(ctx->tau());
    out << j.dump(2) << '\n';
    return;
  }
  out << "p = " << ctx->p() << ", k = " << ctx->k() << ", n = " << ctx->n() << ", q = "
      << ctx->q() << ", q^n = " << ctx->order() << '\n'
      << "base modulus: " << formatPoly(ctx->baseModulus()) << '\n'
      << "extension modulus: " << formatPoly(ctx->extModulus()) << '\n'
      << "q^n - 1 = " << mf.value() << " = " << multText << '\n'
      << "x^n - 1 = " << addText << '\n'
      << "phi(q^n - 1) = " << phi << '\n'
      << "Phi(x^n - 1) = " << Phi << '\n'
      << "Omega(x^n - 1) = " << omega << '\n'
      << "reference primitive normal element: " << formatElement(ctx->tau()) << '\n';
}

int cmdVerify(const RunConfig& cfg, std::ostream& out) {
  verify::VerifyOptions opts;
  opts.fields = parseRange(cfg.range);
  opts.seed = cfg.seed;
  opts.trials = cfg.trials;
  opts.budget = cfg.budget;
  const auto report = verify::runVerify(opts);
  if (cfg.format == Format::kJson) {
    verify::writeJson(out, report);
  } else {
    out << "status,discrepancy,field,id,detail\n";
    for (const auto& c : report.claims) {
      out << verify::statusName(c.status) << ','
          << (c.status == verify::Status::kReported ? (c.discrepancy ? "yes" : "no") : "")
          << ',' << c.field << ',' << c.id << ',' << csvQuote(c.detail) << '\n';
    }
  }
  return report.exitCode();
}

void cmdSweep(const RunConfig& cfg, std::ostream& out) {
  const auto rows = counting::densitySweep(parseRange(cfg.range), cfg.budget);
  if (cfg.format == Format::kJson) {
    counting::writeDensityJson(out, rows);
  } else {
    counting::writeDensityCsv(out, rows);
  }
}

void cmdSearch(const RunConfig& cfg, std::ostream& out) {
  const auto ctx = buildFromSpec(parseFieldSpec(cfg.fieldSpec));
  const auto spec = cfg.subset.empty() ? subsets::SubsetSpec{subsets::WholeFieldSpec{}}
                                       : parseSubsetSpec(*ctx, cfg.subset);
  const auto set = subsets::materialize(*ctx, spec, cfg.budget);
  const auto rep = subsets::searchPrimitiveNormal(*ctx, set, cfg.epsilon);
  const auto verdict = subsets::isStructured(*ctx, set);
  if (cfg.format == Format::kJson) {
    json j;
    j["schema"] = "pnfield/1";
    j["kind"] = "search";
    j["field"] = cfg.fieldSpec;
    j["subset"] = subsets::describe(spec);
    j["subsetSize"] = rep.subsetSize;
    j["structured"] = verdict.structured;
    j["structure"] = verdict.reason;
    j["thresholdSize"] = rep.thresholdSize;
    j["epsilon"] = cfg.epsilon;
    j["hit"] = rep.hit;
    j["witnessCount"] = rep.witnesses.size();
    j["witnesses"] = json::array();
    for (const auto& w : rep.witnesses) j["witnesses"].push_back(elementJson(w));
    j["multiplications"] = rep.multiplications;
    out << j.dump(2) << '\n';
    return;
  }
  out << "subsetSize,structured,thresholdSize,hit,witnessCount,multiplications\n"
      << rep.subsetSize << ',' << (verdict.structured ? 1 : 0) << ',' << num(rep.thresholdSize)
      << ',' << (rep.hit ? 1 : 0) << ',' << rep.witnesses.size() << ',' << rep.multiplications
      << '\n';
}

void cmdExperiment(const RunConfig& cfg, std::ostream& out) {
  const auto ctx = buildFromSpec(parseFieldSpec(cfg.fieldSpec));
  const auto family = cfg.subset.empty() ? subsets::SubsetSpec{subsets::WholeFieldSpec{}}
                                         : parseSubsetSpec(*ctx, cfg.subset);
  const auto rep = subsets::thresholdExperiment(*ctx, family, cfg.epsilon, cfg.trials, cfg.seed,
                                                cfg.multiplier, cfg.budget);
  if (cfg.format == Format::kJson) {
    json j;
    j["schema"] = "pnfield/1";
    j["kind"] = "experiment";
    j["field"] = cfg.fieldSpec;
    j["family"] = subsets::describe(family);
    j["epsilon"] = cfg.epsilon;
    j["multiplier"] = cfg.multiplier;
    j["seed"] = cfg.seed;
    j["poolSize"] = rep.poolSize;
    j["thresholdSize"] = rep.thresholdSize;
    j["sampleSize"] = rep.sampleSize;
    j["trials"] = rep.rows.size();
    j["hits"] = rep.hits;
    j["hitFraction"] = rep.hitFraction;
    j["minWitnesses"] = rep.minWitnesses;
    j["meanWitnesses"] = rep.meanWitnesses;
    j["alwaysHitSize"] = rep.alwaysHitSize ? json(*rep.alwaysHitSize) : json(nullptr);
    j["redraws"] = rep.redraws;
    j["rows"] = json::array();
    for (const auto& r : rep.rows) {
      j["rows"].push_back({{"trial", r.trial}, {"size", r.size}, {"hit", r.hit},
                           {"witnessCount", r.witnessCount}});
    }
    out << j.dump(2) << '\n';
    return;
  }
  out << subsets::kExperimentCsvHeader << '\n';
  for (const auto& r : rep.rows) {
    out << r.trial << ',' << r.size << ',' << (r.hit ? 1 : 0) << ',' << r.witnessCount << '\n';
  }
}

void checkConjectureHypotheses(const FieldCtx& ctx, const ExtElement& alpha) {
  ctx.check(alpha);
  if (ctx.isZero(alpha)) throw DomainError("alpha is zero");
  if (alpha == ctx.one() || alpha == ctx.neg(ctx.one())) throw DomainError("alpha is +1 or -1");
  for (unsigned d = 1; d < ctx.n(); ++d) {
    if (ctx.n() % d == 0 && field::frobenius(ctx, alpha, d) == alpha) {
      throw DomainError("alpha lies in the subfield F_{q^" + std::to_string(d) + "}");
    }
  }
  if (ctx.p() == 2) throw DomainError("alpha is a square (every element is in characteristic 2)");
  if (ctx.pow(alpha, (ctx.order() - 1) / 2) == ctx.one()) throw DomainError("alpha is a square");
  if (ctx.absoluteTrace(alpha) == 0) throw DomainError("alpha has trace zero");
}

void cmdConjecture(const RunConfig& cfg, std::ostream& out) {
  const auto home = buildFromSpec(parseFieldSpec(cfg.fieldSpec));
  const ExtElement a0 = cfg.alpha.empty() ? home->tau() : parseElement(*home, cfg.alpha);
  std::size_t pos = 0;
  const auto [nLo, nHi] = cfg.range.empty() ? std::pair<std::uint64_t, std::uint64_t>{2, 8}
                                            : parseSpan(cfg.range, &pos, 0);
  if (!cfg.range.empty()) expectEnd(cfg.range, pos, 0);
  if (nLo == 0 || nHi > 64) throw UsageError("extension degree out of range", 0);
  struct Row {
    unsigned n;
    std::string alpha, hypotheses;
    bool primitive = false, normal = false;
    std::uint64_t multiplications = 0;
  };
  std::vector<Row> rows;
  for (std::uint64_t n = nLo; n <= nHi; ++n) {
    const auto ctx = field::buildField(home->p(), home->k(), static_cast<unsigned>(n), home->baseModulus());
    if (ctx->order() > cfg.budget) throw ResourceError("field exceeds the element budget");
    Row r;
    r.n = static_cast<unsigned>(n);
    const ExtElement a = liftPolynomial(*ctx, a0.coords);
    r.alpha = formatElement(a);
    try {
      checkConjectureHypotheses(*ctx, a);
      r.hypotheses = "ok";
    } catch (const DomainError& e) {
      r.hypotheses = e.what();
    }
    field::OpCounter ops;
    if (!ctx->isZero(a)) {
      r.primitive = field::isPrimitive(*ctx, a);
      r.normal = field::isNormal(*ctx, a);
    }
    r.multiplications = ops.elapsed();
    rows.push_back(std::move(r));
  }
  if (cfg.format == Format::kJson) {
    json j;
    j["schema"] = "pnfield/1";
    j["kind"] = "conjecture";
    j["field"] = cfg.fieldSpec;
    j["alpha"] = formatElement(a0);
    j["rows"] = json::array();
    for (const auto& r : rows) {
      j["rows"].push_back({{"n", r.n}, {"alpha", r.alpha}, {"hypotheses", r.hypotheses},
                           {"primitive", r.primitive}, {"normal", r.normal},
                           {"primitiveNormal", r.primitive && r.normal},
                           {"multiplications", r.multiplications}});
    }
    out << j.dump(2) << '\n';
    return;
  }
  out << "q,n,alpha,hypotheses,primitive,normal,primitiveNormal,multiplications\n";
  for (const auto& r : rows) {
    out << home->q() << ',' << r.n << ',' << csvQuote(r.alpha) << ',' << csvQuote(r.hypotheses)
        << ',' << r.primitive << ',' << r.normal << ',' << (r.primitive && r.normal) << ','
        << r.multiplications << '\n';
  }
}

}  // namespace pnfield::cli
