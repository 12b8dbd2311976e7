#pragma once

// Arithmetic in F_q and F_q[x], factorization of x^n - 1, and the
// polynomial totient / Moebius / divisor-sum functions.

#include <cstdint>
#include <memory>
#include <vector>

namespace pnfield::polyfq {

// An element of F_q packed as sum_i digit_i * p^i, where digit_i is the
// coefficient of y^i in F_p[y]/(baseModulus). For k = 1 this is just the
// residue mod p.
using Coeff = std::uint64_t;

class BaseField {
 public:
  static std::shared_ptr<const BaseField> prime(std::uint64_t p);
  // `modulus` is monic of degree k >= 2 over F_p, ascending coefficients.
  // Throws ValidationError unless it is irreducible.
  static std::shared_ptr<const BaseField> extension(std::uint64_t p,
                                                    std::vector<Coeff> modulus);

  std::uint64_t p() const { return p_; }
  unsigned k() const { return k_; }
  std::uint64_t q() const { return q_; }
  // Ascending F_p coefficients including the leading 1; {0, 1} when k = 1.
  const std::vector<Coeff>& modulus() const { return modulus_; }

  Coeff add(Coeff a, Coeff b) const;
  Coeff sub(Coeff a, Coeff b) const;
  Coeff neg(Coeff a) const;
  Coeff mul(Coeff a, Coeff b) const;
  Coeff inv(Coeff a) const;  // DomainError on 0
  Coeff div(Coeff a, Coeff b) const { return mul(a, inv(b)); }
  Coeff pow(Coeff a, std::uint64_t e) const;

  std::vector<Coeff> digits(Coeff a) const;
  Coeff fromDigits(const std::vector<Coeff>& d) const;
  // Embeds the F_p element c.
  Coeff embed(std::uint64_t c) const { return c % p_; }
  // Absolute trace F_q -> F_p.
  std::uint64_t traceToPrime(Coeff a) const;

 private:
  BaseField() = default;
  Coeff slowMul(Coeff a, Coeff b) const;
  void buildTables();

  std::uint64_t p_ = 2;
  unsigned k_ = 1;
  std::uint64_t q_ = 2;
  std::vector<Coeff> modulus_;
  std::vector<std::uint32_t> log_;  // log_[0] unused
  std::vector<std::uint32_t> exp_;  // length 2(q-1)
  std::vector<std::uint32_t> addTable_;
};

using FieldPtr = std::shared_ptr<const BaseField>;

// Dense polynomial over F_q, ascending coefficients, no trailing zeros. The
// zero polynomial has an empty coefficient list and degree kZeroDegree.
class Poly {
 public:
  static constexpr long kZeroDegree = -1;

  Poly() = default;
  explicit Poly(std::vector<Coeff> coeffs);
  static Poly constant(Coeff c) { return Poly({c}); }
  static Poly monomial(unsigned degree, Coeff c = 1);

  const std::vector<Coeff>& coeffs() const { return coeffs_; }
  bool isZero() const { return coeffs_.empty(); }
  long degree() const {
    return isZero() ? kZeroDegree : static_cast<long>(coeffs_.size()) - 1;
  }
  Coeff leading() const { return isZero() ? 0 : coeffs_.back(); }
  Coeff coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : 0; }
  bool isMonic() const { return !isZero() && coeffs_.back() == 1; }

  friend bool operator==(const Poly&, const Poly&) = default;
  // Orders by degree, then by coefficients from the constant term upward.
  friend bool operator<(const Poly& a, const Poly& b);

 private:
  std::vector<Coeff> coeffs_;
};

Poly add(const BaseField& F, const Poly& a, const Poly& b);
Poly sub(const BaseField& F, const Poly& a, const Poly& b);
Poly mul(const BaseField& F, const Poly& a, const Poly& b);
Poly scale(const BaseField& F, const Poly& a, Coeff c);
Poly monic(const BaseField& F, const Poly& a);
// DomainError when b is zero.
void divmod(const BaseField& F, const Poly& a, const Poly& b, Poly* quot,
            Poly* rem);
Poly mod(const BaseField& F, const Poly& a, const Poly& b);
Poly mulmod(const BaseField& F, const Poly& a, const Poly& b, const Poly& m);
Poly powmod(const BaseField& F, const Poly& base, std::uint64_t e,
            const Poly& m);
// Monic gcd; DomainError when both are zero.
Poly gcd(const BaseField& F, const Poly& a, const Poly& b);
Coeff evaluate(const BaseField& F, const Poly& a, Coeff x);
Poly derivative(const BaseField& F, const Poly& a);
// x^n - 1.
Poly xnMinus1(const BaseField& F, unsigned n);

// Rabin's test: f of degree d is irreducible iff x^{q^d} = x mod f and
// gcd(x^{q^{d/r}} - x, f) = 1 for every prime r | d.
bool isIrreducible(const BaseField& F, const Poly& f);

// Smallest monic irreducible of the given degree, comparing coefficient
// tuples (a_0, a_1, ..., a_{d-1}) lexicographically with a_0 first.
Poly smallestIrreducible(const BaseField& F, unsigned degree);

struct PolyFactor {
  Poly factor;
  unsigned exponent;

  friend bool operator==(const PolyFactor&, const PolyFactor&) = default;
};

// Product of distinct monic irreducibles raised to positive exponents,
// sorted by factor. `q` is the size of the coefficient field.
class PolyFactorization {
 public:
  PolyFactorization() = default;  // the constant 1
  PolyFactorization(std::uint64_t q, std::vector<PolyFactor> entries,
                    Poly value);

  std::uint64_t q() const { return q_; }
  const std::vector<PolyFactor>& entries() const { return entries_; }
  const Poly& value() const { return value_; }
  long degree() const { return value_.degree(); }

  // Checks ordering, distinctness, monic irreducibility, and the product.
  bool isValid(const BaseField& F) const;

 private:
  std::uint64_t q_ = 2;
  std::vector<PolyFactor> entries_;
  Poly value_ = Poly::constant(1);
};

// Factors x^n - 1 over F_q. With n = m p^v, p not dividing m, x^m - 1 is
// split by distinct-degree and seeded equal-degree splitting; every exponent
// is p^v. Throws DomainError for n = 0.
PolyFactorization factorXnMinus1(const BaseField& F, unsigned n);

// Every monic divisor of the factored polynomial, each as its own
// factorization, in exponent-odometer order (first factor fastest).
std::vector<PolyFactorization> monicDivisors(const BaseField& F,
                                             const PolyFactorization& f);

struct CyclotomicRow {
  std::uint64_t d;
  std::uint64_t orderOfQ;  // ord_d q
  std::uint64_t count;     // phi(d) / ord_d q

  friend bool operator==(const CyclotomicRow&, const CyclotomicRow&) = default;
};

struct CyclotomicProfile {
  std::vector<CyclotomicRow> rows;  // one per divisor d of m, ascending
  unsigned pExponent = 0;           // v with n = m p^v
  std::uint64_t m = 1;
  std::uint64_t omega = 0;          // number of distinct irreducible factors
};

// Throws DomainError unless q is a prime power and n >= 1.
CyclotomicProfile cyclotomicFactorCounts(std::uint64_t q, std::uint64_t n);

// Phi_q(x^n - 1) = q^{n-m} prod_{d | m} (q^{ord_d q} - 1)^{phi(d)/ord_d q}
// from the cyclotomic profile. ResourceError if q^n >= 2^63.
std::uint64_t phiXnMinus1(std::uint64_t q, std::uint64_t n);

// Phi_q(f) = prod over r^e || f of q^{(e-1) deg r} (q^{deg r} - 1).
std::uint64_t polyPhi(const PolyFactorization& f);
// Signed: 0 if some exponent exceeds 1, else (-1)^{#factors}.
int polyMobius(const PolyFactorization& f);
// sigma_q(f) = sum over monic d | f of q^{deg d}. ResourceError on overflow.
std::uint64_t polySigma(const PolyFactorization& f);

struct SigmaPhiReport {
  std::uint64_t q = 0, n = 0;
  std::uint64_t sigma = 0, phi = 0;
  // (sigma / (q^n - 1)) (Phi / (q^n - 1)) against prod_r (1 - q^{-deg r}).
  long double literalLhs = 0, literalRhs = 0;
  bool literalHolds = false;
  // (sigma / q^n) (Phi / q^n) against prod_{r^v} (1 - q^{-(v+1) deg r}).
  long double naturalLhs = 0, naturalRhs = 0;
  bool naturalHolds = false;
};

SigmaPhiReport sigmaPhiIdentityCheck(const BaseField& F, unsigned n);

}  // namespace pnfield::polyfq
