#ifndef FFK_LAURENT_HPP
#define FFK_LAURENT_HPP

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

namespace ffk {

using Int = mpz_class;

Int gcd(const Int& a, const Int& b);

// Dense-enough Laurent polynomial over Z, stored as exponent -> coefficient
// with no explicit zero terms.  Exponents may be negative.
class LaurentPoly {
public:
  LaurentPoly() = default;
  explicit LaurentPoly(const Int& constant) { set(0, constant); }
  static LaurentPoly monomial(const Int& c, int exp) {
    LaurentPoly p;
    p.set(exp, c);
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  int min_exp() const;  // requires nonzero
  int max_exp() const;
  Int coeff(int exp) const;
  const std::map<int, Int>& terms() const { return terms_; }

  void set(int exp, const Int& c);
  void add_term(int exp, const Int& c);

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  LaurentPoly operator-() const;
  bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }

  // Multiply by x^k.
  LaurentPoly shifted(int k) const;

  // Evaluate at x = q; requires min_exp() >= 0 (or zero polynomial).
  Int evaluate(const Int& q) const;

  std::string str() const;  // human-readable, for diagnostics

private:
  std::map<int, Int> terms_;
};

// Content (gcd of coefficients, sign matching the leading coefficient) and
// primitive part, for polynomials normalized to min_exp == 0.
Int content(const LaurentPoly& p);

// Gcd in Z[x, 1/x] up to units, returned canonically: min_exp == 0 and
// lowest coefficient positive.  Integer content is included in the gcd.
LaurentPoly laurent_gcd(const LaurentPoly& a, const LaurentPoly& b);

// Exact division; throws Internal if not divisible.
LaurentPoly divexact(const LaurentPoly& num, const LaurentPoly& den);

// Determinant of a square matrix of Laurent polynomials.  Bareiss
// fraction-free elimination by default, plain cofactor expansion for
// small sizes (configurable cutoff, mostly for cross-checking).
LaurentPoly laurent_det(const std::vector<std::vector<LaurentPoly>>& m,
                        int cofactor_cutoff = 4);

}  // namespace ffk

#endif
