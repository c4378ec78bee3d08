#include <doctest.h>

#include "ffk/errors.hpp"
#include "ffk/laurent.hpp"

using namespace ffk;

namespace {

LaurentPoly poly(std::initializer_list<std::pair<int, long>> terms) {
  LaurentPoly p;
  for (const auto& [e, c] : terms) p.add_term(e, Int(c));
  return p;
}

}  // namespace

TEST_CASE("laurent arithmetic basics") {
  LaurentPoly a = poly({{0, 1}, {1, -1}, {2, 1}});  // 1 - x + x^2
  LaurentPoly b = poly({{-1, 1}, {0, 1}});          // x^{-1} + 1
  // (1 - x + x^2)(x^{-1} + 1) = x^{-1} + x^2
  LaurentPoly prod = a * b;
  CHECK(prod.coeff(-1) == 1);
  CHECK(prod.coeff(0) == 0);
  CHECK(prod.coeff(1) == 0);
  CHECK(prod.coeff(2) == 1);
  CHECK((a - a).is_zero());
  CHECK(a.shifted(3).min_exp() == 3);
  CHECK(poly({{0, 1}, {1, -1}, {2, 1}}).evaluate(2) == 3);
  CHECK(poly({{0, 1}, {1, -1}, {2, 1}}).evaluate(4) == 13);
}

TEST_CASE("laurent gcd includes content and ignores units") {
  LaurentPoly a = poly({{1, 2}});        // 2x
  LaurentPoly b = poly({{2, 4}});        // 4x^2
  LaurentPoly g = laurent_gcd(a, b);
  CHECK(g == poly({{0, 2}}));            // canonical: min_exp 0

  // (x^2 - 1) and (x + 1)^2 share x + 1.
  g = laurent_gcd(poly({{0, -1}, {2, 1}}), poly({{0, 1}, {1, 2}, {2, 1}}));
  CHECK(g == poly({{0, 1}, {1, 1}}));

  // Coprime polynomials give a unit, canonicalized to 1.
  g = laurent_gcd(poly({{0, 1}, {1, 1}}), poly({{0, -1}, {1, 1}}));
  CHECK(g == poly({{0, 1}}));

  // Laurent units are invisible.
  g = laurent_gcd(poly({{-3, 1}, {-2, 1}}), poly({{5, 1}, {6, 1}}));
  CHECK(g == poly({{0, 1}, {1, 1}}));
}

TEST_CASE("exact division") {
  LaurentPoly n = poly({{0, -1}, {2, 1}});
  LaurentPoly d = poly({{0, 1}, {1, 1}});
  CHECK(divexact(n, d) == poly({{0, -1}, {1, 1}}));
  CHECK_THROWS_AS(divexact(poly({{0, 1}, {1, 1}}), poly({{0, 2}})), Error);
  // Units divide exactly.
  CHECK(divexact(poly({{-2, 3}}), poly({{1, 3}})) == poly({{-3, 1}}));
}

TEST_CASE("determinants, cofactor vs bareiss") {
  std::vector<std::vector<LaurentPoly>> m = {
      {poly({{0, 1}}), poly({{1, -1}})},
      {poly({{-1, 1}}), poly({{0, 1}})},
  };
  // 1*1 - (-x)(x^{-1}) = 2
  CHECK(laurent_det(m) == poly({{0, 2}}));

  // Singular matrix.
  std::vector<std::vector<LaurentPoly>> s = {
      {poly({{0, 1}}), poly({{0, 2}})},
      {poly({{1, 1}}), poly({{1, 2}})},
  };
  CHECK(laurent_det(s).is_zero());

  // Deterministic pseudo-random 5x5, both elimination routes agree.
  std::vector<std::vector<LaurentPoly>> r(5, std::vector<LaurentPoly>(5));
  unsigned state = 12345;
  auto next = [&] {
    state = state * 1103515245 + 12345;
    return static_cast<int>((state >> 16) % 7) - 3;
  };
  for (auto& row : r)
    for (auto& e : row) e = poly({{0, next()}, {1, next()}});
  CHECK(laurent_det(r, /*cofactor_cutoff=*/6) == laurent_det(r, 0));
}

TEST_CASE("empty determinant is one") {
  CHECK(laurent_det({}) == poly({{0, 1}}));
}
