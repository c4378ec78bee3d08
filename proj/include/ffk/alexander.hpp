#ifndef FFK_ALEXANDER_HPP
#define FFK_ALEXANDER_HPP

#include <vector>

#include "ffk/laurent.hpp"
#include "ffk/presentation.hpp"

namespace ffk {

// Rows indexed by crossings, columns by regions (minus the null region
// unless stated otherwise).
struct LaurentMatrix {
  int rows = 0, cols = 0;
  std::vector<std::vector<LaurentPoly>> entry;
  std::vector<int> col_region;  // region id per column
  std::vector<int> col_index;   // Alexander index per column
};

// Normalized Alexander polynomial: coefficients c[0..n] with c[0] > 0.
struct AlexPoly {
  std::vector<Int> c;
  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool operator==(const AlexPoly& o) const { return c == o.c; }
};

// The crossing-relation matrix: row c gets 1 at column j, -1 at column m,
// and -x, x (Left crossing) or -x^{-1}, x^{-1} (Right) at columns k, l;
// slots naming the null region contribute nothing.  With
// scale_right_rows, Right rows are multiplied by x (the classical
// Alexander matrix of the mirror diagram), which only changes the answer
// by a unit.
LaurentMatrix dehn_matrix(const DehnPresentation& p, bool scale_right_rows = false);

// All v+2 columns, null region included; used for row-sum and
// chain-complex sanity checks.
LaurentMatrix dehn_matrix_full(const DehnPresentation& p);

// Gcd of all maximal minors, exact over Z[x, 1/x].
LaurentPoly gcd_of_maximal_minors(const LaurentMatrix& A);

// Normalize the minor gcd: clear the x-unit, make c0 positive.  Throws
// DegenerateDiagram if every maximal minor vanishes.
AlexPoly alexander_from_matrix(const LaurentMatrix& A);

// Independent route: Fox free derivatives of the Wirtinger relations,
// abelianized (every generator -> x), one column deleted, gcd of maximal
// minors, same normalization.
AlexPoly fox_alexander(const WirtingerPresentation& w);
LaurentMatrix fox_matrix(const WirtingerPresentation& w);

Int evaluate(const AlexPoly& a, const Int& q);

LaurentPoly to_laurent(const AlexPoly& a);

}  // namespace ffk

#endif
