#ifndef FFK_ZTORSION_HPP
#define FFK_ZTORSION_HPP

#include <vector>

#include "ffk/alexander.hpp"
#include "ffk/diagram.hpp"
#include "ffk/laurent.hpp"

namespace ffk {

struct IntMatrix {
  int rows = 0, cols = 0;
  std::vector<Int> a;  // row-major

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, Int(0)) {}
  Int& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const Int& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
  static IntMatrix identity(int n);
};

IntMatrix mat_mul(const IntMatrix& x, const IntMatrix& y);
Int int_det(IntMatrix m);  // Bareiss, exact

// U * A * V = diag(d_1..d_r, 0, ...), d_i >= 1, d_i | d_{i+1}, U and V
// unimodular.  The recomposition is checked before returning.
struct SmithDecomposition {
  std::vector<Int> divisors;  // the nonzero d_i
  int rank = 0;
  IntMatrix U, V;
};

SmithDecomposition smith_normal_form(const IntMatrix& A);

// Prime-to-p part of prod d_i: the torsion order of coker(A) over Z[1/p].
Int torsion_order_cokernel_p_inverted(const IntMatrix& A, const Int& p);

Int prime_to_p_part(Int n, const Int& p);

bool is_small_prime(long p);
Int int_pow(const Int& base, unsigned long e);

// Clear denominators of the Dehn matrix at x = q by scaling each row by
// q^{-min exponent} (a unit in Z[1/p]).
IntMatrix dehn_matrix_at(const LaurentMatrix& A, const Int& q);

struct InvertibleCount {
  Int q;
  Int delta_q;  // signed value of the normalized Alexander polynomial
  Int count;    // |group of invertible-module classes|
  bool p_divides_c0;
  std::vector<Int> elementary_divisors;
};

// The main pipeline: Dehn matrix at x = p^nu, prime-to-p torsion of the
// cokernel.  Equals |Delta(q)| whenever p does not divide c0.
InvertibleCount count_invertible_modules(const Diagram& d, long p, int nu);
InvertibleCount count_invertible_modules(const Diagram& d, long p, int nu,
                                         int null_region);

}  // namespace ffk

#endif
