#include "ffk/ztorsion.hpp"

#include <algorithm>
#include <sstream>

#include "ffk/errors.hpp"
#include "ffk/presentation.hpp"

namespace ffk {

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix mat_mul(const IntMatrix& x, const IntMatrix& y) {
  if (x.cols != y.rows) fail(ErrorKind::Internal, "matrix shape mismatch");
  IntMatrix r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      if (x.at(i, k) == 0) continue;
      for (int j = 0; j < y.cols; ++j) r.at(i, j) += x.at(i, k) * y.at(k, j);
    }
  return r;
}

Int int_det(IntMatrix m) {
  if (m.rows != m.cols) fail(ErrorKind::Internal, "determinant of non-square");
  int n = m.rows;
  if (n == 0) return 1;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m.at(k, k) == 0) {
      int pivot = -1;
      for (int i = k + 1; i < n; ++i)
        if (m.at(i, k) != 0) {
          pivot = i;
          break;
        }
      if (pivot < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(pivot, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        Int num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
        Int q;
        mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
        m.at(i, j) = q;
      }
      m.at(i, k) = 0;
    }
    prev = m.at(k, k);
  }
  Int d = m.at(n - 1, n - 1);
  return sign < 0 ? Int(-d) : d;
}

namespace {

struct SnfState {
  IntMatrix D, U, V;

  void swap_rows(int a, int b) {
    if (a == b) return;
    for (int j = 0; j < D.cols; ++j) std::swap(D.at(a, j), D.at(b, j));
    for (int j = 0; j < U.cols; ++j) std::swap(U.at(a, j), U.at(b, j));
  }
  void swap_cols(int a, int b) {
    if (a == b) return;
    for (int i = 0; i < D.rows; ++i) std::swap(D.at(i, a), D.at(i, b));
    for (int i = 0; i < V.rows; ++i) std::swap(V.at(i, a), V.at(i, b));
  }
  void add_row(int dst, int src, const Int& f) {  // row dst += f * row src
    for (int j = 0; j < D.cols; ++j) D.at(dst, j) += f * D.at(src, j);
    for (int j = 0; j < U.cols; ++j) U.at(dst, j) += f * U.at(src, j);
  }
  void add_col(int dst, int src, const Int& f) {
    for (int i = 0; i < D.rows; ++i) D.at(i, dst) += f * D.at(i, src);
    for (int i = 0; i < V.rows; ++i) V.at(i, dst) += f * V.at(i, src);
  }
  void negate_row(int r) {
    for (int j = 0; j < D.cols; ++j) D.at(r, j) = -D.at(r, j);
    for (int j = 0; j < U.cols; ++j) U.at(r, j) = -U.at(r, j);
  }

  bool find_pivot(int t, int& pi, int& pj) const {
    bool found = false;
    Int best;
    for (int i = t; i < D.rows; ++i)
      for (int j = t; j < D.cols; ++j) {
        if (D.at(i, j) == 0) continue;
        Int a = abs(D.at(i, j));
        if (!found || a < best) {
          best = a;
          pi = i;
          pj = j;
          found = true;
        }
      }
    return found;
  }

  bool cleared(int t) const {
    for (int i = t + 1; i < D.rows; ++i)
      if (D.at(i, t) != 0) return false;
    for (int j = t + 1; j < D.cols; ++j)
      if (D.at(t, j) != 0) return false;
    return true;
  }
};

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& A) {
  SnfState s;
  s.D = A;
  s.U = IntMatrix::identity(A.rows);
  s.V = IntMatrix::identity(A.cols);
  int nmin = std::min(A.rows, A.cols);

  for (int t = 0; t < nmin; ++t) {
    int pi, pj;
    if (!s.find_pivot(t, pi, pj)) break;  // submatrix is zero
    s.swap_rows(t, pi);
    s.swap_cols(t, pj);
    while (true) {
      // Reduce the pivot column and row; the minimum-pivot choice keeps
      // coefficients from blowing up at this scale.
      for (int i = t + 1; i < s.D.rows; ++i) {
        if (s.D.at(i, t) == 0) continue;
        Int q;
        mpz_tdiv_q(q.get_mpz_t(), s.D.at(i, t).get_mpz_t(), s.D.at(t, t).get_mpz_t());
        if (q != 0) s.add_row(i, t, Int(-q));
      }
      for (int j = t + 1; j < s.D.cols; ++j) {
        if (s.D.at(t, j) == 0) continue;
        Int q;
        mpz_tdiv_q(q.get_mpz_t(), s.D.at(t, j).get_mpz_t(), s.D.at(t, t).get_mpz_t());
        if (q != 0) s.add_col(j, t, Int(-q));
      }
      if (!s.cleared(t)) {
        int pi2, pj2;
        s.find_pivot(t, pi2, pj2);
        s.swap_rows(t, pi2);
        s.swap_cols(t, pj2);
        continue;
      }
      // Pivot divides everything below-right, or pull an offender in.
      bool divides_all = true;
      for (int i = t + 1; i < s.D.rows && divides_all; ++i)
        for (int j = t + 1; j < s.D.cols; ++j)
          if (s.D.at(i, j) % s.D.at(t, t) != 0) {
            s.add_row(t, i, Int(1));
            divides_all = false;
            break;
          }
      if (divides_all) break;
    }
    if (s.D.at(t, t) < 0) s.negate_row(t);
  }

  SmithDecomposition out;
  for (int t = 0; t < nmin; ++t)
    if (s.D.at(t, t) != 0) out.divisors.push_back(s.D.at(t, t));
  out.rank = static_cast<int>(out.divisors.size());
  out.U = s.U;
  out.V = s.V;

  for (size_t i = 0; i + 1 < out.divisors.size(); ++i)
    if (out.divisors[i + 1] % out.divisors[i] != 0)
      fail(ErrorKind::Internal, "SNF divisibility chain broken");
  IntMatrix check = mat_mul(mat_mul(s.U, A), s.V);
  for (int i = 0; i < check.rows; ++i)
    for (int j = 0; j < check.cols; ++j) {
      Int want = (i == j && i < out.rank) ? out.divisors[i] : Int(0);
      if (check.at(i, j) != want)
        fail(ErrorKind::Internal, "SNF recomposition check failed");
    }
  return out;
}

Int prime_to_p_part(Int n, const Int& p) {
  if (n == 0) return 0;
  n = abs(n);
  while (n % p == 0) n /= p;
  return n;
}

Int torsion_order_cokernel_p_inverted(const IntMatrix& A, const Int& p) {
  SmithDecomposition s = smith_normal_form(A);
  Int out = 1;
  for (const Int& d : s.divisors) out *= prime_to_p_part(d, p);
  return out;
}

bool is_small_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

Int int_pow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

IntMatrix dehn_matrix_at(const LaurentMatrix& A, const Int& q) {
  IntMatrix B(A.rows, A.cols);
  for (int i = 0; i < A.rows; ++i) {
    int mu = 0;
    for (int j = 0; j < A.cols; ++j)
      if (!A.entry[i][j].is_zero()) mu = std::min(mu, A.entry[i][j].min_exp());
    for (int j = 0; j < A.cols; ++j)
      if (!A.entry[i][j].is_zero())
        B.at(i, j) = A.entry[i][j].shifted(-mu).evaluate(q);
  }
  return B;
}

InvertibleCount count_invertible_modules(const Diagram& d, long p, int nu,
                                         int null_region) {
  if (!is_small_prime(p)) fail(ErrorKind::InvalidParameter, "p must be prime");
  if (nu < 1) fail(ErrorKind::InvalidParameter, "nu must be >= 1");
  Int q = int_pow(Int(p), static_cast<unsigned long>(nu));

  DehnPresentation pres = dehn_presentation(d, null_region);
  LaurentMatrix A = dehn_matrix(pres);
  IntMatrix B = dehn_matrix_at(A, q);

  // The matrix composes to zero with the index differential
  // e_j -> q^{I(j)} - 1; scale each row equation by q^K to stay in Z.
  for (int i = 0; i < B.rows; ++i) {
    int K = 0;
    for (int j = 0; j < B.cols; ++j)
      if (B.at(i, j) != 0) K = std::max(K, -A.col_index[j]);
    Int acc = 0;
    for (int j = 0; j < B.cols; ++j) {
      if (B.at(i, j) == 0) continue;
      int I = A.col_index[j];
      acc += B.at(i, j) * (int_pow(q, I + K) - int_pow(q, K));
    }
    if (acc != 0) fail(ErrorKind::Internal, "index differential check failed");
  }

  SmithDecomposition s = smith_normal_form(B);
  Int count = 1;
  for (const Int& dv : s.divisors) count *= prime_to_p_part(dv, Int(p));

  AlexPoly delta = alexander_from_matrix(A);
  InvertibleCount out;
  out.q = q;
  out.delta_q = evaluate(delta, q);
  out.count = count;
  out.p_divides_c0 = delta.c.front() % p == 0;
  out.elementary_divisors = s.divisors;
  return out;
}

InvertibleCount count_invertible_modules(const Diagram& d, long p, int nu) {
  return count_invertible_modules(d, p, nu, 0);
}

}  // namespace ffk
