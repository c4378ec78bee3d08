#include "ffk/alexander.hpp"

#include <algorithm>

#include "ffk/errors.hpp"

namespace ffk {

namespace {

LaurentMatrix dehn_matrix_impl(const DehnPresentation& p, bool include_null,
                               bool scale_right_rows) {
  LaurentMatrix A;
  A.rows = static_cast<int>(p.relations.size());
  std::vector<int> cols;
  for (int id = 0; id < p.region_count; ++id)
    if (include_null || id != p.null_region) cols.push_back(id);
  A.cols = static_cast<int>(cols.size());
  std::vector<int> col_of(p.region_count, -1);
  for (int i = 0; i < A.cols; ++i) {
    col_of[cols[i]] = i;
    A.col_region.push_back(cols[i]);
    A.col_index.push_back(p.indices[cols[i]]);
  }
  A.entry.assign(A.rows, std::vector<LaurentPoly>(A.cols));

  for (int r = 0; r < A.rows; ++r) {
    const DehnRelation& rel = p.relations[r];
    int xe = rel.handedness == Handedness::Left ? 1 : -1;
    int shift = (scale_right_rows && rel.handedness == Handedness::Right) ? 1 : 0;
    auto put = [&](int region, const Int& coeff, int exp) {
      if (!include_null && region == p.null_region) return;
      A.entry[r][col_of[region]].add_term(exp + shift, coeff);
    };
    put(rel.j, 1, 0);
    put(rel.k, -1, xe);
    put(rel.l, 1, xe);
    put(rel.m, -1, 0);
  }
  return A;
}

// All size-k column (or row) selections, folded by gcd.
LaurentPoly minor_gcd(const LaurentMatrix& A) {
  int k = std::min(A.rows, A.cols);
  if (k == 0) return LaurentPoly(Int(1));
  bool pick_cols = A.cols >= A.rows;
  int n = pick_cols ? A.cols : A.rows;
  std::vector<int> sel(k);
  for (int i = 0; i < k; ++i) sel[i] = i;
  LaurentPoly g;
  LaurentPoly one(Int(1));
  while (true) {
    std::vector<std::vector<LaurentPoly>> sub(k, std::vector<LaurentPoly>(k));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        sub[i][j] = pick_cols ? A.entry[i][sel[j]] : A.entry[sel[i]][j];
    g = laurent_gcd(g, laurent_det(sub));
    if (g == one) break;  // unit already
    // next combination
    int i = k - 1;
    while (i >= 0 && sel[i] == n - k + i) --i;
    if (i < 0) break;
    ++sel[i];
    for (int j = i + 1; j < k; ++j) sel[j] = sel[j - 1] + 1;
  }
  return g;
}

}  // namespace

LaurentMatrix dehn_matrix(const DehnPresentation& p, bool scale_right_rows) {
  return dehn_matrix_impl(p, false, scale_right_rows);
}

LaurentMatrix dehn_matrix_full(const DehnPresentation& p) {
  return dehn_matrix_impl(p, true, false);
}

LaurentPoly gcd_of_maximal_minors(const LaurentMatrix& A) { return minor_gcd(A); }

AlexPoly alexander_from_matrix(const LaurentMatrix& A) {
  LaurentPoly g = minor_gcd(A);
  if (g.is_zero())
    fail(ErrorKind::DegenerateDiagram, "all maximal minors vanish");
  g = g.shifted(-g.min_exp());
  if (g.coeff(0) < 0) g = -g;
  AlexPoly out;
  out.c.assign(g.max_exp() + 1, Int(0));
  for (const auto& [e, c] : g.terms()) out.c[e] = c;
  return out;
}

LaurentMatrix fox_matrix(const WirtingerPresentation& w) {
  LaurentMatrix M;
  M.rows = static_cast<int>(w.relations.size());
  M.cols = w.arc_count;
  M.entry.assign(M.rows, std::vector<LaurentPoly>(M.cols));
  for (int i = 0; i < M.cols; ++i) {
    M.col_region.push_back(i);
    M.col_index.push_back(1);  // every meridian has degree 1
  }
  for (int r = 0; r < M.rows; ++r) {
    const auto& rel = w.relations[r];
    // Relation word: over^s in over^{-s} out^{-1}.  Fox derivatives,
    // abelianized with every generator -> x:
    //   s = +1: d/d(over) = 1 - x,      d/d(in) = x,      d/d(out) = -1
    //   s = -1: d/d(over) = 1 - x^{-1}, d/d(in) = x^{-1}, d/d(out) = -1
    int e = rel.sign > 0 ? 1 : -1;
    M.entry[r][rel.over_arc].add_term(0, 1);
    M.entry[r][rel.over_arc].add_term(e, -1);
    M.entry[r][rel.in_arc].add_term(e, 1);
    M.entry[r][rel.out_arc].add_term(0, -1);
  }
  return M;
}

AlexPoly fox_alexander(const WirtingerPresentation& w) {
  LaurentMatrix M = fox_matrix(w);
  // Delete the last column, then take the gcd of maximal minors.
  if (M.cols > 0) {
    for (auto& row : M.entry) row.pop_back();
    M.cols -= 1;
    M.col_region.pop_back();
    M.col_index.pop_back();
  }
  return alexander_from_matrix(M);
}

Int evaluate(const AlexPoly& a, const Int& q) {
  Int acc = 0;
  for (auto it = a.c.rbegin(); it != a.c.rend(); ++it) acc = acc * q + *it;
  return acc;
}

LaurentPoly to_laurent(const AlexPoly& a) {
  LaurentPoly p;
  for (size_t i = 0; i < a.c.size(); ++i) p.set(static_cast<int>(i), a.c[i]);
  return p;
}

}  // namespace ffk
