#include "ffk/laurent.hpp"

#include <sstream>

#include "ffk/errors.hpp"

namespace ffk {

Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

int LaurentPoly::min_exp() const {
  if (terms_.empty()) fail(ErrorKind::Internal, "min_exp of zero polynomial");
  return terms_.begin()->first;
}

int LaurentPoly::max_exp() const {
  if (terms_.empty()) fail(ErrorKind::Internal, "max_exp of zero polynomial");
  return terms_.rbegin()->first;
}

Int LaurentPoly::coeff(int exp) const {
  auto it = terms_.find(exp);
  return it == terms_.end() ? Int(0) : it->second;
}

void LaurentPoly::set(int exp, const Int& c) {
  if (c == 0)
    terms_.erase(exp);
  else
    terms_[exp] = c;
}

void LaurentPoly::add_term(int exp, const Int& c) {
  if (c == 0) return;
  auto it = terms_.find(exp);
  if (it == terms_.end()) {
    terms_[exp] = c;
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly r;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
  return r;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r;
  for (const auto& [e, c] : terms_) r.terms_[e] = -c;
  return r;
}

LaurentPoly LaurentPoly::shifted(int k) const {
  LaurentPoly r;
  for (const auto& [e, c] : terms_) r.terms_[e + k] = c;
  return r;
}

Int LaurentPoly::evaluate(const Int& q) const {
  if (terms_.empty()) return 0;
  if (min_exp() < 0)
    fail(ErrorKind::Internal, "evaluate needs nonnegative exponents");
  // Horner from the top exponent down.
  Int acc = 0;
  int prev = max_exp();
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    for (int k = prev; k > it->first; --k) acc *= q;
    acc += it->second;
    prev = it->first;
  }
  for (int k = prev; k > 0; --k) acc *= q;
  return acc;
}

std::string LaurentPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    if (!first) os << (c > 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    Int a = abs(c);
    if (a != 1 || e == 0) os << a.get_str();
    if (e != 0) {
      os << "x";
      if (e != 1) os << "^" << e;
    }
    first = false;
  }
  return os.str();
}

Int content(const LaurentPoly& p) {
  if (p.is_zero()) return 0;
  Int g = 0;
  for (const auto& [e, c] : p.terms()) g = gcd(g, c);
  if (p.terms().rbegin()->second < 0) g = -g;
  return g;
}

namespace {

// Shift so min_exp == 0 (identity for zero).
LaurentPoly to_poly(const LaurentPoly& p) {
  if (p.is_zero()) return p;
  return p.shifted(-p.min_exp());
}

LaurentPoly primitive_part(const LaurentPoly& p) {
  if (p.is_zero()) return p;
  Int c = content(p);
  LaurentPoly r;
  for (const auto& [e, co] : p.terms()) r.set(e, co / c);
  return r;
}

int degree(const LaurentPoly& p) { return p.is_zero() ? -1 : p.max_exp(); }

// Pseudo-remainder of a by b in Z[x]; both with min_exp >= 0, b nonzero.
LaurentPoly prem(LaurentPoly a, const LaurentPoly& b) {
  int db = degree(b);
  Int lb = b.coeff(db);
  while (!a.is_zero() && degree(a) >= db) {
    int da = degree(a);
    Int la = a.coeff(da);
    // a = lb*a - la*x^(da-db)*b
    LaurentPoly scaled;
    for (const auto& [e, c] : a.terms()) scaled.set(e, c * lb);
    LaurentPoly sub = b.shifted(da - db);
    LaurentPoly sub2;
    for (const auto& [e, c] : sub.terms()) sub2.set(e, c * la);
    a = scaled - sub2;
  }
  return a;
}

}  // namespace

LaurentPoly laurent_gcd(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() && b.is_zero()) return LaurentPoly();
  LaurentPoly f = to_poly(a), g = to_poly(b);
  if (f.is_zero()) std::swap(f, g);
  if (g.is_zero()) {
    LaurentPoly r = primitive_part(f);
    Int c = abs(content(f));
    LaurentPoly out;
    for (const auto& [e, co] : r.terms()) out.set(e, co * c);
    if (out.coeff(out.min_exp()) < 0) out = -out;
    return to_poly(out);
  }
  Int ic = gcd(abs(content(f)), abs(content(g)));
  f = primitive_part(f);
  g = primitive_part(g);
  // Primitive Euclidean remainder sequence; fine at knot-diagram scale.
  while (!g.is_zero()) {
    LaurentPoly r = prem(f, g);
    f = g;
    g = r.is_zero() ? r : primitive_part(to_poly(r));
  }
  LaurentPoly out;
  for (const auto& [e, co] : f.terms()) out.set(e, co * ic);
  out = to_poly(out);
  if (out.coeff(out.min_exp()) < 0) out = -out;
  return out;
}

LaurentPoly divexact(const LaurentPoly& num, const LaurentPoly& den) {
  if (den.is_zero()) fail(ErrorKind::Internal, "division by zero polynomial");
  if (num.is_zero()) return num;
  // Reduce to Z[x] long division, tracking the unit x^k separately.
  int shift = num.min_exp() - den.min_exp();
  LaurentPoly n = to_poly(num), d = to_poly(den);
  LaurentPoly q;
  int dd = degree(d);
  Int ld = d.coeff(dd);
  while (!n.is_zero()) {
    int dn = degree(n);
    if (dn < dd) fail(ErrorKind::Internal, "inexact polynomial division");
    Int ln = n.coeff(dn);
    if (ln % ld != 0) fail(ErrorKind::Internal, "inexact polynomial division");
    Int c = ln / ld;
    q.add_term(dn - dd, c);
    LaurentPoly sub = d.shifted(dn - dd);
    LaurentPoly sub2;
    for (const auto& [e, co] : sub.terms()) sub2.set(e, co * c);
    n -= sub2;
  }
  return q.shifted(shift);
}

namespace {

LaurentPoly det_cofactor(const std::vector<std::vector<LaurentPoly>>& m,
                         std::vector<int>& cols, int row) {
  int n = static_cast<int>(m.size());
  if (row == n) return LaurentPoly(Int(1));
  LaurentPoly acc;
  for (size_t i = 0; i < cols.size(); ++i) {
    int c = cols[i];
    if (c < 0) continue;
    if (m[row][c].is_zero()) continue;
    cols[i] = -1;
    LaurentPoly sub = det_cofactor(m, cols, row + 1);
    cols[i] = c;
    // Count live columns before i for the sign.
    int before = 0;
    for (size_t j = 0; j < i; ++j)
      if (cols[j] >= 0) ++before;
    LaurentPoly term = m[row][c] * sub;
    if (before % 2)
      acc -= term;
    else
      acc += term;
  }
  return acc;
}

LaurentPoly det_bareiss(std::vector<std::vector<LaurentPoly>> m) {
  int n = static_cast<int>(m.size());
  LaurentPoly prev(Int(1));
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k].is_zero()) {
      int pivot = -1;
      for (int i = k + 1; i < n; ++i)
        if (!m[i][k].is_zero()) {
          pivot = i;
          break;
        }
      if (pivot < 0) return LaurentPoly();  // singular
      std::swap(m[k], m[pivot]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        LaurentPoly num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        m[i][j] = divexact(num, prev);
      }
      m[i][k] = LaurentPoly();
    }
    prev = m[k][k];
  }
  LaurentPoly d = m[n - 1][n - 1];
  return sign < 0 ? -d : d;
}

}  // namespace

LaurentPoly laurent_det(const std::vector<std::vector<LaurentPoly>>& m,
                        int cofactor_cutoff) {
  int n = static_cast<int>(m.size());
  if (n == 0) return LaurentPoly(Int(1));
  for (const auto& row : m)
    if (static_cast<int>(row.size()) != n)
      fail(ErrorKind::Internal, "laurent_det needs a square matrix");
  if (n <= cofactor_cutoff) {
    std::vector<int> cols(n);
    for (int i = 0; i < n; ++i) cols[i] = i;
    return det_cofactor(m, cols, 0);
  }
  return det_bareiss(m);
}

}  // namespace ffk
