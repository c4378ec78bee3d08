#include "ffk/finitefield.hpp"

#include <algorithm>
#include <sstream>

#include "ffk/errors.hpp"

namespace ffk {

namespace {

bool small_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Dense polynomials over F_p, little-endian coefficients, for modulus
// searching and inversion.  Kept separate from FieldCtx::Elem, which has
// fixed length m.
using Poly = std::vector<uint32_t>;

int deg(const Poly& f) {
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
    if (f[i]) return i;
  return -1;
}

void trim(Poly& f) { f.resize(deg(f) + 1); }

Poly poly_mul(const Poly& a, const Poly& b, long p) {
  if (deg(a) < 0 || deg(b) < 0) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    uint64_t ai = a[i];
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<uint32_t>((r[i + j] + ai * b[j]) % p);
  }
  return r;
}

uint32_t inv_mod(long a, long p) {
  long t = 0, nt = 1, r = p, nr = a % p;
  while (nr) {
    long q = r / nr;
    std::swap(t -= q * nt, nt);
    std::swap(r -= q * nr, nr);
  }
  return static_cast<uint32_t>((t % p + p) % p);
}

Poly poly_mod(Poly a, const Poly& f, long p) {
  int df = deg(f);
  uint32_t lead_inv = inv_mod(f[df], p);
  for (int i = deg(a); i >= df; --i) {
    if (!a[i]) continue;
    uint64_t c = static_cast<uint64_t>(a[i]) * lead_inv % p;
    for (int j = 0; j <= df; ++j) {
      uint64_t sub = c * f[j] % p;
      a[i - df + j] = static_cast<uint32_t>((a[i - df + j] + p - sub) % p);
    }
  }
  trim(a);
  return a;
}

Poly poly_powmod(Poly base, uint64_t e, const Poly& f, long p) {
  Poly r{1};
  base = poly_mod(std::move(base), f, p);
  while (e) {
    if (e & 1) r = poly_mod(poly_mul(r, base, p), f, p);
    e >>= 1;
    if (e) base = poly_mod(poly_mul(base, base, p), f, p);
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, long p) {
  trim(a);
  trim(b);
  while (deg(b) >= 0) {
    a = poly_mod(std::move(a), b, p);
    std::swap(a, b);
    trim(b);
  }
  return a;
}

Poly poly_sub(Poly a, const Poly& b, long p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i)
    a[i] = static_cast<uint32_t>((a[i] + p - b[i]) % p);
  trim(a);
  return a;
}

uint64_t checked_pow(long p, int m, bool* overflow) {
  uint64_t r = 1;
  for (int i = 0; i < m; ++i) {
    if (r > UINT64_MAX / static_cast<uint64_t>(p)) {
      *overflow = true;
      return 0;
    }
    r *= static_cast<uint64_t>(p);
  }
  *overflow = false;
  return r;
}

std::vector<int> prime_factors(int m) {
  std::vector<int> out;
  for (int r = 2; r * r <= m; ++r) {
    if (m % r) continue;
    out.push_back(r);
    while (m % r == 0) m /= r;
  }
  if (m > 1) out.push_back(m);
  return out;
}

bool is_irreducible(const Poly& f, long p, int m) {
  // x^{p^m} == x mod f, and gcd(x^{p^{m/r}} - x, f) = 1 for primes r | m.
  bool ovf = false;
  uint64_t pm = checked_pow(p, m, &ovf);
  if (ovf) fail(ErrorKind::InvalidParameter, "p^m does not fit 64 bits");
  Poly x{0, 1};
  Poly xq = poly_powmod(x, pm, f, p);
  if (poly_sub(xq, poly_mod(x, f, p), p) != Poly{}) return false;
  for (int r : prime_factors(m)) {
    uint64_t e = checked_pow(p, m / r, &ovf);
    Poly g = poly_sub(poly_powmod(x, e, f, p), poly_mod(x, f, p), p);
    if (deg(poly_gcd(g, f, p)) > 0) return false;
  }
  return true;
}

}  // namespace

FieldCtx FieldCtx::make(long p, int m, bool allow_large) {
  if (!small_prime(p)) fail(ErrorKind::InvalidParameter, "p must be prime");
  if (m < 1) fail(ErrorKind::InvalidParameter, "m must be >= 1");
  bool ovf = false;
  uint64_t size = checked_pow(p, m, &ovf);
  if (ovf) fail(ErrorKind::InvalidParameter, "p^m does not fit 64 bits");
  if (size > (1ull << 20) && !allow_large)
    fail(ErrorKind::BudgetExceeded,
         "field size above 2^20; pass the large-field override");

  FieldCtx ctx;
  ctx.p_ = p;
  ctx.m_ = m;
  ctx.size_ = size;

  // Lexicographically smallest monic irreducible, low-degree
  // coefficients most significant in the comparison.
  std::vector<uint64_t> pw(m + 1, 1);
  for (int i = 1; i <= m; ++i) pw[i] = pw[i - 1] * static_cast<uint64_t>(p);
  Poly f(m + 1, 0);
  f[m] = 1;
  bool found = false;
  for (uint64_t n = 0; n < size && !found; ++n) {
    for (int i = 0; i < m; ++i)
      f[i] = static_cast<uint32_t>(n / pw[m - 1 - i] % static_cast<uint64_t>(p));
    if (is_irreducible(f, p, m)) found = true;
  }
  if (!found) fail(ErrorKind::Internal, "no irreducible polynomial found");
  ctx.modulus_ = f;

  // p^k-power maps are F_p-linear; store basis images for k = 0..m-1.
  ctx.frob_mats_.resize(m);
  auto& id = ctx.frob_mats_[0];
  id.assign(m, std::vector<uint32_t>(m, 0));
  for (int i = 0; i < m; ++i) id[i][i] = 1;
  if (m > 1) {
    auto& single = ctx.frob_mats_[1];
    single.resize(m);
    for (int i = 0; i < m; ++i) {
      Poly xi(i + 1, 0);
      xi[i] = 1;
      Poly img = poly_powmod(xi, static_cast<uint64_t>(p), f, p);
      img.resize(m, 0);
      single[i] = img;
    }
    for (int k = 2; k < m; ++k) {
      auto& prev = ctx.frob_mats_[k - 1];
      auto& cur = ctx.frob_mats_[k];
      cur.assign(m, std::vector<uint32_t>(m, 0));
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
          if (!prev[i][j]) continue;
          uint64_t c = prev[i][j];
          for (int t = 0; t < m; ++t)
            cur[i][t] = static_cast<uint32_t>((cur[i][t] + c * single[j][t]) %
                                              static_cast<uint64_t>(p));
        }
    }
  }
  return ctx;
}

FieldCtx::Elem FieldCtx::one() const {
  Elem e(m_, 0);
  e[0] = 1;
  return e;
}

FieldCtx::Elem FieldCtx::from_uint(uint64_t code) const {
  Elem e(m_, 0);
  for (int i = 0; i < m_ && code; ++i) {
    e[i] = static_cast<uint32_t>(code % static_cast<uint64_t>(p_));
    code /= static_cast<uint64_t>(p_);
  }
  return e;
}

uint64_t FieldCtx::to_uint(const Elem& a) const {
  uint64_t code = 0;
  for (int i = m_ - 1; i >= 0; --i)
    code = code * static_cast<uint64_t>(p_) + a[i];
  return code;
}

bool FieldCtx::is_zero(const Elem& a) const {
  return std::all_of(a.begin(), a.end(), [](uint32_t c) { return c == 0; });
}

bool FieldCtx::is_one(const Elem& a) const {
  if (a[0] != 1) return false;
  for (int i = 1; i < m_; ++i)
    if (a[i]) return false;
  return true;
}

FieldCtx::Elem FieldCtx::add(const Elem& a, const Elem& b) const {
  Elem r(m_);
  for (int i = 0; i < m_; ++i) {
    uint32_t s = a[i] + b[i];
    r[i] = s >= static_cast<uint32_t>(p_) ? s - static_cast<uint32_t>(p_) : s;
  }
  return r;
}

FieldCtx::Elem FieldCtx::sub(const Elem& a, const Elem& b) const {
  Elem r(m_);
  for (int i = 0; i < m_; ++i) {
    uint32_t s = a[i] + static_cast<uint32_t>(p_) - b[i];
    r[i] = s >= static_cast<uint32_t>(p_) ? s - static_cast<uint32_t>(p_) : s;
  }
  return r;
}

FieldCtx::Elem FieldCtx::neg(const Elem& a) const { return sub(zero(), a); }

FieldCtx::Elem FieldCtx::mul(const Elem& a, const Elem& b) const {
  std::vector<uint64_t> acc(2 * m_ - 1, 0);
  for (int i = 0; i < m_; ++i) {
    if (!a[i]) continue;
    uint64_t ai = a[i];
    for (int j = 0; j < m_; ++j) acc[i + j] += ai * b[j];
  }
  // Reduce by the monic modulus.
  uint64_t p = static_cast<uint64_t>(p_);
  for (int i = 2 * m_ - 2; i >= m_; --i) {
    uint64_t c = acc[i] % p;
    if (!c) continue;
    for (int j = 0; j < m_; ++j) {
      uint64_t sub = c * modulus_[j] % p;
      acc[i - m_ + j] += p - sub;
    }
  }
  Elem r(m_);
  for (int i = 0; i < m_; ++i) r[i] = static_cast<uint32_t>(acc[i] % p);
  return r;
}

FieldCtx::Elem FieldCtx::inv(const Elem& a) const {
  if (is_zero(a)) fail(ErrorKind::InvalidParameter, "inverse of zero");
  Poly r(modulus_), nr(a.begin(), a.end());
  trim(nr);
  Poly t{}, nt{1};
  while (deg(nr) >= 0) {
    // r = q*nr + rem
    Poly rem = r;
    Poly q(std::max<size_t>(1, r.size()), 0);
    int dnr = deg(nr);
    uint32_t li = inv_mod(nr[dnr], p_);
    for (int i = deg(rem); i >= dnr; --i) {
      if (!rem[i]) continue;
      uint64_t c = static_cast<uint64_t>(rem[i]) * li % p_;
      q[i - dnr] = static_cast<uint32_t>(c);
      for (int j = 0; j <= dnr; ++j) {
        uint64_t sub = c * nr[j] % p_;
        rem[i - dnr + j] =
            static_cast<uint32_t>((rem[i - dnr + j] + p_ - sub) % p_);
      }
    }
    trim(rem);
    trim(q);
    Poly new_t = poly_sub(t, poly_mul(q, nt, p_), p_);
    r = nr;
    nr = rem;
    t = nt;
    nt = new_t;
  }
  // r is a nonzero constant gcd; scale t by its inverse.
  uint32_t scale = inv_mod(r.empty() ? 1 : r[0], p_);
  Elem out(m_, 0);
  for (size_t i = 0; i < t.size() && i < static_cast<size_t>(m_); ++i)
    out[i] = static_cast<uint32_t>(static_cast<uint64_t>(t[i]) * scale % p_);
  return out;
}

FieldCtx::Elem FieldCtx::pow(Elem a, uint64_t e) const {
  Elem r = one();
  while (e) {
    if (e & 1) r = mul(r, a);
    e >>= 1;
    if (e) a = mul(a, a);
  }
  return r;
}

FieldCtx::Elem FieldCtx::frob_p(const Elem& a) const { return frob_p_k(a, 1); }

FieldCtx::Elem FieldCtx::frob_p_k(const Elem& a, long k) const {
  long kk = ((k % m_) + m_) % m_;  // p-power map has order m
  if (kk == 0) return a;
  const auto& mat = frob_mats_[kk];
  uint64_t p = static_cast<uint64_t>(p_);
  std::vector<uint64_t> acc(m_, 0);
  for (int i = 0; i < m_; ++i) {
    if (!a[i]) continue;
    uint64_t ai = a[i];
    for (int j = 0; j < m_; ++j) acc[j] += ai * mat[i][j];
  }
  Elem r(m_);
  for (int j = 0; j < m_; ++j) r[j] = static_cast<uint32_t>(acc[j] % p);
  return r;
}

FieldCtx::Elem frobenius(const FieldCtx& ctx, const FieldCtx::Elem& a, uint64_t q) {
  if (q == 0) fail(ErrorKind::InvalidParameter, "q must be a power of p");
  long nu = 0;
  uint64_t t = q;
  while (t > 1) {
    if (t % static_cast<uint64_t>(ctx.p()) != 0)
      fail(ErrorKind::InvalidParameter, "q must be a power of p");
    t /= static_cast<uint64_t>(ctx.p());
    ++nu;
  }
  return ctx.frob_p_k(a, nu);
}

Embedding Embedding::make(const FieldCtx& from, const FieldCtx& to) {
  if (from.p() != to.p())
    fail(ErrorKind::InvalidParameter, "embedding needs equal characteristic");
  if (to.m() % from.m() != 0)
    fail(ErrorKind::InvalidParameter, "embedding needs from.m | to.m");
  Embedding e;
  e.from_ = &from;
  e.to_ = &to;
  if (from.m() == to.m()) {
    // Same deterministic modulus: identity.
    for (int i = 0; i < from.m(); ++i) {
      FieldCtx::Elem b = to.zero();
      b[i] = 1;
      e.gen_powers_.push_back(b);
    }
    return e;
  }

  // Elements of the subfield F_{p^m} inside `to`: kernel of frob^m - id,
  // an F_p-linear map.  Gaussian elimination over F_p.
  long p = to.p();
  int M = to.m(), m = from.m();
  std::vector<std::vector<uint32_t>> cols(M);
  for (int i = 0; i < M; ++i) {
    FieldCtx::Elem b = to.zero();
    b[i] = 1;
    FieldCtx::Elem img = to.frob_p_k(b, m);
    img[i] = (img[i] + static_cast<uint32_t>(p) - 1) % static_cast<uint32_t>(p);
    cols[i] = img;
  }
  // Row-reduce the M x M matrix whose columns are cols[i].
  std::vector<std::vector<uint32_t>> a(M, std::vector<uint32_t>(M));
  for (int r = 0; r < M; ++r)
    for (int c = 0; c < M; ++c) a[r][c] = cols[c][r];
  std::vector<int> pivot_col(M, -1);
  int rank = 0;
  for (int c = 0; c < M && rank < M; ++c) {
    int pr = -1;
    for (int r = rank; r < M; ++r)
      if (a[r][c]) {
        pr = r;
        break;
      }
    if (pr < 0) continue;
    std::swap(a[rank], a[pr]);
    uint32_t li = inv_mod(a[rank][c], p);
    for (int j = 0; j < M; ++j)
      a[rank][j] = static_cast<uint32_t>(static_cast<uint64_t>(a[rank][j]) * li % p);
    for (int r = 0; r < M; ++r) {
      if (r == rank || !a[r][c]) continue;
      uint64_t f = a[r][c];
      for (int j = 0; j < M; ++j) {
        uint64_t sub = f * a[rank][j] % p;
        a[r][j] = static_cast<uint32_t>((a[r][j] + p - sub) % p);
      }
    }
    pivot_col[rank] = c;
    ++rank;
  }
  // Free columns parameterize the kernel.
  std::vector<int> is_pivot(M, 0);
  for (int r = 0; r < rank; ++r) is_pivot[pivot_col[r]] = 1;
  std::vector<std::vector<uint32_t>> basis;
  for (int c = 0; c < M; ++c) {
    if (is_pivot[c]) continue;
    std::vector<uint32_t> vec(M, 0);
    vec[c] = 1;
    for (int r = 0; r < rank; ++r) {
      // pivot_col[r] entry = -a[r][c]
      vec[pivot_col[r]] = static_cast<uint32_t>((p - a[r][c]) % p);
    }
    basis.push_back(vec);
  }
  uint64_t combos = 1;
  for (size_t i = 0; i < basis.size(); ++i) combos *= static_cast<uint64_t>(p);
  if (static_cast<int>(basis.size()) != m || combos != from.size())
    fail(ErrorKind::Internal, "subfield dimension mismatch");
  if (combos > (1ull << 20))
    fail(ErrorKind::BudgetExceeded, "embedding root search above budget");

  // Evaluate the source modulus on each subfield element; the roots are
  // the m conjugate images of the source generator.
  const auto& f = from.modulus();
  uint64_t best_code = 0;
  FieldCtx::Elem best;
  bool have = false;
  for (uint64_t n = 0; n < combos; ++n) {
    FieldCtx::Elem cand = to.zero();
    uint64_t t = n;
    for (size_t b = 0; b < basis.size(); ++b) {
      uint32_t digit = static_cast<uint32_t>(t % static_cast<uint64_t>(p));
      t /= static_cast<uint64_t>(p);
      if (!digit) continue;
      for (int j = 0; j < M; ++j)
        cand[j] = static_cast<uint32_t>(
            (cand[j] + static_cast<uint64_t>(digit) * basis[b][j]) % p);
    }
    // Horner: f(cand) in `to`.
    FieldCtx::Elem acc = to.zero();
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i) {
      acc = to.mul(acc, cand);
      FieldCtx::Elem c0 = to.zero();
      c0[0] = f[i] % static_cast<uint32_t>(p);
      acc = to.add(acc, c0);
    }
    if (to.is_zero(acc)) {
      uint64_t code = to.to_uint(cand);
      if (!have || code < best_code) {
        best_code = code;
        best = cand;
        have = true;
      }
    }
  }
  if (!have) fail(ErrorKind::Internal, "source modulus has no root in target");

  e.gen_powers_.resize(from.m());
  e.gen_powers_[0] = to.one();
  for (int i = 1; i < from.m(); ++i)
    e.gen_powers_[i] = to.mul(e.gen_powers_[i - 1], best);
  return e;
}

FieldCtx::Elem Embedding::apply(const FieldCtx::Elem& a) const {
  FieldCtx::Elem out = to_->zero();
  for (int i = 0; i < from_->m(); ++i) {
    if (!a[i]) continue;
    uint64_t c = a[i];
    const auto& pw = gen_powers_[i];
    for (int j = 0; j < to_->m(); ++j)
      out[j] = static_cast<uint32_t>(
          (out[j] + c * pw[j]) % static_cast<uint64_t>(to_->p()));
  }
  return out;
}

FieldCtx::Elem embed(const FieldCtx::Elem& a, const FieldCtx& from, const FieldCtx& to) {
  return Embedding::make(from, to).apply(a);
}

}  // namespace ffk
