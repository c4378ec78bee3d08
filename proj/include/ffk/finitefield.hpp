#ifndef FFK_FINITEFIELD_HPP
#define FFK_FINITEFIELD_HPP

#include <cstdint>
#include <vector>

namespace ffk {

// Arithmetic context for F_{p^m} = F_p[x]/(modulus).  The modulus is the
// lexicographically smallest monic irreducible of degree m over F_p
// (coefficients compared low-degree-first), so every run constructs the
// same field and element codes are reproducible.
class FieldCtx {
public:
  using Elem = std::vector<uint32_t>;  // m coefficients in [0, p)

  // Guarded constructor; p^m > 2^20 needs allow_large (enumeration over
  // such fields is off-budget by default).
  static FieldCtx make(long p, int m, bool allow_large = false);

  long p() const { return p_; }
  int m() const { return m_; }
  uint64_t size() const { return size_; }          // p^m
  uint64_t unit_count() const { return size_ - 1; }
  const std::vector<uint32_t>& modulus() const { return modulus_; }

  Elem zero() const { return Elem(m_, 0); }
  Elem one() const;
  Elem from_uint(uint64_t code) const;  // base-p digits, low digit first
  uint64_t to_uint(const Elem& a) const;

  bool is_zero(const Elem& a) const;
  bool is_one(const Elem& a) const;

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem inv(const Elem& a) const;  // a != 0
  Elem pow(Elem a, uint64_t e) const;

  Elem frob_p(const Elem& a) const;            // a^p (F_p-linear, via matrix)
  Elem frob_p_k(const Elem& a, long k) const;  // a^{p^k}, any sign of k

  bool eq(const Elem& a, const Elem& b) const { return a == b; }

private:
  long p_ = 0;
  int m_ = 0;
  uint64_t size_ = 0;
  std::vector<uint32_t> modulus_;  // length m+1, monic
  // frob_mats_[k] is the matrix of a -> a^{p^k}: column i = (x^i)^{p^k}.
  std::vector<std::vector<std::vector<uint32_t>>> frob_mats_;
};

// a^q for q = p^nu a power of the ambient characteristic.
FieldCtx::Elem frobenius(const FieldCtx& ctx, const FieldCtx::Elem& a, uint64_t q);

// Deterministic exhaustive stream of the p^m - 1 units (codes 1, 2, ...).
class UnitRange {
public:
  explicit UnitRange(const FieldCtx& ctx) : ctx_(&ctx) {}
  struct iterator {
    const FieldCtx* ctx;
    uint64_t code;
    FieldCtx::Elem operator*() const { return ctx->from_uint(code); }
    iterator& operator++() { ++code; return *this; }
    bool operator!=(const iterator& o) const { return code != o.code; }
  };
  iterator begin() const { return {ctx_, 1}; }
  iterator end() const { return {ctx_, ctx_->size()}; }

private:
  const FieldCtx* ctx_;
};

inline UnitRange unit_iter(const FieldCtx& ctx) { return UnitRange(ctx); }

// Fixed ring embedding F_{p^m} -> F_{p^m'} for m | m', sending the source
// generator to the smallest root of the source modulus.
class Embedding {
public:
  static Embedding make(const FieldCtx& from, const FieldCtx& to);
  FieldCtx::Elem apply(const FieldCtx::Elem& a) const;

private:
  const FieldCtx* from_ = nullptr;
  const FieldCtx* to_ = nullptr;
  std::vector<FieldCtx::Elem> gen_powers_;  // root^i for i < from.m
};

FieldCtx::Elem embed(const FieldCtx::Elem& a, const FieldCtx& from, const FieldCtx& to);

}  // namespace ffk

#endif
