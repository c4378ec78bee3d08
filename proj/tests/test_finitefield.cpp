#include <doctest.h>

#include <numeric>

#include "ffk/errors.hpp"
#include "ffk/finitefield.hpp"

using namespace ffk;

TEST_CASE("deterministic moduli") {
  FieldCtx f2 = FieldCtx::make(2, 1);
  CHECK(f2.modulus() == std::vector<uint32_t>{0, 1});  // x

  FieldCtx f4 = FieldCtx::make(2, 2);
  CHECK(f4.modulus() == std::vector<uint32_t>{1, 1, 1});  // x^2 + x + 1, unique

  // Over F_3 the lex-smallest degree-2 irreducible is x^2 + 1: check by
  // exhausting the smaller tuples for roots.
  FieldCtx f9 = FieldCtx::make(3, 2);
  CHECK(f9.modulus() == std::vector<uint32_t>{1, 0, 1});
  auto has_root = [](long p, int c0, int c1) {
    for (long x = 0; x < p; ++x)
      if ((x * x + c1 * x + c0) % p == 0) return true;
    return false;
  };
  CHECK(has_root(3, 0, 0));  // x^2
  CHECK(has_root(3, 0, 1));
  CHECK(has_root(3, 0, 2));
  // (1,0) is x^2 + 1, root-free over F_3 and of degree 2, hence irreducible.
  CHECK_FALSE(has_root(3, 1, 0));
}

TEST_CASE("make_field rejects bad parameters") {
  CHECK_THROWS_AS(FieldCtx::make(4, 1), Error);
  CHECK_THROWS_AS(FieldCtx::make(2, 0), Error);
  CHECK_THROWS_AS(FieldCtx::make(2, 25), Error);  // 2^25 needs the override
  CHECK(FieldCtx::make(2, 21, /*allow_large=*/true).m() == 21);
}

TEST_CASE("field axioms, exhaustively on small fields") {
  for (auto [p, m] : std::initializer_list<std::pair<long, int>>{
           {2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}, {5, 1}}) {
    FieldCtx F = FieldCtx::make(p, m);
    uint64_t n = F.size();
    for (uint64_t a = 0; a < n; ++a) {
      auto ea = F.from_uint(a);
      CHECK(F.to_uint(ea) == a);
      CHECK(F.add(ea, F.zero()) == ea);
      CHECK(F.mul(ea, F.one()) == ea);
      if (a) CHECK(F.is_one(F.mul(ea, F.inv(ea))));
      for (uint64_t b = 0; b < n; ++b) {
        auto eb = F.from_uint(b);
        CHECK(F.add(ea, eb) == F.add(eb, ea));
        CHECK(F.mul(ea, eb) == F.mul(eb, ea));
        for (uint64_t c = 0; c < n; ++c) {
          auto ec = F.from_uint(c);
          CHECK(F.mul(ea, F.mul(eb, ec)) == F.mul(F.mul(ea, eb), ec));
          CHECK(F.mul(ea, F.add(eb, ec)) == F.add(F.mul(ea, eb), F.mul(ea, ec)));
        }
      }
    }
  }
}

TEST_CASE("frobenius fixed points count the subfields") {
  for (auto [p, m] : std::initializer_list<std::pair<long, int>>{
           {2, 6}, {3, 4}, {5, 2}}) {
    FieldCtx F = FieldCtx::make(p, m);
    for (int nu = 1; nu <= m + 2; ++nu) {
      uint64_t fixed = 0;
      for (uint64_t a = 0; a < F.size(); ++a) {
        auto ea = F.from_uint(a);
        if (F.frob_p_k(ea, nu) == ea) ++fixed;
      }
      uint64_t expect = 1;
      for (int i = 0; i < std::gcd(nu, m); ++i) expect *= static_cast<uint64_t>(p);
      CHECK(fixed == expect);
    }
  }
}

TEST_CASE("frobenius is additive and q = p^m acts as identity") {
  FieldCtx F = FieldCtx::make(3, 3);
  uint64_t q = 27;
  for (uint64_t a = 0; a < F.size(); ++a) {
    auto ea = F.from_uint(a);
    CHECK(frobenius(F, ea, q) == ea);
    auto eb = F.from_uint((a * 7 + 3) % F.size());
    CHECK(frobenius(F, F.add(ea, eb), 3) ==
          F.add(frobenius(F, ea, 3), frobenius(F, eb, 3)));
  }
  CHECK_THROWS_AS(frobenius(F, F.one(), 6), Error);  // not a power of p
}

TEST_CASE("unit stream lengths") {
  int count = 0;
  FieldCtx f2 = FieldCtx::make(2, 1);
  for ([[maybe_unused]] auto u : unit_iter(f2)) ++count;
  CHECK(count == 1);
  count = 0;
  FieldCtx f4 = FieldCtx::make(2, 2);
  for (auto u : unit_iter(f4)) {
    CHECK_FALSE(f4.is_zero(u));
    ++count;
  }
  CHECK(count == 3);
  FieldCtx f8 = FieldCtx::make(2, 3);
  count = 0;
  for ([[maybe_unused]] auto u : unit_iter(f8)) ++count;
  CHECK(count == 7);
}

TEST_CASE("embeddings") {
  FieldCtx f4 = FieldCtx::make(2, 2);
  FieldCtx f16 = FieldCtx::make(2, 4);
  Embedding e = Embedding::make(f4, f16);

  CHECK(f16.is_one(e.apply(f4.one())));
  CHECK(f16.is_zero(e.apply(f4.zero())));

  // Ring homomorphism and Frobenius-compatibility on every element.
  for (uint64_t a = 0; a < f4.size(); ++a) {
    for (uint64_t b = 0; b < f4.size(); ++b) {
      auto ea = f4.from_uint(a), eb = f4.from_uint(b);
      CHECK(e.apply(f4.add(ea, eb)) == f16.add(e.apply(ea), e.apply(eb)));
      CHECK(e.apply(f4.mul(ea, eb)) == f16.mul(e.apply(ea), e.apply(eb)));
    }
    auto ea = f4.from_uint(a);
    CHECK(e.apply(f4.frob_p(ea)) == f16.frob_p(e.apply(ea)));
  }

  // Units of F_4 land on units of multiplicative order dividing 3.
  for (auto u : unit_iter(f4)) {
    auto img = e.apply(u);
    CHECK(f16.is_one(f16.pow(img, 3)));
  }

  CHECK_THROWS_AS(Embedding::make(f4, FieldCtx::make(2, 3)), Error);
  CHECK_THROWS_AS(Embedding::make(f4, FieldCtx::make(3, 2)), Error);
}

TEST_CASE("embeddings compose along divisibility chains") {
  FieldCtx f2 = FieldCtx::make(2, 1);
  FieldCtx f4 = FieldCtx::make(2, 2);
  FieldCtx f16 = FieldCtx::make(2, 4);
  Embedding e24 = Embedding::make(f2, f4);
  Embedding e416 = Embedding::make(f4, f16);
  Embedding e216 = Embedding::make(f2, f16);
  for (uint64_t a = 0; a < 2; ++a) {
    auto ea = f2.from_uint(a);
    CHECK(e416.apply(e24.apply(ea)) == e216.apply(ea));
  }
  // Composites of the two embeddings F_4 -> F_16 differ by Frobenius;
  // both are ring maps, and ours is pinned by the smallest-root rule.
  FieldCtx f256 = FieldCtx::make(2, 8);
  Embedding a = Embedding::make(f4, f256);
  Embedding b = Embedding::make(f16, f256);
  Embedding c = Embedding::make(f4, f16);
  for (uint64_t x = 0; x < f4.size(); ++x) {
    auto img1 = a.apply(f4.from_uint(x));
    auto img2 = b.apply(c.apply(f4.from_uint(x)));
    bool same_or_conjugate = img1 == img2;
    for (int k = 1; k < 8 && !same_or_conjugate; ++k)
      same_or_conjugate = f256.frob_p_k(img1, k) == img2;
    CHECK(same_or_conjugate);
  }
}

TEST_CASE("power map wraps around the unit group") {
  FieldCtx F = FieldCtx::make(5, 2);
  for (auto u : unit_iter(F)) CHECK(F.is_one(F.pow(u, 24)));
}
