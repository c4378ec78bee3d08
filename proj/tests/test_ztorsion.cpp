#include <doctest.h>

#include <random>

#include "ffk/corpus.hpp"
#include "ffk/errors.hpp"
#include "ffk/ztorsion.hpp"

using namespace ffk;

namespace {

const char* kTrefoil = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";
const char* kFigure8 = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]";
const char* k52 = "X[1,4,2,5] X[3,8,4,9] X[5,10,6,1] X[9,6,10,7] X[7,2,8,3]";

IntMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows) {
  IntMatrix m(static_cast<int>(rows.size()),
              rows.size() ? static_cast<int>(rows.begin()->size()) : 0);
  int i = 0;
  for (const auto& row : rows) {
    int j = 0;
    for (long v : row) m.at(i, j++) = Int(v);
    ++i;
  }
  return m;
}

// Independent ladder oracle: gcd of all k x k minors, cofactor dets.
Int minor_gcd_oracle(const IntMatrix& m, int k) {
  std::vector<int> rsel(k), csel(k);
  Int g = 0;
  std::function<Int(const std::vector<int>&, const std::vector<int>&, int)> det =
      [&](const std::vector<int>& rs, const std::vector<int>& cs, int n) -> Int {
    if (n == 0) return 1;
    if (n == 1) return m.at(rs[0], cs[0]);
    Int acc = 0;
    std::vector<int> sub(cs.begin() + 1, cs.end());
    for (int i = 0; i < n; ++i) {
      std::vector<int> rsub;
      for (int t = 0; t < n; ++t)
        if (t != i) rsub.push_back(rs[t]);
      Int term = m.at(rs[i], cs[0]) * det(rsub, sub, n - 1);
      acc += (i % 2 ? -term : term);
    }
    return acc;
  };
  std::function<void(int, int)> loop_cols = [&](int pos, int start) {
    if (pos == k) {
      g = gcd(g, det(rsel, csel, k));
      return;
    }
    for (int c = start; c < m.cols; ++c) {
      csel[pos] = c;
      loop_cols(pos + 1, c + 1);
    }
  };
  std::function<void(int, int)> loop_rows = [&](int pos, int start) {
    if (pos == k) {
      loop_cols(0, 0);
      return;
    }
    for (int r = start; r < m.rows; ++r) {
      rsel[pos] = r;
      loop_rows(pos + 1, r + 1);
    }
  };
  loop_rows(0, 0);
  return g < 0 ? Int(-g) : g;
}

}  // namespace

TEST_CASE("smith normal form on frozen examples") {
  auto s = smith_normal_form(from_rows({{2, 0}, {0, 6}}));
  CHECK(s.divisors == std::vector<Int>{2, 6});

  s = smith_normal_form(from_rows({{2, 4}, {6, 8}}));
  CHECK(s.divisors == std::vector<Int>{2, 4});  // gcd 2, |det| 8

  s = smith_normal_form(from_rows({{0, 0}, {0, 0}}));
  CHECK(s.rank == 0);
  CHECK(s.divisors.empty());
}

TEST_CASE("smith normal form randomized certification") {
  std::mt19937 rng(20240517);
  std::uniform_int_distribution<int> dim(1, 6), val(-9, 9);
  for (int trial = 0; trial < 60; ++trial) {
    IntMatrix m(dim(rng), dim(rng));
    for (int i = 0; i < m.rows; ++i)
      for (int j = 0; j < m.cols; ++j) m.at(i, j) = Int(val(rng));
    auto s = smith_normal_form(m);  // recomposition checked internally
    CHECK(abs(int_det(s.U)) == 1);
    CHECK(abs(int_det(s.V)) == 1);
    for (size_t i = 0; i + 1 < s.divisors.size(); ++i)
      CHECK(s.divisors[i + 1] % s.divisors[i] == 0);
    // Determinantal-divisor ladder.
    Int prod = 1;
    for (int k = 1; k <= s.rank; ++k) {
      prod *= s.divisors[k - 1];
      CHECK(prod == minor_gcd_oracle(m, k));
    }
    if (s.rank < std::min(m.rows, m.cols))
      CHECK(minor_gcd_oracle(m, s.rank + 1) == 0);
  }
}

TEST_CASE("prime-to-p torsion order") {
  CHECK(torsion_order_cokernel_p_inverted(from_rows({{6}}), 2) == 3);
  CHECK(torsion_order_cokernel_p_inverted(
            from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 35}}), 2) == 35);
  CHECK(prime_to_p_part(48, 2) == 3);
  CHECK(prime_to_p_part(-45, 3) == 5);
}

TEST_CASE("count_invertible_modules on the corpus") {
  Diagram tre = parse_pd(kTrefoil);
  auto r = count_invertible_modules(tre, 2, 1);
  CHECK(r.q == 2);
  CHECK(r.delta_q == 3);
  CHECK(r.count == 3);
  CHECK_FALSE(r.p_divides_c0);

  r = count_invertible_modules(tre, 2, 2);
  CHECK(r.q == 4);
  CHECK(r.delta_q == 13);
  CHECK(r.count == 13);

  // Figure-eight: Delta(2) = -1, so one class; the signed value rides along.
  r = count_invertible_modules(parse_pd(kFigure8), 2, 1);
  CHECK(r.delta_q == -1);
  CHECK(r.count == 1);

  // 5_2 has c0 = 2: at p = 2 the count is the odd part of the minor gcd.
  r = count_invertible_modules(parse_pd(k52), 2, 1);
  CHECK(r.p_divides_c0);
  CHECK(r.delta_q == 4);
  CHECK(r.count == 1);
}

TEST_CASE("count matches |Delta(q)| whenever p does not divide c0") {
  for (const auto& entry : corpus()) {
    Diagram d = parse_pd(entry.pd);
    for (auto [p, nu] : std::initializer_list<std::pair<long, int>>{
             {2, 1}, {2, 2}, {3, 1}, {5, 1}}) {
      auto r = count_invertible_modules(d, p, nu);
      if (!r.p_divides_c0) CHECK(r.count == abs(r.delta_q));
    }
  }
}

TEST_CASE("count is invariant under relabeling, null choice, mirroring") {
  Diagram d = parse_pd(k52);
  Int base = count_invertible_modules(d, 3, 1).count;
  CHECK(base == 11);  // |Delta_{5_2}(3)| = |18 - 9 + 2|

  // Rotated edge labels.
  int total = d.edge_count();
  std::vector<std::array<int, 4>> rot;
  for (const auto& c : d.crossings()) {
    std::array<int, 4> t;
    for (int s = 0; s < 4; ++s) t[s] = (c.edges[s] - 1 + 3) % total + 1;
    rot.push_back(t);
  }
  CHECK(count_invertible_modules(from_crossings(rot), 3, 1).count == base);

  // Any region may serve as the null region.
  for (int null = 0; null < d.crossing_count() + 2; ++null)
    CHECK(count_invertible_modules(d, 3, 1, null).count == base);

  CHECK(count_invertible_modules(mirror(d), 3, 1).count == base);
}

TEST_CASE("elementary divisor product carries exactly the torsion") {
  // trefoil at q = 2: the cleared matrix has divisor product 2^a * 3.
  auto r = count_invertible_modules(parse_pd(kTrefoil), 2, 1);
  Int prod = 1;
  for (const auto& d : r.elementary_divisors) prod *= d;
  CHECK(prime_to_p_part(prod, 2) == 3);
}

TEST_CASE("parameter validation") {
  Diagram d = parse_pd(kTrefoil);
  CHECK_THROWS_AS(count_invertible_modules(d, 4, 1), Error);
  CHECK_THROWS_AS(count_invertible_modules(d, 2, 0), Error);
}
