#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "ffk/diagram.hpp"
#include "ffk/errors.hpp"

using namespace ffk;

namespace {

const char* kTrefoil = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";
const char* kFigure8 = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]";

std::multiset<int> index_multiset(const Diagram& d) {
  auto idx = alexander_indices(d);
  return {idx.begin(), idx.end()};
}

std::multiset<int> negated(const std::multiset<int>& s) {
  std::multiset<int> out;
  for (int v : s) out.insert(-v);
  return out;
}

}  // namespace

TEST_CASE("trefoil parses to 3 crossings, 6 edges, 5 faces") {
  Diagram d = parse_pd(kTrefoil);
  CHECK(d.crossing_count() == 3);
  CHECK(d.edge_count() == 6);
  CHECK(faces(d).size() == 5);
}

TEST_CASE("unknot literal") {
  Diagram d = parse_pd("unknot");
  CHECK(d.crossing_count() == 0);
  CHECK(faces(d).size() == 2);
  auto idx = alexander_indices(d);
  CHECK(idx[0] == 0);
  CHECK((idx[1] == 1 || idx[1] == -1));
}

TEST_CASE("missing crossing is rejected") {
  CHECK_THROWS_WITH_AS(static_cast<void>(parse_pd("X[1,4,2,5] X[3,6,4,1]")),
                       doctest::Contains("distinct edge labels"), Error);
  try {
    parse_pd("X[1,4,2,5] X[3,6,4,1]");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InconsistentDiagram);
  }
}

TEST_CASE("syntax errors are MalformedNotation") {
  for (const char* bad : {"", "X[1,2,3", "Y[1,2,3,4]", "X[1,2,3,4,5]", "X[a,b,c,d]"}) {
    try {
      parse_pd(bad);
      CHECK_MESSAGE(false, "expected throw for: ", bad);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::MalformedNotation);
    }
  }
}

TEST_CASE("JSON form parses identically") {
  Diagram a = parse_pd(kTrefoil);
  Diagram b = parse_pd(R"({"crossings": [[1,4,2,5],[3,6,4,1],[5,2,6,3]]})");
  REQUIRE(a.crossing_count() == b.crossing_count());
  for (int i = 0; i < a.crossing_count(); ++i)
    CHECK(a.crossing(i).edges == b.crossing(i).edges);
}

TEST_CASE("figure-eight has 6 faces") {
  CHECK(faces(parse_pd(kFigure8)).size() == 6);
}

TEST_CASE("face structure invariants") {
  for (const char* pd : {kTrefoil, kFigure8}) {
    Diagram d = parse_pd(pd);
    auto fs = faces(d);
    CHECK(static_cast<int>(fs.size()) == d.crossing_count() + 2);
    // Every quadrant appears in exactly one region.
    std::set<std::pair<int, int>> seen;
    size_t corners = 0;
    for (const auto& r : fs)
      for (const auto& c : r.corners) {
        CHECK(seen.emplace(c.crossing, c.quadrant).second);
        ++corners;
      }
    CHECK(corners == 4u * d.crossing_count());
  }
}

TEST_CASE("alexander indices") {
  std::multiset<int> want = {0, 1, 1, 1, 2};
  auto got = index_multiset(parse_pd(kTrefoil));
  CHECK((got == want || got == negated(want)));

  // Adjacent regions across every edge differ by exactly one.
  for (const char* pd : {kTrefoil, kFigure8}) {
    Diagram d = parse_pd(pd);
    DiagramAnalysis an = analyze(d);
    std::vector<int> idx(an.regions.size());
    for (const auto& r : an.regions) idx[r.id] = r.index;
    for (int c = 0; c < d.crossing_count(); ++c)
      for (int s = 0; s < 4; ++s) {
        int left = an.region_at[c][s];
        int right = an.region_at[c][(s + 3) % 4];
        CHECK(std::abs(idx[left] - idx[right]) == 1);
      }
  }
}

TEST_CASE("handedness of standard diagrams") {
  Diagram tre = parse_pd(kTrefoil);
  int left = 0, right = 0;
  for (int i = 0; i < 3; ++i)
    (handedness(tre, i) == Handedness::Left ? left : right) += 1;
  CHECK((left == 3 || right == 3));  // homogeneous, |writhe| = 3

  Diagram f8 = parse_pd(kFigure8);
  left = right = 0;
  for (int i = 0; i < 4; ++i)
    (handedness(f8, i) == Handedness::Left ? left : right) += 1;
  CHECK(left == 2);
  CHECK(right == 2);  // writhe 0
}

TEST_CASE("handedness survives edge-label rotation") {
  Diagram d = parse_pd(kTrefoil);
  int total = d.edge_count();
  for (int shift = 1; shift < total; ++shift) {
    std::vector<std::array<int, 4>> rot;
    for (const auto& c : d.crossings()) {
      std::array<int, 4> t;
      for (int s = 0; s < 4; ++s) t[s] = (c.edges[s] - 1 + shift) % total + 1;
      rot.push_back(t);
    }
    Diagram d2 = from_crossings(rot);
    for (int i = 0; i < d.crossing_count(); ++i)
      CHECK(d2.sign(i) == d.sign(i));
  }
}

TEST_CASE("mirror is an involution and flips every crossing") {
  for (const char* pd : {kTrefoil, kFigure8}) {
    Diagram d = parse_pd(pd);
    Diagram m = mirror(d);
    REQUIRE(m.crossing_count() == d.crossing_count());
    for (int i = 0; i < d.crossing_count(); ++i)
      CHECK(m.sign(i) != d.sign(i));
    CHECK(faces(m).size() == faces(d).size());
    Diagram mm = mirror(m);
    for (int i = 0; i < d.crossing_count(); ++i)
      CHECK(mm.crossing(i).edges == d.crossing(i).edges);
  }
}

TEST_CASE("mirror of the trefoil is a valid 3-crossing diagram") {
  Diagram m = mirror(parse_pd(kTrefoil));
  CHECK(m.crossing_count() == 3);
  CHECK(faces(m).size() == 5);
}

TEST_CASE("labels need not be consecutive") {
  // Doubled labels 2,4,... in place of 1,2,...
  Diagram a = parse_pd(kTrefoil);
  std::vector<std::array<int, 4>> scaled;
  for (const auto& c : a.crossings()) {
    std::array<int, 4> t;
    for (int s = 0; s < 4; ++s) t[s] = 2 * c.edges[s];
    scaled.push_back(t);
  }
  Diagram b = from_crossings(scaled);
  for (int i = 0; i < a.crossing_count(); ++i)
    CHECK(b.crossing(i).edges == a.crossing(i).edges);  // normalized back
}
