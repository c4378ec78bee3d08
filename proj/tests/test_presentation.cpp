#include <doctest.h>

#include "ffk/presentation.hpp"

using namespace ffk;

namespace {

const char* kTrefoil = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";
const char* kFigure8 = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]";

}  // namespace

TEST_CASE("dehn presentation shape") {
  DehnPresentation p = dehn_presentation(parse_pd(kTrefoil));
  CHECK(p.generator_count() == 4);
  CHECK(p.relations.size() == 3);
  CHECK(p.null_region == 0);
  CHECK(p.indices[0] == 0);

  DehnPresentation u = dehn_presentation(parse_pd("unknot"));
  CHECK(u.generator_count() == 1);
  CHECK(u.relations.empty());
}

TEST_CASE("dehn relations abelianize to zero through the index map") {
  for (const char* pd : {kTrefoil, kFigure8}) {
    Diagram d = parse_pd(pd);
    for (int null = 0; null < d.crossing_count() + 2; ++null) {
      DehnPresentation p = dehn_presentation(d, null);
      for (const auto& r : p.relations) {
        CHECK(p.indices[r.j] - p.indices[r.k] + p.indices[r.l] - p.indices[r.m] == 0);
        // Around a crossing the indices read n, n+1, n+1, n+2 in opposite pairs.
        CHECK(p.indices[r.j] == p.indices[r.m] + 1);
        CHECK(p.indices[r.k] == p.indices[r.l] + 1);
      }
    }
  }
}

TEST_CASE("dehn relation regions sit at the crossing") {
  Diagram d = parse_pd(kFigure8);
  DiagramAnalysis an = analyze(d);
  DehnPresentation p = dehn_presentation(d);
  for (const auto& r : p.relations) {
    const auto& at = an.region_at[r.crossing];
    CHECK(r.j == at[2]);
    CHECK(r.k == at[3]);
    CHECK(r.l == at[0]);
    CHECK(r.m == at[1]);
  }
}

TEST_CASE("wirtinger presentation shape") {
  WirtingerPresentation w = wirtinger_presentation(parse_pd(kTrefoil));
  CHECK(w.arc_count == 3);
  CHECK(w.relations.size() == 3);
  for (const auto& r : w.relations) {
    CHECK(r.out_arc != r.over_arc);  // no trefoil arc crosses itself
    CHECK(r.in_arc != r.out_arc);
  }

  WirtingerPresentation u = wirtinger_presentation(parse_pd("unknot"));
  CHECK(u.arc_count == 1);
  CHECK(u.relations.empty());
}

TEST_CASE("wirtinger arcs cover the edges") {
  for (const char* pd : {kTrefoil, kFigure8}) {
    Diagram d = parse_pd(pd);
    WirtingerPresentation w = wirtinger_presentation(d);
    CHECK(w.arc_count == d.crossing_count());
    for (int e = 1; e <= d.edge_count(); ++e) {
      CHECK(w.arc_of_edge[e] >= 0);
      CHECK(w.arc_of_edge[e] < w.arc_count);
    }
    // Over-strand edges at a crossing belong to one arc; the under-edges
    // belong to the in/out arcs.
    for (int c = 0; c < d.crossing_count(); ++c) {
      const auto& e = d.crossing(c).edges;
      CHECK(w.arc_of_edge[e[1]] == w.arc_of_edge[e[3]]);
      const auto& rel = w.relations[c];
      CHECK(w.arc_of_edge[e[0]] == rel.in_arc);
      CHECK(w.arc_of_edge[e[2]] == rel.out_arc);
    }
  }
}
