#include "ffk/corpus.hpp"

#include <sstream>

#include "ffk/errors.hpp"

namespace ffk {

std::string to_pd_string(const Diagram& d) {
  if (d.crossing_count() == 0) return "unknot";
  std::ostringstream os;
  for (int i = 0; i < d.crossing_count(); ++i) {
    const auto& e = d.crossing(i).edges;
    if (i) os << " ";
    os << "X[" << e[0] << "," << e[1] << "," << e[2] << "," << e[3] << "]";
  }
  return os.str();
}

Diagram insert_kink(const Diagram& d, int edge, bool positive) {
  int v = d.crossing_count();
  if (v == 0) {
    // Curl on the round unknot.
    return parse_pd(positive ? "X[1,2,2,1]" : "X[1,1,2,2]");
  }
  if (edge < 1 || edge > 2 * v)
    fail(ErrorKind::InvalidParameter, "kink edge out of range");

  std::vector<std::array<int, 4>> tuples;
  for (int i = 0; i < v; ++i) {
    const auto& e = d.crossing(i).edges;
    std::array<int, 4> t;
    for (int s = 0; s < 4; ++s) {
      int lab = e[s];
      bool incoming = s == 0 || s == d.over_in_slot(i);
      if (lab > edge)
        t[s] = lab + 2;
      else if (lab == edge && incoming)
        t[s] = edge + 2;  // the segment past the new curl
      else
        t[s] = lab;
    }
    tuples.push_back(t);
  }
  if (positive)
    tuples.push_back({edge, edge + 2, edge + 1, edge + 1});
  else
    tuples.push_back({edge, edge + 1, edge + 1, edge + 2});
  return from_crossings(std::move(tuples));
}

namespace {

std::vector<CorpusEntry> build_corpus() {
  struct Base {
    const char* name;
    const char* pd;
    std::vector<long> expected;
  };
  // Expected coefficients regenerated via `ffk corpus regen` (Fox route),
  // cross-checked against the crossing-relation matrix in the tests.
  const std::vector<Base> bases = {
      {"unknot", "unknot", {1}},
      {"trefoil", "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]", {1, -1, 1}},
      {"figure8", "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]", {1, -3, 1}},
      {"5_2", "X[1,4,2,5] X[3,8,4,9] X[5,10,6,1] X[9,6,10,7] X[7,2,8,3]",
       {2, -3, 2}},
      {"torus_2_5", "X[1,6,2,7] X[3,8,4,9] X[5,10,6,1] X[7,2,8,3] X[9,4,10,5]",
       {1, -1, 1, -1, 1}},
  };
  std::vector<CorpusEntry> out;
  for (const auto& b : bases) {
    out.push_back({b.name, b.pd, b.expected});
    Diagram alt = insert_kink(parse_pd(b.pd), 1, true);
    out.push_back({std::string(b.name) + ".kink", to_pd_string(alt), b.expected});
  }
  return out;
}

}  // namespace

const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries = build_corpus();
  return entries;
}

}  // namespace ffk
