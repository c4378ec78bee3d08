#include "ffk/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include <json.hpp>

#include "ffk/errors.hpp"

namespace ffk {

namespace {

int next_edge(int e, int total) { return e % total + 1; }

// Validate tuples, normalize labels to 1..2v, derive signs.
void validate_and_finish(std::vector<Crossing>& crossings,
                         std::vector<Handedness>& signs) {
  int v = static_cast<int>(crossings.size());
  int total = 2 * v;

  std::map<int, int> count;
  for (const auto& c : crossings)
    for (int e : c.edges) ++count[e];
  if (static_cast<int>(count.size()) != total) {
    std::ostringstream os;
    os << "expected " << total << " distinct edge labels, got " << count.size();
    fail(ErrorKind::InconsistentDiagram, os.str());
  }
  for (const auto& [label, n] : count) {
    if (n != 2) {
      std::ostringstream os;
      os << "edge label " << label << " appears " << n << " times (want 2)";
      fail(ErrorKind::InconsistentDiagram, os.str());
    }
  }

  // Rank-normalize labels to 1..2v.
  std::map<int, int> rank;
  for (const auto& [label, n] : count) rank[label] = static_cast<int>(rank.size()) + 1;
  for (auto& c : crossings)
    for (int& e : c.edges) e = rank[e];

  signs.clear();
  for (int i = 0; i < v; ++i) {
    const auto& e = crossings[i].edges;
    if (next_edge(e[0], total) != e[2]) {
      std::ostringstream os;
      os << "crossing " << i << ": under-strand runs " << e[0] << " -> " << e[2]
         << ", expected successor " << next_edge(e[0], total)
         << " (link or mislabeled diagram?)";
      fail(ErrorKind::InconsistentDiagram, os.str());
    }
    bool d_to_b = next_edge(e[3], total) == e[1];  // over enters slot d, exits b
    bool b_to_d = next_edge(e[1], total) == e[3];
    if (!d_to_b && !b_to_d) {
      std::ostringstream os;
      os << "crossing " << i << ": over-strand labels " << e[1] << "," << e[3]
         << " are not consecutive";
      fail(ErrorKind::InconsistentDiagram, os.str());
    }
    if (d_to_b && b_to_d) {
      // Only possible at v = 1 (a single curl), where an over slot shares
      // its label with an under slot; the shared edge fixes the roles.
      bool right = e[3] == e[0] || e[1] == e[2];
      signs.push_back(right ? Handedness::Right : Handedness::Left);
    } else {
      signs.push_back(d_to_b ? Handedness::Left : Handedness::Right);
    }
  }

  // Every label must occur once as an incoming edge and once as outgoing.
  std::vector<int> in_count(total + 1, 0), out_count(total + 1, 0);
  for (int i = 0; i < v; ++i) {
    const auto& e = crossings[i].edges;
    int oin = signs[i] == Handedness::Left ? 3 : 1;
    int oout = signs[i] == Handedness::Left ? 1 : 3;
    ++in_count[e[0]];
    ++in_count[e[oin]];
    ++out_count[e[2]];
    ++out_count[e[oout]];
  }
  for (int lab = 1; lab <= total; ++lab) {
    if (in_count[lab] != 1 || out_count[lab] != 1) {
      std::ostringstream os;
      os << "edge " << lab << " has " << in_count[lab] << " heads and "
         << out_count[lab] << " tails";
      fail(ErrorKind::InconsistentDiagram, os.str());
    }
  }
}

struct Dart {
  int crossing;
  int slot;
};

// Other occurrence of the edge at a given dart.
std::vector<std::array<Dart, 2>> edge_darts(const Diagram& d) {
  std::vector<std::array<Dart, 2>> occ(d.edge_count() + 1,
                                       {Dart{-1, -1}, Dart{-1, -1}});
  for (int i = 0; i < d.crossing_count(); ++i)
    for (int s = 0; s < 4; ++s) {
      int lab = d.crossing(i).edges[s];
      if (occ[lab][0].crossing < 0)
        occ[lab][0] = {i, s};
      else
        occ[lab][1] = {i, s};
    }
  return occ;
}

struct FaceTrace {
  std::vector<std::vector<Corner>> cycles;       // corner cycles, one per face
  std::vector<std::array<int, 4>> face_at;       // [crossing][quadrant] -> face idx
};

// Walk corners keeping the face on the left: from corner (c,q), leave
// along slot q; arriving at the partner dart (c',s'), continue with
// corner (c', s'-1).
FaceTrace trace_faces(const Diagram& d) {
  int v = d.crossing_count();
  FaceTrace ft;
  ft.face_at.assign(v, {-1, -1, -1, -1});
  auto occ = edge_darts(d);
  auto partner = [&](int c, int s) -> Dart {
    int lab = d.crossing(c).edges[s];
    const auto& pair = occ[lab];
    if (pair[0].crossing == c && pair[0].slot == s) return pair[1];
    return pair[0];
  };
  for (int c0 = 0; c0 < v; ++c0) {
    for (int q0 = 0; q0 < 4; ++q0) {
      if (ft.face_at[c0][q0] >= 0) continue;
      int id = static_cast<int>(ft.cycles.size());
      std::vector<Corner> cycle;
      int c = c0, q = q0;
      do {
        if (ft.face_at[c][q] >= 0)
          fail(ErrorKind::InconsistentDiagram, "face trace does not close up");
        ft.face_at[c][q] = id;
        cycle.push_back({c, q});
        Dart nxt = partner(c, q);
        c = nxt.crossing;
        q = (nxt.slot + 3) % 4;
      } while (c != c0 || q != q0);
      ft.cycles.push_back(std::move(cycle));
    }
  }
  if (static_cast<int>(ft.cycles.size()) != v + 2) {
    std::ostringstream os;
    os << "face trace yields " << ft.cycles.size() << " faces, expected "
       << v + 2 << " (non-planar PD code?)";
    fail(ErrorKind::InconsistentDiagram, os.str());
  }
  return ft;
}

int smallest_bounding_label(const Diagram& d, const std::vector<Corner>& cycle) {
  int best = 1 << 30;
  for (const auto& corner : cycle) {
    const auto& e = d.crossing(corner.crossing).edges;
    best = std::min({best, e[corner.quadrant], e[(corner.quadrant + 1) % 4]});
  }
  return best;
}

}  // namespace

Diagram from_crossings(std::vector<std::array<int, 4>> tuples) {
  Diagram d;
  for (const auto& t : tuples) d.crossings_.push_back(Crossing{t});
  validate_and_finish(d.crossings_, d.signs_);
  return d;
}

Diagram parse_pd(const std::string& text) {
  // Leading-whitespace-insensitive dispatch.
  size_t pos = text.find_first_not_of(" \t\r\n");
  if (pos == std::string::npos)
    fail(ErrorKind::MalformedNotation, "empty diagram input");

  if (text[pos] == '{' || text[pos] == '[') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorKind::MalformedNotation, std::string("bad JSON: ") + e.what());
    }
    const nlohmann::json* arr = nullptr;
    if (j.is_object() && j.contains("crossings"))
      arr = &j["crossings"];
    else if (j.is_array())
      arr = &j;
    else
      fail(ErrorKind::MalformedNotation, "JSON diagram needs a \"crossings\" array");
    std::vector<std::array<int, 4>> tuples;
    for (const auto& row : *arr) {
      if (!row.is_array() || row.size() != 4)
        fail(ErrorKind::MalformedNotation, "each crossing must be [a,b,c,d]");
      std::array<int, 4> t;
      for (int k = 0; k < 4; ++k) {
        if (!row[k].is_number_integer())
          fail(ErrorKind::MalformedNotation, "edge labels must be integers");
        t[k] = row[k].get<int>();
      }
      tuples.push_back(t);
    }
    return from_crossings(std::move(tuples));
  }

  // Token form: the literal "unknot" or X[a,b,c,d] tokens separated by
  // whitespace or commas.
  std::vector<std::array<int, 4>> tuples;
  size_t i = pos;
  auto skip_sp = [&](size_t k) {
    while (k < text.size() && std::isspace(static_cast<unsigned char>(text[k])))
      ++k;
    return k;
  };
  auto skip_sep = [&](size_t k) {
    while (k < text.size() &&
           (std::isspace(static_cast<unsigned char>(text[k])) || text[k] == ','))
      ++k;
    return k;
  };
  i = skip_sep(i);
  std::string lowered;
  for (char ch : text) lowered.push_back(static_cast<char>(std::tolower(ch)));
  if (lowered.find("unknot") != std::string::npos) {
    size_t at = lowered.find("unknot");
    std::string rest = lowered.substr(0, at) + lowered.substr(at + 6);
    if (rest.find_first_not_of(" \t\r\n,") != std::string::npos)
      fail(ErrorKind::MalformedNotation, "'unknot' cannot be mixed with crossings");
    return Diagram{};
  }
  while (i < text.size()) {
    char c = text[i];
    if (c != 'X' && c != 'x')
      fail(ErrorKind::MalformedNotation,
           std::string("expected 'X[' at: ") + text.substr(i, 12));
    ++i;
    if (i >= text.size() || text[i] != '[')
      fail(ErrorKind::MalformedNotation, "expected '[' after X");
    ++i;
    std::array<int, 4> t;
    for (int k = 0; k < 4; ++k) {
      i = skip_sp(i);
      bool neg = false;
      if (i < text.size() && text[i] == '-') {
        neg = true;
        ++i;
      }
      if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
        fail(ErrorKind::MalformedNotation, "expected an edge label");
      int val = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        val = val * 10 + (text[i] - '0');
        ++i;
      }
      t[k] = neg ? -val : val;
      i = skip_sp(i);
      if (k < 3) {
        if (i >= text.size() || text[i] != ',')
          fail(ErrorKind::MalformedNotation, "expected ',' inside X[...]");
        ++i;
      }
    }
    if (i >= text.size() || text[i] != ']')
      fail(ErrorKind::MalformedNotation, "expected ']' closing X[...]");
    ++i;
    i = skip_sep(i);
    tuples.push_back(t);
  }
  if (tuples.empty())
    fail(ErrorKind::MalformedNotation, "no crossings found");
  return from_crossings(std::move(tuples));
}

std::vector<Region> faces(const Diagram& d) {
  if (d.crossing_count() == 0) {
    // Zero-crossing unknot: outer null region and one bounded region.
    Region outer{0, {}, 0}, inner{1, {}, 0};
    return {outer, inner};
  }
  FaceTrace ft = trace_faces(d);
  int nfaces = static_cast<int>(ft.cycles.size());

  // Null region: most corners, ties by smallest bounding edge label.
  int null_face = 0;
  for (int f = 1; f < nfaces; ++f) {
    size_t na = ft.cycles[f].size(), nb = ft.cycles[null_face].size();
    if (na > nb ||
        (na == nb && smallest_bounding_label(d, ft.cycles[f]) <
                         smallest_bounding_label(d, ft.cycles[null_face])))
      null_face = f;
  }

  // Rotate each cycle to start at its smallest corner, then order the
  // non-null regions by that corner.
  std::vector<std::vector<Corner>> cycles = ft.cycles;
  for (auto& cyc : cycles) {
    auto it = std::min_element(cyc.begin(), cyc.end());
    std::rotate(cyc.begin(), it, cyc.end());
  }
  std::vector<int> order;
  for (int f = 0; f < nfaces; ++f)
    if (f != null_face) order.push_back(f);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return cycles[a][0] < cycles[b][0]; });

  std::vector<Region> out;
  out.push_back({0, cycles[null_face], 0});
  for (size_t k = 0; k < order.size(); ++k)
    out.push_back({static_cast<int>(k) + 1, cycles[order[k]], 0});
  return out;
}

DiagramAnalysis analyze(const Diagram& d) {
  DiagramAnalysis an;
  an.regions = faces(d);
  int v = d.crossing_count();
  if (v == 0) {
    an.regions[1].index = 1;  // one bounded disk; orientation sign is a convention
    return an;
  }
  an.region_at.assign(v, {-1, -1, -1, -1});
  for (const auto& r : an.regions)
    for (const auto& corner : r.corners)
      an.region_at[corner.crossing][corner.quadrant] = r.id;

  // Index constraints: walking across a directed edge from its right
  // side to its left raises the index.  At an outgoing slot s, quadrant
  // s lies left of the edge and quadrant s-1 right of it.
  int nregions = v + 2;
  std::vector<int> index(nregions, 0);
  std::vector<bool> seen(nregions, false);
  std::vector<std::pair<int, int>> constraints;  // (left, right): I(l) = I(r)+1
  for (int c = 0; c < v; ++c) {
    for (int s : {2, d.over_out_slot(c)}) {
      int left = an.region_at[c][s];
      int right = an.region_at[c][(s + 3) % 4];
      constraints.emplace_back(left, right);
    }
  }
  seen[0] = true;
  bool progress = true;
  while (progress) {
    progress = false;
    for (const auto& [l, r] : constraints) {
      if (seen[l] && !seen[r]) {
        index[r] = index[l] - 1;
        seen[r] = true;
        progress = true;
      } else if (seen[r] && !seen[l]) {
        index[l] = index[r] + 1;
        seen[l] = true;
        progress = true;
      }
    }
  }
  for (int r = 0; r < nregions; ++r)
    if (!seen[r]) fail(ErrorKind::Internal, "region index assignment incomplete");
  for (const auto& [l, r] : constraints)
    if (index[l] != index[r] + 1)
      fail(ErrorKind::Internal, "inconsistent region indices");
  for (auto& reg : an.regions) reg.index = index[reg.id];
  return an;
}

std::vector<int> alexander_indices(const Diagram& d) {
  DiagramAnalysis an = analyze(d);
  std::vector<int> out(an.regions.size());
  for (const auto& r : an.regions) out[r.id] = r.index;
  return out;
}

Handedness handedness(const Diagram& d, int crossing) {
  return d.sign(crossing);
}

Diagram mirror(const Diagram& d) {
  // Swap over and under: relist each crossing counterclockwise starting
  // at the old over-entry slot.
  std::vector<std::array<int, 4>> tuples;
  for (int i = 0; i < d.crossing_count(); ++i) {
    const auto& e = d.crossing(i).edges;
    int s = d.over_in_slot(i);
    tuples.push_back({e[s], e[(s + 1) % 4], e[(s + 2) % 4], e[(s + 3) % 4]});
  }
  if (tuples.empty()) return Diagram{};
  return from_crossings(std::move(tuples));
}

}  // namespace ffk
