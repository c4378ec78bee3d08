#include "ffk/presentation.hpp"

#include <algorithm>

#include "ffk/errors.hpp"

namespace ffk {

DehnPresentation dehn_presentation(const Diagram& d, int null_region) {
  DiagramAnalysis an = analyze(d);
  int v = d.crossing_count();
  DehnPresentation p;
  p.region_count = v + 2;
  if (null_region < 0 || null_region >= p.region_count)
    fail(ErrorKind::InvalidParameter, "null region id out of range");
  p.null_region = null_region;

  p.indices.resize(p.region_count);
  int shift = 0;
  for (const auto& r : an.regions)
    if (r.id == null_region) shift = r.index;
  for (const auto& r : an.regions) p.indices[r.id] = r.index - shift;

  for (int id = 0; id < p.region_count; ++id)
    if (id != null_region) p.generators.push_back(id);

  for (int c = 0; c < v; ++c) {
    const auto& at = an.region_at[c];
    // Quadrants: 2 = left-ahead (j), 3 = left-behind (k),
    //            0 = right-behind (l), 1 = right-ahead (m).
    p.relations.push_back({c, at[2], at[3], at[0], at[1], d.sign(c)});
  }
  return p;
}

DehnPresentation dehn_presentation(const Diagram& d) {
  return dehn_presentation(d, 0);
}

WirtingerPresentation wirtinger_presentation(const Diagram& d) {
  int v = d.crossing_count();
  WirtingerPresentation w;
  if (v == 0) {
    w.arc_count = 1;
    return w;
  }
  int total = 2 * v;

  // The strand breaks after each under-incoming edge; arcs are the
  // cyclic runs between breaks.
  std::vector<bool> breaks(total + 1, false);
  for (int c = 0; c < v; ++c) breaks[d.crossing(c).edges[0]] = true;

  w.arc_of_edge.assign(total + 1, -1);
  std::vector<int> arc_min_edge;
  // Start each arc on the edge following a break.
  for (int e = 1; e <= total; ++e) {
    if (!breaks[e]) continue;
    int start = e % total + 1;
    if (w.arc_of_edge[start] >= 0) continue;
    int arc = static_cast<int>(arc_min_edge.size());
    int cur = start, mn = start;
    while (true) {
      w.arc_of_edge[cur] = arc;
      mn = std::min(mn, cur);
      if (breaks[cur]) break;
      cur = cur % total + 1;
    }
    arc_min_edge.push_back(mn);
  }
  w.arc_count = static_cast<int>(arc_min_edge.size());
  if (w.arc_count != v)
    fail(ErrorKind::Internal, "arc count differs from crossing count");

  // Relabel arcs by their smallest edge so output does not depend on
  // traversal order.
  std::vector<int> order(w.arc_count);
  for (int i = 0; i < w.arc_count; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return arc_min_edge[a] < arc_min_edge[b]; });
  std::vector<int> rename(w.arc_count);
  for (int i = 0; i < w.arc_count; ++i) rename[order[i]] = i;
  for (int e = 1; e <= total; ++e) w.arc_of_edge[e] = rename[w.arc_of_edge[e]];

  for (int c = 0; c < v; ++c) {
    const auto& e = d.crossing(c).edges;
    int over_a = w.arc_of_edge[e[1]];
    int over_b = w.arc_of_edge[e[3]];
    if (over_a != over_b)
      fail(ErrorKind::Internal, "over-strand edges land in different arcs");
    int sign = d.sign(c) == Handedness::Left ? 1 : -1;
    w.relations.push_back(
        {c, w.arc_of_edge[e[2]], w.arc_of_edge[e[0]], over_a, sign});
  }
  return w;
}

}  // namespace ffk
