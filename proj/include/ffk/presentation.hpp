#ifndef FFK_PRESENTATION_HPP
#define FFK_PRESENTATION_HPP

#include <vector>

#include "ffk/diagram.hpp"

namespace ffk {

// One crossing relation g_j g_k^{-1} g_l g_m^{-1} = 1, with the under-strand
// oriented forward: j left-ahead, k left-behind, l right-behind, m
// right-ahead (the dotted quadrants of the relation figure are j and k).
struct DehnRelation {
  int crossing;
  int j, k, l, m;  // region ids; repetitions allowed
  Handedness handedness;
};

struct DehnPresentation {
  int region_count;              // v + 2
  int null_region;               // generator suppressed (g = 1)
  std::vector<int> generators;   // region ids != null_region, ascending
  std::vector<int> indices;      // Alexander index per region id, I(null) = 0
  std::vector<DehnRelation> relations;  // one per crossing
  int generator_count() const { return static_cast<int>(generators.size()); }
};

DehnPresentation dehn_presentation(const Diagram& d);
// Same presentation with a different region declared null (any works).
DehnPresentation dehn_presentation(const Diagram& d, int null_region);

// Wirtinger: one generator per arc, one conjugation relation per
// crossing: out = over^s in over^{-s} with s = +1 at a Left (positive)
// crossing and -1 at a Right one.
struct WirtingerRelation {
  int crossing;
  int out_arc, in_arc, over_arc;
  int sign;  // +1 or -1
};

struct WirtingerPresentation {
  int arc_count;
  std::vector<int> arc_of_edge;  // 1-based edge label -> arc id (0-based)
  std::vector<WirtingerRelation> relations;
};

WirtingerPresentation wirtinger_presentation(const Diagram& d);

}  // namespace ffk

#endif
