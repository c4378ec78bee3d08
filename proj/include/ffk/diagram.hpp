#ifndef FFK_DIAGRAM_HPP
#define FFK_DIAGRAM_HPP

#include <array>
#include <string>
#include <vector>

namespace ffk {

// Handedness in the sense of the crossing-relation figures: orient the
// under-strand forward ("up"); Left means the over-strand runs to the
// right (left-to-right seen along the under-strand), Right the opposite.
// Left coincides with the usual positive crossing sign.
enum class Handedness { Left, Right };

inline const char* handedness_name(Handedness h) {
  return h == Handedness::Left ? "left" : "right";
}

// One PD crossing X[a,b,c,d]: edges counterclockwise starting at the
// incoming under-strand edge a.  Slots are indexed 0..3 = a,b,c,d.
struct Crossing {
  std::array<int, 4> edges;
};

// Quadrant q of a crossing sits between slot q and slot q+1 (mod 4).
struct Corner {
  int crossing;
  int quadrant;
  bool operator==(const Corner& o) const = default;
  bool operator<(const Corner& o) const {
    return crossing != o.crossing ? crossing < o.crossing : quadrant < o.quadrant;
  }
};

struct Region {
  int id;  // 0 is the null (declared-unbounded) region
  std::vector<Corner> corners;
  int index = 0;  // Alexander index, filled by alexander_indices/analyze
};

// A validated oriented knot diagram.  Edge labels are normalized to
// 1..2v with edge i flowing into edge i+1 along the knot.
class Diagram {
public:
  int crossing_count() const { return static_cast<int>(crossings_.size()); }
  int edge_count() const { return 2 * crossing_count(); }
  const std::vector<Crossing>& crossings() const { return crossings_; }
  const Crossing& crossing(int i) const { return crossings_[i]; }
  Handedness sign(int i) const { return signs_[i]; }

  // Slot roles per crossing: under-in = 0, under-out = 2; over slots
  // depend on the sign.
  int over_in_slot(int i) const { return signs_[i] == Handedness::Left ? 3 : 1; }
  int over_out_slot(int i) const { return signs_[i] == Handedness::Left ? 1 : 3; }

  friend Diagram parse_pd(const std::string& text);
  friend Diagram mirror(const Diagram& d);
  friend Diagram from_crossings(std::vector<std::array<int, 4>> tuples);

private:
  std::vector<Crossing> crossings_;
  std::vector<Handedness> signs_;
};

// Parse KnotAtlas-style PD text ("X[1,4,2,5] X[3,6,4,1] ..."), the JSON
// form {"crossings": [[a,b,c,d], ...]}, or the literal "unknot".
Diagram parse_pd(const std::string& text);

// Build directly from crossing tuples (validated the same way).
Diagram from_crossings(std::vector<std::array<int, 4>> tuples);

// Faces of the underlying 4-valent plane graph; exactly v+2 of them for
// a valid diagram.  Region 0 is the declared null region (most corners,
// ties by smallest bounding edge label); the rest are ordered by their
// smallest corner.  The unknot yields two corner-free regions.
std::vector<Region> faces(const Diagram& d);

// Alexander index per region id; null region gets 0, crossing an arc
// from its right side to its left raises the index by 1.
std::vector<int> alexander_indices(const Diagram& d);

Handedness handedness(const Diagram& d, int crossing);

// Same underlying plane graph with over and under swapped everywhere.
Diagram mirror(const Diagram& d);

// Faces plus index data and the quadrant -> region lookup used by the
// presentation and enumeration layers.
struct DiagramAnalysis {
  std::vector<Region> regions;              // indices filled in
  std::vector<std::array<int, 4>> region_at;  // [crossing][quadrant] -> region id
};

DiagramAnalysis analyze(const Diagram& d);

}  // namespace ffk

#endif
