#ifndef FFK_CORPUS_HPP
#define FFK_CORPUS_HPP

#include <string>
#include <vector>

#include "ffk/diagram.hpp"

namespace ffk {

// Bundled test knots: each base diagram plus one Reidemeister-distinct
// alternate (a curl added on edge 1).  Expected Alexander coefficients
// are regenerated by `ffk corpus regen` and must match both computation
// routes.
struct CorpusEntry {
  std::string name;
  std::string pd;
  std::vector<long> expected;  // c0..cn, c0 > 0
};

const std::vector<CorpusEntry>& corpus();

std::string to_pd_string(const Diagram& d);

// Add a curl on the given edge; positive selects the Left-handed kink.
Diagram insert_kink(const Diagram& d, int edge, bool positive);

}  // namespace ffk

#endif
