#ifndef FFK_TORSOR_HPP
#define FFK_TORSOR_HPP

#include <cstdint>
#include <vector>

#include "ffk/finitefield.hpp"
#include "ffk/laurent.hpp"
#include "ffk/presentation.hpp"

namespace ffk {

// A letter of a twisted word: sigma^{fpow}(g^{sign}) with sigma the
// p-Frobenius; meridian generators carry degree nu, so relation words
// use fpow in multiples of nu.
struct TwistedLetter {
  int gen;
  int sign;  // +1 or -1
  int fpow;  // power of sigma, may be negative
  bool operator==(const TwistedLetter& o) const = default;
};
using TwistedWord = std::vector<TwistedLetter>;

// Wirtinger relation in solved form: g_out = rhs.
struct TwistedRelation {
  int crossing;
  int out_gen;
  TwistedWord rhs;
};

// The sigma-twisted relations induced by composing the Wirtinger
// relations with the semidirect-product structure; each generator maps
// to (g, sigma^nu).
std::vector<TwistedRelation> twisted_relations(const WirtingerPresentation& w, int nu);

TwistedWord word_inverse(const TwistedWord& w);
TwistedWord word_shift(TwistedWord w, int k);  // apply sigma^k
TwistedWord word_reduce(TwistedWord w);        // free reduction

// Normalize one generator to the identity (a change of point framing
// over the closure) and substitute through the relations.  When the
// diagram allows expressing every arc through a single unknown, returns
// the residual equations W(g) = 1.
struct Elimination {
  bool single_unknown = false;
  int unknown = -1;
  int normalized = -1;  // the arc pinned to the identity
  std::vector<TwistedWord> residuals;
};
Elimination eliminate_to_single_unknown(const WirtingerPresentation& w);

// n x n matrices over a field context, row-major.
struct MatGroup {
  const FieldCtx* F;
  int n;
  using Mat = std::vector<FieldCtx::Elem>;

  Mat identity() const;
  Mat mul(const Mat& a, const Mat& b) const;
  Mat inv(const Mat& a) const;
  Mat frob_k(const Mat& a, long k) const;  // entrywise p^k power
  FieldCtx::Elem det(const Mat& a) const;
  bool invertible(const Mat& a) const;
  bool eq(const Mat& a, const Mat& b) const { return a == b; }
  std::vector<uint64_t> code(const Mat& a) const;
};

struct GroupSpec {
  int n;      // GL_n
  long p;
  int nu;
  int level;  // field degree M over F_p, nu | M
};

struct TorsorCount {
  Int solutions;             // raw generator assignments at the level
  Int classes;               // orbits under conjugation by the sigma-fixed group
  Int normalized_solutions;  // solutions with one generator pinned to 1
  std::vector<Int> stabilizer_orders;  // per orbit, class order
  Int group_order;
  Int fixed_group_order;
};

TorsorCount count_torsors(const Diagram& d, const GroupSpec& spec,
                          uint64_t budget = 1ull << 20);

// Raw solution tuples (one matrix per arc), for functoriality tests.
std::vector<std::vector<MatGroup::Mat>> enumerate_torsor_solutions(
    const Diagram& d, const GroupSpec& spec, uint64_t budget = 1ull << 20);

// Number of level-field solutions of W(g) = 1 for a one-variable word.
Int count_word_solutions(const TwistedWord& w, const FieldCtx& ctx, int n,
                         uint64_t budget = 1ull << 20);

}  // namespace ffk

#endif
