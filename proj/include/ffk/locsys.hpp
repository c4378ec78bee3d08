#ifndef FFK_LOCSYS_HPP
#define FFK_LOCSYS_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include <gmpxx.h>

#include "ffk/diagram.hpp"
#include "ffk/finitefield.hpp"
#include "ffk/laurent.hpp"
#include "ffk/presentation.hpp"

namespace ffk {

// A point-framed rank-1 local system at a finite level: one unit scalar
// per non-null region (z_0 = 1 implicit), satisfying per crossing
//   z_j z_k^{-q} z_l^{q} z_m^{-1} = 1        (Left)
//   z_j z_k^{-1/q} z_l^{1/q} z_m^{-1} = 1    (Right; 1/q-powers are the
//                                             inverse Frobenius p^{M-nu})
struct Cocycle {
  int level;                        // field degree M over F_p
  std::vector<FieldCtx::Elem> z;    // one per generator, generator order
};

// Relation data and propagation plan shared by every level.
class LocsysProblem {
public:
  static LocsysProblem build(const Diagram& d);
  static LocsysProblem build(const Diagram& d, int null_region);

  struct Term {
    int gen;   // generator position, -1 for the null region (z = 1)
    int sign;  // +1 or -1 exponent sign
    int fpow;  // Frobenius power: exponent is sign * q^fpow
  };
  struct Relation {
    std::vector<Term> terms;
  };
  struct Step {
    enum Kind { Free, Solve, Check } kind;
    int relation;  // Solve/Check
    int gen;       // Free/Solve target
    int term;      // index of the solved term within the relation
  };

  const DehnPresentation& presentation() const { return pres_; }
  int generator_count() const { return static_cast<int>(gen_index_.size()); }
  const std::vector<int>& generator_indices() const { return gen_index_; }
  const std::vector<Relation>& relations() const { return rels_; }
  const std::vector<Step>& plan() const { return plan_; }
  int free_count() const { return free_count_; }

private:
  DehnPresentation pres_;
  std::vector<int> gen_index_;  // Alexander index per generator position
  std::vector<Relation> rels_;
  std::vector<Step> plan_;
  int free_count_ = 0;
};

// Exhaustive solution set over F_{p^M}; nu | M, free-scalar space within
// budget.  Every emitted tuple is re-verified against all relations.
std::vector<Cocycle> enumerate_cocycles(const Diagram& d, long p, int nu, int M,
                                        uint64_t budget = 1ull << 20);

// Streaming form used by the level sweep.
void for_each_cocycle(const LocsysProblem& prob, const FieldCtx& ctx, int nu,
                      uint64_t budget,
                      const std::function<void(const std::vector<FieldCtx::Elem>&)>& fn);

struct ClassInfo {
  Cocycle rep;           // smallest tuple in the orbit
  Int orbit_size;
  Int automorphism_order;
};

// Orbits of the coboundary action z_j -> y^{q^{I(j)} - 1} z_j, y a unit.
struct ClassTable {
  int level;
  std::vector<ClassInfo> classes;
  Int total_cocycles;
  Int coboundary_image_size;
};

ClassTable coboundary_orbits(const FieldCtx& ctx, int nu,
                             const std::vector<Cocycle>& cocycles,
                             const std::vector<int>& gen_indices);

// Exact test for membership of a level-M tuple in the full coboundary
// group over the algebraic closure: a finite gcd computation in
// F[X]/(X^{q-1} - u), no discrete logarithms and no larger fields.
bool coboundary_membership_closure(const FieldCtx& ctx, int nu,
                                   const std::vector<FieldCtx::Elem>& w,
                                   const std::vector<int>& gen_indices);

struct LevelReport {
  int level;
  bool skipped;        // over budget, not enumerated
  Int cocycles;        // |Z^1(F_{p^M})|
  Int orbit_classes;   // classes under the level-M coboundary action
  Int h1_image;        // classes surviving in the closure-level group
};

struct StableCount {
  Int value = 0;            // running maximum of h1_image over the chain
  bool stabilized = false;  // value unchanged over the final two levels
  int attained_level = 0;   // smallest level realizing the value
  Int q = 0;
  std::vector<LevelReport> levels;
  std::vector<Cocycle> reps;      // closure-distinct class representatives
  std::vector<Int> aut_orders;    // stabilizer order per representative
  bool aut_recheck_mismatch = false;
};

// Sweep levels M = nu, 2nu, ... <= m_cap, counting at each level the
// image of the level-M solutions in the closure-level class group; the
// count is monotone along divisible levels and capped by the true group
// order, so the running maximum is reported.
StableCount stable_class_count(const Diagram& d, long p, int nu, int m_cap,
                               uint64_t budget = 1ull << 20);

// Sum of 1/|Aut| over stable classes; the knot-complement prediction is
// Delta(q)/(q-1).  Requires a stabilized count.
mpq_class orbifold_count(const Diagram& d, long p, int nu, int m_cap,
                         uint64_t budget = 1ull << 20);

}  // namespace ffk

#endif
