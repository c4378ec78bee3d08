#include "ffk/locsys.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "ffk/errors.hpp"
#include "ffk/ztorsion.hpp"

namespace ffk {

namespace {

uint64_t upow_capped(uint64_t base, int e, uint64_t cap) {
  // Returns min(base^e, cap+1) without overflowing.
  uint64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > cap / base) return cap + 1;
    r *= base;
  }
  return r;
}

uint64_t q_of(long p, int nu) {
  uint64_t q = 1;
  for (int i = 0; i < nu; ++i) {
    if (q > UINT64_MAX / static_cast<uint64_t>(p))
      fail(ErrorKind::InvalidParameter, "p^nu does not fit 64 bits");
    q *= static_cast<uint64_t>(p);
  }
  return q;
}

}  // namespace

LocsysProblem LocsysProblem::build(const Diagram& d, int null_region) {
  LocsysProblem prob;
  prob.pres_ = dehn_presentation(d, null_region);
  const auto& pres = prob.pres_;

  std::vector<int> pos_of_region(pres.region_count, -1);
  for (size_t i = 0; i < pres.generators.size(); ++i)
    pos_of_region[pres.generators[i]] = static_cast<int>(i);
  for (int r : pres.generators) prob.gen_index_.push_back(pres.indices[r]);

  for (const auto& rel : pres.relations) {
    Relation out;
    int e = rel.handedness == Handedness::Left ? 1 : -1;
    auto push = [&](int region, int sign, int fpow) {
      if (region == pres.null_region) return;  // z = 1 contributes nothing
      out.terms.push_back({pos_of_region[region], sign, fpow});
    };
    push(rel.j, 1, 0);
    push(rel.k, -1, e);
    push(rel.l, 1, e);
    push(rel.m, -1, 0);
    prob.rels_.push_back(std::move(out));
  }

  // Propagation plan: verify exhausted relations, solve a relation whose
  // single unknown generator occurs in exactly one term, otherwise free
  // the most-constrained unknown and keep going.
  int ngen = prob.generator_count();
  int nrel = static_cast<int>(prob.rels_.size());
  std::vector<bool> known(ngen, false), used(nrel, false);
  int known_count = 0, used_count = 0;
  while (known_count < ngen || used_count < nrel) {
    bool progress = false;
    for (int r = 0; r < nrel && !progress; ++r) {
      if (used[r]) continue;
      int unknown_gen = -1, unknown_terms = 0, term_idx = -1;
      bool multiple_unknown = false;
      for (size_t t = 0; t < prob.rels_[r].terms.size(); ++t) {
        int g = prob.rels_[r].terms[t].gen;
        if (known[g]) continue;
        if (unknown_gen >= 0 && unknown_gen != g) multiple_unknown = true;
        unknown_gen = g;
        ++unknown_terms;
        term_idx = static_cast<int>(t);
      }
      if (unknown_gen < 0) {
        prob.plan_.push_back({Step::Check, r, -1, -1});
        used[r] = true;
        ++used_count;
        progress = true;
      } else if (!multiple_unknown && unknown_terms == 1) {
        prob.plan_.push_back({Step::Solve, r, unknown_gen, term_idx});
        known[unknown_gen] = true;
        ++known_count;
        used[r] = true;
        ++used_count;
        progress = true;
      }
    }
    if (progress) continue;
    // Free the unknown generator hitting the most unused relations.
    int best = -1, best_score = -1;
    for (int g = 0; g < ngen; ++g) {
      if (known[g]) continue;
      int score = 0;
      for (int r = 0; r < nrel; ++r) {
        if (used[r]) continue;
        for (const auto& t : prob.rels_[r].terms)
          if (t.gen == g) {
            ++score;
            break;
          }
      }
      if (score > best_score) {
        best_score = score;
        best = g;
      }
    }
    if (best < 0) fail(ErrorKind::Internal, "propagation plan stuck");
    prob.plan_.push_back({Step::Free, -1, best, -1});
    known[best] = true;
    ++known_count;
    ++prob.free_count_;
  }
  return prob;
}

LocsysProblem LocsysProblem::build(const Diagram& d) { return build(d, 0); }

namespace {

using Elem = FieldCtx::Elem;

Elem term_frob(const FieldCtx& ctx, int nu, const Elem& z, int fpow) {
  return ctx.frob_p_k(z, static_cast<long>(fpow) * nu);
}

// Evaluate all but one term of a relation as a (positive, negative) pair
// of products so only one inversion is needed per solve.
void split_products(const FieldCtx& ctx, int nu, const LocsysProblem::Relation& rel,
                    const std::vector<Elem>& z, int skip_term, Elem& pos, Elem& neg) {
  pos = ctx.one();
  neg = ctx.one();
  for (size_t t = 0; t < rel.terms.size(); ++t) {
    if (static_cast<int>(t) == skip_term) continue;
    const auto& term = rel.terms[t];
    Elem f = term_frob(ctx, nu, z[term.gen], term.fpow);
    if (term.sign > 0)
      pos = ctx.mul(pos, f);
    else
      neg = ctx.mul(neg, f);
  }
}

bool relation_holds(const FieldCtx& ctx, int nu, const LocsysProblem::Relation& rel,
                    const std::vector<Elem>& z) {
  Elem pos, neg;
  split_products(ctx, nu, rel, z, -1, pos, neg);
  return pos == neg;
}

}  // namespace

void for_each_cocycle(const LocsysProblem& prob, const FieldCtx& ctx, int nu,
                      uint64_t budget,
                      const std::function<void(const std::vector<Elem>&)>& fn) {
  // nu = 0 is the trivial-twist smoke mode: every Frobenius collapses to
  // the identity and the relations become the classical ones.
  int M = ctx.m();
  if (nu < 0 || (nu > 0 && M % nu != 0))
    fail(ErrorKind::InvalidParameter, "level degree must be a multiple of nu");
  uint64_t units = ctx.unit_count();
  int frees = prob.free_count();
  if (upow_capped(units, frees, budget) > budget) {
    std::ostringstream os;
    os << "free-scalar space (" << units << ")^" << frees
       << " exceeds the enumeration budget " << budget;
    fail(ErrorKind::BudgetExceeded, os.str());
  }

  uint64_t space = 1;
  for (int i = 0; i < frees; ++i) space *= units;

  int ngen = prob.generator_count();
  std::vector<Elem> z(ngen, ctx.one());
  const auto& plan = prob.plan();
  const auto& rels = prob.relations();

  for (uint64_t code = 0; code < space; ++code) {
    uint64_t rest = code;
    bool ok = true;
    for (const auto& step : plan) {
      if (step.kind == LocsysProblem::Step::Free) {
        z[step.gen] = ctx.from_uint(rest % units + 1);
        rest /= units;
      } else if (step.kind == LocsysProblem::Step::Solve) {
        const auto& rel = rels[step.relation];
        const auto& term = rel.terms[step.term];
        Elem pos, neg;
        split_products(ctx, nu, rel, z, step.term, pos, neg);
        // term.sign>0: phi^f(z) * pos/neg = 1; term.sign<0: neg = phi^f(z)^{-1}...
        Elem val = term.sign > 0 ? ctx.mul(neg, ctx.inv(pos))
                                 : ctx.mul(pos, ctx.inv(neg));
        z[term.gen] = ctx.frob_p_k(val, -static_cast<long>(term.fpow) * nu);
      } else {
        if (!relation_holds(ctx, nu, rels[step.relation], z)) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) continue;
    for (const auto& rel : rels)
      if (!relation_holds(ctx, nu, rel, z))
        fail(ErrorKind::Internal, "propagated tuple fails re-verification");
    fn(z);
  }
}

std::vector<Cocycle> enumerate_cocycles(const Diagram& d, long p, int nu, int M,
                                        uint64_t budget) {
  LocsysProblem prob = LocsysProblem::build(d);
  FieldCtx ctx = FieldCtx::make(p, M, /*allow_large=*/true);
  std::vector<Cocycle> out;
  for_each_cocycle(prob, ctx, nu, budget,
                   [&](const std::vector<Elem>& z) { out.push_back({M, z}); });
  return out;
}

namespace {

std::vector<uint64_t> tuple_code(const FieldCtx& ctx, const std::vector<Elem>& z) {
  std::vector<uint64_t> code(z.size());
  for (size_t i = 0; i < z.size(); ++i) code[i] = ctx.to_uint(z[i]);
  return code;
}

// Coboundary factors (y^{q^{I_j}-1})_j for one unit y.
std::vector<Elem> coboundary_factors(const FieldCtx& ctx, int nu, const Elem& y,
                                     const std::vector<int>& gen_indices) {
  Elem yi = ctx.inv(y);
  std::vector<Elem> f(gen_indices.size());
  for (size_t j = 0; j < gen_indices.size(); ++j)
    f[j] = ctx.mul(ctx.frob_p_k(y, static_cast<long>(gen_indices[j]) * nu), yi);
  return f;
}

}  // namespace

ClassTable coboundary_orbits(const FieldCtx& ctx, int nu,
                             const std::vector<Cocycle>& cocycles,
                             const std::vector<int>& gen_indices) {
  ClassTable table;
  table.level = ctx.m();
  table.total_cocycles = static_cast<unsigned long>(cocycles.size());
  uint64_t units = ctx.unit_count();
  if (units > (1ull << 16) || cocycles.size() > (1ull << 20))
    fail(ErrorKind::BudgetExceeded, "class table materialization over budget");

  std::map<std::vector<uint64_t>, int> index_of;
  for (size_t i = 0; i < cocycles.size(); ++i) {
    auto code = tuple_code(ctx, cocycles[i].z);
    if (!index_of.emplace(std::move(code), static_cast<int>(i)).second)
      fail(ErrorKind::Internal, "duplicate cocycle in orbit input");
  }

  // Stabilizers do not depend on the representative: y fixes a tuple
  // exactly when every factor y^{q^{I_j}-1} is 1.  Counted once, reported
  // per class as the order of the stabilizer of its representative.
  Int stab = 0;
  for (uint64_t c = 1; c <= units; ++c) {
    auto f = coboundary_factors(ctx, nu, ctx.from_uint(c), gen_indices);
    bool trivial = std::all_of(f.begin(), f.end(),
                               [&](const Elem& e) { return ctx.is_one(e); });
    if (trivial) stab += 1;
  }
  Int image_size = Int(static_cast<unsigned long>(units)) / stab;
  table.coboundary_image_size = image_size;

  std::vector<bool> visited(cocycles.size(), false);
  for (size_t i = 0; i < cocycles.size(); ++i) {
    if (visited[i]) continue;
    std::map<std::vector<uint64_t>, int> orbit;
    for (uint64_t c = 1; c <= units; ++c) {
      auto f = coboundary_factors(ctx, nu, ctx.from_uint(c), gen_indices);
      std::vector<Elem> img(cocycles[i].z.size());
      for (size_t j = 0; j < img.size(); ++j)
        img[j] = ctx.mul(f[j], cocycles[i].z[j]);
      auto code = tuple_code(ctx, img);
      auto it = index_of.find(code);
      if (it == index_of.end())
        fail(ErrorKind::Internal, "coboundary action leaves the solution set");
      visited[it->second] = true;
      orbit.emplace(std::move(code), it->second);
    }
    ClassInfo info;
    info.rep = cocycles[orbit.begin()->second];  // smallest tuple code
    info.orbit_size = static_cast<unsigned long>(orbit.size());
    info.automorphism_order = stab;
    table.classes.push_back(std::move(info));
  }

  Int covered = 0;
  for (const auto& cl : table.classes) covered += cl.orbit_size;
  if (covered != table.total_cocycles)
    fail(ErrorKind::Internal, "orbit sizes do not add up");
  std::sort(table.classes.begin(), table.classes.end(),
            [&](const ClassInfo& a, const ClassInfo& b) {
              return tuple_code(ctx, a.rep.z) < tuple_code(ctx, b.rep.z);
            });
  return table;
}

bool coboundary_membership_closure(const FieldCtx& ctx, int nu,
                                   const std::vector<Elem>& w,
                                   const std::vector<int>& gen_indices) {
  // Coordinates with I = 0 are untouched by every coboundary.
  for (size_t j = 0; j < gen_indices.size(); ++j)
    if (gen_indices[j] == 0 && !ctx.is_one(w[j])) return false;

  int j0 = -1;
  for (size_t j = 0; j < gen_indices.size() && j0 < 0; ++j)
    if (gen_indices[j] == 1) j0 = static_cast<int>(j);
  for (size_t j = 0; j < gen_indices.size() && j0 < 0; ++j)
    if (gen_indices[j] == -1) j0 = static_cast<int>(j);
  if (j0 < 0) {
    bool any_nonzero = false;
    for (int I : gen_indices) any_nonzero |= I != 0;
    if (!any_nonzero) return true;  // no constraints beyond the I = 0 ones
    fail(ErrorKind::Internal, "no region of index +-1 next to the null region");
  }

  uint64_t q = q_of(ctx.p(), nu);
  if (q - 1 > (1ull << 10))
    fail(ErrorKind::BudgetExceeded, "closure membership ring too large");
  int d = static_cast<int>(q - 1);

  // Solve phi^{I_{j0}}(y)/y = w_{j0}: equivalently y^{q-1} = u.
  Elem u = gen_indices[j0] == 1
               ? w[j0]
               : ctx.inv(ctx.frob_p_k(w[j0], nu));

  // Work in R = F[X]/(X^d - u); the component fields of R realize every
  // (q-1)-th root y of u over the closure at once.  Each remaining
  // equation phi^{a}(y)/y = c becomes a polynomial constraint, and a
  // common root exists iff the gcd with X^d - u has positive degree.
  using RElem = std::vector<Elem>;
  auto r_zero = [&] { return RElem(d, ctx.zero()); };
  auto r_from = [&](const Elem& c) {
    RElem r = r_zero();
    r[0] = c;
    return r;
  };
  std::vector<Elem> u_pow{ctx.one()};
  auto u_power = [&](int s) {
    while (static_cast<int>(u_pow.size()) <= s)
      u_pow.push_back(ctx.mul(u_pow.back(), u));
    return u_pow[s];
  };
  auto r_mul = [&](const RElem& a, const RElem& b) {
    RElem r = r_zero();
    for (int i = 0; i < d; ++i) {
      if (ctx.is_zero(a[i])) continue;
      for (int j = 0; j < d; ++j) {
        if (ctx.is_zero(b[j])) continue;
        Elem prod = ctx.mul(a[i], b[j]);
        int k = i + j;
        if (k >= d) {
          k -= d;
          prod = ctx.mul(prod, u);
        }
        r[k] = ctx.add(r[k], prod);
      }
    }
    return r;
  };
  auto r_frob_p = [&](const RElem& a) {
    RElem r = r_zero();
    for (int i = 0; i < d; ++i) {
      if (ctx.is_zero(a[i])) continue;
      long e = static_cast<long>(i) * ctx.p();
      int s = static_cast<int>(e / d), k = static_cast<int>(e % d);
      Elem c = ctx.mul(ctx.frob_p(a[i]), u_power(s));
      r[k] = ctx.add(r[k], c);
    }
    return r;
  };
  auto r_frob = [&](RElem a, long steps) {
    for (long i = 0; i < steps; ++i) a = r_frob_p(a);
    return a;
  };

  RElem y = r_zero();
  if (d == 1)
    y[0] = u;
  else
    y[1] = ctx.one();
  RElem y_inv = r_zero();
  y_inv[d - 1] = ctx.inv(u);
  if (d == 1) y_inv[0] = ctx.inv(u);

  // Polynomial gcd over F, on vectors of coefficients.
  auto pdeg = [&](const std::vector<Elem>& f) {
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
      if (!ctx.is_zero(f[i])) return i;
    return -1;
  };
  auto pmod = [&](std::vector<Elem> a, const std::vector<Elem>& b) {
    int db = pdeg(b);
    Elem li = ctx.inv(b[db]);
    for (int i = pdeg(a); i >= db; --i) {
      if (ctx.is_zero(a[i])) continue;
      Elem c = ctx.mul(a[i], li);
      for (int j = 0; j <= db; ++j)
        a[i - db + j] = ctx.sub(a[i - db + j], ctx.mul(c, b[j]));
    }
    a.resize(std::max(0, pdeg(a)) + 1, ctx.zero());
    return a;
  };
  auto pgcd = [&](std::vector<Elem> a, std::vector<Elem> b) {
    while (pdeg(b) >= 0) {
      a = pmod(std::move(a), b);
      std::swap(a, b);
    }
    return a;
  };

  std::vector<Elem> g(d + 1, ctx.zero());
  g[d] = ctx.one();
  g[0] = ctx.neg(u);

  std::map<int, RElem> frob_cache;
  for (size_t j = 0; j < gen_indices.size(); ++j) {
    int a = gen_indices[j];
    if (a == 0) continue;
    int aa = a > 0 ? a : -a;
    Elem target = a > 0 ? w[j]
                        : ctx.inv(ctx.frob_p_k(w[j], static_cast<long>(aa) * nu));
    auto it = frob_cache.find(aa);
    if (it == frob_cache.end())
      it = frob_cache.emplace(aa, r_frob(y, static_cast<long>(aa) * nu)).first;
    RElem e = r_mul(it->second, y_inv);
    e[0] = ctx.sub(e[0], target);
    // Lift e to a polynomial and fold into the gcd.
    std::vector<Elem> lift(e.begin(), e.end());
    if (pdeg(lift) < 0) continue;  // identically satisfied
    g = pgcd(std::move(g), lift);
    if (pdeg(g) <= 0) return false;
  }
  return pdeg(g) >= 1;
}

namespace {

Int stabilizer_order_closed_form(long p, int nu, int M,
                                 const std::vector<int>& gen_indices) {
  int g = 0;
  for (int I : gen_indices) g = std::gcd(g, I < 0 ? -I : I);
  if (g == 0) return int_pow(Int(p), M) - 1;  // every unit acts trivially
  int e = std::gcd(nu * g, M);
  return int_pow(Int(p), e) - 1;
}

}  // namespace

StableCount stable_class_count(const Diagram& d, long p, int nu, int m_cap,
                               uint64_t budget) {
  if (nu < 1) fail(ErrorKind::InvalidParameter, "nu must be >= 1");
  if (m_cap < nu)
    fail(ErrorKind::InvalidParameter, "level cap below the first level");
  LocsysProblem prob = LocsysProblem::build(d);
  const auto& gi = prob.generator_indices();

  StableCount out;
  out.q = q_of(p, nu);
  int since_increase = -1;  // completed levels after the last increase

  for (int M = nu; M <= m_cap; M += nu) {
    LevelReport rep{M, false, 0, 0, 0};
    uint64_t units_cap = upow_capped(static_cast<uint64_t>(p), M, budget);
    bool affordable = units_cap <= budget;
    if (affordable) {
      uint64_t units = units_cap - 1;
      affordable = upow_capped(units, prob.free_count(), budget) <= budget;
    }
    if (!affordable) {
      rep.skipped = true;
      out.levels.push_back(rep);
      continue;
    }
    FieldCtx ctx = FieldCtx::make(p, M, /*allow_large=*/true);
    Int total = 0, in_b = 0;
    for_each_cocycle(prob, ctx, nu, budget, [&](const std::vector<Elem>& z) {
      total += 1;
      if (coboundary_membership_closure(ctx, nu, z, gi)) in_b += 1;
    });
    rep.cocycles = total;
    Int stab = stabilizer_order_closed_form(p, nu, M, gi);
    Int b_size = Int(static_cast<unsigned long>(ctx.unit_count())) / stab;
    if (total % b_size != 0)
      fail(ErrorKind::Internal, "cocycle count not a multiple of the orbit size");
    rep.orbit_classes = total / b_size;
    if (in_b == 0 || total % in_b != 0)
      fail(ErrorKind::Internal, "closure-coboundary subgroup index not integral");
    rep.h1_image = total / in_b;
    out.levels.push_back(rep);

    if (rep.h1_image > out.value) {
      out.value = rep.h1_image;
      out.attained_level = M;
      since_increase = 0;
    } else if (since_increase >= 0) {
      ++since_increase;
    }
  }
  out.stabilized = since_increase >= 2;

  if (out.attained_level > 0) {
    // Collect closure-distinct representatives at the attaining level.
    FieldCtx ctx = FieldCtx::make(p, out.attained_level, /*allow_large=*/true);
    std::vector<Cocycle>& reps = out.reps;
    for_each_cocycle(prob, ctx, nu, budget, [&](const std::vector<Elem>& z) {
      for (const auto& r : reps) {
        std::vector<Elem> w(z.size());
        for (size_t j = 0; j < z.size(); ++j)
          w[j] = ctx.mul(z[j], ctx.inv(r.z[j]));
        if (coboundary_membership_closure(ctx, nu, w, gi)) return;
      }
      reps.push_back({out.attained_level, z});
    });
    if (Int(static_cast<unsigned long>(reps.size())) != out.value)
      fail(ErrorKind::Internal, "representative collection disagrees with count");

    // Stabilizer order per representative, enumerated at the stable
    // level and re-checked at the doubled level's closed form.
    Int stab = 0;
    for (uint64_t c = 1; c <= ctx.unit_count(); ++c) {
      auto f = coboundary_factors(ctx, nu, ctx.from_uint(c), gi);
      bool trivial = std::all_of(f.begin(), f.end(),
                                 [&](const Elem& e) { return ctx.is_one(e); });
      if (trivial) stab += 1;
    }
    Int doubled = stabilizer_order_closed_form(p, nu, 2 * out.attained_level, gi);
    if (doubled != stab) {
      out.aut_recheck_mismatch = true;
      stab = doubled;
    }
    out.aut_orders.assign(reps.size(), stab);
  }
  return out;
}

mpq_class orbifold_count(const Diagram& d, long p, int nu, int m_cap,
                         uint64_t budget) {
  StableCount sc = stable_class_count(d, p, nu, m_cap, budget);
  if (!sc.stabilized)
    fail(ErrorKind::NotStabilized,
         "class count not stabilized within the level cap");
  mpq_class acc = 0;
  for (const Int& aut : sc.aut_orders) {
    mpq_class term(1, 1);
    term /= mpq_class(aut);
    acc += term;
  }
  acc.canonicalize();
  return acc;
}

}  // namespace ffk
