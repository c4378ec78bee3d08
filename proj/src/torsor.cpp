#include "ffk/torsor.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "ffk/errors.hpp"
#include "ffk/ztorsion.hpp"

namespace ffk {

std::vector<TwistedRelation> twisted_relations(const WirtingerPresentation& w,
                                               int nu) {
  if (nu < 1) fail(ErrorKind::InvalidParameter, "nu must be >= 1");
  std::vector<TwistedRelation> out;
  for (const auto& rel : w.relations) {
    TwistedRelation tr;
    tr.crossing = rel.crossing;
    tr.out_gen = rel.out_arc;
    if (rel.sign > 0) {
      // out = over * sigma^nu(in) * sigma^nu(over)^{-1}
      tr.rhs = {{rel.over_arc, 1, 0}, {rel.in_arc, 1, nu}, {rel.over_arc, -1, nu}};
    } else {
      // out = sigma^{-nu}(over^{-1} in) * over
      tr.rhs = {{rel.over_arc, -1, -nu}, {rel.in_arc, 1, -nu}, {rel.over_arc, 1, 0}};
    }
    out.push_back(std::move(tr));
  }
  return out;
}

TwistedWord word_inverse(const TwistedWord& w) {
  TwistedWord r;
  for (auto it = w.rbegin(); it != w.rend(); ++it)
    r.push_back({it->gen, -it->sign, it->fpow});
  return r;
}

TwistedWord word_shift(TwistedWord w, int k) {
  for (auto& l : w) l.fpow += k;
  return w;
}

TwistedWord word_reduce(TwistedWord w) {
  TwistedWord r;
  for (const auto& l : w) {
    if (!r.empty() && r.back().gen == l.gen && r.back().fpow == l.fpow &&
        r.back().sign == -l.sign)
      r.pop_back();
    else
      r.push_back(l);
  }
  return r;
}

namespace {

// Substitute known generator words into a word; known[g] empty-with-flag
// means the identity.
TwistedWord substitute(const TwistedWord& w, const std::vector<TwistedWord>& value,
                       const std::vector<bool>& has_value) {
  TwistedWord out;
  for (const auto& l : w) {
    if (has_value[l.gen]) {
      TwistedWord part = value[l.gen];
      if (l.sign < 0) part = word_inverse(part);
      part = word_shift(std::move(part), l.fpow);
      out.insert(out.end(), part.begin(), part.end());
    } else {
      out.push_back(l);
    }
  }
  return word_reduce(std::move(out));
}

std::vector<int> word_gens(const TwistedWord& w) {
  std::vector<int> g;
  for (const auto& l : w) g.push_back(l.gen);
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

}  // namespace

Elimination eliminate_to_single_unknown(const WirtingerPresentation& w) {
  Elimination e;
  int v = w.arc_count;
  if (v == 0) return e;
  auto rels = twisted_relations(w, 1);  // symbolic powers in nu-units

  std::vector<TwistedWord> value(v);
  std::vector<bool> has_value(v, false);
  e.normalized = v - 1;
  has_value[e.normalized] = true;  // pinned to the identity (empty word)

  std::vector<bool> used(rels.size(), false);
  bool progress = true;
  while (progress) {
    progress = false;
    for (size_t r = 0; r < rels.size(); ++r) {
      if (used[r] || has_value[rels[r].out_gen]) continue;
      TwistedWord rhs = substitute(rels[r].rhs, value, has_value);
      auto gens = word_gens(rhs);
      int unknowns = 0;
      for (int g : gens)
        if (!has_value[g]) ++unknowns;
      if (unknowns <= 1) {
        // Keep at most one unknown in every stored value.
        bool pure = true;
        for (int g : gens)
          if (!has_value[g] && e.unknown >= 0 && g != e.unknown) pure = false;
        if (!pure) continue;
        for (int g : gens)
          if (!has_value[g]) e.unknown = g;
        value[rels[r].out_gen] = rhs;
        has_value[rels[r].out_gen] = true;
        used[r] = true;
        progress = true;
      }
    }
  }

  int remaining = 0;
  for (int g = 0; g < v; ++g)
    if (!has_value[g]) ++remaining;
  if (e.unknown < 0 && remaining > 0) return e;  // could not express anything
  if (remaining > (e.unknown >= 0 ? 1 : 0)) return e;  // more than one unknown left
  if (e.unknown < 0) e.unknown = e.normalized;  // fully determined (unknot-like)

  for (size_t r = 0; r < rels.size(); ++r) {
    if (used[r]) continue;
    TwistedWord rhs = substitute(rels[r].rhs, value, has_value);
    TwistedWord lhs = has_value[rels[r].out_gen]
                          ? value[rels[r].out_gen]
                          : TwistedWord{{rels[r].out_gen, 1, 0}};
    TwistedWord residual = word_inverse(lhs);
    residual.insert(residual.end(), rhs.begin(), rhs.end());
    residual = word_reduce(std::move(residual));
    if (!residual.empty()) e.residuals.push_back(std::move(residual));
  }
  e.single_unknown = true;
  return e;
}

MatGroup::Mat MatGroup::identity() const {
  Mat m(static_cast<size_t>(n) * n, F->zero());
  for (int i = 0; i < n; ++i) m[static_cast<size_t>(i) * n + i] = F->one();
  return m;
}

MatGroup::Mat MatGroup::mul(const Mat& a, const Mat& b) const {
  Mat r(static_cast<size_t>(n) * n, F->zero());
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const auto& aik = a[static_cast<size_t>(i) * n + k];
      if (F->is_zero(aik)) continue;
      for (int j = 0; j < n; ++j) {
        const auto& bkj = b[static_cast<size_t>(k) * n + j];
        if (F->is_zero(bkj)) continue;
        auto& rij = r[static_cast<size_t>(i) * n + j];
        rij = F->add(rij, F->mul(aik, bkj));
      }
    }
  return r;
}

MatGroup::Mat MatGroup::frob_k(const Mat& a, long k) const {
  Mat r = a;
  for (auto& e : r) e = F->frob_p_k(e, k);
  return r;
}

FieldCtx::Elem MatGroup::det(const Mat& a) const {
  if (n == 1) return a[0];
  if (n == 2)
    return F->sub(F->mul(a[0], a[3]), F->mul(a[1], a[2]));
  // Gaussian elimination for larger n.
  Mat m = a;
  FieldCtx::Elem d = F->one();
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (!F->is_zero(m[static_cast<size_t>(r) * n + c])) {
        piv = r;
        break;
      }
    if (piv < 0) return F->zero();
    if (piv != c) {
      for (int j = 0; j < n; ++j)
        std::swap(m[static_cast<size_t>(piv) * n + j],
                  m[static_cast<size_t>(c) * n + j]);
      d = F->neg(d);
    }
    const auto pivot = m[static_cast<size_t>(c) * n + c];
    d = F->mul(d, pivot);
    auto pinv = F->inv(pivot);
    for (int r = c + 1; r < n; ++r) {
      auto f = F->mul(m[static_cast<size_t>(r) * n + c], pinv);
      if (F->is_zero(f)) continue;
      for (int j = c; j < n; ++j)
        m[static_cast<size_t>(r) * n + j] =
            F->sub(m[static_cast<size_t>(r) * n + j],
                   F->mul(f, m[static_cast<size_t>(c) * n + j]));
    }
  }
  return d;
}

bool MatGroup::invertible(const Mat& a) const { return !F->is_zero(det(a)); }

MatGroup::Mat MatGroup::inv(const Mat& a) const {
  if (n == 1) return Mat{F->inv(a[0])};
  if (n == 2) {
    auto dinv = F->inv(det(a));
    Mat r(4);
    r[0] = F->mul(a[3], dinv);
    r[1] = F->mul(F->neg(a[1]), dinv);
    r[2] = F->mul(F->neg(a[2]), dinv);
    r[3] = F->mul(a[0], dinv);
    return r;
  }
  // Gauss-Jordan with an augmented identity.
  Mat m = a, r = identity();
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int row = c; row < n; ++row)
      if (!F->is_zero(m[static_cast<size_t>(row) * n + c])) {
        piv = row;
        break;
      }
    if (piv < 0) fail(ErrorKind::InvalidParameter, "singular matrix");
    if (piv != c)
      for (int j = 0; j < n; ++j) {
        std::swap(m[static_cast<size_t>(piv) * n + j],
                  m[static_cast<size_t>(c) * n + j]);
        std::swap(r[static_cast<size_t>(piv) * n + j],
                  r[static_cast<size_t>(c) * n + j]);
      }
    auto pinv = F->inv(m[static_cast<size_t>(c) * n + c]);
    for (int j = 0; j < n; ++j) {
      m[static_cast<size_t>(c) * n + j] = F->mul(m[static_cast<size_t>(c) * n + j], pinv);
      r[static_cast<size_t>(c) * n + j] = F->mul(r[static_cast<size_t>(c) * n + j], pinv);
    }
    for (int row = 0; row < n; ++row) {
      if (row == c) continue;
      auto f = m[static_cast<size_t>(row) * n + c];
      if (F->is_zero(f)) continue;
      for (int j = 0; j < n; ++j) {
        m[static_cast<size_t>(row) * n + j] =
            F->sub(m[static_cast<size_t>(row) * n + j],
                   F->mul(f, m[static_cast<size_t>(c) * n + j]));
        r[static_cast<size_t>(row) * n + j] =
            F->sub(r[static_cast<size_t>(row) * n + j],
                   F->mul(f, r[static_cast<size_t>(c) * n + j]));
      }
    }
  }
  return r;
}

std::vector<uint64_t> MatGroup::code(const Mat& a) const {
  std::vector<uint64_t> c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = F->to_uint(a[i]);
  return c;
}

namespace {

struct TorsorProblem {
  std::vector<TwistedRelation> rels;
  struct Step {
    enum Kind { Free, SolveOut, SolveIso, Check } kind;
    int relation = -1;
    int gen = -1;
    int letter = -1;
  };
  std::vector<Step> plan;
  int seeds = 0;
  int arcs = 0;
};

TorsorProblem build_torsor_plan(const std::vector<TwistedRelation>& rels, int arcs,
                                const std::vector<int>& pinned) {
  TorsorProblem prob;
  prob.rels = rels;
  prob.arcs = arcs;
  std::vector<bool> known(arcs, false);
  for (int g : pinned) known[g] = true;
  std::vector<bool> used(rels.size(), false);
  size_t used_count = 0;
  int known_count = 0;
  for (bool k : known) known_count += k;

  while (known_count < arcs || used_count < rels.size()) {
    bool progress = false;
    for (size_t r = 0; r < rels.size() && !progress; ++r) {
      if (used[r]) continue;
      bool rhs_known = true;
      int unknown_gen = -1, unknown_letters = 0, letter = -1;
      bool multiple = false;
      for (size_t t = 0; t < rels[r].rhs.size(); ++t) {
        int g = rels[r].rhs[t].gen;
        if (known[g]) continue;
        rhs_known = false;
        if (unknown_gen >= 0 && unknown_gen != g) multiple = true;
        unknown_gen = g;
        ++unknown_letters;
        letter = static_cast<int>(t);
      }
      if (rhs_known && known[rels[r].out_gen]) {
        prob.plan.push_back({TorsorProblem::Step::Check, static_cast<int>(r)});
        used[r] = true;
        ++used_count;
        progress = true;
      } else if (rhs_known) {
        prob.plan.push_back(
            {TorsorProblem::Step::SolveOut, static_cast<int>(r), rels[r].out_gen});
        known[rels[r].out_gen] = true;
        ++known_count;
        used[r] = true;
        ++used_count;
        progress = true;
      } else if (known[rels[r].out_gen] && !multiple && unknown_letters == 1) {
        prob.plan.push_back({TorsorProblem::Step::SolveIso, static_cast<int>(r),
                             unknown_gen, letter});
        known[unknown_gen] = true;
        ++known_count;
        used[r] = true;
        ++used_count;
        progress = true;
      }
    }
    if (progress) continue;
    int best = -1, best_score = -1;
    for (int g = 0; g < arcs; ++g) {
      if (known[g]) continue;
      int score = 0;
      for (size_t r = 0; r < rels.size(); ++r) {
        if (used[r]) continue;
        bool hits = rels[r].out_gen == g;
        for (const auto& l : rels[r].rhs) hits |= l.gen == g;
        score += hits;
      }
      if (score > best_score) {
        best_score = score;
        best = g;
      }
    }
    if (best < 0) fail(ErrorKind::Internal, "torsor plan stuck");
    prob.plan.push_back({TorsorProblem::Step::Free, -1, best});
    known[best] = true;
    ++known_count;
    ++prob.seeds;
  }
  return prob;
}

using Mat = MatGroup::Mat;

Mat eval_word(const MatGroup& G, const TwistedWord& w, const std::vector<Mat>& g) {
  Mat acc = G.identity();
  for (const auto& l : w) {
    Mat v = l.sign > 0 ? g[l.gen] : G.inv(g[l.gen]);
    acc = G.mul(acc, G.frob_k(v, l.fpow));
  }
  return acc;
}

// Prefix/suffix products around one letter, for isolation.
Mat eval_range(const MatGroup& G, const TwistedWord& w, size_t from, size_t to,
               const std::vector<Mat>& g) {
  Mat acc = G.identity();
  for (size_t t = from; t < to; ++t) {
    const auto& l = w[t];
    Mat v = l.sign > 0 ? g[l.gen] : G.inv(g[l.gen]);
    acc = G.mul(acc, G.frob_k(v, l.fpow));
  }
  return acc;
}

std::vector<Mat> enumerate_group(const MatGroup& G, uint64_t budget) {
  uint64_t Q = G.F->size();
  int cells = G.n * G.n;
  uint64_t space = 1;
  for (int i = 0; i < cells; ++i) {
    if (space > budget * 4 / Q + 1)
      fail(ErrorKind::BudgetExceeded, "matrix space exceeds enumeration budget");
    space *= Q;
  }
  std::vector<Mat> out;
  for (uint64_t code = 0; code < space; ++code) {
    Mat m(cells);
    uint64_t rest = code;
    for (int i = 0; i < cells; ++i) {
      m[i] = G.F->from_uint(rest % Q);
      rest /= Q;
    }
    if (G.invertible(m)) out.push_back(std::move(m));
  }
  return out;
}

struct Enumerated {
  std::vector<std::vector<Mat>> solutions;
  Int group_order;
};

Enumerated enumerate_torsors(const Diagram& d, const GroupSpec& spec,
                             uint64_t budget, bool normalize_last) {
  if (spec.nu < 1 || spec.level % spec.nu != 0)
    fail(ErrorKind::InvalidParameter, "level must be a multiple of nu");
  if (spec.n < 1) fail(ErrorKind::InvalidParameter, "need n >= 1");
  WirtingerPresentation w = wirtinger_presentation(d);
  auto rels = twisted_relations(w, spec.nu);

  FieldCtx F = FieldCtx::make(spec.p, spec.level, /*allow_large=*/true);
  MatGroup G{&F, spec.n};
  std::vector<Mat> group = enumerate_group(G, budget);
  Int order = static_cast<unsigned long>(group.size());

  std::vector<int> pinned;
  if (normalize_last && w.arc_count > 0) pinned.push_back(w.arc_count - 1);
  TorsorProblem prob = build_torsor_plan(rels, w.arc_count, pinned);

  uint64_t space = 1;
  for (int i = 0; i < prob.seeds; ++i) {
    if (space > budget / std::max<uint64_t>(1, group.size()) + 1)
      fail(ErrorKind::BudgetExceeded, "seed space exceeds enumeration budget");
    space *= group.size();
  }

  Enumerated out;
  out.group_order = order;
  std::vector<Mat> g(w.arc_count, G.identity());
  for (uint64_t code = 0; code < space; ++code) {
    uint64_t rest = code;
    bool ok = true;
    for (const auto& step : prob.plan) {
      if (step.kind == TorsorProblem::Step::Free) {
        g[step.gen] = group[rest % group.size()];
        rest /= group.size();
      } else if (step.kind == TorsorProblem::Step::SolveOut) {
        g[step.gen] = eval_word(G, prob.rels[step.relation].rhs, g);
      } else if (step.kind == TorsorProblem::Step::SolveIso) {
        const auto& rel = prob.rels[step.relation];
        const auto& l = rel.rhs[step.letter];
        Mat A = eval_range(G, rel.rhs, 0, step.letter, g);
        Mat B = eval_range(G, rel.rhs, step.letter + 1, rel.rhs.size(), g);
        // out = A * sigma^f(u^s) * B
        Mat mid = G.mul(G.inv(A), G.mul(g[rel.out_gen], G.inv(B)));
        mid = G.frob_k(mid, -l.fpow);
        g[step.gen] = l.sign > 0 ? mid : G.inv(mid);
      } else {
        const auto& rel = prob.rels[step.relation];
        if (!G.eq(g[rel.out_gen], eval_word(G, rel.rhs, g))) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) continue;
    bool verified = true;
    for (const auto& rel : prob.rels)
      if (!G.eq(g[rel.out_gen], eval_word(G, rel.rhs, g))) {
        verified = false;
        break;
      }
    if (!verified)
      fail(ErrorKind::Internal, "torsor propagation failed re-verification");
    out.solutions.push_back(g);
    if (out.solutions.size() > (1ull << 20))
      fail(ErrorKind::BudgetExceeded, "solution set exceeds materialization budget");
  }
  return out;
}

}  // namespace

std::vector<std::vector<MatGroup::Mat>> enumerate_torsor_solutions(
    const Diagram& d, const GroupSpec& spec, uint64_t budget) {
  return enumerate_torsors(d, spec, budget, false).solutions;
}

TorsorCount count_torsors(const Diagram& d, const GroupSpec& spec, uint64_t budget) {
  Enumerated raw = enumerate_torsors(d, spec, budget, false);
  Enumerated normalized = enumerate_torsors(d, spec, budget, true);

  FieldCtx F = FieldCtx::make(spec.p, spec.level, /*allow_large=*/true);
  MatGroup G{&F, spec.n};

  // The sigma-fixed subgroup: entries in the subfield fixed by the
  // nu-fold p-power map.
  std::vector<Mat> fixed;
  {
    std::vector<FieldCtx::Elem> subfield;
    for (uint64_t c = 0; c < F.size(); ++c) {
      auto e = F.from_uint(c);
      if (F.frob_p_k(e, spec.nu) == e) subfield.push_back(e);
    }
    int cells = spec.n * spec.n;
    uint64_t space = 1;
    for (int i = 0; i < cells; ++i) {
      if (space > budget * 4) fail(ErrorKind::BudgetExceeded, "fixed-group space");
      space *= subfield.size();
    }
    for (uint64_t code = 0; code < space; ++code) {
      Mat m(cells);
      uint64_t rest = code;
      for (int i = 0; i < cells; ++i) {
        m[i] = subfield[rest % subfield.size()];
        rest /= subfield.size();
      }
      if (G.invertible(m)) fixed.push_back(std::move(m));
    }
  }

  TorsorCount out;
  out.solutions = static_cast<unsigned long>(raw.solutions.size());
  out.normalized_solutions = static_cast<unsigned long>(normalized.solutions.size());
  out.group_order = raw.group_order;
  out.fixed_group_order = static_cast<unsigned long>(fixed.size());

  // Orbits of simultaneous twisted conjugation g_i -> h g_i sigma^nu(h)^{-1}
  // by h in the fixed group (= plain conjugation there).
  std::map<std::vector<uint64_t>, int> index_of;
  auto tuple_code = [&](const std::vector<Mat>& tup) {
    std::vector<uint64_t> c;
    for (const auto& m : tup) {
      auto mc = G.code(m);
      c.insert(c.end(), mc.begin(), mc.end());
    }
    return c;
  };
  for (size_t i = 0; i < raw.solutions.size(); ++i)
    index_of[tuple_code(raw.solutions[i])] = static_cast<int>(i);

  std::vector<bool> visited(raw.solutions.size(), false);
  for (size_t i = 0; i < raw.solutions.size(); ++i) {
    if (visited[i]) continue;
    Int stab = 0;
    std::map<std::vector<uint64_t>, int> orbit;
    for (const auto& h : fixed) {
      Mat hinvf = G.inv(G.frob_k(h, spec.nu));
      std::vector<Mat> img;
      img.reserve(raw.solutions[i].size());
      for (const auto& m : raw.solutions[i]) img.push_back(G.mul(h, G.mul(m, hinvf)));
      auto code = tuple_code(img);
      auto it = index_of.find(code);
      if (it == index_of.end())
        fail(ErrorKind::Internal, "conjugation leaves the torsor solution set");
      visited[it->second] = true;
      if (it->second == static_cast<int>(i)) stab += 1;
      orbit.emplace(std::move(code), it->second);
    }
    out.stabilizer_orders.push_back(stab);
    Int orbit_size = static_cast<unsigned long>(orbit.size());
    if (orbit_size * stab != out.fixed_group_order)
      fail(ErrorKind::Internal, "orbit-stabilizer mismatch");
  }
  out.classes = static_cast<unsigned long>(out.stabilizer_orders.size());
  return out;
}

Int count_word_solutions(const TwistedWord& w, const FieldCtx& ctx, int n,
                         uint64_t budget) {
  MatGroup G{&ctx, n};
  std::vector<Mat> group = enumerate_group(G, budget);
  Int count = 0;
  std::vector<Mat> g(1, G.identity());
  for (const auto& cand : group) {
    g[0] = cand;
    // Words over a single generator use gen index 0.
    TwistedWord w0 = w;
    for (auto& l : w0) l.gen = 0;
    if (G.eq(eval_word(G, w0, g), G.identity())) count += 1;
  }
  return count;
}

}  // namespace ffk
