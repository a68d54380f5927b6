#ifndef FAMFIB_FIBERED_HPP
#define FAMFIB_FIBERED_HPP

#include <algorithm>
#include <functional>
#include <memory>
#include <string>

#include "famfib/family.hpp"
#include "famfib/limits.hpp"
#include "famfib/poset.hpp"

/// Everything relative to a fixed functor u : T -> S: final/initial/cartesian
/// families, surjective/injective families, lift creation, prefibrations and
/// fibrations, fiber products and their stability, and the per-object family
/// surveys that power the large classification scans.
namespace famfib {

/// Owns a validated functor plus oracles for both ends and the hom-over
/// tables. Non-copyable; the opposite context is built lazily on demand.
class OverContext {
 public:
  FunctorMap u;

  explicit OverContext(FunctorMap um) : u(std::move(um)) {
    auto rep = validate_functor(u);
    if (!rep.ok()) throw std::invalid_argument("invalid functor: " + rep.to_string());
    top_ = std::make_unique<CatOracle>(u.source);
    base_ = std::make_unique<CatOracle>(u.target);
    faithful_ = is_faithful(u);
    const int nt = u.source.n_obj();
    objects_over_.assign(u.target.n_obj(), {});
    for (int x = 0; x < nt; ++x) objects_over_[u.obj_map[x]].push_back(x);
    hov_.assign(static_cast<size_t>(nt) * nt,
                std::vector<std::vector<int>>(u.target.n_arr()));
    for (int a = 0; a < u.source.n_arr(); ++a)
      hov_[static_cast<size_t>(u.source.src(a)) * nt + u.source.tgt(a)][u.arr_map[a]]
          .push_back(a);
    cart_memo.assign(u.source.n_arr(), -1);
    init_memo.assign(u.source.n_arr(), -1);
  }
  OverContext(const OverContext&) = delete;
  OverContext& operator=(const OverContext&) = delete;

  const CatOracle& top() const { return *top_; }
  const CatOracle& base() const { return *base_; }
  bool faithful() const { return faithful_; }
  const std::vector<int>& objects_over(int s) const { return objects_over_[s]; }

  /// Arrows x -> y lying over the base arrow phi.
  const std::vector<int>& hom_over(int x, int y, int phi) const {
    return hov_[static_cast<size_t>(x) * u.source.n_obj() + y][phi];
  }
  int n_over(int x, int y, int phi) const {
    return static_cast<int>(hom_over(x, y, phi).size());
  }
  int u_obj(int x) const { return u.obj_map[x]; }
  int u_arr(int a) const { return u.arr_map[a]; }

  OverContext& op() const {
    if (!op_) op_.reset(new OverContext(opposite_functor(u)));
    return *op_;
  }

  // memoized verdicts, filled in by the free functions below
  mutable std::vector<signed char> cart_memo, init_memo;
  mutable std::unordered_map<int, std::vector<std::uint8_t>> survey_memo;

 private:
  std::unique_ptr<CatOracle> top_, base_;
  bool faithful_ = false;
  std::vector<std::vector<int>> objects_over_;
  std::vector<std::vector<std::vector<int>>> hov_;
  mutable std::unique_ptr<OverContext> op_;
};

// ---------------------------------------------------------------------------
// Relative family notions, decided by counting bijections.

/// (f_a : X_a -> X) is final iff for every Y and phi : uX -> uY, composition
/// is a bijection hom_phi(X, Y) -> prod_a hom_{phi.u(f_a)}(X_a, Y).
inline bool is_u_final(const OverContext& ctx, const Family& fam) {
  if (fam.orient != Orientation::sink)
    throw std::invalid_argument("is_u_final wants a sink family");
  const FinCat& T = ctx.u.source;
  const FinCat& S = ctx.u.target;
  const int X = fam.anchor, uX = ctx.u_obj(X);
  for (int Y = 0; Y < T.n_obj(); ++Y)
    for (int phi : ctx.base().hom_list(uX, ctx.u_obj(Y))) {
      const auto& hov = ctx.hom_over(X, Y, phi);
      const long long cap = static_cast<long long>(hov.size()) + 1;
      long long prod = 1;
      for (int m : fam.members) {
        int f = ctx.n_over(T.src(m), Y, S.compose(phi, ctx.u_arr(m)));
        if (f == 0) {
          prod = 0;
          break;
        }
        prod = std::min(prod * f, cap);  // a later zero factor can still reset
      }
      if (prod != static_cast<long long>(hov.size())) return false;
      for (size_t i = 0; i < hov.size(); ++i)
        for (size_t j = i + 1; j < hov.size(); ++j) {
          bool same = true;
          for (int m : fam.members)
            if (T.compose(hov[i], m) != T.compose(hov[j], m)) {
              same = false;
              break;
            }
          if (same) return false;  // not injective
        }
    }
  return true;
}

/// (f_a : X -> X_a) is initial iff for every Y and psi : uY -> uX, composition
/// is a bijection hom_psi(Y, X) -> prod_a hom_{u(f_a).psi}(Y, X_a).
inline bool is_u_initial(const OverContext& ctx, const Family& fam) {
  if (fam.orient != Orientation::source)
    throw std::invalid_argument("is_u_initial wants a source family");
  const FinCat& T = ctx.u.source;
  const FinCat& S = ctx.u.target;
  const int X = fam.anchor, uX = ctx.u_obj(X);
  for (int Y = 0; Y < T.n_obj(); ++Y)
    for (int psi : ctx.base().hom_list(ctx.u_obj(Y), uX)) {
      const auto& hov = ctx.hom_over(Y, X, psi);
      const long long cap = static_cast<long long>(hov.size()) + 1;
      long long prod = 1;
      for (int m : fam.members) {
        int f = ctx.n_over(Y, T.tgt(m), S.compose(ctx.u_arr(m), psi));
        if (f == 0) {
          prod = 0;
          break;
        }
        prod = std::min(prod * f, cap);
      }
      if (prod != static_cast<long long>(hov.size())) return false;
      for (size_t i = 0; i < hov.size(); ++i)
        for (size_t j = i + 1; j < hov.size(); ++j) {
          bool same = true;
          for (int m : fam.members)
            if (T.compose(m, hov[i]) != T.compose(m, hov[j])) {
              same = false;
              break;
            }
          if (same) return false;
        }
    }
  return true;
}

/// Cross-check route: initial in T over u equals final in T^op over u^op.
inline bool is_u_initial_via_op(const OverContext& ctx, const Family& fam) {
  if (fam.orient != Orientation::source)
    throw std::invalid_argument("is_u_initial_via_op wants a source family");
  return is_u_final(ctx.op(), Family{Orientation::sink, fam.anchor, fam.members});
}

/// Cartesian: the initial condition restricted to vertical test arrows, i.e.
/// Y over uX and psi the identity.
inline bool is_u_cartesian(const OverContext& ctx, const Family& fam) {
  if (fam.orient != Orientation::source)
    throw std::invalid_argument("is_u_cartesian wants a source family");
  const FinCat& T = ctx.u.source;
  const int X = fam.anchor, uX = ctx.u_obj(X);
  const int id_s = ctx.u.target.id_arrow(uX);
  for (int Y : ctx.objects_over(uX)) {
    const auto& hov = ctx.hom_over(Y, X, id_s);
    const long long cap = static_cast<long long>(hov.size()) + 1;
    long long prod = 1;
    for (int m : fam.members) {
      int f = ctx.n_over(Y, T.tgt(m), ctx.u_arr(m));
      if (f == 0) {
        prod = 0;
        break;
      }
      prod = std::min(prod * f, cap);
    }
    if (prod != static_cast<long long>(hov.size())) return false;
    for (size_t i = 0; i < hov.size(); ++i)
      for (size_t j = i + 1; j < hov.size(); ++j) {
        bool same = true;
        for (int m : fam.members)
          if (T.compose(m, hov[i]) != T.compose(m, hov[j])) {
            same = false;
            break;
          }
        if (same) return false;
      }
  }
  return true;
}

inline bool is_cartesian_arrow(const OverContext& ctx, int a) {
  if (ctx.cart_memo[a] < 0)
    ctx.cart_memo[a] =
        is_u_cartesian(ctx, Family{Orientation::source, ctx.u.source.src(a), {a}}) ? 1 : 0;
  return ctx.cart_memo[a] == 1;
}

inline bool is_initial_arrow(const OverContext& ctx, int a) {
  if (ctx.init_memo[a] < 0)
    ctx.init_memo[a] =
        is_u_initial(ctx, Family{Orientation::source, ctx.u.source.src(a), {a}}) ? 1 : 0;
  return ctx.init_memo[a] == 1;
}

/// Surjective: the image family is a strict epi family in the base.
inline bool is_u_surjective(const OverContext& ctx, const Family& fam) {
  if (fam.orient != Orientation::sink)
    throw std::invalid_argument("is_u_surjective wants a sink family");
  const int uX = ctx.u_obj(fam.anchor);
  std::vector<int> image;
  for (int m : fam.members) image.push_back(ctx.u_arr(m));
  return ctx.base().is_strict_epi(uX, ctx.base().to_mask(uX, image));
}

/// Injective: the image family is a strict mono family in the base.
inline bool is_u_injective(const OverContext& ctx, const Family& fam) {
  if (fam.orient != Orientation::source)
    throw std::invalid_argument("is_u_injective wants a source family");
  const int uX = ctx.u_obj(fam.anchor);
  std::vector<int> image;
  for (int m : fam.members) image.push_back(ctx.u_arr(m));
  return is_strict_mono_family(ctx.base(), Family{Orientation::source, uX, image});
}

/// Vertical isomorphism of two equally-indexed families, least by arrow id.
inline std::optional<int> u_isomorphic(const OverContext& ctx, const Family& f,
                                       const Family& g) {
  if (f.orient != g.orient) throw std::invalid_argument("u_isomorphic: orientation mismatch");
  if (f.members.size() != g.members.size()) return std::nullopt;
  if (ctx.u_obj(f.anchor) != ctx.u_obj(g.anchor)) return std::nullopt;
  const FinCat& T = ctx.u.source;
  const int id_s = ctx.u.target.id_arrow(ctx.u_obj(f.anchor));
  std::optional<int> best;
  for (int theta : ctx.hom_over(f.anchor, g.anchor, id_s)) {
    if (!ctx.top().arrow_is_iso(theta)) continue;
    bool match = true;
    for (size_t i = 0; i < f.members.size() && match; ++i) {
      if (f.orient == Orientation::sink)
        match = T.compose(theta, f.members[i]) == g.members[i];
      else
        match = T.compose(g.members[i], theta) == f.members[i];
    }
    if (!match) continue;
    if (!best || T.arrows[theta].id < T.arrows[*best].id) best = theta;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Lift creation.

enum class CreationKind { cartesian, initial, final, strict_epi, strict_mono };

struct CreationOutcome {
  bool ok = true;
  bool exact = true;  // false only when a size-bounded pass came up all-green
  std::string witness;
};

namespace detail {

inline std::string creation_task_str(const OverContext& ctx, int s,
                                     const std::vector<std::pair<int, int>>& pairs, Mask p) {
  std::string out = "over " + ctx.u.target.objects[s] + ": {";
  bool first = true;
  for (size_t j = 0; j < pairs.size(); ++j)
    if (p >> j & 1) {
      if (!first) out += ", ";
      first = false;
      out += "(" + ctx.u.target.arrows[pairs[j].first].id + ", " +
             ctx.u.source.objects[pairs[j].second].substr(0) + ")";
    }
  return out + "}";
}

}  // namespace detail

/// Does u create lifts of the given kind? For every base object s, every
/// family of base arrows anchored at s and every choice of objects over the
/// free ends, some object over s must carry a lift family of the kind.
/// Multiplicities matter only for non-faithful functors, where each task
/// pair is considered with multiplicity up to two.
inline CreationOutcome creates_families(
    const OverContext& ctx, CreationKind kind,
    const std::function<bool(const Family&)>& base_filter = nullptr,
    int max_family_size = -1) {
  if (kind == CreationKind::strict_mono) {
    std::function<bool(const Family&)> wrapped;
    if (base_filter)
      wrapped = [&base_filter](const Family& f) {
        return base_filter(Family{Orientation::source, f.anchor, f.members});
      };
    return creates_families(ctx.op(), CreationKind::strict_epi, wrapped, max_family_size);
  }
  const FinCat& T = ctx.u.source;
  const FinCat& S = ctx.u.target;
  const bool sinkish = kind == CreationKind::final || kind == CreationKind::strict_epi;
  CreationOutcome out;
  bool bounded = false;
  for (int s = 0; s < S.n_obj(); ++s) {
    // task pairs: a base arrow anchored at s plus an object over its free end
    std::vector<std::pair<int, int>> pairs;  // (base arrow, top object)
    for (int psi : sinkish ? ctx.base().into(s) : ctx.base().from(s)) {
      int other = sinkish ? S.src(psi) : S.tgt(psi);
      for (int x : ctx.objects_over(other)) pairs.emplace_back(psi, x);
    }
    if (!ctx.faithful()) {
      auto copy = pairs;
      pairs.insert(pairs.end(), copy.begin(), copy.end());
    }
    const int np = static_cast<int>(pairs.size());
    if (np > 62) throw std::invalid_argument("creation task count exceeds mask width");
    int bound = max_family_size;
    const bool strictish = kind == CreationKind::strict_epi;
    const bool fast = ctx.faithful() && !strictish;
    if (bound < 0) {
      const int cutoff = fast ? 24 : (strictish && ctx.faithful()) ? 22 : 14;
      if (np > cutoff) bound = 3;
    }
    if (bound >= 0 && bound < np) bounded = true;

    const auto& anchors = ctx.objects_over(s);
    const int nw = static_cast<int>(anchors.size());
    const int id_s = S.id_arrow(s);

    // lift-existence masks, one per candidate anchor
    std::vector<Mask> lift(nw, 0);
    for (int w = 0; w < nw; ++w)
      for (int j = 0; j < np; ++j) {
        int n = sinkish ? ctx.n_over(pairs[j].second, anchors[w], pairs[j].first)
                        : ctx.n_over(anchors[w], pairs[j].second, pairs[j].first);
        if (n > 0) lift[w] |= Mask(1) << j;
      }

    // faithful fast path: each bijection condition collapses to a mask test
    std::vector<Mask> conds;                 // B per condition
    std::vector<std::vector<char>> expect;   // e per (anchor, condition)
    if (fast) {
      auto add_cond = [&](Mask b, auto&& e_of) {
        conds.push_back(b);
        for (int w = 0; w < nw; ++w) {
          if (expect.size() < static_cast<size_t>(nw)) expect.resize(nw);
          expect[w].push_back(e_of(anchors[w]) ? 1 : 0);
        }
      };
      expect.resize(nw);
      if (kind == CreationKind::final) {
        for (int Y = 0; Y < T.n_obj(); ++Y)
          for (int phi : ctx.base().hom_list(s, ctx.u_obj(Y))) {
            Mask b = 0;
            for (int j = 0; j < np; ++j)
              if (ctx.n_over(pairs[j].second, Y, S.compose(phi, pairs[j].first)) == 1)
                b |= Mask(1) << j;
            add_cond(b, [&](int w) { return ctx.n_over(w, Y, phi) == 1; });
          }
      } else if (kind == CreationKind::initial) {
        for (int Y = 0; Y < T.n_obj(); ++Y)
          for (int psi : ctx.base().hom_list(ctx.u_obj(Y), s)) {
            Mask b = 0;
            for (int j = 0; j < np; ++j)
              if (ctx.n_over(Y, pairs[j].second, S.compose(pairs[j].first, psi)) == 1)
                b |= Mask(1) << j;
            add_cond(b, [&](int w) { return ctx.n_over(Y, w, psi) == 1; });
          }
      } else {  // cartesian
        for (int Y : ctx.objects_over(s)) {
          Mask b = 0;
          for (int j = 0; j < np; ++j)
            if (ctx.n_over(Y, pairs[j].second, pairs[j].first) == 1) b |= Mask(1) << j;
          add_cond(b, [&](int w) { return ctx.n_over(Y, w, id_s) == 1; });
        }
      }
    }

    auto created = [&](Mask p) -> bool {
      if (fast) {
        for (int w = 0; w < nw; ++w) {
          if (p & ~lift[w]) continue;
          bool ok = true;
          for (size_t c = 0; c < conds.size(); ++c)
            if (((p & ~conds[c]) == 0) != (expect[w][c] != 0)) {
              ok = false;
              break;
            }
          if (ok) return true;
        }
        return false;
      }
      if (strictish && ctx.faithful()) {
        // unique lifts: the candidate family is determined by the anchor
        for (int w = 0; w < nw; ++w) {
          if (p & ~lift[w]) continue;
          Mask m = 0;
          for (int j = 0; j < np; ++j)
            if (p >> j & 1)
              m |= Mask(1) << ctx.top().into_pos(
                       anchors[w], ctx.hom_over(pairs[j].second, anchors[w], pairs[j].first)[0]);
          if (ctx.top().is_strict_epi(anchors[w], m)) return true;
        }
        return false;
      }
      // generic path: search member assignments anchor by anchor
      std::vector<int> js;
      for (int j = 0; j < np; ++j)
        if (p >> j & 1) js.push_back(j);
      for (int w = 0; w < nw; ++w) {
        if (p & ~lift[w]) continue;
        const int W = anchors[w];
        std::vector<int> members(js.size(), -1);
        std::function<bool(size_t)> rec = [&](size_t i) -> bool {
          if (i == js.size()) {
            if (kind == CreationKind::final)
              return is_u_final(ctx, Family{Orientation::sink, W, members});
            if (kind == CreationKind::initial)
              return is_u_initial(ctx, Family{Orientation::source, W, members});
            if (kind == CreationKind::cartesian)
              return is_u_cartesian(ctx, Family{Orientation::source, W, members});
            return ctx.top().is_strict_epi(W, ctx.top().to_mask(W, members));
          }
          const auto& cands = sinkish
                                  ? ctx.hom_over(pairs[js[i]].second, W, pairs[js[i]].first)
                                  : ctx.hom_over(W, pairs[js[i]].second, pairs[js[i]].first);
          for (int m : cands) {
            members[i] = m;
            if (rec(i + 1)) return true;
          }
          return false;
        };
        if (rec(0)) return true;
      }
      return false;
    };

    auto filter_ok = [&](Mask p) -> bool {
      if (!base_filter) return true;
      std::vector<int> arrs;
      for (int j = 0; j < np; ++j)
        if (p >> j & 1) arrs.push_back(pairs[j].first);
      Family f{sinkish ? Orientation::sink : Orientation::source, s, std::move(arrs)};
      return base_filter(normalize_family(std::move(f)));
    };

    Mask fail = 0;
    bool failed = false;
    if (bound < 0 || bound >= np) {
      for (Mask p = 0; p < (Mask(1) << np) && !failed; ++p)
        if (filter_ok(p) && !created(p)) {
          failed = true;
          fail = p;
        }
    } else {
      detail::for_each_submask((Mask(1) << np) - 1, bound, [&](Mask p) {
        if (failed) return;
        if (filter_ok(p) && !created(p)) {
          failed = true;
          fail = p;
        }
      });
    }
    if (failed) {
      out.ok = false;
      out.witness = detail::creation_task_str(ctx, s, pairs, fail);
      return out;  // a found failure is definite even under a size bound
    }
  }
  out.exact = !bounded;
  return out;
}

// ---------------------------------------------------------------------------
// Prefibrations and fibrations.

struct CheckResult {
  bool value = true;
  bool exact = true;
  std::string witness;
};

inline CheckResult is_prefibration(const OverContext& ctx) {
  const FinCat& T = ctx.u.source;
  const FinCat& S = ctx.u.target;
  for (int phi = 0; phi < S.n_arr(); ++phi)
    for (int X : ctx.objects_over(S.tgt(phi))) {
      bool found = false;
      for (int W : ctx.objects_over(S.src(phi)))
        for (int m : ctx.hom_over(W, X, phi))
          if (is_cartesian_arrow(ctx, m)) {
            found = true;
            break;
          }
      if (!found)
        return {false, true,
                "no cartesian lift of " + S.arrows[phi].id + " at " + T.objects[X]};
    }
  return {};
}

/// Two independent criteria, required to agree: (a) a prefibration whose
/// cartesian arrows are closed under composition, (b) every base arrow has an
/// initial lift at every object over its target.
inline CheckResult is_fibration(const OverContext& ctx) {
  const FinCat& T = ctx.u.source;
  const FinCat& S = ctx.u.target;
  CheckResult a = is_prefibration(ctx);
  if (a.value) {
    for (int m1 = 0; m1 < T.n_arr() && a.value; ++m1) {
      if (!is_cartesian_arrow(ctx, m1)) continue;
      for (int m2 : ctx.top().from(T.tgt(m1)))
        if (is_cartesian_arrow(ctx, m2) && !is_cartesian_arrow(ctx, T.compose(m2, m1))) {
          a = {false, true,
               "cartesian composite " + T.arrows[m2].id + "." + T.arrows[m1].id +
                   " is not cartesian"};
          break;
        }
    }
  }
  bool b = true;
  for (int phi = 0; phi < S.n_arr() && b; ++phi)
    for (int X : ctx.objects_over(S.tgt(phi))) {
      bool found = false;
      for (int W : ctx.objects_over(S.src(phi)))
        for (int m : ctx.hom_over(W, X, phi))
          if (is_initial_arrow(ctx, m)) {
            found = true;
            break;
          }
      if (!found) {
        b = false;
        break;
      }
    }
  if (a.value != b) throw std::logic_error("fibration criteria disagree");
  return a;
}

// ---------------------------------------------------------------------------
// Fibers and fiber products.

struct Fiber {
  int base_object = -1;
  FinCat cat;
};

inline Fiber fiber(const OverContext& ctx, int s) {
  const FinCat& T = ctx.u.source;
  Fiber f;
  f.base_object = s;
  f.cat.name = T.name + "/" + ctx.u.target.objects[s];
  const int id_s = ctx.u.target.id_arrow(s);
  std::vector<int> keep;
  for (int X : ctx.objects_over(s)) f.cat.add_object(T.objects[X]);
  for (int X : ctx.objects_over(s))
    for (int Y : ctx.objects_over(s))
      for (int a : ctx.hom_over(X, Y, id_s)) {
        f.cat.add_arrow(T.arrows[a].id, T.arrows[a].src, T.arrows[a].tgt);
        keep.push_back(a);
      }
  for (int X : ctx.objects_over(s))
    f.cat.set_identity(T.objects[X], T.arrows[T.id_arrow(X)].id);
  f.cat.ensure_table();
  for (int g : keep)
    for (int h : keep) {
      if (T.tgt(h) != T.src(g)) continue;
      int gh = T.compose(g, h);  // vertical again, hence kept
      f.cat.set_compose(T.arrows[g].id, T.arrows[h].id, T.arrows[gh].id);
    }
  return f;
}

/// The fiber as a poset, when it is thin and antisymmetric.
inline std::optional<FinPoset> fiber_poset(const OverContext& ctx, int s) {
  const auto& obs = ctx.objects_over(s);
  const int id_s = ctx.u.target.id_arrow(s);
  const int n = static_cast<int>(obs.size());
  FinPoset p;
  p.leq.assign(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) p.elems.push_back(ctx.u.source.objects[obs[i]]);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int c = ctx.n_over(obs[i], obs[j], id_s);
      if (c > 1) return std::nullopt;
      p.leq[i][j] = c == 1;
    }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (p.leq[i][j] && p.leq[j][i]) return std::nullopt;
  return p;
}

/// Is (legs : apex -> M_i) a product cone in the fiber over s?
inline bool is_fiber_product(const OverContext& ctx, int s, int apex,
                             const std::vector<int>& legs) {
  const FinCat& T = ctx.u.source;
  const int id_s = ctx.u.target.id_arrow(s);
  for (int Y : ctx.objects_over(s)) {
    const auto& hov = ctx.hom_over(Y, apex, id_s);
    long long prod = 1;
    for (int l : legs) prod *= ctx.n_over(Y, T.tgt(l), id_s);
    if (prod != static_cast<long long>(hov.size())) return false;
    for (size_t i = 0; i < hov.size(); ++i)
      for (size_t j = i + 1; j < hov.size(); ++j) {
        bool same = true;
        for (int l : legs)
          if (T.compose(l, hov[i]) != T.compose(l, hov[j])) {
            same = false;
            break;
          }
        if (same) return false;
      }
  }
  return true;
}

/// All finite fiber products exist iff each fiber has a terminal object and
/// all binary products (including squares); larger products are iterated.
inline CheckResult fibers_have_all_products(const OverContext& ctx) {
  const FinCat& S = ctx.u.target;
  for (int s = 0; s < S.n_obj(); ++s) {
    const auto& obs = ctx.objects_over(s);
    const int id_s = S.id_arrow(s);
    bool terminal = false;
    for (int X : obs)
      if (is_fiber_product(ctx, s, X, {})) {
        terminal = true;
        break;
      }
    if (!terminal)
      return {false, true, "fiber over " + S.objects[s] + " has no terminal object"};
    for (size_t i = 0; i < obs.size(); ++i)
      for (size_t j = i; j < obs.size(); ++j) {
        bool found = false;
        for (int X : obs) {
          for (int p : ctx.hom_over(X, obs[i], id_s)) {
            for (int q : ctx.hom_over(X, obs[j], id_s))
              if (is_fiber_product(ctx, s, X, {p, q})) {
                found = true;
                break;
              }
            if (found) break;
          }
          if (found) break;
        }
        if (!found)
          return {false, true,
                  "fiber over " + S.objects[s] + " lacks a product of " +
                      ctx.u.source.objects[obs[i]] + " and " + ctx.u.source.objects[obs[j]]};
      }
  }
  return {};
}

/// Stability of fiber products under cartesian reindexing, checked on
/// terminal objects and binary product cones (which generate the rest).
inline CheckResult products_stable(const OverContext& ctx) {
  const FinCat& T = ctx.u.source;
  const FinCat& S = ctx.u.target;
  for (int phi = 0; phi < S.n_arr(); ++phi) {
    const int s = S.src(phi), t = S.tgt(phi);
    const int id_t = S.id_arrow(t), id_s = S.id_arrow(s);
    for (int X : ctx.objects_over(t))
      for (int W : ctx.objects_over(s))
        for (int g : ctx.hom_over(W, X, phi)) {
          if (!is_cartesian_arrow(ctx, g)) continue;
          std::vector<int> verts;
          for (int M : ctx.objects_over(t))
            for (int p : ctx.hom_over(X, M, id_t)) verts.push_back(p);
          // candidate reindexed legs for one projection p : X -> M
          auto rho_cands = [&](int p) {
            std::vector<int> out;
            const int M = T.tgt(p);
            const int pg = T.compose(p, g);
            for (int M2 : ctx.objects_over(s))
              for (int gm : ctx.hom_over(M2, M, phi)) {
                if (!is_cartesian_arrow(ctx, gm)) continue;
                for (int rho : ctx.hom_over(W, M2, id_s))
                  if (T.compose(gm, rho) == pg) out.push_back(rho);
              }
            std::sort(out.begin(), out.end());
            out.erase(std::unique(out.begin(), out.end()), out.end());
            return out;
          };
          auto survives = [&](const std::vector<int>& legs) -> bool {
            std::vector<std::vector<int>> cands;
            for (int p : legs) {
              cands.push_back(rho_cands(p));
              if (cands.back().empty()) return false;
            }
            std::vector<int> rhos(legs.size());
            std::function<bool(size_t)> rec = [&](size_t i) -> bool {
              if (i == legs.size()) return is_fiber_product(ctx, s, W, rhos);
              for (int r : cands[i]) {
                rhos[i] = r;
                if (rec(i + 1)) return true;
              }
              return false;
            };
            return rec(0);
          };
          // terminal cone
          if (is_fiber_product(ctx, t, X, {}) && !is_fiber_product(ctx, s, W, {}))
            return {false, true,
                    "reindexing along " + S.arrows[phi].id + " loses the terminal object at " +
                        T.objects[X]};
          for (size_t i = 0; i < verts.size(); ++i) {
            if (is_fiber_product(ctx, t, X, {verts[i]}) && !survives({verts[i]}))
              return {false, true,
                      "reindexing along " + S.arrows[phi].id + " breaks the cone " +
                          T.arrows[verts[i]].id};
            for (size_t j = i; j < verts.size(); ++j)
              if (is_fiber_product(ctx, t, X, {verts[i], verts[j]}) &&
                  !survives({verts[i], verts[j]}))
                return {false, true,
                        "reindexing along " + S.arrows[phi].id + " breaks the cone (" +
                            T.arrows[verts[i]].id + ", " + T.arrows[verts[j]].id + ")"};
          }
        }
  }
  return {};
}

/// Composites of cartesian families with cartesian arrows stay cartesian.
inline CheckResult cartesian_arrows_compose_with_families(const OverContext& ctx,
                                                          int max_family_size = -1) {
  const FinCat& T = ctx.u.source;
  const FinCat& S = ctx.u.target;
  CheckResult out;
  for (int X = 0; X < T.n_obj(); ++X) {
    const int sX = ctx.u_obj(X);
    const auto& outs = ctx.top().from(X);
    const int deg = static_cast<int>(outs.size());
    // cartesian arrows landing at X
    std::vector<int> gs;
    for (int g : ctx.top().into(X))
      if (is_cartesian_arrow(ctx, g)) gs.push_back(g);
    if (ctx.faithful() && deg <= 24 && max_family_size < 0) {
      // mask conditions: F cartesian, and every composite F.g cartesian
      std::vector<std::pair<Mask, bool>> cart;
      const int id_sX = S.id_arrow(sX);
      for (int Y : ctx.objects_over(sX)) {
        Mask b = 0;
        for (int i = 0; i < deg; ++i)
          if (ctx.n_over(Y, T.tgt(outs[i]), ctx.u_arr(outs[i])) == 1) b |= Mask(1) << i;
        cart.emplace_back(b, ctx.n_over(Y, X, id_sX) == 1);
      }
      struct CompCond {
        Mask b;
        bool e;
        int g;
      };
      std::vector<CompCond> comp;
      for (int g : gs) {
        const int W = T.src(g);
        const int sW = ctx.u_obj(W);
        const int id_sW = S.id_arrow(sW);
        for (int Y : ctx.objects_over(sW)) {
          Mask b = 0;
          for (int i = 0; i < deg; ++i)
            if (ctx.n_over(Y, T.tgt(outs[i]),
                           S.compose(ctx.u_arr(outs[i]), ctx.u_arr(g))) == 1)
              b |= Mask(1) << i;
          comp.push_back({b, ctx.n_over(Y, W, id_sW) == 1, g});
        }
      }
      for (Mask f = 0; f < (Mask(1) << deg); ++f) {
        bool is_cart = true;
        for (auto& [b, e] : cart)
          if (((f & ~b) == 0) != e) {
            is_cart = false;
            break;
          }
        if (!is_cart) continue;
        for (auto& c : comp)
          if (((f & ~c.b) == 0) != c.e)
            return {false, true,
                    "composite of a cartesian family at " + T.objects[X] + " with " +
                        T.arrows[c.g].id + " is not cartesian"};
      }
    } else {
      int bound = max_family_size;
      if (bound < 0 && deg > 14) {
        bound = 3;
        out.exact = false;
      }
      if (bound < 0) bound = deg;
      bool failed = false;
      std::string wit;
      detail::for_each_submask((Mask(1) << deg) - 1, bound, [&](Mask fm) {
        if (failed) return;
        Family f{Orientation::source, X, {}};
        for (int i = 0; i < deg; ++i)
          if (fm >> i & 1) f.members.push_back(outs[i]);
        if (!is_u_cartesian(ctx, f)) return;
        for (int g : gs) {
          Family comp{Orientation::source, T.src(g), {}};
          for (int m : f.members) comp.members.push_back(T.compose(m, g));
          if (!is_u_cartesian(ctx, comp)) {
            failed = true;
            wit = "composite of a cartesian family at " + T.objects[X] + " with " +
                  T.arrows[g].id + " is not cartesian";
            return;
          }
        }
      });
      if (failed) return {false, true, wit};
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Distinguished objects over a base object.

/// The object over s every arrow lifts into uniquely, if present.
inline std::optional<int> top_object(const OverContext& ctx, int s) {
  const FinCat& T = ctx.u.source;
  for (int X : ctx.objects_over(s)) {
    bool ok = true;
    for (int Y = 0; Y < T.n_obj() && ok; ++Y)
      for (int zeta : ctx.base().hom_list(ctx.u_obj(Y), s))
        if (ctx.n_over(Y, X, zeta) != 1) {
          ok = false;
          break;
        }
    if (ok) return X;
  }
  return std::nullopt;
}

inline std::optional<int> bot_object(const OverContext& ctx, int s) {
  const FinCat& T = ctx.u.source;
  for (int X : ctx.objects_over(s)) {
    bool ok = true;
    for (int Y = 0; Y < T.n_obj() && ok; ++Y)
      for (int zeta : ctx.base().hom_list(s, ctx.u_obj(Y)))
        if (ctx.n_over(X, Y, zeta) != 1) {
          ok = false;
          break;
        }
    if (ok) return X;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Per-object family surveys and the class scans built on them.

enum : std::uint8_t {
  kFamEpi = 1,
  kFamStrictEpi = 2,
  kFamFinal = 4,
  kFamSurjective = 8,
};

/// Flags for every sink family at X, indexed by its mask over into(X).
inline const std::vector<std::uint8_t>& survey_sink_families(const OverContext& ctx, int X) {
  auto hit = ctx.survey_memo.find(X);
  if (hit != ctx.survey_memo.end()) return hit->second;
  const FinCat& T = ctx.u.source;
  const FinCat& S = ctx.u.target;
  const auto& ins = ctx.top().into(X);
  const int deg = static_cast<int>(ins.size());
  if (deg > 22) throw std::invalid_argument("family survey too large at " + T.objects[X]);
  const size_t total = size_t(1) << deg;
  std::vector<std::uint8_t> flags(total, 0);

  std::vector<Mask> seps;
  for (int y = 0; y < T.n_obj(); ++y)
    for (Mask m : ctx.top().epi_pair_masks(X, y)) seps.push_back(m);

  const int uX = ctx.u_obj(X);
  const bool fast = ctx.faithful();
  std::vector<std::pair<Mask, bool>> finals;
  if (fast) {
    for (int Y = 0; Y < T.n_obj(); ++Y)
      for (int phi : ctx.base().hom_list(uX, ctx.u_obj(Y))) {
        Mask b = 0;
        for (int i = 0; i < deg; ++i)
          if (ctx.n_over(T.src(ins[i]), Y, S.compose(phi, ctx.u_arr(ins[i]))) == 1)
            b |= Mask(1) << i;
        finals.emplace_back(b, ctx.n_over(X, Y, phi) == 1);
      }
  }

  std::vector<std::uint32_t> imgbit(deg);
  for (int i = 0; i < deg; ++i)
    imgbit[i] = std::uint32_t(1) << ctx.base().into_pos(uX, ctx.u_arr(ins[i]));
  std::vector<std::uint32_t> image(total, 0);
  std::unordered_map<std::uint32_t, bool> surj_memo;

  for (Mask m = 0; m < static_cast<Mask>(total); ++m) {
    std::uint8_t fl = 0;
    if (m) image[m] = image[m & (m - 1)] | imgbit[__builtin_ctzll(m)];
    bool epi = true;
    for (Mask s2 : seps)
      if (!(s2 & m)) {
        epi = false;
        break;
      }
    if (epi) {
      fl |= kFamEpi;
      if (ctx.top().is_strict_epi(X, m)) fl |= kFamStrictEpi;
    }
    bool fin = true;
    if (fast) {
      for (auto& [b, e] : finals)
        if (((m & ~b) == 0) != e) {
          fin = false;
          break;
        }
    } else {
      fin = is_u_final(ctx, Family{Orientation::sink, X, ctx.top().from_mask(X, m)});
    }
    if (fin) fl |= kFamFinal;
    auto it = surj_memo.find(image[m]);
    bool sj = it != surj_memo.end()
                  ? it->second
                  : surj_memo.emplace(image[m], ctx.base().is_strict_epi(uX, image[m]))
                        .first->second;
    if (sj) fl |= kFamSurjective;
    flags[m] = fl;
  }
  return ctx.survey_memo.emplace(X, std::move(flags)).first->second;
}

struct ClassReport {
  bool equal = true;
  long long n_strict = 0;
  long long n_fs = 0;
  std::string witness;
};

/// Scan every sink family: strict epi vs final-and-surjective.
inline ClassReport strict_epi_equals_final_surjective(const OverContext& ctx) {
  ClassReport r;
  const FinCat& T = ctx.u.source;
  for (int X = 0; X < T.n_obj(); ++X) {
    const auto& fl = survey_sink_families(ctx, X);
    for (size_t m = 0; m < fl.size(); ++m) {
      const bool se = fl[m] & kFamStrictEpi;
      const bool fs = (fl[m] & kFamFinal) && (fl[m] & kFamSurjective);
      if (se) ++r.n_strict;
      if (fs) ++r.n_fs;
      if (se != fs && r.equal) {
        r.equal = false;
        r.witness = "family at " + T.objects[X] + " mask " + std::to_string(m);
      }
    }
  }
  return r;
}

/// The dual scan: strict mono vs initial-and-injective, via the opposite.
inline ClassReport strict_mono_equals_initial_injective(const OverContext& ctx) {
  return strict_epi_equals_final_surjective(ctx.op());
}

// ---------------------------------------------------------------------------
// E- and M-functors.

struct EMReport {
  bool holds = false;
  bool faithful = false;
  bool creates = false;
  bool preserves = false;
  bool exact = true;
  std::string witness;
};

/// Faithful, creates strict epi families over strict epi base families, and
/// preserves strict epi families.
inline EMReport is_E_functor(const OverContext& ctx, int max_family_size = -1) {
  EMReport r;
  r.faithful = ctx.faithful();
  if (!r.faithful) {
    r.witness = "not faithful";
    return r;
  }
  const FinCat& T = ctx.u.source;
  r.preserves = true;
  for (int X = 0; X < T.n_obj() && r.preserves; ++X) {
    const auto& fl = survey_sink_families(ctx, X);
    for (size_t m = 0; m < fl.size(); ++m)
      if ((fl[m] & kFamStrictEpi) && !(fl[m] & kFamSurjective)) {
        r.preserves = false;
        r.witness = "strict epi family at " + T.objects[X] + " has non strict epi image";
        break;
      }
  }
  const CatOracle& bo = ctx.base();
  auto filt = [&bo](const Family& f) {
    return bo.is_strict_epi(f.anchor, bo.to_mask(f.anchor, f.members));
  };
  auto c = creates_families(ctx, CreationKind::strict_epi, filt, max_family_size);
  r.creates = c.ok;
  r.exact = c.exact;
  if (!c.ok && r.witness.empty()) r.witness = c.witness;
  r.holds = r.faithful && r.creates && r.preserves;
  return r;
}

inline EMReport is_M_functor(const OverContext& ctx, int max_family_size = -1) {
  return is_E_functor(ctx.op(), max_family_size);
}

}  // namespace famfib

#endif  // FAMFIB_FIBERED_HPP
