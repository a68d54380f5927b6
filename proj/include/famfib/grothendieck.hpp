#ifndef FAMFIB_GROTHENDIECK_HPP
#define FAMFIB_GROTHENDIECK_HPP

#include <string>
#include <vector>

#include "famfib/topological.hpp"

/// Strict poset-valued pseudofunctors on a finite base, their total
/// categories, extraction from faithful fibrations, and the equivalence
/// "total projection topological iff complete-lattice fibers with adjoint
/// transitions".
namespace famfib {

/// P sends each base object to a poset and each base arrow phi : S -> T,
/// contravariantly, to a monotone map phi* : P(T) -> P(S). Functoriality is
/// strict: identities to identities, (psi.phi)* = phi*.psi*.
struct PosetPseudofunctor {
  FinCat base;
  std::vector<FinPoset> fibers;          // per base object
  std::vector<MonotoneMap> transitions;  // per base arrow: P(tgt) -> P(src)
};

inline ValidationReport validate_pseudofunctor(const PosetPseudofunctor& p) {
  ValidationReport r;
  const FinCat& b = p.base;
  if (p.fibers.size() != static_cast<size_t>(b.n_obj()) ||
      p.transitions.size() != static_cast<size_t>(b.n_arr())) {
    r.add("pseudo.shape", "one poset per object and one transition per arrow required");
    return r;
  }
  for (int s = 0; s < b.n_obj(); ++s) {
    auto pr = validate_poset(p.fibers[s]);
    for (auto& v : pr.violations)
      r.add(v.code, "fiber over " + b.objects[s] + ": " + v.message);
  }
  for (int a = 0; a < b.n_arr(); ++a) {
    const FinPoset& dom = p.fibers[b.tgt(a)];
    const FinPoset& cod = p.fibers[b.src(a)];
    if (p.transitions[a].values.size() != static_cast<size_t>(dom.size())) {
      r.add("pseudo.transition", "transition of " + b.arrows[a].id + " has wrong domain size");
      continue;
    }
    bool in_range = true;
    for (int x : p.transitions[a].values)
      if (x < 0 || x >= cod.size()) {
        r.add("pseudo.transition",
              "transition of " + b.arrows[a].id + " maps outside its codomain");
        in_range = false;
        break;
      }
    if (in_range && !is_monotone(dom, cod, p.transitions[a]))
      r.add("pseudo.monotone", "transition of " + b.arrows[a].id + " is not monotone");
  }
  if (!r.ok()) return r;
  for (int s = 0; s < b.n_obj(); ++s) {
    const MonotoneMap& t = p.transitions[b.id_arrow(s)];
    for (int x = 0; x < p.fibers[s].size(); ++x)
      if (t(x) != x) {
        r.add("pseudo.identity",
              "transition of the identity of " + b.objects[s] + " moves " +
                  p.fibers[s].elems[x]);
        break;
      }
  }
  for (int g = 0; g < b.n_arr(); ++g)
    for (int f = 0; f < b.n_arr(); ++f) {
      int gf = b.compose(g, f);
      if (gf < 0) continue;
      const FinPoset& dom = p.fibers[b.tgt(g)];
      for (int z = 0; z < dom.size(); ++z)
        if (p.transitions[gf](z) != p.transitions[f](p.transitions[g](z))) {
          r.add("pseudo.compose",
                "(" + b.arrows[g].id + "." + b.arrows[f].id + ")* != " + b.arrows[f].id +
                    "*." + b.arrows[g].id + "* at " + dom.elems[z]);
          break;
        }
    }
  return r;
}

inline std::string total_object_name(const PosetPseudofunctor& p, int s, int x) {
  return "(" + p.base.objects[s] + "|" + p.fibers[s].elems[x] + ")";
}

inline std::string total_arrow_name(const PosetPseudofunctor& p, int phi, int x, int y) {
  return "(" + p.base.arrows[phi].id + "|" + p.fibers[p.base.src(phi)].elems[x] + "|" +
         p.fibers[p.base.tgt(phi)].elems[y] + ")";
}

/// The total category: objects (S|x), arrows (phi|x|y) : (S|x) -> (T|y)
/// whenever x <= phi*(y); returned as the projection functor down to the base.
inline FunctorMap total_category(const PosetPseudofunctor& p) {
  auto rep = validate_pseudofunctor(p);
  if (!rep.ok()) throw std::invalid_argument("invalid pseudofunctor: " + rep.to_string());
  const FinCat& b = p.base;
  FinCat tot;
  tot.name = b.name + ".total";
  std::vector<int> obj_proj, arr_proj;
  for (int s = 0; s < b.n_obj(); ++s)
    for (int x = 0; x < p.fibers[s].size(); ++x) {
      tot.add_object(total_object_name(p, s, x));
      obj_proj.push_back(s);
    }
  struct ArrKey {
    int phi, x, y;
  };
  std::vector<ArrKey> keys;
  for (int phi = 0; phi < b.n_arr(); ++phi) {
    const int s = b.src(phi), t = b.tgt(phi);
    for (int x = 0; x < p.fibers[s].size(); ++x)
      for (int y = 0; y < p.fibers[t].size(); ++y) {
        if (!p.fibers[s].le(x, p.transitions[phi](y))) continue;
        tot.add_arrow(total_arrow_name(p, phi, x, y), total_object_name(p, s, x),
                      total_object_name(p, t, y));
        keys.push_back({phi, x, y});
        arr_proj.push_back(phi);
      }
  }
  for (int s = 0; s < b.n_obj(); ++s)
    for (int x = 0; x < p.fibers[s].size(); ++x)
      tot.set_identity(total_object_name(p, s, x), total_arrow_name(p, b.id_arrow(s), x, x));
  tot.ensure_table();
  for (size_t g = 0; g < keys.size(); ++g)
    for (size_t f = 0; f < keys.size(); ++f) {
      if (keys[f].y != keys[g].x || b.tgt(keys[f].phi) != b.src(keys[g].phi)) continue;
      int comp = b.compose(keys[g].phi, keys[f].phi);
      tot.set_compose_idx(static_cast<int>(g), static_cast<int>(f),
                          tot.arrow(total_arrow_name(p, comp, keys[f].x, keys[g].y)));
    }
  FunctorMap u;
  u.source = std::move(tot);
  u.target = b;
  u.name = b.name + ".projection";
  u.obj_map = std::move(obj_proj);
  u.arr_map = std::move(arr_proj);
  return u;
}

/// Recover the pseudofunctor of a faithful fibration whose fibers are
/// antisymmetric. Fiber elements keep the order of objects_over.
inline PosetPseudofunctor extract_pseudofunctor(const OverContext& ctx) {
  if (!ctx.faithful())
    throw std::invalid_argument("extract_pseudofunctor: functor is not faithful");
  if (!is_fibration(ctx).value)
    throw std::invalid_argument("extract_pseudofunctor: functor is not a fibration");
  const FinCat& s = ctx.u.target;
  PosetPseudofunctor p;
  p.base = s;
  p.fibers.resize(s.n_obj());
  for (int i = 0; i < s.n_obj(); ++i) {
    auto fp = fiber_poset(ctx, i);
    if (!fp)
      throw std::invalid_argument("extract_pseudofunctor: fiber over " + s.objects[i] +
                                  " is not an antisymmetric poset");
    p.fibers[i] = *fp;
  }
  p.transitions.resize(s.n_arr());
  for (int phi = 0; phi < s.n_arr(); ++phi) {
    const auto& obs_src = ctx.objects_over(s.src(phi));
    const auto& obs_tgt = ctx.objects_over(s.tgt(phi));
    MonotoneMap t;
    t.values.assign(obs_tgt.size(), -1);
    for (size_t y = 0; y < obs_tgt.size(); ++y) {
      for (size_t w = 0; w < obs_src.size() && t.values[y] < 0; ++w)
        for (int m : ctx.hom_over(obs_src[w], obs_tgt[y], phi))
          if (is_cartesian_arrow(ctx, m)) {
            t.values[y] = static_cast<int>(w);
            break;
          }
      if (t.values[y] < 0)
        throw std::logic_error("fibration without a cartesian lift");  // unreachable
    }
    p.transitions[phi] = std::move(t);
  }
  return p;
}

/// Structural equality up to the canonical renaming of fiber elements.
inline bool pseudofunctor_equal_structure(const PosetPseudofunctor& a,
                                          const PosetPseudofunctor& b) {
  if (a.base.n_obj() != b.base.n_obj() || a.base.n_arr() != b.base.n_arr()) return false;
  for (int s = 0; s < a.base.n_obj(); ++s) {
    if (a.fibers[s].size() != b.fibers[s].size()) return false;
    for (int i = 0; i < a.fibers[s].size(); ++i)
      for (int j = 0; j < a.fibers[s].size(); ++j)
        if (a.fibers[s].le(i, j) != b.fibers[s].le(i, j)) return false;
  }
  for (int phi = 0; phi < a.base.n_arr(); ++phi)
    if (a.transitions[phi].values != b.transitions[phi].values) return false;
  return true;
}

/// Does u agree with the total category of p? There must be exactly one
/// arrow x -> y over phi when x <= phi*(y) and none otherwise.
inline bool total_matches(const OverContext& ctx, const PosetPseudofunctor& p) {
  const FinCat& s = ctx.u.target;
  for (int phi = 0; phi < s.n_arr(); ++phi) {
    const auto& obs_src = ctx.objects_over(s.src(phi));
    const auto& obs_tgt = ctx.objects_over(s.tgt(phi));
    for (size_t x = 0; x < obs_src.size(); ++x)
      for (size_t y = 0; y < obs_tgt.size(); ++y) {
        int n = ctx.n_over(obs_src[x], obs_tgt[y], phi);
        int want = p.fibers[s.src(phi)].le(static_cast<int>(x),
                                           p.transitions[phi](static_cast<int>(y)))
                       ? 1
                       : 0;
        if (n != want) return false;
      }
  }
  return true;
}

/// The equivalence for total categories: the projection is topological iff
/// every fiber is a complete lattice and every transition has a left
/// adjoint. Both sides are computed independently; they must agree.
inline bool total_topological_iff_fiber_adjoints(const PosetPseudofunctor& p) {
  OverContext ctx(total_category(p));
  const bool lhs = classify(ctx, false).topological;
  bool rhs = true;
  for (const auto& f : p.fibers)
    if (!is_complete_lattice(f)) rhs = false;
  for (int phi = 0; phi < p.base.n_arr() && rhs; ++phi)
    if (!left_adjoint_of_transition(p.fibers[p.base.src(phi)], p.fibers[p.base.tgt(phi)],
                                    p.transitions[phi]))
      rhs = false;
  if (lhs != rhs)
    throw std::logic_error("total category classification disagrees with the fiber criterion");
  return lhs;
}

}  // namespace famfib

#endif  // FAMFIB_GROTHENDIECK_HPP
