#ifndef FAMFIB_CORPUS_HPP
#define FAMFIB_CORPUS_HPP

#include <map>
#include <random>
#include <string>
#include <vector>

#include "famfib/grothendieck.hpp"

/// The bundled corpus: finite sets with structure (topologies, filters),
/// hand-built counterexamples, and seeded random models.
namespace famfib {

// ---------------------------------------------------------------------------
// Finite sets of cardinality 0..n and all functions between them.

struct FinSetData {
  FinCat cat;
  std::vector<int> size_of;              // object index -> cardinality
  std::vector<std::vector<int>> values;  // arrow index -> function table
};

namespace detail {

inline std::string finset_arrow_id(int a, int b, const std::vector<int>& vals) {
  std::string word;
  for (int v : vals) word += static_cast<char>('0' + v);
  return "m" + std::to_string(a) + std::to_string(b) + "_" + word;
}

}  // namespace detail

inline FinSetData build_finset(int n = 2) {
  FinSetData d;
  d.cat.name = "finset" + std::to_string(n);
  for (int k = 0; k <= n; ++k) {
    d.cat.add_object(std::to_string(k));
    d.size_of.push_back(k);
  }
  for (int a = 0; a <= n; ++a)
    for (int b = 0; b <= n; ++b) {
      if (a > 0 && b == 0) continue;
      long long count = 1;
      for (int i = 0; i < a; ++i) count *= b;
      for (long long w = 0; w < count; ++w) {
        std::vector<int> vals(a);
        long long t = w;
        for (int i = 0; i < a; ++i) {
          vals[i] = static_cast<int>(t % b);
          t /= b;
        }
        d.cat.add_arrow(detail::finset_arrow_id(a, b, vals), std::to_string(a),
                        std::to_string(b));
        d.values.push_back(vals);
      }
    }
  for (int k = 0; k <= n; ++k) {
    std::vector<int> vals(k);
    for (int i = 0; i < k; ++i) vals[i] = i;
    d.cat.set_identity(std::to_string(k), detail::finset_arrow_id(k, k, vals));
  }
  d.cat.ensure_table();
  for (int g = 0; g < d.cat.n_arr(); ++g)
    for (int f = 0; f < d.cat.n_arr(); ++f) {
      if (d.cat.tgt(f) != d.cat.src(g)) continue;
      std::vector<int> vals(d.values[f].size());
      for (size_t i = 0; i < vals.size(); ++i) vals[i] = d.values[g][d.values[f][i]];
      d.cat.set_compose_idx(
          g, f,
          d.cat.arrow(detail::finset_arrow_id(d.size_of[d.cat.src(f)],
                                              d.size_of[d.cat.tgt(g)], vals)));
    }
  return d;
}

// ---------------------------------------------------------------------------
// Structures on finite sets. A structure on k points is a family of subsets
// (bitmasks); a function is a morphism when preimages of distinguished
// subsets are distinguished.

using Structure = std::vector<std::uint8_t>;  // sorted subset masks

inline std::vector<Structure> all_topologies(int k) {
  const int full = (1 << k) - 1;
  std::vector<Structure> out;
  for (int fam = 0; fam < (1 << (1 << k)); ++fam) {
    if (!(fam & 1) || !(fam >> full & 1)) continue;  // empty and whole set
    bool ok = true;
    for (int u = 0; u <= full && ok; ++u) {
      if (!(fam >> u & 1)) continue;
      for (int v = 0; v <= full; ++v) {
        if (!(fam >> v & 1)) continue;
        if (!(fam >> (u | v) & 1) || !(fam >> (u & v) & 1)) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) continue;
    Structure s;
    for (int u = 0; u <= full; ++u)
      if (fam >> u & 1) s.push_back(static_cast<std::uint8_t>(u));
    out.push_back(std::move(s));
  }
  return out;
}

/// Nonempty, upward closed, intersection closed. The improper filter
/// (containing the empty set) is allowed.
inline std::vector<Structure> all_filters(int k) {
  const int full = (1 << k) - 1;
  std::vector<Structure> out;
  for (int fam = 1; fam < (1 << (1 << k)); ++fam) {
    bool ok = true;
    for (int u = 0; u <= full && ok; ++u) {
      if (!(fam >> u & 1)) continue;
      for (int v = 0; v <= full; ++v) {
        if ((u & v) == u && !(fam >> v & 1)) {  // u subset of v
          ok = false;
          break;
        }
        if ((fam >> v & 1) && !(fam >> (u & v) & 1)) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) continue;
    Structure s;
    for (int u = 0; u <= full; ++u)
      if (fam >> u & 1) s.push_back(static_cast<std::uint8_t>(u));
    out.push_back(std::move(s));
  }
  return out;
}

inline bool preimage_morphism(const std::vector<int>& vals, const Structure& a,
                              const Structure& b) {
  for (std::uint8_t v : b) {
    std::uint8_t pre = 0;
    for (size_t i = 0; i < vals.size(); ++i)
      if (v >> vals[i] & 1) pre |= std::uint8_t(1) << i;
    bool found = false;
    for (std::uint8_t w : a)
      if (w == pre) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

/// The category of structured finite sets over fs, with the forgetful
/// projection. Object ids look like "2T3"; arrow ids append the endpoint
/// structures to the underlying function id.
inline FunctorMap build_structured(const FinSetData& fs, const std::string& name,
                                   const std::string& tag,
                                   const std::vector<std::vector<Structure>>& structs) {
  FinCat c;
  c.name = name;
  auto obj_name = [&](int k, int i) { return std::to_string(k) + tag + std::to_string(i); };
  std::vector<int> obj_map, arr_map;
  for (int k = 0; k < fs.cat.n_obj(); ++k)
    for (size_t i = 0; i < structs[k].size(); ++i) {
      c.add_object(obj_name(k, static_cast<int>(i)));
      obj_map.push_back(k);
    }
  auto arrow_name = [&](int base, int si, int ti) {
    return fs.cat.arrows[base].id + "_" + obj_name(fs.size_of[fs.cat.src(base)], si) + "_" +
           obj_name(fs.size_of[fs.cat.tgt(base)], ti);
  };
  for (int m = 0; m < fs.cat.n_arr(); ++m) {
    const int a = fs.cat.src(m), b = fs.cat.tgt(m);
    for (size_t i = 0; i < structs[a].size(); ++i)
      for (size_t j = 0; j < structs[b].size(); ++j)
        if (preimage_morphism(fs.values[m], structs[a][i], structs[b][j])) {
          c.add_arrow(arrow_name(m, static_cast<int>(i), static_cast<int>(j)),
                      obj_name(a, static_cast<int>(i)), obj_name(b, static_cast<int>(j)));
          arr_map.push_back(m);
        }
  }
  for (int k = 0; k < fs.cat.n_obj(); ++k)
    for (size_t i = 0; i < structs[k].size(); ++i)
      c.set_identity(obj_name(k, static_cast<int>(i)),
                     arrow_name(fs.cat.id_arrow(k), static_cast<int>(i), static_cast<int>(i)));
  c.ensure_table();
  for (int g = 0; g < c.n_arr(); ++g)
    for (int f = 0; f < c.n_arr(); ++f) {
      if (c.tgt(f) != c.src(g)) continue;
      int base = fs.cat.compose(arr_map[g], arr_map[f]);
      // recover the endpoint structure indices from the kept object ids
      std::string id = fs.cat.arrows[base].id + "_" + c.arrows[f].src + "_" + c.arrows[g].tgt;
      c.set_compose_idx(g, f, c.arrow(id));
    }
  FunctorMap u;
  u.source = std::move(c);
  u.target = fs.cat;
  u.name = name + ".forget";
  u.obj_map = std::move(obj_map);
  u.arr_map = std::move(arr_map);
  return u;
}

inline FunctorMap build_fintop(const FinSetData& fs) {
  std::vector<std::vector<Structure>> st;
  for (int k = 0; k < fs.cat.n_obj(); ++k) st.push_back(all_topologies(fs.size_of[k]));
  return build_structured(fs, "fintop" + std::to_string(fs.cat.n_obj() - 1), "T", st);
}

inline FunctorMap build_finfilt(const FinSetData& fs) {
  std::vector<std::vector<Structure>> st;
  for (int k = 0; k < fs.cat.n_obj(); ++k) st.push_back(all_filters(fs.size_of[k]));
  return build_structured(fs, "finfilt" + std::to_string(fs.cat.n_obj() - 1), "F", st);
}

// ---------------------------------------------------------------------------
// Thin categories and functors between them.

inline FinCat thin_category(std::string name, std::vector<std::string> objs,
                            const std::vector<std::pair<int, int>>& edges) {
  const int n = static_cast<int>(objs.size());
  std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) le[i][i] = true;
  for (auto [a, b] : edges) le[a][b] = true;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (le[i][k])
        for (int j = 0; j < n; ++j)
          if (le[k][j]) le[i][j] = true;
  FinCat c;
  c.name = std::move(name);
  for (const auto& o : objs) c.add_object(o);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (le[i][j]) c.add_arrow(objs[i] + ">" + objs[j], objs[i], objs[j]);
  for (int i = 0; i < n; ++i) c.set_identity(objs[i], objs[i] + ">" + objs[i]);
  c.ensure_table();
  for (int g = 0; g < c.n_arr(); ++g)
    for (int f = 0; f < c.n_arr(); ++f)
      if (c.tgt(f) == c.src(g))
        c.set_compose_idx(g, f, c.arrow(c.arrows[f].src + ">" + c.arrows[g].tgt));
  return c;
}

/// A functor between thin categories is a relation-preserving object map.
inline FunctorMap thin_functor(FinCat t, FinCat s, const std::vector<int>& omap,
                               std::string name) {
  FunctorMap u;
  u.name = std::move(name);
  u.obj_map = omap;
  u.arr_map.resize(t.n_arr());
  for (int a = 0; a < t.n_arr(); ++a)
    u.arr_map[a] = s.arrow(s.objects[omap[t.src(a)]] + ">" + s.objects[omap[t.tgt(a)]]);
  u.source = std::move(t);
  u.target = std::move(s);
  return u;
}

inline FinCat poset_category(const FinPoset& p, std::string name) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < p.size(); ++i)
    for (int j = 0; j < p.size(); ++j)
      if (i != j && p.le(i, j)) edges.emplace_back(i, j);
  return thin_category(std::move(name), p.elems, edges);
}

// ---------------------------------------------------------------------------
// Hand-built counterexamples, each pinning down one separation.

struct CorpusEntry {
  std::string name;
  FunctorMap u;
  std::map<std::string, bool> expected;  // classification flags this entry pins down
  std::string note;
};

/// A fibration over a chain whose fiber has no left adjoint reindexing.
inline PosetPseudofunctor counterexample_no_adjoint() {
  PosetPseudofunctor p;
  p.base = thin_category("chain2", {"s", "t"}, {{0, 1}});
  p.fibers.resize(2);
  p.fibers[p.base.object("s")] = make_poset({"z0", "z1"}, {{0, 1}});
  p.fibers[p.base.object("t")] =
      make_poset({"bot", "p", "q", "top"}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  p.transitions.resize(p.base.n_arr());
  p.transitions[p.base.arrow("s>s")] = MonotoneMap{{0, 1}};
  p.transitions[p.base.arrow("t>t")] = MonotoneMap{{0, 1, 2, 3}};
  p.transitions[p.base.arrow("s>t")] = MonotoneMap{{0, 1, 1, 1}};  // bot -> z0, rest -> z1
  return p;
}

/// A fibration over the point whose fiber is a two-element antichain.
inline PosetPseudofunctor counterexample_antichain_fiber() {
  PosetPseudofunctor p;
  p.base = thin_category("pt", {"s"}, {});
  p.fibers.resize(1);
  p.fibers[0] = make_poset({"x", "y"}, {});
  p.transitions.resize(1);
  p.transitions[p.base.arrow("s>s")] = MonotoneMap{{0, 1}};
  return p;
}

inline std::vector<CorpusEntry> build_counterexamples() {
  std::vector<CorpusEntry> out;
  {
    CorpusEntry e;
    e.name = "antichain_fiber";
    e.u = thin_functor(thin_category("two_points", {"A", "B"}, {}),
                       thin_category("pt", {"s"}, {}), {0, 0}, "antichain_fiber");
    e.expected = {{"faithful", true},   {"prefibration", true},   {"fibration", true},
                  {"pretopological", false}, {"topological", false}};
    e.note = "fibration whose fiber lacks binary products";
    out.push_back(std::move(e));
  }
  {
    CorpusEntry e;
    e.name = "broken_composite";
    e.u = thin_functor(
        thin_category("five", {"C", "Cp", "D", "B", "A"},
                      {{0, 2}, {1, 2}, {0, 3}, {3, 4}, {0, 4}, {1, 4}, {2, 4}}),
        thin_category("chain3", {"s0", "s1", "s2"}, {{0, 1}, {1, 2}}), {0, 0, 0, 1, 2},
        "broken_composite");
    e.expected = {{"faithful", true},        {"prefibration", true}, {"fibration", false},
                  {"pretopological", false}, {"topological", false}};
    e.note = "prefibration whose cartesian lifts do not compose";
    out.push_back(std::move(e));
  }
  {
    CorpusEntry e;
    e.name = "no_left_adjoint";
    e.u = total_category(counterexample_no_adjoint());
    e.expected = {{"faithful", true},       {"prefibration", true}, {"fibration", true},
                  {"pretopological", true}, {"topological", false}};
    e.note = "pretopological fibration whose reindexing has no left adjoint";
    out.push_back(std::move(e));
  }
  {
    CorpusEntry e;
    e.name = "no_prefibration";
    e.u = thin_functor(thin_category("discrete2", {"A", "B"}, {}),
                       thin_category("interval", {"s", "t"}, {{0, 1}}), {0, 1},
                       "no_prefibration");
    e.expected = {{"faithful", true},        {"prefibration", false}, {"fibration", false},
                  {"pretopological", false}, {"topological", false},  {"e_functor", false},
                  {"m_functor", false}};
    e.note = "no lift at all over the base interval";
    out.push_back(std::move(e));
  }
  return out;
}

inline std::vector<CorpusEntry> build_corpus(int n = 2) {
  FinSetData fs = build_finset(n);
  std::vector<CorpusEntry> out;
  std::map<std::string, bool> all_true = {
      {"faithful", true},       {"prefibration", true}, {"fibration", true},
      {"pretopological", true}, {"topological", true},  {"e_functor", true},
      {"m_functor", true}};
  out.push_back({"finset_id", identity_functor(fs.cat), all_true, "identity projection"});
  out.push_back({"fintop", build_fintop(fs), all_true, "topological spaces over finite sets"});
  out.push_back({"finfilt", build_finfilt(fs), all_true, "filtered sets over finite sets"});
  for (auto& e : build_counterexamples()) out.push_back(std::move(e));
  return out;
}

// ---------------------------------------------------------------------------
// Seeded random models. Deterministic in the seed.

inline FinPoset random_poset(std::mt19937& rng, int max_elems, const std::string& prefix) {
  const int n = 1 + static_cast<int>(rng() % max_elems);
  std::vector<std::string> elems;
  for (int i = 0; i < n; ++i) elems.push_back(prefix + std::to_string(i));
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng() % 2) edges.emplace_back(i, j);  // edges respect the index order
  return make_poset(std::move(elems), edges);
}

inline MonotoneMap random_monotone(std::mt19937& rng, const FinPoset& dom, const FinPoset& cod) {
  std::vector<MonotoneMap> all;
  std::vector<int> vals(dom.size(), 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == dom.size()) {
      MonotoneMap m{vals};
      if (is_monotone(dom, cod, m)) all.push_back(std::move(m));
      return;
    }
    for (int v = 0; v < cod.size(); ++v) {
      vals[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return all[rng() % all.size()];
}

/// A strict pseudofunctor over a chain base (paths are unique, so strict
/// functoriality amounts to composing the step transitions).
inline PosetPseudofunctor random_pseudofunctor(std::uint32_t seed) {
  std::mt19937 rng(seed * 2654435761u + 12345u);
  const int len = 1 + static_cast<int>(rng() % 3);
  std::vector<std::string> objs;
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < len; ++i) objs.push_back("c" + std::to_string(i));
  for (int i = 0; i + 1 < len; ++i) edges.emplace_back(i, i + 1);
  PosetPseudofunctor p;
  p.base = thin_category("rchain" + std::to_string(seed), objs, edges);
  p.fibers.resize(len);
  for (int i = 0; i < len; ++i)
    p.fibers[i] = random_poset(rng, 3, "x" + std::to_string(i) + "_");
  std::vector<MonotoneMap> steps;  // steps[k] : fiber(k+1) -> fiber(k)
  for (int k = 0; k + 1 < len; ++k)
    steps.push_back(random_monotone(rng, p.fibers[k + 1], p.fibers[k]));
  p.transitions.resize(p.base.n_arr());
  for (int a = 0; a < p.base.n_arr(); ++a) {
    const int i = p.base.src(a), j = p.base.tgt(a);
    MonotoneMap t;
    t.values.resize(p.fibers[j].size());
    for (int z = 0; z < p.fibers[j].size(); ++z) {
      int v = z;
      for (int k = j - 1; k >= i; --k) v = steps[k](v);
      t.values[z] = v;
    }
    p.transitions[a] = std::move(t);
  }
  return p;
}

inline FunctorMap full_subfunctor(const FunctorMap& u, const std::vector<int>& keep) {
  FinCat sub;
  sub.name = u.source.name + ".sub";
  std::vector<bool> kept(u.source.n_obj(), false);
  for (int o : keep) kept[o] = true;
  std::vector<int> obj_map, arr_map, arr_old_to_new(u.source.n_arr(), -1);
  for (int o : keep) {
    sub.add_object(u.source.objects[o]);
    obj_map.push_back(u.obj_map[o]);
  }
  for (int a = 0; a < u.source.n_arr(); ++a)
    if (kept[u.source.src(a)] && kept[u.source.tgt(a)]) {
      arr_old_to_new[a] = sub.add_arrow(u.source.arrows[a].id, u.source.arrows[a].src,
                                        u.source.arrows[a].tgt);
      arr_map.push_back(u.arr_map[a]);
    }
  for (int o : keep)
    sub.set_identity(u.source.objects[o], u.source.arrows[u.source.id_arrow(o)].id);
  sub.ensure_table();
  for (int a = 0; a < u.source.n_arr(); ++a)
    for (int b = 0; b < u.source.n_arr(); ++b) {
      if (arr_old_to_new[a] < 0 || arr_old_to_new[b] < 0) continue;
      int ab = u.source.compose(a, b);
      if (ab >= 0) sub.set_compose_idx(arr_old_to_new[a], arr_old_to_new[b], arr_old_to_new[ab]);
    }
  FunctorMap v;
  v.source = std::move(sub);
  v.target = u.target;
  v.name = u.name + ".sub";
  v.obj_map = std::move(obj_map);
  v.arr_map = std::move(arr_map);
  return v;
}

/// Four families of models keyed by seed % 4: totals of random
/// pseudofunctors, their full subcategories, monotone maps of posets, and a
/// non-faithful collapse without fiber products.
inline FunctorMap random_model(std::uint32_t seed) {
  std::mt19937 rng(seed * 2246822519u + 7u);
  switch (seed % 4) {
    case 0:
      return total_category(random_pseudofunctor(seed));
    case 1: {
      FunctorMap u = total_category(random_pseudofunctor(seed));
      std::vector<int> keep;
      for (int o = 0; o < u.source.n_obj(); ++o)
        if (rng() % 2) keep.push_back(o);
      if (keep.empty()) keep.push_back(0);
      return full_subfunctor(u, keep);
    }
    case 2: {
      FinPoset pt = random_poset(rng, 4, "a");
      FinPoset ps = random_poset(rng, 4, "b");
      FinCat t = poset_category(pt, "rt" + std::to_string(seed));
      FinCat s = poset_category(ps, "rs" + std::to_string(seed));
      MonotoneMap m = random_monotone(rng, pt, ps);
      return thin_functor(std::move(t), std::move(s), m.values,
                          "rmap" + std::to_string(seed));
    }
    default: {
      const int k = 2 + static_cast<int>(rng() % 2);
      FinCat t;
      t.name = "rpar" + std::to_string(seed);
      t.add_object("X");
      t.add_object("Y");
      t.add_arrow("iX", "X", "X");
      t.add_arrow("iY", "Y", "Y");
      for (int i = 0; i < k; ++i)
        t.add_arrow("f" + std::to_string(i), "X", "Y");
      t.set_identity("X", "iX");
      t.set_identity("Y", "iY");
      t.ensure_table();
      t.set_compose("iX", "iX", "iX");
      t.set_compose("iY", "iY", "iY");
      for (int i = 0; i < k; ++i) {
        t.set_compose("f" + std::to_string(i), "iX", "f" + std::to_string(i));
        t.set_compose("iY", "f" + std::to_string(i), "f" + std::to_string(i));
      }
      FinCat s = thin_category("pt", {"s"}, {});
      FunctorMap u;
      u.name = "collapse" + std::to_string(seed);
      u.obj_map = {0, 0};
      u.arr_map.assign(t.n_arr(), s.arrow("s>s"));
      u.source = std::move(t);
      u.target = std::move(s);
      return u;
    }
  }
}

}  // namespace famfib

#endif  // FAMFIB_CORPUS_HPP
