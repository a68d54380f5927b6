#ifndef FAMFIB_LIMITS_HPP
#define FAMFIB_LIMITS_HPP

#include <functional>
#include <optional>

#include "famfib/core.hpp"

/// Brute-force (co)limit recognition for diagrams over small shapes.
namespace famfib {

/// A diagram is a functor from a finite shape category.
struct Cocone {
  int apex;                // object index in the ambient category
  std::vector<int> legs;   // shape object index -> arrow index, leg: D(i) -> apex
};
using Cone = Cocone;       // legs point the other way: apex -> D(i)

inline bool cocone_commutes(const FinCat& c, const FunctorMap& diagram, const Cocone& k) {
  const FinCat& shape = diagram.source;
  for (int i = 0; i < shape.n_obj(); ++i) {
    int leg = k.legs[i];
    if (c.src(leg) != diagram.obj_map[i] || c.tgt(leg) != k.apex) return false;
  }
  for (int e = 0; e < shape.n_arr(); ++e) {
    // leg_tgt ∘ D(e) = leg_src
    if (c.compose(k.legs[shape.tgt(e)], diagram.arr_map[e]) != k.legs[shape.src(e)]) return false;
  }
  return true;
}

inline bool cone_commutes(const FinCat& c, const FunctorMap& diagram, const Cone& k) {
  const FinCat& shape = diagram.source;
  for (int i = 0; i < shape.n_obj(); ++i) {
    int leg = k.legs[i];
    if (c.src(leg) != k.apex || c.tgt(leg) != diagram.obj_map[i]) return false;
  }
  for (int e = 0; e < shape.n_arr(); ++e) {
    // D(e) ∘ leg_src = leg_tgt
    if (c.compose(diagram.arr_map[e], k.legs[shape.src(e)]) != k.legs[shape.tgt(e)]) return false;
  }
  return true;
}

namespace detail {

template <typename F>
inline void for_each_cocone(const FinCat& c, const FunctorMap& diagram, F&& fn) {
  const FinCat& shape = diagram.source;
  const int n = shape.n_obj();
  for (int apex = 0; apex < c.n_obj(); ++apex) {
    std::vector<std::vector<int>> cands(n);
    bool any = true;
    for (int i = 0; i < n && any; ++i) {
      cands[i] = hom(c, diagram.obj_map[i], apex);
      any = !cands[i].empty();
    }
    if (!any) continue;
    Cocone k;
    k.apex = apex;
    k.legs.assign(n, -1);
    std::function<void(int)> rec = [&](int i) {
      if (i == n) {
        if (cocone_commutes(c, diagram, k)) fn(k);
        return;
      }
      for (int leg : cands[i]) {
        k.legs[i] = leg;
        rec(i + 1);
      }
    };
    rec(0);
  }
}

template <typename F>
inline void for_each_cone(const FinCat& c, const FunctorMap& diagram, F&& fn) {
  const FinCat& shape = diagram.source;
  const int n = shape.n_obj();
  for (int apex = 0; apex < c.n_obj(); ++apex) {
    std::vector<std::vector<int>> cands(n);
    bool any = true;
    for (int i = 0; i < n && any; ++i) {
      cands[i] = hom(c, apex, diagram.obj_map[i]);
      any = !cands[i].empty();
    }
    if (!any) continue;
    Cone k;
    k.apex = apex;
    k.legs.assign(n, -1);
    std::function<void(int)> rec = [&](int i) {
      if (i == n) {
        if (cone_commutes(c, diagram, k)) fn(k);
        return;
      }
      for (int leg : cands[i]) {
        k.legs[i] = leg;
        rec(i + 1);
      }
    };
    rec(0);
  }
}

}  // namespace detail

/// True iff the cocone commutes and every commuting cocone factors through it
/// by exactly one mediating arrow.
inline bool is_colimit_cocone(const FinCat& c, const FunctorMap& diagram, const Cocone& k) {
  if (!cocone_commutes(c, diagram, k)) return false;
  bool ok = true;
  detail::for_each_cocone(c, diagram, [&](const Cocone& other) {
    if (!ok) return;
    int count = 0;
    for (int m : hom(c, k.apex, other.apex)) {
      bool mediates = true;
      for (size_t i = 0; i < k.legs.size() && mediates; ++i)
        mediates = c.compose(m, k.legs[i]) == other.legs[i];
      if (mediates) ++count;
    }
    if (count != 1) ok = false;
  });
  return ok;
}

inline bool is_limit_cone(const FinCat& c, const FunctorMap& diagram, const Cone& k) {
  if (!cone_commutes(c, diagram, k)) return false;
  bool ok = true;
  detail::for_each_cone(c, diagram, [&](const Cone& other) {
    if (!ok) return;
    int count = 0;
    for (int m : hom(c, other.apex, k.apex)) {
      bool mediates = true;
      for (size_t i = 0; i < k.legs.size() && mediates; ++i)
        mediates = c.compose(k.legs[i], m) == other.legs[i];
      if (mediates) ++count;
    }
    if (count != 1) ok = false;
  });
  return ok;
}

inline std::optional<Cocone> find_colimit(const FinCat& c, const FunctorMap& diagram) {
  std::optional<Cocone> found;
  detail::for_each_cocone(c, diagram, [&](const Cocone& k) {
    if (!found && is_colimit_cocone(c, diagram, k)) found = k;
  });
  return found;
}

inline std::optional<Cone> find_limit(const FinCat& c, const FunctorMap& diagram) {
  std::optional<Cone> found;
  detail::for_each_cone(c, diagram, [&](const Cone& k) {
    if (!found && is_limit_cone(c, diagram, k)) found = k;
  });
  return found;
}

}  // namespace famfib

#endif  // FAMFIB_LIMITS_HPP
