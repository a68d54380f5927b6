#ifndef FAMFIB_POSET_HPP
#define FAMFIB_POSET_HPP

#include <optional>
#include <string>
#include <vector>

#include "famfib/core.hpp"

namespace famfib {

/// A finite poset with an explicit order matrix.
struct FinPoset {
  std::vector<std::string> elems;
  std::vector<std::vector<bool>> leq;  // leq[a][b] == (a <= b)

  int size() const { return static_cast<int>(elems.size()); }
  bool le(int a, int b) const { return leq[a][b]; }

  int element(const std::string& id) const {
    for (int i = 0; i < size(); ++i)
      if (elems[i] == id) return i;
    throw std::invalid_argument("unknown poset element: " + id);
  }
};

inline FinPoset make_poset(std::vector<std::string> elems,
                           const std::vector<std::pair<int, int>>& hasse_edges) {
  FinPoset p;
  p.elems = std::move(elems);
  int n = p.size();
  p.leq.assign(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) p.leq[i][i] = true;
  for (auto [a, b] : hasse_edges) p.leq[a][b] = true;
  // transitive closure
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (p.leq[i][k])
        for (int j = 0; j < n; ++j)
          if (p.leq[k][j]) p.leq[i][j] = true;
  return p;
}

inline ValidationReport validate_poset(const FinPoset& p) {
  ValidationReport r;
  int n = p.size();
  for (int i = 0; i < n; ++i)
    if (!p.leq[i][i]) r.add("poset.reflexive", p.elems[i] + " not <= itself");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i != j && p.leq[i][j] && p.leq[j][i])
        r.add("poset.antisymmetric", p.elems[i] + " and " + p.elems[j] + " order-equivalent");
      if (p.leq[i][j])
        for (int k = 0; k < n; ++k)
          if (p.leq[j][k] && !p.leq[i][k])
            r.add("poset.transitive",
                  p.elems[i] + " <= " + p.elems[j] + " <= " + p.elems[k] + " broken");
    }
  return r;
}

/// Greatest lower bound of {a, b}, if it exists.
inline std::optional<int> meet(const FinPoset& p, int a, int b) {
  for (int m = 0; m < p.size(); ++m) {
    if (!p.le(m, a) || !p.le(m, b)) continue;
    bool greatest = true;
    for (int x = 0; x < p.size() && greatest; ++x)
      if (p.le(x, a) && p.le(x, b) && !p.le(x, m)) greatest = false;
    if (greatest) return m;
  }
  return std::nullopt;
}

inline std::optional<int> top_of(const FinPoset& p) {
  for (int t = 0; t < p.size(); ++t) {
    bool all = true;
    for (int x = 0; x < p.size() && all; ++x) all = p.le(x, t);
    if (all) return t;
  }
  return std::nullopt;
}

inline std::optional<int> bottom_of(const FinPoset& p) {
  for (int b = 0; b < p.size(); ++b) {
    bool all = true;
    for (int x = 0; x < p.size() && all; ++x) all = p.le(b, x);
    if (all) return b;
  }
  return std::nullopt;
}

/// Finite completeness: every subset has a meet. Equivalent to a top element
/// plus closure of the binary meet table.
inline bool is_complete_lattice(const FinPoset& p) {
  if (p.size() == 0) return false;  // empty meet (top) must exist
  if (!top_of(p)) return false;
  for (int a = 0; a < p.size(); ++a)
    for (int b = 0; b < p.size(); ++b)
      if (!meet(p, a, b)) return false;
  return true;
}

struct MonotoneMap {
  std::vector<int> values;  // domain element -> codomain element
  int operator()(int x) const { return values[x]; }
};

inline bool is_monotone(const FinPoset& dom, const FinPoset& cod, const MonotoneMap& f) {
  for (int a = 0; a < dom.size(); ++a)
    for (int b = 0; b < dom.size(); ++b)
      if (dom.le(a, b) && !cod.le(f(a), f(b))) return false;
  return true;
}

/// Left adjoint of a monotone map f : Q -> P, i.e. g : P -> Q with
/// g(x) <= y  iff  x <= f(y). Returns g if it exists.
inline std::optional<MonotoneMap> left_adjoint_of_transition(const FinPoset& p, const FinPoset& q,
                                                             const MonotoneMap& f) {
  MonotoneMap g;
  g.values.assign(p.size(), -1);
  for (int x = 0; x < p.size(); ++x) {
    std::optional<int> least;
    for (int y = 0; y < q.size(); ++y) {
      if (!p.le(x, f(y))) continue;
      if (!least || q.le(y, *least)) least = y;
    }
    if (!least) return std::nullopt;
    // verify least among candidates
    for (int y = 0; y < q.size(); ++y)
      if (p.le(x, f(y)) && !q.le(*least, y)) return std::nullopt;
    g.values[x] = *least;
  }
  // verify the adjunction inequality on all pairs
  for (int x = 0; x < p.size(); ++x)
    for (int y = 0; y < q.size(); ++y)
      if ((q.le(g(x), y)) != (p.le(x, f(y)))) return std::nullopt;
  return g;
}

}  // namespace famfib

#endif  // FAMFIB_POSET_HPP
