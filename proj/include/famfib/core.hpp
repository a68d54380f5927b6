#ifndef FAMFIB_CORE_HPP
#define FAMFIB_CORE_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

/// Finite categories and functors between them, stored as explicit
/// composition tables over opaque string identifiers.
namespace famfib {

struct Arrow {
  std::string id;
  std::string src;
  std::string tgt;
};

struct Violation {
  std::string code;     // e.g. "compose.missing", "identity.left"
  std::string message;  // human-readable, includes witnesses
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  void add(std::string code, std::string message) {
    violations.push_back({std::move(code), std::move(message)});
  }
  std::string to_string() const {
    std::string out;
    for (const auto& v : violations) out += v.code + ": " + v.message + "\n";
    return out;
  }
};

class FinCat {
 public:
  std::string name;
  std::vector<std::string> objects;
  std::vector<Arrow> arrows;
  std::vector<int> identity_of;          // object index -> arrow index (-1 unset)
  std::vector<int> compose_table;       // [g * n_arr + f] -> arrow index of g∘f, -1 undefined

  int add_object(const std::string& id) {
    if (obj_index_.count(id)) throw std::invalid_argument("duplicate object id: " + id);
    obj_index_[id] = static_cast<int>(objects.size());
    objects.push_back(id);
    identity_of.push_back(-1);
    return static_cast<int>(objects.size()) - 1;
  }

  int add_arrow(const std::string& id, const std::string& src, const std::string& tgt) {
    if (arr_index_.count(id)) throw std::invalid_argument("duplicate arrow id: " + id);
    int s = object(src), t = object(tgt);
    (void)s;
    (void)t;
    arr_index_[id] = static_cast<int>(arrows.size());
    arrows.push_back({id, src, tgt});
    return static_cast<int>(arrows.size()) - 1;
  }

  void set_identity(const std::string& obj, const std::string& arr) {
    identity_of[object(obj)] = arrow(arr);
  }

  void set_compose(const std::string& g, const std::string& f, const std::string& gf) {
    ensure_table();
    compose_table[arrow(g) * arrows.size() + arrow(f)] = arrow(gf);
  }

  /// Index-level accessors used by all search code.
  int n_obj() const { return static_cast<int>(objects.size()); }
  int n_arr() const { return static_cast<int>(arrows.size()); }
  int src(int a) const { return obj_index_.at(arrows[a].src); }
  int tgt(int a) const { return obj_index_.at(arrows[a].tgt); }
  int id_arrow(int obj) const { return identity_of[obj]; }

  int compose(int g, int f) const {
    if (compose_table.empty()) return -1;
    return compose_table[static_cast<size_t>(g) * arrows.size() + f];
  }

  int object(const std::string& id) const {
    auto it = obj_index_.find(id);
    if (it == obj_index_.end()) throw std::invalid_argument("unknown object id: " + id);
    return it->second;
  }
  int arrow(const std::string& id) const {
    auto it = arr_index_.find(id);
    if (it == arr_index_.end()) throw std::invalid_argument("unknown arrow id: " + id);
    return it->second;
  }
  bool has_object(const std::string& id) const { return obj_index_.count(id) != 0; }
  bool has_arrow(const std::string& id) const { return arr_index_.count(id) != 0; }

  void set_compose_idx(int g, int f, int gf) {
    ensure_table();
    compose_table[static_cast<size_t>(g) * arrows.size() + f] = gf;
  }

  /// Call once all arrows exist; compose entries default to undefined.
  void ensure_table() {
    size_t want = arrows.size() * arrows.size();
    if (compose_table.size() != want) compose_table.assign(want, -1);
  }

 private:
  std::unordered_map<std::string, int> obj_index_;
  std::unordered_map<std::string, int> arr_index_;
};

inline std::vector<int> hom(const FinCat& c, int x, int y) {
  std::vector<int> out;
  for (int a = 0; a < c.n_arr(); ++a)
    if (c.src(a) == x && c.tgt(a) == y) out.push_back(a);
  return out;
}

inline std::vector<int> hom(const FinCat& c, const std::string& x, const std::string& y) {
  return hom(c, c.object(x), c.object(y));
}

inline ValidationReport validate_category(const FinCat& c) {
  ValidationReport r;
  const int na = c.n_arr();
  if (c.compose_table.size() != static_cast<size_t>(na) * na && na > 0) {
    r.add("compose.table", "composition table not allocated");
    return r;
  }
  for (int o = 0; o < c.n_obj(); ++o) {
    int i = c.id_arrow(o);
    if (i < 0) {
      r.add("identity.missing", "object " + c.objects[o] + " has no identity arrow");
      continue;
    }
    if (c.src(i) != o || c.tgt(i) != o)
      r.add("identity.endpoints", "identity of " + c.objects[o] + " is not an endo-arrow");
  }
  for (int g = 0; g < na; ++g)
    for (int f = 0; f < na; ++f) {
      int gf = c.compose(g, f);
      bool composable = c.tgt(f) == c.src(g);
      if (composable && gf < 0)
        r.add("compose.missing",
              "composite undefined for (" + c.arrows[g].id + ", " + c.arrows[f].id + ")");
      if (!composable && gf >= 0)
        r.add("compose.spurious",
              "composite defined for non-composable (" + c.arrows[g].id + ", " + c.arrows[f].id + ")");
      if (composable && gf >= 0 && (c.src(gf) != c.src(f) || c.tgt(gf) != c.tgt(g)))
        r.add("compose.endpoints",
              "composite of (" + c.arrows[g].id + ", " + c.arrows[f].id + ") has wrong endpoints");
    }
  if (!r.ok()) return r;  // identity/associativity checks assume a total table
  for (int f = 0; f < na; ++f) {
    int is = c.id_arrow(c.src(f)), it = c.id_arrow(c.tgt(f));
    if (is >= 0 && c.compose(f, is) != f)
      r.add("identity.right", "compose(" + c.arrows[f].id + ", id) != " + c.arrows[f].id +
                                  " (witness " + c.arrows[f].id + ", " + c.arrows[is].id + ")");
    if (it >= 0 && c.compose(it, f) != f)
      r.add("identity.left", "compose(id, " + c.arrows[f].id + ") != " + c.arrows[f].id +
                                 " (witness " + c.arrows[it].id + ", " + c.arrows[f].id + ")");
  }
  for (int h = 0; h < na; ++h)
    for (int g = 0; g < na; ++g) {
      if (c.src(h) != c.tgt(g)) continue;
      for (int f = 0; f < na; ++f) {
        if (c.src(g) != c.tgt(f)) continue;
        int a = c.compose(h, c.compose(g, f));
        int b = c.compose(c.compose(h, g), f);
        if (a != b)
          r.add("associativity",
                "h∘(g∘f) != (h∘g)∘f for (" + c.arrows[h].id + ", " + c.arrows[g].id + ", " +
                    c.arrows[f].id + ")");
      }
    }
  return r;
}

struct FunctorMap {
  FinCat source;
  FinCat target;
  std::string name;
  std::vector<int> obj_map;  // source object index -> target object index
  std::vector<int> arr_map;  // source arrow index -> target arrow index

  int u_obj(int x) const { return obj_map[x]; }
  int u_arr(int a) const { return arr_map[a]; }
};

inline ValidationReport validate_functor(const FunctorMap& u) {
  ValidationReport r;
  const FinCat& s = u.source;
  const FinCat& t = u.target;
  if (u.obj_map.size() != static_cast<size_t>(s.n_obj()) ||
      u.arr_map.size() != static_cast<size_t>(s.n_arr())) {
    r.add("functor.maps", "object/arrow maps have wrong size");
    return r;
  }
  for (int a = 0; a < s.n_arr(); ++a) {
    int ua = u.arr_map[a];
    if (ua < 0 || ua >= t.n_arr()) {
      r.add("functor.range", "arrow " + s.arrows[a].id + " maps outside the target");
      return r;
    }
    if (t.src(ua) != u.obj_map[s.src(a)] || t.tgt(ua) != u.obj_map[s.tgt(a)])
      r.add("functor.endpoints", "image of " + s.arrows[a].id + " has wrong endpoints");
  }
  for (int o = 0; o < s.n_obj(); ++o) {
    if (s.id_arrow(o) < 0) continue;
    if (u.arr_map[s.id_arrow(o)] != t.id_arrow(u.obj_map[o]))
      r.add("functor.identity", "identity of " + s.objects[o] + " not sent to an identity");
  }
  for (int g = 0; g < s.n_arr(); ++g)
    for (int f = 0; f < s.n_arr(); ++f) {
      int gf = s.compose(g, f);
      if (gf < 0) continue;
      if (t.compose(u.arr_map[g], u.arr_map[f]) != u.arr_map[gf])
        r.add("functor.compose",
              "u(g∘f) != u(g)∘u(f) for (" + s.arrows[g].id + ", " + s.arrows[f].id + ")");
    }
  return r;
}

inline FunctorMap identity_functor(const FinCat& c) {
  FunctorMap u;
  u.source = c;
  u.target = c;
  u.name = "id_" + c.name;
  u.obj_map.resize(c.n_obj());
  u.arr_map.resize(c.n_arr());
  for (int o = 0; o < c.n_obj(); ++o) u.obj_map[o] = o;
  for (int a = 0; a < c.n_arr(); ++a) u.arr_map[a] = a;
  return u;
}

/// Identifier-exact opposite: same ids, swapped endpoints, flipped table.
inline FinCat opposite(const FinCat& c) {
  FinCat op;
  op.name = c.name;
  for (const auto& o : c.objects) op.add_object(o);
  for (const auto& a : c.arrows) op.add_arrow(a.id, a.tgt, a.src);
  for (int o = 0; o < c.n_obj(); ++o) op.identity_of[o] = c.identity_of[o];
  op.ensure_table();
  for (int g = 0; g < c.n_arr(); ++g)
    for (int f = 0; f < c.n_arr(); ++f) {
      int fg = c.compose(f, g);
      if (fg >= 0) op.set_compose_idx(g, f, fg);
    }
  return op;
}

inline FunctorMap opposite_functor(const FunctorMap& u) {
  FunctorMap op;
  op.source = opposite(u.source);
  op.target = opposite(u.target);
  op.name = u.name;
  op.obj_map = u.obj_map;
  op.arr_map = u.arr_map;
  return op;
}

inline bool is_faithful(const FunctorMap& u) {
  const FinCat& s = u.source;
  for (int a = 0; a < s.n_arr(); ++a)
    for (int b = a + 1; b < s.n_arr(); ++b)
      if (s.src(a) == s.src(b) && s.tgt(a) == s.tgt(b) && u.arr_map[a] == u.arr_map[b])
        return false;
  return true;
}

inline bool is_isomorphism(const FinCat& c, int f) {
  for (int g : hom(c, c.tgt(f), c.src(f)))
    if (c.compose(g, f) == c.id_arrow(c.src(f)) && c.compose(f, g) == c.id_arrow(c.tgt(f)))
      return true;
  return false;
}

}  // namespace famfib

#endif  // FAMFIB_CORE_HPP
