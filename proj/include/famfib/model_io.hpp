#ifndef FAMFIB_MODEL_IO_HPP
#define FAMFIB_MODEL_IO_HPP

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "famfib/grothendieck.hpp"

/// Plain-text model format: `category`, `functor` and `pseudofunctor`
/// sections with quoted identifiers, `#` comments, and a canonical printer
/// such that parse . print = identity on canonical files.
///
/// Grammar (one statement per line):
///   category "T"
///     object "A"
///     arrow "f" : "A" -> "B"
///     identity "A" = "idA"
///     compose "g" . "f" = "gf"
///   end
///   functor "u"
///     source "T"
///     target "S"
///     object "A" -> "s"
///     arrow "f" -> "phi"
///     expect "topological" true
///   end
///   pseudofunctor "P"
///     base "S"
///     poset "s"
///       elem "x"
///       leq "x" <= "y"
///     end
///     transition "phi"
///       map "y" -> "x"
///     end
///   end
namespace famfib {

struct ParseError : std::runtime_error {
  int line;
  int col;
  ParseError(int line_, int col_, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_) + ", column " +
                           std::to_string(col_) + ": " + msg),
        line(line_),
        col(col_) {}
};

struct FunctorEntry {
  FunctorMap u;
  std::vector<std::pair<std::string, bool>> expects;  // classification flag -> value
};

struct PseudoEntry {
  std::string name;
  PosetPseudofunctor p;
};

struct ModelFile {
  std::vector<FinCat> categories;
  std::vector<FunctorEntry> functors;
  std::vector<PseudoEntry> pseudos;

  const FinCat* find_category(const std::string& n) const {
    for (const auto& c : categories)
      if (c.name == n) return &c;
    return nullptr;
  }
};

namespace detail {

struct Token {
  enum Kind { Str, Word, Sym } kind;
  std::string text;
  int col;  // 1-based
};

inline std::vector<Token> lex_line(const std::string& s, int lineno) {
  std::vector<Token> out;
  size_t i = 0;
  auto err = [&](const std::string& m) { throw ParseError(lineno, static_cast<int>(i) + 1, m); };
  while (i < s.size()) {
    char c = s[i];
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    if (c == '#') break;
    int col = static_cast<int>(i) + 1;
    if (c == '"') {
      std::string v;
      ++i;
      while (i < s.size() && s[i] != '"') {
        if (s[i] == '\\' && i + 1 < s.size() && (s[i + 1] == '"' || s[i + 1] == '\\')) ++i;
        v += s[i++];
      }
      if (i >= s.size()) err("unterminated string");
      ++i;
      out.push_back({Token::Str, v, col});
      continue;
    }
    if (s.compare(i, 2, "->") == 0 || s.compare(i, 2, "<=") == 0) {
      out.push_back({Token::Sym, s.substr(i, 2), col});
      i += 2;
      continue;
    }
    if (c == ':' || c == '=' || c == '.') {
      out.push_back({Token::Sym, std::string(1, c), col});
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
        ++j;
      out.push_back({Token::Word, s.substr(i, j - i), col});
      i = j;
      continue;
    }
    err(std::string("unexpected character '") + c + "'");
  }
  return out;
}

/// Cursor over one line of tokens with positioned error reporting.
struct Line {
  const std::vector<Token>& toks;
  int lineno;
  size_t pos = 0;

  [[noreturn]] void fail(const std::string& m) const {
    int col = pos < toks.size() ? toks[pos].col
                                : (toks.empty() ? 1 : toks.back().col + 1);
    throw ParseError(lineno, col, m);
  }
  const Token& need(Token::Kind k, const std::string& what) {
    if (pos >= toks.size() || toks[pos].kind != k) fail("expected " + what);
    return toks[pos++];
  }
  std::string str() { return need(Token::Str, "a quoted identifier").text; }
  void sym(const std::string& s) {
    if (pos >= toks.size() || toks[pos].kind != Token::Sym || toks[pos].text != s)
      fail("expected '" + s + "'");
    ++pos;
  }
  void done() {
    if (pos < toks.size()) fail("trailing tokens");
  }
};

inline std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace detail

inline ModelFile parse_model(const std::string& text) {
  using detail::Line;
  using detail::Token;
  ModelFile m;

  enum class Sect { None, Category, Functor, Pseudo, Poset, Transition };
  Sect sect = Sect::None;
  Sect outer = Sect::None;  // for Poset/Transition, the enclosing Pseudo

  // category state
  FinCat cat;
  struct ComposeLine {
    std::string g, f, gf;
    int line, col;
  };
  std::vector<ComposeLine> composes;

  // functor state
  FunctorEntry fe;
  bool have_src = false, have_tgt = false;

  // pseudofunctor state
  PseudoEntry pe;
  std::vector<bool> fiber_set;
  std::vector<bool> trans_set;
  bool have_base = false;
  int cur_fiber = -1;   // object index of the poset being read
  int cur_trans = -1;   // arrow index of the transition being read
  std::vector<std::string> poset_elems;
  std::vector<std::pair<int, int>> poset_edges;
  MonotoneMap trans_map;
  std::vector<bool> trans_filled;

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto toks = detail::lex_line(raw, lineno);
    if (toks.empty()) continue;
    Line ln{toks, lineno};
    if (toks[0].kind != Token::Word) ln.fail("expected a keyword");
    const std::string key = toks[0].text;
    ++ln.pos;

    auto resolve = [&](const FinCat& c, bool is_obj, const std::string& id) {
      if (is_obj) {
        if (!c.has_object(id)) ln.fail("unknown object " + detail::quote(id));
        return c.object(id);
      }
      if (!c.has_arrow(id)) ln.fail("unknown arrow " + detail::quote(id));
      return c.arrow(id);
    };

    switch (sect) {
      case Sect::None: {
        if (key == "category") {
          cat = FinCat{};
          cat.name = ln.str();
          ln.done();
          if (m.find_category(cat.name)) ln.fail("duplicate category " + detail::quote(cat.name));
          composes.clear();
          sect = Sect::Category;
        } else if (key == "functor") {
          fe = FunctorEntry{};
          fe.u.name = ln.str();
          ln.done();
          have_src = have_tgt = false;
          sect = Sect::Functor;
        } else if (key == "pseudofunctor") {
          pe = PseudoEntry{};
          pe.name = ln.str();
          ln.done();
          have_base = false;
          sect = Sect::Pseudo;
        } else {
          ln.fail("unknown section " + detail::quote(key));
        }
        break;
      }
      case Sect::Category: {
        try {
          if (key == "object") {
            std::string id = ln.str();
            ln.done();
            cat.add_object(id);
          } else if (key == "arrow") {
            std::string id = ln.str();
            ln.sym(":");
            std::string s = ln.str();
            ln.sym("->");
            std::string t = ln.str();
            ln.done();
            cat.add_arrow(id, s, t);
          } else if (key == "identity") {
            std::string o = ln.str();
            ln.sym("=");
            std::string a = ln.str();
            ln.done();
            cat.set_identity(o, a);
          } else if (key == "compose") {
            std::string g = ln.str();
            ln.sym(".");
            std::string f = ln.str();
            ln.sym("=");
            std::string gf = ln.str();
            ln.done();
            composes.push_back({g, f, gf, lineno, toks[0].col});
          } else if (key == "end") {
            ln.done();
            cat.ensure_table();
            for (const auto& cl : composes) {
              if (!cat.has_arrow(cl.g) || !cat.has_arrow(cl.f) || !cat.has_arrow(cl.gf))
                throw ParseError(cl.line, cl.col, "compose line names an unknown arrow");
              cat.set_compose(cl.g, cl.f, cl.gf);
            }
            m.categories.push_back(std::move(cat));
            sect = Sect::None;
          } else {
            ln.fail("unknown key " + detail::quote(key) + " in category section");
          }
        } catch (const std::invalid_argument& e) {
          throw ParseError(lineno, toks[0].col, e.what());
        }
        break;
      }
      case Sect::Functor: {
        if (key == "source" || key == "target") {
          std::string n = ln.str();
          ln.done();
          bool& flag = key == "source" ? have_src : have_tgt;
          if (flag) ln.fail("duplicate " + key + " line");
          const FinCat* c = m.find_category(n);
          if (!c) ln.fail("unknown category " + detail::quote(n));
          (key == "source" ? fe.u.source : fe.u.target) = *c;
          flag = true;
          if (key == "source") {
            fe.u.obj_map.assign(c->n_obj(), -1);
            fe.u.arr_map.assign(c->n_arr(), -1);
          }
        } else if (key == "object" || key == "arrow") {
          std::string a = ln.str();
          ln.sym("->");
          std::string b = ln.str();
          ln.done();
          if (!have_src || !have_tgt) ln.fail("source/target must precede mappings");
          bool is_obj = key == "object";
          int i = resolve(fe.u.source, is_obj, a);
          int j = resolve(fe.u.target, is_obj, b);
          auto& map = is_obj ? fe.u.obj_map : fe.u.arr_map;
          if (map[i] >= 0) ln.fail("duplicate mapping for " + detail::quote(a));
          map[i] = j;
        } else if (key == "expect") {
          std::string flag = ln.str();
          const auto& w = ln.need(Token::Word, "true or false");
          if (w.text != "true" && w.text != "false") ln.fail("expected true or false");
          ln.done();
          fe.expects.emplace_back(flag, w.text == "true");
        } else if (key == "end") {
          ln.done();
          if (!have_src || !have_tgt) ln.fail("functor section missing source or target");
          for (int o = 0; o < fe.u.source.n_obj(); ++o)
            if (fe.u.obj_map[o] < 0)
              ln.fail("object " + detail::quote(fe.u.source.objects[o]) + " has no image");
          for (int a = 0; a < fe.u.source.n_arr(); ++a)
            if (fe.u.arr_map[a] < 0)
              ln.fail("arrow " + detail::quote(fe.u.source.arrows[a].id) + " has no image");
          m.functors.push_back(std::move(fe));
          sect = Sect::None;
        } else {
          ln.fail("unknown key " + detail::quote(key) + " in functor section");
        }
        break;
      }
      case Sect::Pseudo: {
        if (key == "base") {
          std::string n = ln.str();
          ln.done();
          if (have_base) ln.fail("duplicate base line");
          const FinCat* c = m.find_category(n);
          if (!c) ln.fail("unknown category " + detail::quote(n));
          pe.p.base = *c;
          pe.p.fibers.assign(c->n_obj(), FinPoset{});
          pe.p.transitions.assign(c->n_arr(), MonotoneMap{});
          fiber_set.assign(c->n_obj(), false);
          trans_set.assign(c->n_arr(), false);
          have_base = true;
        } else if (key == "poset") {
          std::string n = ln.str();
          ln.done();
          if (!have_base) ln.fail("base must precede posets");
          cur_fiber = resolve(pe.p.base, true, n);
          if (fiber_set[cur_fiber]) ln.fail("duplicate poset for " + detail::quote(n));
          poset_elems.clear();
          poset_edges.clear();
          outer = Sect::Pseudo;
          sect = Sect::Poset;
        } else if (key == "transition") {
          std::string n = ln.str();
          ln.done();
          if (!have_base) ln.fail("base must precede transitions");
          cur_trans = resolve(pe.p.base, false, n);
          if (trans_set[cur_trans]) ln.fail("duplicate transition for " + detail::quote(n));
          int s = pe.p.base.src(cur_trans), t = pe.p.base.tgt(cur_trans);
          if (!fiber_set[s] || !fiber_set[t])
            ln.fail("posets of both endpoints must precede transition " + detail::quote(n));
          trans_map.values.assign(pe.p.fibers[t].size(), -1);
          trans_filled.assign(pe.p.fibers[t].size(), false);
          outer = Sect::Pseudo;
          sect = Sect::Transition;
        } else if (key == "end") {
          ln.done();
          if (!have_base) ln.fail("pseudofunctor section missing base");
          for (int o = 0; o < pe.p.base.n_obj(); ++o)
            if (!fiber_set[o])
              ln.fail("missing poset for " + detail::quote(pe.p.base.objects[o]));
          for (int a = 0; a < pe.p.base.n_arr(); ++a)
            if (!trans_set[a])
              ln.fail("missing transition for " + detail::quote(pe.p.base.arrows[a].id));
          m.pseudos.push_back(std::move(pe));
          sect = Sect::None;
        } else {
          ln.fail("unknown key " + detail::quote(key) + " in pseudofunctor section");
        }
        break;
      }
      case Sect::Poset: {
        auto elem_of = [&](const std::string& id) {
          for (size_t i = 0; i < poset_elems.size(); ++i)
            if (poset_elems[i] == id) return static_cast<int>(i);
          ln.fail("unknown poset element " + detail::quote(id));
        };
        if (key == "elem") {
          std::string id = ln.str();
          ln.done();
          for (const auto& e : poset_elems)
            if (e == id) ln.fail("duplicate poset element " + detail::quote(id));
          poset_elems.push_back(id);
        } else if (key == "leq") {
          std::string a = ln.str();
          ln.sym("<=");
          std::string b = ln.str();
          ln.done();
          poset_edges.emplace_back(elem_of(a), elem_of(b));
        } else if (key == "end") {
          ln.done();
          pe.p.fibers[cur_fiber] = make_poset(poset_elems, poset_edges);
          fiber_set[cur_fiber] = true;
          sect = outer;
        } else {
          ln.fail("unknown key " + detail::quote(key) + " in poset section");
        }
        break;
      }
      case Sect::Transition: {
        const FinPoset& dom = pe.p.fibers[pe.p.base.tgt(cur_trans)];
        const FinPoset& cod = pe.p.fibers[pe.p.base.src(cur_trans)];
        auto elem_of = [&](const FinPoset& p, const std::string& id) {
          for (int i = 0; i < p.size(); ++i)
            if (p.elems[i] == id) return i;
          ln.fail("unknown poset element " + detail::quote(id));
        };
        if (key == "map") {
          std::string a = ln.str();
          ln.sym("->");
          std::string b = ln.str();
          ln.done();
          int i = elem_of(dom, a);
          if (trans_filled[i]) ln.fail("duplicate image for " + detail::quote(a));
          trans_map.values[i] = elem_of(cod, b);
          trans_filled[i] = true;
        } else if (key == "end") {
          ln.done();
          for (int i = 0; i < dom.size(); ++i)
            if (!trans_filled[i]) ln.fail("no image for " + detail::quote(dom.elems[i]));
          pe.p.transitions[cur_trans] = trans_map;
          trans_set[cur_trans] = true;
          sect = outer;
        } else {
          ln.fail("unknown key " + detail::quote(key) + " in transition section");
        }
        break;
      }
    }
  }
  if (sect != Sect::None) throw ParseError(lineno + 1, 1, "unexpected end of file inside a section");
  return m;
}

inline ModelFile parse_model_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_model(buf.str());
}

inline std::string print_category(const FinCat& c) {
  using detail::quote;
  std::string out = "category " + quote(c.name) + "\n";
  for (const auto& o : c.objects) out += "  object " + quote(o) + "\n";
  for (const auto& a : c.arrows)
    out += "  arrow " + quote(a.id) + " : " + quote(a.src) + " -> " + quote(a.tgt) + "\n";
  for (int o = 0; o < c.n_obj(); ++o)
    if (c.id_arrow(o) >= 0)
      out += "  identity " + quote(c.objects[o]) + " = " + quote(c.arrows[c.id_arrow(o)].id) + "\n";
  for (int g = 0; g < c.n_arr(); ++g)
    for (int f = 0; f < c.n_arr(); ++f) {
      int gf = c.compose(g, f);
      if (gf >= 0)
        out += "  compose " + quote(c.arrows[g].id) + " . " + quote(c.arrows[f].id) + " = " +
               quote(c.arrows[gf].id) + "\n";
    }
  out += "end\n";
  return out;
}

inline std::string print_functor(const FunctorEntry& fe) {
  using detail::quote;
  const FunctorMap& u = fe.u;
  std::string out = "functor " + quote(u.name) + "\n";
  out += "  source " + quote(u.source.name) + "\n";
  out += "  target " + quote(u.target.name) + "\n";
  for (int o = 0; o < u.source.n_obj(); ++o)
    out += "  object " + quote(u.source.objects[o]) + " -> " +
           quote(u.target.objects[u.obj_map[o]]) + "\n";
  for (int a = 0; a < u.source.n_arr(); ++a)
    out += "  arrow " + quote(u.source.arrows[a].id) + " -> " +
           quote(u.target.arrows[u.arr_map[a]].id) + "\n";
  for (const auto& [flag, v] : fe.expects)
    out += "  expect " + quote(flag) + (v ? " true\n" : " false\n");
  out += "end\n";
  return out;
}

inline std::string print_pseudofunctor(const PseudoEntry& pe) {
  using detail::quote;
  const PosetPseudofunctor& p = pe.p;
  std::string out = "pseudofunctor " + quote(pe.name) + "\n";
  out += "  base " + quote(p.base.name) + "\n";
  for (int s = 0; s < p.base.n_obj(); ++s) {
    const FinPoset& q = p.fibers[s];
    out += "  poset " + quote(p.base.objects[s]) + "\n";
    for (const auto& e : q.elems) out += "    elem " + quote(e) + "\n";
    // emit the transitive reduction; closure is recomputed on parse
    for (int i = 0; i < q.size(); ++i)
      for (int j = 0; j < q.size(); ++j) {
        if (i == j || !q.le(i, j)) continue;
        bool covered = false;
        for (int k = 0; k < q.size() && !covered; ++k)
          if (k != i && k != j && q.le(i, k) && q.le(k, j)) covered = true;
        if (!covered)
          out += "    leq " + quote(q.elems[i]) + " <= " + quote(q.elems[j]) + "\n";
      }
    out += "  end\n";
  }
  for (int a = 0; a < p.base.n_arr(); ++a) {
    const FinPoset& dom = p.fibers[p.base.tgt(a)];
    const FinPoset& cod = p.fibers[p.base.src(a)];
    out += "  transition " + quote(p.base.arrows[a].id) + "\n";
    for (int i = 0; i < dom.size(); ++i)
      out += "    map " + quote(dom.elems[i]) + " -> " +
             quote(cod.elems[p.transitions[a](i)]) + "\n";
    out += "  end\n";
  }
  out += "end\n";
  return out;
}

inline std::string print_model(const ModelFile& m) {
  std::string out;
  for (const auto& c : m.categories) out += print_category(c);
  for (const auto& f : m.functors) out += print_functor(f);
  for (const auto& p : m.pseudos) out += print_pseudofunctor(p);
  return out;
}

/// Model file holding a functor together with its (distinct) endpoint
/// categories; the canonical on-disk form of an OverContext's data.
inline ModelFile model_of(const FunctorMap& u,
                          std::vector<std::pair<std::string, bool>> expects = {}) {
  ModelFile m;
  m.categories.push_back(u.source);
  if (u.target.name != u.source.name) m.categories.push_back(u.target);
  m.functors.push_back({u, std::move(expects)});
  return m;
}

inline ModelFile model_of(const std::string& name, const PosetPseudofunctor& p) {
  ModelFile m;
  m.categories.push_back(p.base);
  m.pseudos.push_back({name, p});
  return m;
}

/// Structural validation of every section; parse errors are already ruled
/// out, so this reports only law violations (associativity, functoriality,
/// monotonicity, ...).
inline ValidationReport validate_model(const ModelFile& m) {
  ValidationReport r;
  auto merge = [&](const std::string& where, const ValidationReport& sub) {
    for (const auto& v : sub.violations) r.add(v.code, where + ": " + v.message);
  };
  for (const auto& c : m.categories) merge("category " + c.name, validate_category(c));
  for (const auto& f : m.functors) merge("functor " + f.u.name, validate_functor(f.u));
  for (const auto& p : m.pseudos)
    merge("pseudofunctor " + p.name, validate_pseudofunctor(p.p));
  return r;
}

}  // namespace famfib

#endif  // FAMFIB_MODEL_IO_HPP
