#ifndef FAMFIB_CLI_HPP
#define FAMFIB_CLI_HPP

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "famfib/corpus.hpp"
#include "famfib/model_io.hpp"

/// Command dispatch. Everything is funneled through run_cli so reports can
/// be captured as strings and checked byte-for-byte for determinism.
/// Exit codes: 0 success, 1 property/classification failure, 2 input error.
namespace famfib {

struct CliResult {
  int exit_code = 0;
  std::string report;
};

namespace detail {

inline std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

inline const char* bs(bool b) { return b ? "true" : "false"; }

inline std::optional<bool> classification_flag(const Classification& c, const std::string& n) {
  if (n == "faithful") return c.faithful;
  if (n == "prefibration") return c.prefibration;
  if (n == "fibration") return c.fibration;
  if (n == "pretopological") return c.pretopological;
  if (n == "topological") return c.topological;
  if (n == "e_functor") return c.e_functor;
  if (n == "m_functor") return c.m_functor;
  return std::nullopt;
}

inline void print_classification(std::ostream& out, const std::string& name,
                                 const Classification& c, bool routes,
                                 const std::string& format) {
  if (format == "machine") {
    out << "functor=" << name << "\n";
    out << "mode=" << (c.exact ? "EXACT" : "BOUNDED") << "\n";
    out << "faithful=" << bs(c.faithful) << "\n";
    out << "prefibration=" << bs(c.prefibration) << "\n";
    out << "fibration=" << bs(c.fibration) << "\n";
    out << "pretopological=" << bs(c.pretopological) << "\n";
    out << "topological=" << bs(c.topological) << "\n";
    out << "e_functor=" << bs(c.e_functor) << "\n";
    out << "m_functor=" << bs(c.m_functor) << "\n";
    if (routes) {
      out << "pretopological.route.a=" << bs(c.pretop_route_a) << "\n";
      out << "pretopological.route.b=" << bs(c.pretop_route_b) << "\n";
      out << "topological.route.a=" << bs(c.top_route_a) << "\n";
      out << "topological.route.b=" << bs(c.top_route_b) << "\n";
      out << "topological.route.c=" << bs(c.top_route_c) << "\n";
      out << "topological.route.d=" << bs(c.top_route_d) << "\n";
    }
    return;
  }
  out << "functor: " << name << "\n";
  out << "mode: " << (c.exact ? "EXACT" : "BOUNDED (a stated family-size bound was applied)")
      << "\n";
  out << "faithful: " << bs(c.faithful) << "\n";
  out << "prefibration: " << bs(c.prefibration) << "\n";
  out << "fibration: " << bs(c.fibration) << "\n";
  out << "pretopological: " << bs(c.pretopological);
  if (routes)
    out << " (routes A=" << bs(c.pretop_route_a) << " B=" << bs(c.pretop_route_b) << ")";
  out << "\n";
  out << "topological: " << bs(c.topological);
  if (routes)
    out << " (routes A=" << bs(c.top_route_a) << " B=" << bs(c.top_route_b)
        << " C=" << bs(c.top_route_c) << " D=" << bs(c.top_route_d) << ")";
  out << "\n";
  out << "e-functor: " << bs(c.e_functor) << "\n";
  out << "m-functor: " << bs(c.m_functor) << "\n";
  for (const auto& n : c.notes) out << "note: " << n << "\n";
}

/// Shared preamble of the model-consuming commands: parse, then validate.
/// Returns exit code 0 if the model is usable.
inline int load_model(const std::string& path, std::ostream& out, ModelFile& m) {
  try {
    m = parse_model_file(path);
  } catch (const ParseError& e) {
    out << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    out << "error: " << e.what() << "\n";
    return 2;
  }
  auto rep = validate_model(m);
  if (!rep.ok()) {
    for (const auto& v : rep.violations) out << v.code << ": " << v.message << "\n";
    return 1;
  }
  return 0;
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline int cmd_validate(const std::string& path, std::ostream& out) {
  ModelFile m;
  try {
    m = parse_model_file(path);
  } catch (const ParseError& e) {
    out << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    out << "error: " << e.what() << "\n";
    return 2;
  }
  auto rep = validate_model(m);
  if (!rep.ok()) {
    for (const auto& v : rep.violations) out << v.code << ": " << v.message << "\n";
    out << "INVALID (" << rep.violations.size() << " violations)\n";
    return 1;
  }
  out << "OK (" << m.categories.size() << " categories, " << m.functors.size()
      << " functors, " << m.pseudos.size() << " pseudofunctors)\n";
  return 0;
}

inline int cmd_classify(const std::string& path, int bound, bool routes,
                        const std::string& format, std::ostream& out) {
  ModelFile m;
  if (int rc = detail::load_model(path, out, m)) return rc;
  if (m.functors.empty()) {
    out << "error: no functor section in " << path << "\n";
    return 2;
  }
  bool first = true;
  for (const auto& fe : m.functors) {
    if (!first) out << "\n";
    first = false;
    OverContext ctx(fe.u);
    Classification c = classify(ctx, true, bound);
    detail::print_classification(out, fe.u.name, c, routes, format);
  }
  return 0;
}

inline int cmd_witness(const std::string& path, const std::string& query,
                       const std::string& object_id, const std::string& anchor_id,
                       const std::string& arrows_csv, const std::string& against_csv,
                       std::ostream& out) {
  ModelFile m;
  if (int rc = detail::load_model(path, out, m)) return rc;
  if (m.functors.empty()) {
    out << "error: no functor section in " << path << "\n";
    return 2;
  }
  OverContext ctx(m.functors.front().u);
  const FinCat& T = ctx.u.source;
  const FinCat& S = ctx.u.target;

  if (query == "top" || query == "bot") {
    if (object_id.empty()) {
      out << "error: --object is required for the " << query << " query\n";
      return 2;
    }
    if (!S.has_object(object_id)) {
      out << "error: unknown base object " << object_id << "\n";
      return 2;
    }
    int s = S.object(object_id);
    auto w = query == "top" ? top_object(ctx, s) : bot_object(ctx, s);
    if (!w) {
      out << "no witness\n";
      return 1;
    }
    long long checked = 0;
    for (int y = 0; y < T.n_obj(); ++y)
      checked += query == "top" ? ctx.base().hom_list(ctx.u_obj(y), s).size()
                                : ctx.base().hom_list(s, ctx.u_obj(y)).size();
    out << query << " object over " << object_id << ": " << T.objects[*w] << "\n";
    out << "verified: " << checked << " unique-lift conditions, all singletons\n";
    return 0;
  }

  if (query == "cartesian-family" || query == "initial-family") {
    if (anchor_id.empty() || arrows_csv.empty()) {
      out << "error: --anchor and --arrows are required for the " << query << " query\n";
      return 2;
    }
    if (!S.has_object(anchor_id)) {
      out << "error: unknown base object " << anchor_id << "\n";
      return 2;
    }
    int s = S.object(anchor_id);
    std::vector<int> base_arrows;
    for (const auto& a : detail::split_csv(arrows_csv)) {
      if (!S.has_arrow(a)) {
        out << "error: unknown base arrow " << a << "\n";
        return 2;
      }
      int idx = S.arrow(a);
      if (S.src(idx) != s) {
        out << "error: base arrow " << a << " does not start at " << anchor_id << "\n";
        return 2;
      }
      base_arrows.push_back(idx);
    }
    const bool want_initial = query == "initial-family";
    for (int X : ctx.objects_over(s)) {
      Family f{Orientation::source, X, std::vector<int>(base_arrows.size(), -1)};
      std::function<bool(size_t)> rec = [&](size_t i) -> bool {
        if (i == base_arrows.size())
          return want_initial ? is_u_initial(ctx, f) : is_u_cartesian(ctx, f);
        for (int a = 0; a < T.n_arr(); ++a) {
          if (T.src(a) != X || ctx.u_arr(a) != base_arrows[i]) continue;
          f.members[i] = a;
          if (rec(i + 1)) return true;
        }
        return false;
      };
      if (rec(0)) {
        out << (want_initial ? "initial" : "cartesian") << " family anchored at "
            << T.objects[X] << ":\n";
        for (size_t i = 0; i < f.members.size(); ++i)
          out << "  " << T.arrows[f.members[i]].id << " : " << T.objects[X] << " -> "
              << T.arrows[f.members[i]].tgt << "  over " << S.arrows[base_arrows[i]].id
              << "\n";
        out << "verified: unique factorization against every "
            << (want_initial ? "lift of a factoring base family" : "vertical competitor")
            << "\n";
        return 0;
      }
    }
    out << "no witness\n";
    return 1;
  }

  if (query == "mediator") {
    if (anchor_id.empty() || arrows_csv.empty() || against_csv.empty()) {
      out << "error: --anchor, --arrows and --against are required for the mediator query\n";
      return 2;
    }
    if (!T.has_object(anchor_id)) {
      out << "error: unknown object " << anchor_id << "\n";
      return 2;
    }
    int X = T.object(anchor_id);
    auto qs = detail::split_csv(arrows_csv);
    auto gs = detail::split_csv(against_csv);
    if (qs.size() != gs.size() || qs.empty()) {
      out << "error: --arrows and --against must list equally many arrows\n";
      return 2;
    }
    std::vector<int> q, g;
    for (const auto& id : qs) {
      if (!T.has_arrow(id) || T.tgt(T.arrow(id)) != X) {
        out << "error: " << id << " is not an arrow into " << anchor_id << "\n";
        return 2;
      }
      q.push_back(T.arrow(id));
    }
    int Y = -1;
    for (size_t i = 0; i < gs.size(); ++i) {
      if (!T.has_arrow(gs[i])) {
        out << "error: unknown arrow " << gs[i] << "\n";
        return 2;
      }
      int a = T.arrow(gs[i]);
      if (T.src(a) != T.src(q[i]) || (Y >= 0 && T.tgt(a) != Y)) {
        out << "error: " << gs[i] << " is not parallel to the family\n";
        return 2;
      }
      Y = T.tgt(a);
      g.push_back(a);
    }
    std::vector<int> found;
    for (int h : hom(T, X, Y)) {
      bool all = true;
      for (size_t i = 0; i < q.size() && all; ++i) all = T.compose(h, q[i]) == g[i];
      if (all) found.push_back(h);
    }
    if (found.size() != 1) {
      out << "no witness (" << found.size() << " mediators)\n";
      return 1;
    }
    out << "mediator: " << T.arrows[found[0]].id << " : " << anchor_id << " -> "
        << T.objects[Y] << "\n";
    out << "verified: h . q_i = g_i for all " << q.size() << " members, uniquely\n";
    return 0;
  }

  out << "error: unknown query " << query << "\n";
  return 2;
}

// ---------------------------------------------------------------------------

namespace detail {

struct VerifyTally {
  std::ostream& out;
  int failures = 0;
  void check(bool ok, const std::string& what, const std::string& witness = "") {
    if (ok) {
      out << "PASS " << what << "\n";
    } else {
      ++failures;
      out << "FAIL " << what;
      if (!witness.empty()) out << ": " << witness;
      out << "\n";
    }
  }
};

inline void verify_entry(VerifyTally& t, const std::string& name, const FunctorMap& u,
                         const std::map<std::string, bool>& expected, bool deep) {
  t.check(validate_category(u.source).ok() && validate_category(u.target).ok() &&
              validate_functor(u).ok(),
          name + ": category and functor laws");
  OverContext ctx(u);
  bool need_em = expected.count("e_functor") || expected.count("m_functor");
  Classification c = classify(ctx, need_em);
  for (const auto& [flag, want] : expected) {
    auto got = classification_flag(c, flag);
    t.check(got.has_value() && *got == want, name + ": expected " + flag + "=" + bs(want),
            got ? std::string("classified ") + bs(*got) : "unknown flag");
  }
  DualityReport d = self_duality_check(ctx);
  t.check(d.ok, name + ": pretopological and topological are self-dual");
  t.check(!c.pretopological || c.faithful, name + ": pretopological implies faithful");
  if (deep) {
    BatteryReport b = theorem_battery(ctx);
    for (const auto& item : b.items) {
      if (item.verdict == Verdict::SKIPPED) {
        t.out << "SKIP " << name << ": " << item.title << " (" << item.detail << ")\n";
        continue;
      }
      t.check(item.verdict == Verdict::PASS, name + ": " + item.title, item.detail);
    }
  }
}

}  // namespace detail

inline int cmd_verify(const std::string& path, bool corpus, int seeds, unsigned seed0,
                      std::ostream& out) {
  detail::VerifyTally t{out};
  if (corpus) {
    for (const auto& e : build_corpus(2)) {
      bool deep = e.name == "fintop" || e.name == "finfilt";
      std::map<std::string, bool> expected(e.expected.begin(), e.expected.end());
      detail::verify_entry(t, e.name, e.u, expected, deep);
    }
    // the two designed falsifying pseudofunctors, both sides false
    try {
      t.check(!total_topological_iff_fiber_adjoints(counterexample_antichain_fiber()),
              "antichain fiber: total projection is not topological");
      t.check(!total_topological_iff_fiber_adjoints(counterexample_no_adjoint()),
              "adjoint-free transition: total projection is not topological");
    } catch (const std::logic_error& e) {
      t.check(false, "pseudofunctor equivalence", e.what());
    }
  }
  if (!path.empty()) {
    ModelFile m;
    if (int rc = detail::load_model(path, out, m)) return rc;
    if (m.functors.empty() && m.pseudos.empty()) {
      out << "error: nothing to verify in " << path << "\n";
      return 2;
    }
    for (const auto& fe : m.functors) {
      std::map<std::string, bool> expected;
      for (const auto& [flag, v] : fe.expects) {
        Classification probe;
        if (!detail::classification_flag(probe, flag)) {
          out << "error: unknown expected flag " << flag << " in functor " << fe.u.name
              << "\n";
          return 2;
        }
        expected[flag] = v;
      }
      detail::verify_entry(t, fe.u.name, fe.u, expected, false);
    }
    for (const auto& pe : m.pseudos) {
      try {
        bool v = total_topological_iff_fiber_adjoints(pe.p);
        t.check(true, pe.name + ": fiber criterion matches the total classification (" +
                          std::string(detail::bs(v)) + ")");
      } catch (const std::logic_error& e) {
        t.check(false, pe.name + ": fiber criterion matches the total classification",
                e.what());
      }
    }
  }
  for (int i = 0; i < seeds; ++i) {
    unsigned s = seed0 + static_cast<unsigned>(i);
    std::string name = "seed " + std::to_string(s);
    try {
      FunctorMap u = random_model(s);
      bool valid = validate_category(u.source).ok() && validate_category(u.target).ok() &&
                   validate_functor(u).ok();
      t.check(valid, name + ": generated model satisfies the laws");
      if (!valid) continue;
      OverContext ctx(u);
      Classification c = classify(ctx, false);
      t.check(true, name + ": decision routes agree");
      t.check(!c.pretopological || c.faithful, name + ": pretopological implies faithful");
      t.check(self_duality_check(ctx).ok, name + ": self-duality");
      total_topological_iff_fiber_adjoints(random_pseudofunctor(s));
      t.check(true, name + ": pseudofunctor fiber criterion agrees");
    } catch (const std::logic_error& e) {
      t.check(false, name + ": internal agreement", e.what());
    }
  }
  if (t.failures == 0 && !corpus && path.empty() && seeds == 0) {
    out << "error: nothing to verify (use --corpus, --seeds or a model file)\n";
    return 2;
  }
  out << (t.failures == 0 ? "VERIFIED" : "FAILED") << " (" << t.failures << " failures)\n";
  return t.failures == 0 ? 0 : 1;
}

// ---------------------------------------------------------------------------

inline int cmd_groth(const std::string& mode, const std::string& path, std::ostream& out) {
  ModelFile m;
  if (int rc = detail::load_model(path, out, m)) return rc;
  if (mode == "build") {
    if (m.pseudos.empty()) {
      out << "error: no pseudofunctor section in " << path << "\n";
      return 2;
    }
    const PseudoEntry& pe = m.pseudos.front();
    FunctorMap u = total_category(pe.p);
    u.name = pe.name + ".projection";
    auto rep = validate_category(u.source);
    auto frep = validate_functor(u);
    if (!rep.ok() || !frep.ok()) {
      out << rep.to_string() << frep.to_string();
      return 1;
    }
    out << print_model(model_of(u));
    return 0;
  }
  if (mode == "extract") {
    if (m.functors.empty()) {
      out << "error: no functor section in " << path << "\n";
      return 2;
    }
    const FunctorEntry& fe = m.functors.front();
    OverContext ctx(fe.u);
    PosetPseudofunctor p;
    try {
      p = extract_pseudofunctor(ctx);
    } catch (const std::invalid_argument& e) {
      out << "cannot extract: " << e.what() << "\n";
      return 1;
    }
    auto rep = validate_pseudofunctor(p);
    if (!rep.ok()) {
      out << rep.to_string();
      return 1;
    }
    out << print_model(model_of(fe.u.name + ".pseudofunctor", p));
    return 0;
  }
  out << "error: groth mode must be build or extract\n";
  return 2;
}

/// Default corpus output directory; FAMFIB_CORPUS_DIR overrides it.
inline std::string corpus_dir_default() {
  if (const char* env = std::getenv("FAMFIB_CORPUS_DIR")) return env;
  return "corpus-v1";
}

inline int cmd_gen(const std::string& dir_flag, std::ostream& out) {
  namespace fs = std::filesystem;
  std::string dir = dir_flag.empty() ? corpus_dir_default() : dir_flag;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    out << "error: cannot create " << dir << ": " << ec.message() << "\n";
    return 2;
  }
  auto emit = [&](const std::string& name, const std::string& text) -> bool {
    std::string p = dir + "/" + name;
    std::ofstream f(p, std::ios::binary);
    if (!f) {
      out << "error: cannot write " << p << "\n";
      return false;
    }
    f << text;
    out << "wrote " << p << "\n";
    return true;
  };
  for (const auto& e : build_corpus(2)) {
    std::vector<std::pair<std::string, bool>> expects(e.expected.begin(), e.expected.end());
    if (!emit(e.name + ".fam", print_model(model_of(e.u, std::move(expects))))) return 2;
  }
  if (!emit("pf_antichain_fiber.fam",
            print_model(model_of("antichain_fiber", counterexample_antichain_fiber()))))
    return 2;
  if (!emit("pf_no_left_adjoint.fam",
            print_model(model_of("no_left_adjoint", counterexample_no_adjoint()))))
    return 2;
  return 0;
}

// ---------------------------------------------------------------------------

inline CliResult run_cli(std::vector<std::string> args) {
  std::ostringstream out;
  CLI::App app{"verification engine for finite categories over a base: families, "
               "fibrations and topological functors"};
  app.require_subcommand(1);

  std::string path, format = "text", query, object_id, anchor, arrows_csv, against_csv;
  std::string dir, mode;
  int bound = -1, seeds = 0;
  unsigned seed = 0;
  bool routes = false, corpus = false;

  auto* v = app.add_subcommand("validate", "check the laws of every section of a model file");
  v->add_option("path", path, "model file")->required();

  auto* c = app.add_subcommand("classify", "classify the functor of a model file");
  c->add_option("path", path, "model file")->required();
  c->add_option("--bound", bound, "cap the family size searched (EXACT becomes BOUNDED)");
  c->add_flag("--routes", routes, "show the per-route verdicts");
  c->add_option("--format", format, "text or machine")
      ->check(CLI::IsMember({"text", "machine"}));

  auto* w = app.add_subcommand("witness", "exhibit a created family, section object or mediator");
  w->add_option("path", path, "model file")->required();
  w->add_option("--query", query, "cartesian-family, initial-family, top, bot or mediator")
      ->required()
      ->check(CLI::IsMember({"cartesian-family", "initial-family", "top", "bot", "mediator"}));
  w->add_option("--object", object_id, "base object (top/bot)");
  w->add_option("--anchor", anchor, "base object of the family, or mediator target object");
  w->add_option("--arrows", arrows_csv, "comma-separated arrow ids");
  w->add_option("--against", against_csv, "comma-separated arrow ids (mediator)");

  auto* vf = app.add_subcommand("verify", "run the theorem suites");
  vf->add_option("path", path, "model file with expect lines");
  vf->add_flag("--corpus", corpus, "verify the built-in corpus");
  vf->add_option("--seeds", seeds, "also verify this many seeded random models");
  vf->add_option("--seed", seed, "first seed of the range");
  vf->add_option("--format", format, "text or machine")
      ->check(CLI::IsMember({"text", "machine"}));

  auto* g = app.add_subcommand("groth", "build a total category or extract a pseudofunctor");
  g->add_option("mode", mode, "build or extract")
      ->required()
      ->check(CLI::IsMember({"build", "extract"}));
  g->add_option("path", path, "model file")->required();

  auto* gen = app.add_subcommand("gen", "emit the corpus as model files");
  gen->add_option("--dir", dir, "output directory (default FAMFIB_CORPUS_DIR or corpus-v1)");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return {0, out.str()};
  } catch (const CLI::ParseError& e) {
    out << "error: " << e.what() << "\n";
    return {2, out.str()};
  }

  int rc = 2;
  try {
    if (app.got_subcommand(v)) rc = cmd_validate(path, out);
    if (app.got_subcommand(c)) rc = cmd_classify(path, bound, routes, format, out);
    if (app.got_subcommand(w))
      rc = cmd_witness(path, query, object_id, anchor, arrows_csv, against_csv, out);
    if (app.got_subcommand(vf)) rc = cmd_verify(path, corpus, seeds, seed, out);
    if (app.got_subcommand(g)) rc = cmd_groth(mode, path, out);
    if (app.got_subcommand(gen)) rc = cmd_gen(dir, out);
  } catch (const std::logic_error& e) {
    out << "internal agreement failure: " << e.what() << "\n";
    rc = 1;
  } catch (const std::exception& e) {
    out << "error: " << e.what() << "\n";
    rc = 2;
  }
  return {rc, out.str()};
}

}  // namespace famfib

#endif  // FAMFIB_CLI_HPP
