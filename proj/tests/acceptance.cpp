// Acceptance gate: one pass/fail line per criterion, exit 0 iff all pass.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "famfib/cli.hpp"

using namespace famfib;

namespace {

int failures = 0;

void criterion(int n, const std::string& name, bool ok) {
  std::printf("%s criterion %2d: %s\n", ok ? "PASS" : "FAIL", n, name.c_str());
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

FinCat parallel_pair() {
  FinCat c;
  c.add_object("x");
  c.add_arrow("i", "x", "x");
  c.add_arrow("e", "x", "x");
  c.set_identity("x", "i");
  c.ensure_table();
  c.set_compose("i", "i", "i");
  c.set_compose("e", "i", "e");
  c.set_compose("i", "e", "e");
  c.set_compose("e", "e", "e");
  return c;
}

// --- criterion 1: validators, 20 single-axiom mutants -----------------------

bool run_validators(const std::vector<CorpusEntry>& corpus, const FinSetData& fs2) {
  for (const auto& e : corpus)
    if (!validate_category(e.u.source).ok() || !validate_category(e.u.target).ok() ||
        !validate_functor(e.u).ok())
      return false;
  if (!validate_pseudofunctor(counterexample_antichain_fiber()).ok()) return false;
  if (!validate_pseudofunctor(counterexample_no_adjoint()).ok()) return false;

  std::vector<std::function<ValidationReport()>> mutants;
  // category mutants
  mutants.push_back([] {  // identity.right
    FinCat c = parallel_pair();
    c.set_compose("e", "i", "i");
    return validate_category(c);
  });
  mutants.push_back([] {  // identity.left
    FinCat c = parallel_pair();
    c.set_compose("i", "e", "i");
    return validate_category(c);
  });
  mutants.push_back([] {  // associativity
    FinCat c;
    c.add_object("x");
    c.add_arrow("i", "x", "x");
    c.add_arrow("a", "x", "x");
    c.add_arrow("b", "x", "x");
    c.set_identity("x", "i");
    c.ensure_table();
    c.set_compose("i", "i", "i");
    for (const char* f : {"a", "b"}) {
      c.set_compose(f, "i", f);
      c.set_compose("i", f, f);
    }
    c.set_compose("a", "a", "b");
    c.set_compose("a", "b", "a");
    c.set_compose("b", "a", "i");
    c.set_compose("b", "b", "i");
    return validate_category(c);
  });
  mutants.push_back([&fs2] {  // compose.endpoints
    FinCat c = fs2.cat;
    c.set_compose("m12_0", "m21_00", "m21_00");
    return validate_category(c);
  });
  mutants.push_back([] {  // compose.missing
    FinCat c = parallel_pair();
    c.set_compose_idx(c.arrow("e"), c.arrow("e"), -1);
    return validate_category(c);
  });
  mutants.push_back([] {  // identity.missing
    FinCat c = parallel_pair();
    c.identity_of[0] = -1;
    return validate_category(c);
  });
  mutants.push_back([] {  // identity.endpoints
    FinCat c = thin_category("interval", {"s", "t"}, {{0, 1}});
    c.set_identity("s", "s>t");
    return validate_category(c);
  });
  mutants.push_back([] {  // compose.spurious
    FinCat c = thin_category("discrete2", {"a", "b"}, {});
    c.set_compose_idx(c.arrow("a>a"), c.arrow("b>b"), c.arrow("a>a"));
    return validate_category(c);
  });
  // functor mutants
  mutants.push_back([&fs2] {  // functor.endpoints (arrow image)
    FunctorMap u = identity_functor(fs2.cat);
    u.arr_map[fs2.cat.id_arrow(fs2.cat.object("0"))] = fs2.cat.arrow("m01_");
    return validate_functor(u);
  });
  mutants.push_back([&fs2] {  // functor.identity
    FunctorMap u = identity_functor(fs2.cat);
    u.arr_map[fs2.cat.id_arrow(fs2.cat.object("2"))] = fs2.cat.arrow("m22_10");
    return validate_functor(u);
  });
  mutants.push_back([&fs2] {  // functor.compose
    FunctorMap u;
    u.source = thin_category("chain3", {"a", "b", "c"}, {{0, 1}, {1, 2}});
    u.target = fs2.cat;
    u.obj_map = {fs2.cat.object("1"), fs2.cat.object("1"), fs2.cat.object("2")};
    u.arr_map.assign(u.source.n_arr(), -1);
    auto set = [&](const char* a, const char* m) { u.arr_map[u.source.arrow(a)] = fs2.cat.arrow(m); };
    set("a>a", "m11_0");
    set("b>b", "m11_0");
    set("c>c", "m22_01");
    set("a>b", "m11_0");
    set("b>c", "m12_0");
    set("a>c", "m12_1");  // != m12_0 . m11_0
    return validate_functor(u);
  });
  mutants.push_back([&fs2] {  // functor.maps
    FunctorMap u = identity_functor(fs2.cat);
    u.arr_map.pop_back();
    return validate_functor(u);
  });
  mutants.push_back([&fs2] {  // functor.range
    FunctorMap u = identity_functor(fs2.cat);
    u.arr_map[0] = 999;
    return validate_functor(u);
  });
  mutants.push_back([] {  // functor.endpoints (object image inconsistent)
    FinCat i = thin_category("interval", {"s", "t"}, {{0, 1}});
    FunctorMap u = identity_functor(i);
    u.obj_map[1] = 0;  // arrows into t now claim to land at s
    return validate_functor(u);
  });
  // pseudofunctor mutants
  mutants.push_back([] {  // pseudo.shape
    PosetPseudofunctor p = counterexample_no_adjoint();
    p.fibers.pop_back();
    return validate_pseudofunctor(p);
  });
  mutants.push_back([] {  // pseudo.transition (wrong domain size)
    PosetPseudofunctor p = counterexample_no_adjoint();
    p.transitions[p.base.arrow("s>t")].values.push_back(0);
    return validate_pseudofunctor(p);
  });
  mutants.push_back([] {  // pseudo.transition (out of range)
    PosetPseudofunctor p = counterexample_no_adjoint();
    p.transitions[p.base.arrow("s>t")].values[0] = 9;
    return validate_pseudofunctor(p);
  });
  mutants.push_back([] {  // pseudo.monotone
    PosetPseudofunctor p = counterexample_no_adjoint();
    p.transitions[p.base.arrow("s>t")] = MonotoneMap{{1, 0, 0, 0}};
    return validate_pseudofunctor(p);
  });
  mutants.push_back([] {  // pseudo.identity
    PosetPseudofunctor p = counterexample_no_adjoint();
    p.transitions[p.base.arrow("s>s")] = MonotoneMap{{0, 0}};
    return validate_pseudofunctor(p);
  });
  mutants.push_back([] {  // pseudo.compose
    PosetPseudofunctor q;
    q.base = thin_category("chain3", {"a", "b", "c"}, {{0, 1}, {1, 2}});
    q.fibers.assign(3, make_poset({"l", "h"}, {{0, 1}}));
    q.transitions.resize(q.base.n_arr());
    for (int s = 0; s < 3; ++s) q.transitions[q.base.id_arrow(s)] = MonotoneMap{{0, 1}};
    q.transitions[q.base.arrow("a>b")] = MonotoneMap{{0, 1}};
    q.transitions[q.base.arrow("b>c")] = MonotoneMap{{0, 1}};
    q.transitions[q.base.arrow("a>c")] = MonotoneMap{{0, 0}};
    return validate_pseudofunctor(q);
  });

  if (mutants.size() != 20) return false;
  for (auto& m : mutants)
    if (m().ok()) return false;
  return true;
}

// --- criterion 4: per-index double diagrams over fintop ---------------------

struct DoubleDiagramTally {
  long long cartesian_checked = 0, initial_checked = 0, mismatches = 0;
};

DoubleDiagramTally run_double_diagrams(const OverContext& ctx) {
  DoubleDiagramTally tally;
  const FinCat& T = ctx.u.source;
  const FinCat& S = ctx.u.target;
  for (int s = 0; s < S.n_obj(); ++s) {
    const int id_s = S.id_arrow(s);
    // every cartesian arrow g whose base arrow starts at s; its source is the
    // vertex the product leg lands on, its target the chosen object upstairs
    std::vector<int> tasks;
    for (int g = 0; g < T.n_arr(); ++g)
      if (S.src(ctx.u_arr(g)) == s && is_cartesian_arrow(ctx, g)) tasks.push_back(g);
    const int nt = static_cast<int>(tasks.size());
    for (Mask sub = 0; sub < (Mask(1) << nt); ++sub) {
      std::vector<int> gs;
      for (int i = 0; i < nt; ++i)
        if (sub >> i & 1) gs.push_back(tasks[i]);
      bool all_initial = true;
      for (int g : gs) all_initial = all_initial && is_initial_arrow(ctx, g);
      for (int X : ctx.objects_over(s)) {
        std::vector<int> legs, comps;
        bool have = true;
        for (int g : gs) {
          const auto& vs = ctx.hom_over(X, T.src(g), id_s);
          if (vs.empty()) {  // no vertical leg: the diagram does not exist
            have = false;
            break;
          }
          legs.push_back(vs[0]);
          comps.push_back(T.compose(g, vs[0]));
        }
        if (!have) continue;
        const bool cone = is_fiber_product(ctx, s, X, legs);
        Family comp{Orientation::source, X, comps};
        ++tally.cartesian_checked;
        if (is_u_cartesian(ctx, comp) != cone) ++tally.mismatches;
        if (all_initial) {
          ++tally.initial_checked;
          if (is_u_initial(ctx, comp) != cone) ++tally.mismatches;
        }
      }
    }
  }
  return tally;
}

}  // namespace

int main() {
  auto corpus = build_corpus(2);
  FinSetData fs2 = build_finset(2);
  OverContext fintop(build_fintop(fs2));
  OverContext finfilt(build_finfilt(fs2));

  // 1. validators accept the corpus and reject 20 single-axiom mutants (< 1 s)
  {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = run_validators(corpus, fs2);
    criterion(1, "validators accept the corpus and reject 20 mutants in under 1s",
              ok && seconds_since(t0) < 1.0);
  }

  // 2. finite sets: epi = strict epi over all families; the strict-epi
  //    collection satisfies I, C, U, S, F (< 30 s)
  {
    auto t0 = std::chrono::steady_clock::now();
    CatOracle o(fs2.cat);
    bool ok = true;
    for (int x = 0; x < fs2.cat.n_obj() && ok; ++x) {
      const int deg = static_cast<int>(o.into(x).size());
      for (Mask m = 0; m < (Mask(1) << deg) && ok; ++m)
        ok = o.is_epi(x, m) == o.is_strict_epi(x, m);
    }
    auto props = check_collection_properties(strict_epi_collection(o), fs2.cat, o);
    ok = ok && props.I && props.C && props.U && props.S && props.F && props.exact;
    criterion(2, "finite sets: epi families = strict epi families; collection has I,C,U,S,F",
              ok && seconds_since(t0) < 30.0);
  }

  // 3. strict epi class = u-final and u-surjective class, and the dual,
  //    exactly on both structured projections (< 2 min)
  {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    for (OverContext* ctx : {&fintop, &finfilt}) {
      auto e = strict_epi_equals_final_surjective(*ctx);
      auto m = strict_mono_equals_initial_injective(*ctx);
      ok = ok && e.equal && m.equal && e.n_strict == e.n_fs && e.n_strict > 0;
    }
    criterion(3, "strict epi = final+surjective and strict mono = initial+injective, exactly",
              ok && seconds_since(t0) < 120.0);
  }

  // 4. double diagrams over spaces: composite family cartesian (initial) iff
  //    the vertical legs form a fiber product, exhaustively
  {
    DoubleDiagramTally t = run_double_diagrams(fintop);
    criterion(4, "double diagrams: product-cone and cartesian/initial equivalences, exhaustively",
              t.mismatches == 0 && t.cartesian_checked > 100000 && t.initial_checked > 0);
  }

  // 5-7. classification over corpus + 200 seeded models: route agreement,
  //      pretopological implies faithful, topological self-duality
  {
    bool routes_ok = true, faithful_ok = true, dual_ok = true;
    auto visit = [&](const FunctorMap& u) {
      try {
        OverContext ctx(u);
        Classification c = classify(ctx, false);  // throws if exact routes disagree
        if (c.exact &&
            (c.pretop_route_a != c.pretop_route_b || c.top_route_a != c.top_route_b ||
             c.top_route_b != c.top_route_c || c.top_route_c != c.top_route_d))
          routes_ok = false;
        if (c.pretopological && !c.faithful) faithful_ok = false;
        if (!self_duality_check(ctx).ok) dual_ok = false;
      } catch (const std::logic_error&) {
        routes_ok = false;
      }
    };
    for (const auto& e : corpus) visit(e.u);
    for (std::uint32_t seed = 0; seed < 200; ++seed) visit(random_model(seed));
    criterion(5, "pretopological routes A/B and topological routes A/B/C/D agree (corpus + 200 seeds)",
              routes_ok);
    criterion(6, "every pretopological model is faithful (corpus + 200 seeds)", faithful_ok);
    criterion(7, "topological agrees on the opposite functor (corpus + 200 seeds)", dual_ok);
  }

  // 8. total projection topological iff complete-lattice fibers with adjoint
  //    transitions, on 60 pseudofunctors plus the two designed falsifiers
  {
    int trues = 0, falses = 0;
    bool ok = true;
    try {
      for (std::uint32_t seed = 0; seed < 60; ++seed)
        (total_topological_iff_fiber_adjoints(random_pseudofunctor(seed)) ? trues : falses) += 1;
      ok = ok && !total_topological_iff_fiber_adjoints(counterexample_antichain_fiber());
      ok = ok && !total_topological_iff_fiber_adjoints(counterexample_no_adjoint());
    } catch (const std::logic_error&) {
      ok = false;
    }
    criterion(8, "fiber criterion matches the total classification (60 models, both verdicts, 2 falsifiers)",
              ok && trues > 0 && falses > 0);
  }

  // 9. the eight-property battery on both structured projections, plus the
  //    indiscrete/discrete coincidence over the one-point set
  {
    bool ok = true;
    for (OverContext* ctx : {&fintop, &finfilt}) {
      BatteryReport rep = theorem_battery(*ctx);
      ok = ok && rep.items.size() == 8;
      for (const auto& item : rep.items) ok = ok && item.verdict == Verdict::PASS;
    }
    int one_top = fintop.u.target.object("1");
    ok = ok && top_object(fintop, one_top) == bot_object(fintop, one_top);
    int one_filt = finfilt.u.target.object("1");
    auto ft = top_object(finfilt, one_filt);
    auto fb = bot_object(finfilt, one_filt);
    ok = ok && ft.has_value() && fb.has_value() && *ft != *fb;
    criterion(9, "all eight battery properties hold on spaces and filters; point sections split as expected",
              ok);
  }

  // 10. Grothendieck round trips and fibration totals
  {
    bool ok = true;
    std::vector<PosetPseudofunctor> ps = {counterexample_antichain_fiber(),
                                          counterexample_no_adjoint()};
    for (std::uint32_t seed = 0; seed < 50; ++seed) ps.push_back(random_pseudofunctor(seed));
    for (const auto& p : ps) {
      OverContext ctx(total_category(p));
      ok = ok && is_fibration(ctx).value && ctx.faithful();
      ok = ok && pseudofunctor_equal_structure(p, extract_pseudofunctor(ctx));
    }
    for (OverContext* ctx : {&fintop, &finfilt}) {
      PosetPseudofunctor p = extract_pseudofunctor(*ctx);
      ok = ok && validate_pseudofunctor(p).ok() && total_matches(*ctx, p);
      OverContext rebuilt(total_category(p));
      ok = ok && is_fibration(rebuilt).value &&
           pseudofunctor_equal_structure(p, extract_pseudofunctor(rebuilt));
    }
    criterion(10, "extract/build round trips agree and every total category is a fibration", ok);
  }

  // 11. byte-identical classify and verify reports across two runs
  {
    namespace fs = std::filesystem;
    std::string dir = (fs::temp_directory_path() / "famfib_acceptance_corpus").string();
    bool ok = run_cli({"gen", "--dir", dir}).exit_code == 0;
    CliResult c1 = run_cli({"classify", dir + "/fintop.fam", "--routes", "--format", "machine"});
    CliResult c2 = run_cli({"classify", dir + "/fintop.fam", "--routes", "--format", "machine"});
    ok = ok && c1.exit_code == 0 && c1.exit_code == c2.exit_code && c1.report == c2.report &&
         !c1.report.empty();
    CliResult v1 = run_cli({"verify", dir + "/no_left_adjoint.fam", "--seeds", "40"});
    CliResult v2 = run_cli({"verify", dir + "/no_left_adjoint.fam", "--seeds", "40"});
    ok = ok && v1.exit_code == 0 && v1.exit_code == v2.exit_code && v1.report == v2.report &&
         !v1.report.empty();
    criterion(11, "classify and verify reports are byte-identical across repeated runs", ok);
  }

  std::printf("%s (%d criteria failed)\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
