#include <catch2/catch_amalgamated.hpp>

#include "famfib/corpus.hpp"

using namespace famfib;

namespace {

bool flag_of(const Classification& c, const std::string& key) {
  if (key == "faithful") return c.faithful;
  if (key == "prefibration") return c.prefibration;
  if (key == "fibration") return c.fibration;
  if (key == "pretopological") return c.pretopological;
  if (key == "topological") return c.topological;
  if (key == "e_functor") return c.e_functor;
  if (key == "m_functor") return c.m_functor;
  throw std::invalid_argument("unknown flag " + key);
}

void check_implications(const Classification& c, const std::string& tag) {
  INFO(tag);
  if (c.topological) REQUIRE(c.pretopological);
  if (c.topological) REQUIRE(c.fibration);
  if (c.pretopological) REQUIRE(c.prefibration);
  if (c.fibration) REQUIRE(c.prefibration);
  if (c.pretopological) REQUIRE(c.faithful);
  if (c.e_functor || c.m_functor) REQUIRE(c.faithful);
}

}  // namespace

TEST_CASE("classification of every corpus entry matches its expectations") {
  for (const auto& e : build_corpus(2)) {
    OverContext ctx(e.u);
    Classification c = classify(ctx);
    REQUIRE(c.exact);
    for (const auto& [key, want] : e.expected) {
      INFO(e.name << " flag " << key);
      REQUIRE(flag_of(c, key) == want);
    }
    check_implications(c, e.name);
    // failing entries explain themselves
    if (!c.topological) REQUIRE_FALSE(c.notes.empty());
  }
}

TEST_CASE("decision routes agree wherever they are exact") {
  for (const auto& e : build_corpus(2)) {
    OverContext ctx(e.u);
    Classification c = classify(ctx, false);  // settle() throws on disagreement
    if (c.exact) {
      INFO(e.name);
      REQUIRE(c.pretop_route_a == c.pretop_route_b);
      REQUIRE(c.top_route_a == c.top_route_b);
      REQUIRE(c.top_route_b == c.top_route_c);
      REQUIRE(c.top_route_c == c.top_route_d);
    }
  }
  for (std::uint32_t seed = 0; seed < 60; ++seed) {
    OverContext ctx(random_model(seed));
    Classification c = classify(ctx, false);
    check_implications(c, "seed " + std::to_string(seed));
    if (c.exact) {
      INFO("seed " << seed);
      REQUIRE(c.top_route_a == c.top_route_b);
      REQUIRE(c.top_route_b == c.top_route_c);
      REQUIRE(c.top_route_c == c.top_route_d);
    }
  }
}

TEST_CASE("a size bound never flips an exactly decided verdict") {
  OverContext ctx(build_fintop(build_finset(2)));
  Classification full = classify(ctx, false);
  Classification capped = classify(ctx, false, 1);
  REQUIRE(full.topological);
  REQUIRE(capped.topological == full.topological);
  REQUIRE(capped.pretopological == full.pretopological);
}

TEST_CASE("adjoint sections") {
  {
    OverContext ctx(build_fintop(build_finset(2)));
    AdjointWitness w = adjoint_witness(ctx);
    REQUIRE(w.right_adjoint_ok());  // indiscrete structures
    REQUIRE(w.left_adjoint_ok());   // discrete structures
    REQUIRE(ctx.u.source.objects[w.top_obj[ctx.u.target.object("2")]] == "2T0");
    REQUIRE(ctx.u.source.objects[w.bot_obj[ctx.u.target.object("2")]] == "2T3");
  }
  {
    FinSetData fs = build_finset(2);
    OverContext ctx(identity_functor(fs.cat));
    AdjointWitness w = adjoint_witness(ctx);
    REQUIRE(w.right_adjoint_ok());
    REQUIRE(w.left_adjoint_ok());
  }
  {
    for (const auto& e : build_corpus(2))
      if (e.name == "no_prefibration") {
        OverContext ctx(e.u);
        AdjointWitness w = adjoint_witness(ctx);
        REQUIRE_FALSE(w.right_adjoint_ok());
        REQUIRE_FALSE(w.left_adjoint_ok());
      }
  }
}

TEST_CASE("topological is self-dual, pretopological is not") {
  for (const auto& e : build_corpus(2)) {
    OverContext ctx(e.u);
    DualityReport r = self_duality_check(ctx);
    INFO(e.name);
    REQUIRE(r.ok);
    REQUIRE(r.top_fwd == e.expected.at("topological"));
    if (e.name == "no_left_adjoint") {
      // pretopological one way, not the other: the separating witness
      REQUIRE(r.pretop_fwd);
      REQUIRE_FALSE(r.pretop_bwd);
    }
  }
  for (std::uint32_t seed = 0; seed < 40; ++seed) {
    OverContext ctx(random_model(seed));
    INFO("seed " << seed);
    REQUIRE(self_duality_check(ctx).ok);
  }
}

TEST_CASE("property battery on the structured corpus") {
  for (const char* which : {"fintop", "finfilt"}) {
    FinSetData fs = build_finset(2);
    OverContext ctx(which == std::string("fintop") ? build_fintop(fs) : build_finfilt(fs));
    BatteryReport rep = theorem_battery(ctx);
    REQUIRE(rep.items.size() == 8);
    for (const auto& item : rep.items) {
      INFO(which << " item " << item.number << " (" << item.title << "): " << item.detail);
      REQUIRE(item.verdict == Verdict::PASS);
    }
  }
}

TEST_CASE("property battery flags the failing counterexamples") {
  for (const auto& e : build_corpus(2)) {
    if (e.expected.at("topological")) continue;
    OverContext ctx(e.u);
    BatteryReport rep = theorem_battery(ctx);
    INFO(e.name);
    REQUIRE_FALSE(rep.all_ok());
  }
}

TEST_CASE("base (co)limit creation and preservation") {
  FinSetData fs = build_finset(2);
  OverContext top(build_fintop(fs));
  REQUIRE(creates_and_preserves_limits(top));
  OverContext idc(identity_functor(fs.cat));
  REQUIRE(creates_and_preserves_limits(idc));
  for (const auto& e : build_corpus(2))
    if (e.name == "no_prefibration") {
      OverContext ctx(e.u);
      REQUIRE_FALSE(creates_and_preserves_limits(ctx));
    }
}
