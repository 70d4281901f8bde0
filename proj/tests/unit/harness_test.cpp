#include <gtest/gtest.h>

#include "freshml/error.hpp"
#include "freshml/harness.hpp"
#include "freshml/lambda.hpp"
#include "freshml/machine.hpp"
#include "freshml/nominal.hpp"
#include "freshml/program.hpp"
#include "freshml/typecheck.hpp"
#include "test_support.hpp"

using namespace freshml;

namespace {

Atom A(std::uint32_t i) { return Atom{i}; }
Expr E(const char* text) { return parse_expr(text); }
Value V(const char* text) { return parse_value(text); }
Type T(const char* text) { return parse_type(text); }

const Signature& lam() {
  static Signature sig = lambda_signature();
  return sig;
}

const Signature& lam_ord() {
  static Signature sig = lambda_signature(make_registry({"eq", "ord"}));
  return sig;
}

CiuOptions opts(std::size_t trials, std::uint64_t seed = 1) {
  CiuOptions o;
  o.trials = trials;
  o.seed = seed;
  o.fuel = 2000;
  return o;
}

TEST(GenStack, WellTypedOverWorld) {
  Rng rng(61);
  World w{A(0), A(1), A(2)};
  for (int i = 0; i < 1000; ++i) {
    StackGenSpec spec;
    spec.argument = gen_type(lam(), rng, 2);
    spec.world = w;
    spec.seed = rng();
    auto [f, result] = gen_stack(lam(), spec);
    EXPECT_TRUE(check_stack(lam(), {}, f, spec.argument) == result);
    EXPECT_LE(f.depth(), spec.max_depth);
    for (const Frame& fr : f.frames()) EXPECT_TRUE(is_subset(atoms_of(fr.body), w));
  }
}

TEST(GenStack, DepthZeroIsIdentity) {
  StackGenSpec spec;
  spec.argument = Type::atm();
  spec.world = {A(0)};
  spec.max_depth = 0;
  auto [f, result] = gen_stack(lam(), spec);
  EXPECT_TRUE(f.empty());
  EXPECT_TRUE(result == Type::atm());
}

TEST(GenStack, DeterministicPerSeed) {
  StackGenSpec spec;
  spec.argument = T("term bnd");
  spec.world = {A(0), A(1)};
  spec.seed = 5;
  auto a = gen_stack(lam(), spec), b = gen_stack(lam(), spec);
  EXPECT_EQ(print(stack_apply(a.first, E("()"))), print(stack_apply(b.first, E("()"))));
}

// Some sampled stack at atm tells #a0 from #a1 (the F_a pattern does).
TEST(GenStack, SomeStackSeparatesAtoms) {
  Signature sig;
  bool found = false;
  for (std::uint64_t seed = 0; seed < 300 && !found; ++seed) {
    StackGenSpec spec;
    spec.argument = Type::atm();
    spec.world = {A(0), A(1)};
    spec.seed = seed;
    auto [f, _] = gen_stack(sig, spec);
    State s{A(0), A(1)};
    Outcome x = run(sig, Configuration{s, f, E("#a0")}, 500);
    Outcome y = run(sig, Configuration{s, f, E("#a1")}, 500);
    found = x.terminated() != y.terminated();
  }
  EXPECT_TRUE(found);
}

TEST(Ciu, RemarkDistinguished) {
  Signature sig;
  World w{A(0), A(1)};
  CiuVerdict v = ciu_test(sig, w, E("fun(f (x : atm) : atm bnd = <#a0>x)"),
                          E("fun(f (x : atm) : atm bnd = <#a1>x)"), T("atm -> atm bnd"), opts(500));
  EXPECT_EQ(v.kind, CiuVerdict::Kind::Distinguished) << v.to_json().dump();
  EXPECT_EQ(v.label(), "Distinguished");
}

TEST(Ciu, Reflexive) {
  Rng rng(62);
  World w{A(0), A(1)};
  for (int i = 0; i < 20; ++i) {
    Type t = gen_type(lam(), rng, 2);
    Expr e = gen_expr(lam(), rng, {}, t, w);
    CiuVerdict v = ciu_test(lam(), w, e, e, t, opts(50, i));
    EXPECT_NE(v.kind, CiuVerdict::Kind::Distinguished) << print(e);
  }
}

TEST(Ciu, BindingsUpToAlpha) {
  Signature sig;
  World w{A(0), A(1)};
  CiuOptions o = opts(2000);
  EXPECT_NE(ciu_test(sig, w, E("<#a0>#a0"), E("<#a1>#a1"), T("atm bnd"), o).kind,
            CiuVerdict::Kind::Distinguished);
  EXPECT_EQ(ciu_test(sig, w, E("<#a0>#a0"), E("<#a1>#a0"), T("atm bnd"), o).kind,
            CiuVerdict::Kind::Distinguished);
}

TEST(Ciu, CounterexampleReplaysAndIsSymmetric) {
  Signature sig;
  World w{A(0), A(1)};
  Expr l = E("<#a0>#a0"), r = E("<#a1>#a0");
  CiuOptions o = opts(500, 3);
  CiuVerdict v = ciu_test(sig, w, l, r, T("atm bnd"), o);
  ASSERT_TRUE(v.counterexample);
  const auto& c = *v.counterexample;
  CiuTrial t = ciu_trial(sig, w, l, r, T("atm bnd"), o, c.trial);
  EXPECT_EQ(t.state, c.state);
  Outcome x = run(sig, Configuration{t.state, t.stack, l}, o.fuel);
  Outcome y = run(sig, Configuration{t.state, t.stack, r}, o.fuel);
  EXPECT_NE(x.terminated(), y.terminated());
  EXPECT_TRUE(x.same_verdict(c.left));
  EXPECT_TRUE(y.same_verdict(c.right));
  EXPECT_TRUE(is_subset(w, c.state.world()));

  CiuVerdict back = ciu_test(sig, w, r, l, T("atm bnd"), o);
  EXPECT_EQ(back.kind, CiuVerdict::Kind::Distinguished);
  EXPECT_EQ(back.counterexample->trial, c.trial);
}

TEST(Ciu, JsonCarriesBudget) {
  Signature sig;
  CiuVerdict v = ciu_test(sig, {A(0)}, E("#a0"), E("#a0"), Type::atm(), opts(30, 9));
  auto j = v.to_json();
  EXPECT_EQ(j["verdict"], v.label());
  EXPECT_EQ(j["trials"], 30);
  EXPECT_EQ(j["fuel"], 2000);
  EXPECT_EQ(j["seed"], 9);
}

TEST(Ciu, DivergenceVsValueDistinguished) {
  Signature sig;
  CiuVerdict v = ciu_test(sig, {}, diverge(Type::unit()), E("()"), Type::unit(), opts(20));
  EXPECT_EQ(v.kind, CiuVerdict::Kind::Distinguished);
  EXPECT_EQ(v.counterexample->trial, 0u);
}

TEST(Ciu, BothDivergingIsInconclusive) {
  Signature sig;
  CiuVerdict v = ciu_test(sig, {}, diverge(Type::unit()), diverge(Type::unit()), Type::unit(), opts(20));
  EXPECT_EQ(v.kind, CiuVerdict::Kind::Inconclusive);
  EXPECT_EQ(v.inconclusive, 20u);
}

TEST(OpenCiu, Examples) {
  Signature sig;
  TypingEnv env{{"x", Type::atm()}, {"y", Type::unit()}};
  World w{A(0)};
  CiuOptions o = opts(200);
  EXPECT_NE(open_ciu_test(sig, env, w, E("x"), E("x"), Type::atm(), o).kind, CiuVerdict::Kind::Distinguished);
  EXPECT_NE(open_ciu_test(sig, env, w, E("let z = (x, y) in fst z"), E("x"), Type::atm(), o).kind,
            CiuVerdict::Kind::Distinguished);
  EXPECT_EQ(open_ciu_test(sig, env, w, E("x"), E("#a0"), Type::atm(), o).kind, CiuVerdict::Kind::Distinguished);
}

TEST(Extensionality, Examples) {
  Signature sig;
  World w{A(0), A(1)};
  ExtensionalityReport same = test_extensionality_bind(sig, w, A(0), V("#a0"), A(1), V("#a1"), Type::atm(), opts(300));
  EXPECT_TRUE(same.consistent);
  EXPECT_TRUE(same.affine_only);
  EXPECT_NE(same.bindings.kind, CiuVerdict::Kind::Distinguished);
  EXPECT_NE(same.bodies.kind, CiuVerdict::Kind::Distinguished);

  World w2{A(0), A(1), A(2)};
  ExtensionalityReport diff = test_extensionality_bind(sig, w2, A(0), V("#a0"), A(1), V("#a2"), Type::atm(), opts(300));
  EXPECT_TRUE(diff.consistent);
  EXPECT_EQ(diff.bodies.kind, CiuVerdict::Kind::Distinguished);
  EXPECT_EQ(diff.bindings.kind, CiuVerdict::Kind::Distinguished);
}

TEST(Conjecture, WitnessHolds) {
  CiuOptions o = opts(200);
  o.fuel = 10000;
  ConjectureReport r = test_example_conjecture(lam_ord(), o);
  EXPECT_TRUE(r.witness_holds);
  EXPECT_TRUE(r.v_prime_run.terminated());
  EXPECT_EQ(r.v_run.kind, Outcome::Kind::FuelExhausted);
  EXPECT_EQ(r.to_json()["conjecture_label"], "CONJECTURE");
}

TEST(Conjecture, NeedsOrd) {
  try {
    test_example_conjecture(lam(), opts(10));
    ADD_FAILURE() << "no error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownObservation);
  }
}

TEST(Representation, SmallSample) {
  CiuOptions o = opts(300, 4);
  RepresentationReport r = test_correctness_of_representation(lam(), T("term"), 12, o);
  EXPECT_EQ(r.pairs, 12u);
  EXPECT_TRUE(r.violations.empty()) << r.to_json().dump(2);
  EXPECT_GT(r.alpha_equivalent, 0u);
  EXPECT_LT(r.alpha_equivalent, 12u);
  // non-equivalent pairs are also run through ciu; most get separated
  EXPECT_GT(r.distinguished_by_ciu, 0u);
  EXPECT_LE(r.distinguished_by_ciu, r.pairs - r.alpha_equivalent);
}

TEST(Representation, PairsMixEquivalentAndNot) {
  Rng rng(63);
  World w{A(0), A(1)};
  int eq = 0;
  for (int i = 0; i < 200; ++i) {
    auto [v, v2] = gen_value_pair(lam(), T("term"), w, 3, rng);
    eq += oracle::alpha(lam(), v, v2, T("term"));
  }
  EXPECT_GT(eq, 40);
  EXPECT_LT(eq, 160);
}

TEST(WorldSensitivity, Example) {
  Signature sig;
  // #a0 and #a1 are told apart once both are in the world.
  WorldSensitivityReport r =
      test_world_sensitivity(sig, E("<#a0>#a0"), E("<#a1>#a1"), T("atm bnd"), {A(0), A(1)}, {A(0), A(1), A(2)}, opts(200));
  EXPECT_FALSE(r.differ);
  EXPECT_NE(r.at_w.kind, CiuVerdict::Kind::Distinguished);
}

TEST(OutcomeJson, Shape) {
  Signature sig;
  Outcome o = run(sig, Configuration{State{}, FrameStack(), E("()")}, 10);
  auto j = outcome_json(o);
  EXPECT_EQ(j["kind"], "terminated");
  EXPECT_EQ(j["steps"], 0);
  EXPECT_EQ(j["value"], "()");
}

}  // namespace
