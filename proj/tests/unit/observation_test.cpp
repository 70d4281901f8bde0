#include <gtest/gtest.h>

#include "freshml/error.hpp"
#include "freshml/harness.hpp"
#include "freshml/machine.hpp"
#include "freshml/observation.hpp"
#include "freshml/program.hpp"
#include "test_support.hpp"

using namespace freshml;

namespace {

Atom A(std::uint32_t i) { return Atom{i}; }

Observation B(const char* name) { return *builtin_observation(name); }

std::uint64_t ev(const char* name, State s, std::vector<Atom> args) {
  return eval_obs(B(name), s, args);
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::Io;
}

TEST(EvalObs, Examples) {
  EXPECT_EQ(ev("eq", {A(0), A(1)}, {A(0), A(0)}), 0u);
  EXPECT_EQ(ev("eq", {A(0), A(1)}, {A(0), A(1)}), 1u);
  EXPECT_EQ(ev("lt", {A(0), A(1)}, {A(1), A(0)}), 1u);
  EXPECT_EQ(ev("lt", {A(0), A(1)}, {A(0), A(1)}), 0u);
  EXPECT_EQ(ev("lt", {A(0), A(1)}, {A(0), A(0)}), 1u);
  EXPECT_EQ(ev("card", {A(0), A(1)}, {}), 2u);
  EXPECT_EQ(ev("ord", {A(5), A(2)}, {A(2)}), 1u);
  EXPECT_EQ(ev("ord", {A(5), A(2)}, {A(5)}), 0u);
  EXPECT_EQ(ev("raw_index", {A(7)}, {A(7)}), 7u);
}

TEST(EvalObs, Errors) {
  EXPECT_EQ(code_of([] { ev("eq", {A(0)}, {A(0)}); }), ErrorCode::Arity);
  EXPECT_EQ(code_of([] { ev("eq", {A(0)}, {A(0), A(3)}); }), ErrorCode::AtomEscape);
}

TEST(EvalObs, AgreesWithDefinitions) {
  Rng rng(41);
  for (int i = 0; i < 2000; ++i) {
    std::vector<Atom> atoms;
    for (std::uint32_t k = 0; k < 10; ++k) atoms.push_back(A(k));
    std::shuffle(atoms.begin(), atoms.end(), rng);
    atoms.resize(uniform(rng, 1, 8));
    State s(atoms);
    for (const char* name : {"eq", "lt", "ord", "card", "raw_index"}) {
      Observation o = B(name);
      std::vector<Atom> args;
      for (std::size_t k = 0; k < o.arity; ++k) args.push_back(pick(rng, atoms));
      EXPECT_EQ(eval_obs(o, s, args), oracle::observe(name, atoms, args)) << name << " " << s.str();
    }
  }
}

TEST(Registry, BuiltinsAndFlags) {
  auto all = builtin_registry();
  std::map<std::string, std::tuple<std::size_t, bool, bool>> want{
      {"eq", {2, true, true}},   {"lt", {2, true, true}},      {"ord", {1, true, false}},
      {"card", {0, true, false}}, {"raw_index", {1, false, false}}};
  ASSERT_EQ(all.size(), want.size());
  for (const auto& o : all) {
    auto [arity, equi, affine] = want.at(o.name);
    EXPECT_EQ(o.arity, arity) << o.name;
    EXPECT_EQ(o.declared_equivariant, equi) << o.name;
    EXPECT_EQ(o.declared_affine, affine) << o.name;
  }
  EXPECT_FALSE(builtin_observation("nope").has_value());
}

TEST(Registry, AlwaysContainsEq) {
  ObservationRegistry r;
  EXPECT_EQ(r.names(), std::vector<std::string>{"eq"});
  EXPECT_TRUE(r.all_affine());
  ObservationRegistry r2 = make_registry({"lt", "ord"});
  EXPECT_NE(r2.find("eq"), nullptr);
  EXPECT_FALSE(r2.all_affine());
  EXPECT_EQ(code_of([] { make_registry({"bogus"}); }), ErrorCode::UnknownObservation);
}

TEST(Registry, RejectsFalseDeclarations) {
  ObservationRegistry r;
  Observation raw = B("raw_index");
  raw.declared_equivariant = true;
  EXPECT_EQ(code_of([&] { r.add(raw); }), ErrorCode::NotEquivariant);
  Observation ord = B("ord");
  ord.declared_affine = true;
  EXPECT_EQ(code_of([&] { r.add(ord); }), ErrorCode::NotAffine);
  Observation mine = B("lt");
  mine.name = "mine";
  r.add(mine);
  EXPECT_EQ(code_of([&] { r.add(mine); }), ErrorCode::DuplicateCon);
}

TEST(CheckEquivariance, Examples) {
  EXPECT_TRUE(check_equivariance(B("lt"), 1000, 1).pass);
  EXPECT_TRUE(check_equivariance(B("eq"), 1000, 2).pass);
  EXPECT_TRUE(check_equivariance(B("ord"), 1000, 3).pass);
  EXPECT_TRUE(check_equivariance(B("card"), 1000, 4).pass);
  ObservationVerdict raw = check_equivariance(B("raw_index"), 1000, 5);
  ASSERT_FALSE(raw.pass);
  ASSERT_TRUE(raw.counterexample.has_value());
}

TEST(CheckEquivariance, CounterexampleReplays) {
  ObservationVerdict v = check_equivariance(B("raw_index"), 1000, 6);
  ASSERT_TRUE(v.counterexample);
  const auto& c = *v.counterexample;
  Observation o = B("raw_index");
  EXPECT_EQ(eval_obs(o, c.state, c.args), c.lhs);
  std::vector<Atom> moved;
  for (Atom a : c.args) moved.push_back(perm_apply(c.permutation, a));
  EXPECT_EQ(eval_obs(o, perm_apply(c.permutation, c.state), moved), c.rhs);
  EXPECT_NE(c.lhs, c.rhs);
}

TEST(CheckAffine, Examples) {
  EXPECT_TRUE(check_affine(B("eq"), 1000, 1).pass);
  EXPECT_TRUE(check_affine(B("lt"), 1000, 2).pass);
  ObservationVerdict ord = check_affine(B("ord"), 100, 3);
  EXPECT_FALSE(ord.pass);
  ASSERT_TRUE(ord.counterexample && ord.counterexample->prepended);
  EXPECT_EQ(ord.counterexample->lhs, ord.counterexample->rhs + 1);  // lhs is read in a' ◁ s
  ObservationVerdict card = check_affine(B("card"), 1, 4);
  EXPECT_FALSE(card.pass);
}

TEST(UserObservations, Dsl) {
  Program p = load_program_text(
      "observe affine neq (a, b) = if a = b then 1 else 0 ;\n"
      "observe last (a) = if pos a + 1 = len then 0 else 1 ;\n"
      "@neq #a0 #a1");
  const Observation* neq = p.sig.observations().find("neq");
  ASSERT_NE(neq, nullptr);
  EXPECT_EQ(eval_obs(*neq, State{A(0), A(1)}, std::vector<Atom>{A(0), A(1)}), 0u);
  EXPECT_EQ(eval_obs(*neq, State{A(0), A(1)}, std::vector<Atom>{A(1), A(1)}), 1u);
  const Observation* last = p.sig.observations().find("last");
  ASSERT_NE(last, nullptr);
  EXPECT_FALSE(last->declared_affine);
  EXPECT_EQ(eval_obs(*last, State{A(3), A(1)}, std::vector<Atom>{A(1)}), 0u);
  EXPECT_EQ(eval_obs(*last, State{A(3), A(1)}, std::vector<Atom>{A(3)}), 1u);
  Outcome o = run(p.sig, Configuration{State{A(0), A(1)}, FrameStack(), p.expr});
  EXPECT_EQ(format_outcome(o), "TERMINATED 1 Zero()");
}

TEST(UserObservations, FalseAffineClaimRejected) {
  EXPECT_EQ(code_of([] { load_program_text("observe affine first (a) = pos a ; ()"); }),
            ErrorCode::NotAffine);
}

// The machine-level consequence: with affine observations only, an extra atom
// on the left of the state changes nothing.
void prepend_invariance(const std::vector<std::string>& obs, std::size_t samples, bool expect_equal) {
  Signature sig = lambda_signature(make_registry(obs));
  bool saw_difference = false;
  for (std::size_t i = 0; i < samples; ++i) {
    Rng rng(derive_seed(99, i));
    GeneratedConfig g = gen_config(sig, rng);
    Atom extra = A(20);
    Outcome a = run(sig, g.cfg, 2000);
    Outcome b = run(sig, Configuration{g.cfg.state.prepend(extra), g.cfg.stack, g.cfg.expr}, 2000);
    if (!a.same_verdict(b)) {
      saw_difference = true;
      if (expect_equal) ADD_FAILURE() << print(g.cfg) << "\n" << format_outcome(a) << " vs " << format_outcome(b);
    }
  }
  if (!expect_equal) EXPECT_TRUE(saw_difference);
}

TEST(AffineInvariance, EqLtOnly) { prepend_invariance({"eq", "lt"}, 300, true); }
TEST(AffineInvariance, OrdBreaksIt) { prepend_invariance({"eq", "ord"}, 200, false); }

}  // namespace
