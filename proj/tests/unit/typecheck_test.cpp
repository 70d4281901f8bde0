#include <gtest/gtest.h>

#include "freshml/error.hpp"
#include "freshml/harness.hpp"
#include "freshml/program.hpp"
#include "freshml/typecheck.hpp"
#include "test_support.hpp"

using namespace freshml;

namespace {

Atom A(std::uint32_t i) { return Atom{i}; }
Expr E(const char* text) { return parse_expr(text); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::Io;
}

const Signature& lam() {
  static Signature sig = lambda_signature(make_registry({"eq", "lt", "ord", "card"}));
  return sig;
}

TEST(CheckExpr, Examples) {
  Signature sig;
  EXPECT_TRUE(check_expr(sig, {}, E("fresh()")) == Type::atm());
  EXPECT_TRUE(check_expr(sig, {}, E("<#a0>()")) == Type::bnd(Type::unit()));
  EXPECT_EQ(code_of([&] { check_expr(sig, {}, E("@eq #a0")); }), ErrorCode::Arity);
}

TEST(CheckExpr, Rules) {
  Signature sig;
  EXPECT_EQ(print(check_expr(sig, {}, E("unbind <#a0>()"))), "atm * unit");
  EXPECT_EQ(print(check_expr(sig, {}, E("@eq #a0 #a1"))), "nat");
  EXPECT_EQ(print(check_expr(sig, {}, E("fun(f (x : atm) : atm = x)"))), "atm -> atm");
  EXPECT_EQ(print(check_expr(sig, {}, E("fst (#a0, ())"))), "atm");
  EXPECT_EQ(print(check_expr(sig, {}, E("snd (#a0, ())"))), "unit");
  EXPECT_EQ(print(check_expr(sig, {}, E("let x = fresh() in (x, x)"))), "atm * atm");
  EXPECT_EQ(print(check_expr(sig, {}, E("match Succ(Zero()) with (Zero x -> x | Succ y -> ())"))),
            "unit");
  EXPECT_EQ(print(check_expr(lam(), {}, E("L (<#a0> V #a0)"))), "term");
  EXPECT_EQ(print(check_expr(sig, {{"x", Type::atm()}}, E("<x>x"))), "atm bnd");
}

TEST(CheckExpr, UnannotatedDefaultsToUnit) {
  Signature sig;
  EXPECT_EQ(print(check_expr(sig, {}, E("fun(f x = x)"))), "unit -> unit");
  EXPECT_EQ(print(check_expr(sig, {}, E("fun(f x = f x) ()"))), "unit");
}

TEST(CheckExpr, Errors) {
  Signature sig;
  EXPECT_EQ(code_of([&] { check_expr(sig, {}, E("fst ()")); }), ErrorCode::Type);
  EXPECT_EQ(code_of([&] { check_expr(sig, {}, E("x")); }), ErrorCode::UnboundVar);
  EXPECT_EQ(code_of([&] { check_expr(sig, {}, E("match Zero() with (Zero x -> ())")); }),
            ErrorCode::NonexhaustiveMatch);
  EXPECT_EQ(code_of([&] {
              check_expr(sig, {}, E("match Zero() with (Zero x -> () | Zero y -> () | Succ z -> ())"));
            }),
            ErrorCode::NonexhaustiveMatch);
  EXPECT_EQ(code_of([&] { check_expr(sig, {}, E("@ord #a0")); }), ErrorCode::UnknownObservation);
  EXPECT_EQ(code_of([&] { check_expr(sig, {}, E("V #a0")); }), ErrorCode::Type);
  EXPECT_EQ(code_of([&] { check_expr(sig, {}, E("<()>()")); }), ErrorCode::Type);
  EXPECT_EQ(code_of([&] { check_expr(sig, {}, E("fun(f (x : atm) : unit = x)")); }), ErrorCode::Type);
  EXPECT_EQ(code_of([&] { check_expr(sig, {}, E("match Zero() with (Zero x -> () | Succ y -> #a0)")); }),
            ErrorCode::Type);
}

TEST(CheckExpr, MessageNamesRuleAndSubterm) {
  Signature sig;
  try {
    check_expr(sig, {}, E("fst ()"));
  } catch (const Error& e) {
    std::string m = e.detail();
    EXPECT_NE(m.find("fst"), std::string::npos) << m;
    EXPECT_NE(m.find("unit"), std::string::npos) << m;
  }
}

TEST(CheckStack, Examples) {
  Signature sig;
  EXPECT_TRUE(check_stack(sig, {}, FrameStack(), Type::nat()) == Type::nat());
  FrameStack f = FrameStack().push(Frame{"x", E("(x, x)")});
  EXPECT_TRUE(check_stack(sig, {}, f, Type::atm()) == Type::prod(Type::atm(), Type::atm()));
  FrameStack g = FrameStack().push(Frame{"x", E("y")});
  EXPECT_EQ(code_of([&] { check_stack(sig, {}, g, Type::atm()); }), ErrorCode::UnboundVar);
}

TEST(CheckStack, TopFrameConsumesFirst) {
  Signature sig;
  // Id o (x. @eq x x) o (y. fst y): the argument first meets fst.
  FrameStack f = FrameStack().push(Frame{"x", E("@eq x x")}).push(Frame{"y", E("fst y")});
  EXPECT_TRUE(check_stack(sig, {}, f, Type::prod(Type::atm(), Type::unit())) == Type::nat());
}

TEST(CheckConfig, Examples) {
  Signature sig;
  auto [w, t] = check_config(sig, Configuration{State{}, FrameStack(), E("()")});
  EXPECT_TRUE(w.empty());
  EXPECT_TRUE(t == Type::unit());
  auto [w2, t2] = check_config(lam(), Configuration{State{A(0)}, FrameStack(), E("unbind <#a0>(V #a0)")});
  EXPECT_EQ(w2, (World{A(0)}));
  EXPECT_EQ(print(t2), "atm * term");
  EXPECT_EQ(code_of([&] { check_config(sig, Configuration{State{}, FrameStack(), E("#a0")}); }),
            ErrorCode::AtomEscape);
}

TEST(CheckConfig, Against) {
  Signature sig;
  Configuration c{State{A(0)}, FrameStack().push(Frame{"x", E("@eq x #a0")}), E("fresh()")};
  EXPECT_EQ(check_config_against(sig, c, Type::nat()), (World{A(0)}));
  EXPECT_THROW(check_config_against(sig, c, Type::atm()), Error);
}

TEST(NominalArity, Examples) {
  Signature sig;
  EXPECT_TRUE(is_nominal_arity(sig, parse_type("atm bnd * nat")));
  EXPECT_FALSE(is_nominal_arity(sig, parse_type("atm -> atm")));
  EXPECT_TRUE(is_nominal_arity(sig, Type::unit()));
  EXPECT_FALSE(is_nominal_arity(sig, parse_type("(unit -> unit) bnd")));
}

TEST(ValidateSignature, Examples) {
  EXPECT_TRUE(lam().is_nominal());
  Program p = load_program_text("type f = C of (atm -> atm) ; ()");
  EXPECT_FALSE(p.sig.is_nominal());
  EXPECT_EQ(code_of([] { load_program_text("type t = C of unit | C of atm ; ()"); }),
            ErrorCode::DuplicateCon);
  EXPECT_EQ(code_of([] { load_program_text("type t = C of u ; ()"); }), ErrorCode::UndeclaredType);
  EXPECT_EQ(code_of([] { load_program_text("type t = C of unit ; type t = D of unit ; ()"); }),
            ErrorCode::DuplicateType);
  EXPECT_EQ(code_of([] { load_program_text("type nat = C of unit ; ()"); }), ErrorCode::DuplicateType);
  EXPECT_EQ(code_of([] { load_program_text("type t = Zero of unit ; ()"); }), ErrorCode::DuplicateCon);
}

TEST(ValidateSignature, NatAndEqAlwaysPresent) {
  Program p = load_program_text("type t = C of unit ; ()");
  ASSERT_NE(p.sig.find_type("nat"), nullptr);
  EXPECT_TRUE(p.sig.find_constructor("Zero").has_value());
  EXPECT_TRUE(p.sig.find_constructor("Succ").has_value());
  EXPECT_NE(p.sig.observations().find("eq"), nullptr);
}

TEST(ValidateSignature, MutualRecursion) {
  Program p = load_program_text(
      "type even = Z of unit | E of odd and odd = O of even ;\n E (O (Z ()))");
  EXPECT_EQ(print(check_expr(p.sig, {}, p.expr)), "even");
  EXPECT_TRUE(p.sig.is_nominal());
}

// Sampled properties over generated derivations.

TEST(TypingProperties, UniquenessAndEquivariance) {
  Rng rng(77);
  World w{A(0), A(1), A(2)};
  for (int i = 0; i < 300; ++i) {
    Type t = gen_type(lam(), rng, 2);
    Expr e = gen_expr(lam(), rng, {}, t, w);
    Type got = check_expr(lam(), {}, e);
    EXPECT_TRUE(got == t) << print(e) << " : " << print(got) << " vs " << print(t);
    EXPECT_TRUE(check_expr(lam(), {}, e) == got);
    Permutation pi = Permutation::swap(A(0), A(static_cast<std::uint32_t>(uniform(rng, 1, 5))));
    EXPECT_TRUE(check_expr(lam(), {}, perm_apply(pi, e)) == got);
  }
}

TEST(TypingProperties, Weakening) {
  Rng rng(78);
  World w{A(0), A(1)};
  for (int i = 0; i < 200; ++i) {
    Type tx = gen_type(lam(), rng, 1);
    TypingEnv env{{"x0", tx}};
    Type t = gen_type(lam(), rng, 2);
    Expr e = gen_expr(lam(), rng, env, t, w);
    TypingEnv wider = env;
    wider.emplace("unused", gen_type(lam(), rng, 2));
    EXPECT_TRUE(check_expr(lam(), wider, e) == check_expr(lam(), env, e));
  }
}

TEST(TypingProperties, Substitution) {
  Rng rng(79);
  World w{A(0), A(1)};
  int used = 0;
  for (int i = 0; i < 300; ++i) {
    Type tx = gen_type(lam(), rng, 1);
    Type t = gen_type(lam(), rng, 2);
    Expr e = gen_expr(lam(), rng, {{"x0", tx}}, t, w);
    if (free_vars(e).count("x0")) ++used;
    Value v = gen_closed_value(lam(), rng, tx, w);
    EXPECT_TRUE(check_expr(lam(), {}, substitute(e, {{"x0", v}})) == t);
  }
  EXPECT_GT(used, 30);
}

}  // namespace
