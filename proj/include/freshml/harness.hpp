#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "freshml/machine.hpp"
#include "freshml/random.hpp"
#include "freshml/signature.hpp"
#include "freshml/typecheck.hpp"

namespace freshml {

// ---------------------------------------------------------------------------
// Random well-typed programs.

struct GenOptions {
  std::size_t max_depth = 3;
  /// Let generated functions call themselves (may diverge).
  bool allow_recursion = true;
};

/// Inhabited type over unit, atm, nat, the signature's data types, products,
/// bnd and (when `arrows`) functions.
Type gen_type(const Signature& sig, Rng& rng, std::size_t depth, bool arrows = true);

/// Γ ⊢ e : t, mentioning only atoms from `atoms`.
Expr gen_expr(const Signature& sig, Rng& rng, const TypingEnv& env, const Type& t,
              const World& atoms, const GenOptions& options = {});

/// Closed value of any type (functions included) over `atoms`.
Value gen_closed_value(const Signature& sig, Rng& rng, const Type& t, const World& atoms,
                       const GenOptions& options = {});

/// `fun(f (x : unit) : t = f x) ()`
Expr diverge(const Type& t);

struct GeneratedConfig {
  Configuration cfg;
  Type type;
};

/// Random ⟨s, F, e⟩ with ⊢ ⟨s,F,e⟩ : type.
GeneratedConfig gen_config(const Signature& sig, Rng& rng, const GenOptions& options = {});

// ---------------------------------------------------------------------------
// Frame stacks.

struct PoolEntry {
  Value value;
  Type type;
};

struct StackGenSpec {
  Type argument = Type::unit();
  World world;
  std::size_t max_depth = 4;
  std::uint64_t seed = 0;
  /// Closed values offered to comparison frames (aeq x v).
  std::vector<PoolEntry> pool;
};

/// (F, τ') with ∅ ⊢ F : argument → τ' and atom(F) ⊆ world. Frames are drawn
/// from destructors, observations, aeq comparisons, the F_a pattern
/// `let y = @eq x a in match y with (Zero u -> () | Succ z -> diverge)`,
/// unbinding and random let-bodies; a nat result is usually closed off by a
/// termination test.
std::pair<FrameStack, Type> gen_stack(const Signature& sig, const StackGenSpec& spec);
std::pair<FrameStack, Type> gen_stack(const Signature& sig, const StackGenSpec& spec, Rng& rng);

// ---------------------------------------------------------------------------
// CIU testing.

struct CiuOptions {
  std::size_t trials = 500;
  std::uint64_t fuel = 10000;
  std::uint64_t seed = 1;
  std::size_t max_stack_depth = 4;
  /// Extra atoms beyond w in sampled states.
  std::size_t extra_atoms = 4;
  std::vector<PoolEntry> pool;
};

struct CiuTrial {
  State state;
  FrameStack stack;
};

struct CiuCounterexample {
  std::size_t trial = 0;
  State state;
  FrameStack stack;
  Outcome left, right;
};

struct CiuVerdict {
  enum class Kind { NoCounterexampleFound, Distinguished, Inconclusive };
  Kind kind = Kind::NoCounterexampleFound;
  std::size_t trials_run = 0;
  /// Trials where both sides ran out of fuel.
  std::size_t inconclusive = 0;
  std::optional<CiuCounterexample> counterexample;
  std::uint64_t fuel = 0, seed = 0;

  std::string label() const;
  nlohmann::json to_json() const;
};

/// The (s, F) used by trial `index` of ciu_test(...options); replayable.
CiuTrial ciu_trial(const Signature& sig, const World& w, const Expr& e, const Expr& e2,
                   const Type& t, const CiuOptions& options, std::size_t index);

/// Samples states s ⊇ w (random order) and stacks F : t → τ', runs ⟨s,F,e⟩
/// and ⟨s,F,e'⟩ and reports the first trial where exactly one terminates.
CiuVerdict ciu_test(const Signature& sig, const World& w, const Expr& e, const Expr& e2,
                    const Type& t, const CiuOptions& options = {});

/// Closes Γ with generated values (at worlds w' ⊇ w) and delegates to ciu_test.
CiuVerdict open_ciu_test(const Signature& sig, const TypingEnv& env, const World& w, const Expr& e,
                         const Expr& e2, const Type& t, const CiuOptions& options = {});

// ---------------------------------------------------------------------------
// Reports for the equivalence results.

struct ExtensionalityReport {
  Atom fresh;
  CiuVerdict bodies;    // v{a:=a''} vs v'{a':=a''} at w ∪ {a''}
  CiuVerdict bindings;  // <a>v vs <a'>v' at w
  bool affine_only = false;
  /// Bodies indistinguishable ⇒ bindings indistinguishable, and (when only
  /// affine observations are registered) the converse.
  bool consistent = true;

  nlohmann::json to_json() const;
};

ExtensionalityReport test_extensionality_bind(const Signature& sig, const World& w, Atom a,
                                              const Value& v, Atom a2, const Value& v2,
                                              const Type& t, const CiuOptions& options = {});

struct ConjectureReport {
  Outcome v_prime_run;  // expected to terminate
  Outcome v_run;        // expected to run out of fuel
  bool witness_holds = false;
  CiuVerdict conjecture;  // <a>v vs <a>v'; reported, not asserted

  nlohmann::json to_json() const;
};

/// v = fun(f x = f x), v' = fun(f x = match ord a with (Zero -> () | Succ y -> v ()))
/// with a = #a0, at state [#a1,#a0] and stack Id o (x. x ()). Needs ord.
ConjectureReport test_example_conjecture(const Signature& sig, const CiuOptions& options = {});

/// The two values of the conjecture example (v, v').
std::pair<Value, Value> conjecture_values(Atom a);

struct RepresentationReport {
  std::size_t pairs = 0;
  std::size_t alpha_equivalent = 0;
  std::size_t distinguished_by_ciu = 0;
  std::size_t inconclusive = 0;
  std::vector<std::string> violations;

  nlohmann::json to_json() const;
};

/// For sampled pairs at arity ar: =α pairs must survive ciu_test, the others
/// must be told apart by the aeq_ar context.
RepresentationReport test_correctness_of_representation(const Signature& sig, const Type& ar,
                                                        std::size_t pairs,
                                                        const CiuOptions& options = {});

/// Value pair sampler used above: alpha-variant or perturbation of a value.
std::pair<Value, Value> gen_value_pair(const Signature& sig, const Type& ar, const World& w,
                                       std::size_t size, Rng& rng);

struct WorldSensitivityReport {
  CiuVerdict at_w, at_w2;
  bool differ = false;

  nlohmann::json to_json() const;
};

WorldSensitivityReport test_world_sensitivity(const Signature& sig, const Expr& e, const Expr& e2,
                                              const Type& t, const World& w, const World& w2,
                                              const CiuOptions& options = {});

struct SafetyReport {
  std::size_t configs = 0, passed = 0;
  std::uint64_t steps_checked = 0;
  std::vector<std::string> failures;

  bool pass() const { return passed == configs; }
  nlohmann::json to_json() const;
};

/// Runs `configs` generated configurations for up to `steps` transitions and
/// checks every visited configuration: never stuck, still of the initial
/// type, state only grows, atoms of stack and expression stay in the state.
SafetyReport check_safety(const Signature& sig, std::size_t configs, std::uint64_t steps,
                          std::uint64_t seed);

nlohmann::json outcome_json(const Outcome& o);

}  // namespace freshml
