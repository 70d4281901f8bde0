#pragma once

#include <map>
#include <optional>
#include <utility>

#include "freshml/signature.hpp"
#include "freshml/syntax.hpp"

namespace freshml {

/// Γ. Extending with a name already present shadows the old entry, which is
/// the same as renaming the inner binder apart first.
using TypingEnv = std::map<Variable, Type>;

// Unannotated `fun(f x = e)` gets its parameter and result types from use;
// anything still undetermined at the end is fixed to unit. Fully annotated
// terms are checked without any guessing.

/// Γ ⊢ e : τ. Errors: E_TYPE (with rule and subterm), E_NONEXHAUSTIVE_MATCH,
/// E_ARITY, E_UNBOUND_VAR, E_UNKNOWN_OBSERVATION, E_UNDECLARED_TYPE.
Type check_expr(const Signature& sig, const TypingEnv& env, const Expr& e);
Type check_value(const Signature& sig, const TypingEnv& env, const Value& v);

/// Γ ⊢ e : expected.
void check_expr_against(const Signature& sig, const TypingEnv& env, const Expr& e,
                        const Type& expected);

/// τ' with Γ ⊢ F : argument → τ'.
Type check_stack(const Signature& sig, const TypingEnv& env, const FrameStack& f,
                 const Type& argument);

/// (atom(s), τ) with ⊢_w ⟨s,F,e⟩ : τ. Throws E_ATOM_ESCAPE when atom(F,e) ⊄ atom(s).
std::pair<World, Type> check_config(const Signature& sig, const Configuration& cfg);
/// As check_config, but holds the result type to `expected`.
World check_config_against(const Signature& sig, const Configuration& cfg, const Type& expected);

}  // namespace freshml
