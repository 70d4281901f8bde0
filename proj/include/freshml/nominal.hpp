#pragma once

#include <cstdint>
#include <functional>

#include "freshml/random.hpp"
#include "freshml/signature.hpp"
#include "freshml/syntax.hpp"

namespace freshml {

/// Picks the atom a'' used to open two bindings at world w; must be outside w.
using BinderChooser = std::function<Atom(const World&)>;

/// ⊢_w v =α v' : ar. Throws E_NOT_NOMINAL if ar is not a nominal arity,
/// E_ILL_TYPED if a value is open or not of arity ar, E_ATOM_ESCAPE if a
/// value mentions atoms outside w.
bool alpha_eq(const Signature& sig, const World& w, const Value& v, const Value& v2,
              const Type& ar);
/// Same, with a caller-supplied choice of a'' (default: least atom not in w).
bool alpha_eq(const Signature& sig, const World& w, const Value& v, const Value& v2,
              const Type& ar, const BinderChooser& choose);

/// Atoms of v not under a binding of themselves, read at arity ar.
World free_atoms(const Signature& sig, const Value& v, const Type& ar);

/// Random closed value of arity ar over the atoms of w. `size` bounds the
/// data-type nesting; generation prefers the shallowest constructors once the
/// budget runs out. Throws E_UNINHABITED when no such value exists (atm with
/// empty w, or a data type without a base case).
Value gen_value(const Signature& sig, const Type& ar, const World& w, std::size_t size, Rng& rng);
Value gen_value(const Signature& sig, const Type& ar, const World& w, std::size_t size,
                std::uint64_t seed);

/// Renames bindings of v to other atoms of w where that keeps v =α.
Value alpha_variant(const Signature& sig, const Type& ar, const World& w, const Value& v, Rng& rng);
/// A small change to v (different atom or constructor); usually not =α.
Value perturb(const Signature& sig, const Type& ar, const World& w, const Value& v,
              std::size_t size, Rng& rng);

/// Closed value swap_τ : atm → atm → τ → τ.
Value gen_swap(const Signature& sig, const Type& t);
/// Closed value aeq_ar : ar → ar → nat, answering Zero() for =α and
/// Succ(Zero()) otherwise. Throws E_NOT_NOMINAL.
Value gen_aeq(const Signature& sig, const Type& ar);

/// `let g = f a in ... g b` chains for applying a curried value.
Expr apply_curried(const Value& f, const std::vector<Value>& args);

/// Minimal constructor depth of each data type (nullopt: uninhabited).
std::optional<std::size_t> min_depth(const Signature& sig, const Type& t);

}  // namespace freshml
