#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "freshml/atom.hpp"

namespace freshml {

/// A state-dependent, nat-valued function on atoms.
struct Observation {
  using Eval = std::function<std::uint64_t(const State&, std::span<const Atom>)>;

  std::string name;
  std::size_t arity = 0;
  Eval eval;
  bool declared_equivariant = true;
  bool declared_affine = false;
};

/// ⟦o⟧_s(args). Throws E_ARITY on a wrong tuple length and E_ATOM_ESCAPE if
/// an argument is not in `s`.
std::uint64_t eval_obs(const Observation& o, const State& s, std::span<const Atom> args);

// Built-ins. eq and lt only compare atoms present in the state, so prepending
// an unrelated atom changes nothing; ord reads absolute positions and card the
// length, both of which move under prepending. All four commute with
// permutations because they only look at positions and equality.
Observation obs_eq();
Observation obs_lt();
Observation obs_ord();
Observation obs_card();
/// The enumeration index of an atom. Not equivariant; for negative tests only.
Observation obs_raw_index();

/// eq, lt, ord, card, raw_index.
std::vector<Observation> builtin_registry();
std::optional<Observation> builtin_observation(const std::string& name);

struct ObservationCounterexample {
  State state;
  Permutation permutation;  // identity for affine counterexamples
  std::optional<Atom> prepended;
  std::vector<Atom> args;
  std::uint64_t lhs = 0, rhs = 0;

  std::string str() const;
};

struct ObservationVerdict {
  bool pass = true;
  std::size_t trials = 0;
  std::optional<ObservationCounterexample> counterexample;
};

/// Samples states of length <= 8 over the first 16 atoms, argument tuples from
/// the state and permutations supported in the first 16 atoms.
ObservationVerdict check_equivariance(const Observation& o, std::size_t trials, std::uint64_t seed);
/// Samples (s, a' not in s, args) and compares ⟦o⟧ at a' ◁ s and at s.
ObservationVerdict check_affine(const Observation& o, std::size_t trials, std::uint64_t seed);

/// Observation set O of a signature. Always contains eq.
class ObservationRegistry {
 public:
  /// Registry holding just eq.
  ObservationRegistry();

  /// Registers `o` after running the sampled checkers against its declared
  /// flags. Throws E_NOT_EQUIVARIANT / E_NOT_AFFINE when a declared property
  /// is refuted, E_DUPLICATE_CON when the name is taken.
  void add(Observation o, std::size_t check_trials = 300, std::uint64_t seed = 1);
  /// Registers without running the checkers.
  void add_unchecked(Observation o);

  const Observation* find(const std::string& name) const;
  const std::vector<Observation>& all() const { return observations_; }
  std::vector<std::string> names() const;
  bool all_affine() const;

 private:
  std::vector<Observation> observations_;
};

/// Registry with eq plus the named built-ins. Throws E_UNKNOWN_OBSERVATION.
ObservationRegistry make_registry(const std::vector<std::string>& names);

// ---------------------------------------------------------------------------
// Small definition language for user observations:
//
//   observe [affine] name (a, b) = if pos a < pos b then 0 else 1 ;
//
// Terms are numerals, `pos p` (0-based position of parameter p in the state),
// `len`, `t + t`, `t - t` (truncated), and `if c then t else t` where c is
// `t < t`, `t = t`, or `p = q` on two parameters (atom equality). Everything
// a term can read is invariant under permutations, so such observations are
// equivariant by construction; affineness is declared and then checked.

struct ObsTerm;
using ObsTermPtr = std::shared_ptr<const ObsTerm>;

struct ObsTerm {
  enum class Kind { Num, Pos, Len, Add, Sub, IfLess, IfEqual, IfSameAtom };
  Kind kind = Kind::Num;
  std::uint64_t number = 0;
  std::size_t param = 0, param2 = 0;  // Pos, IfSameAtom
  ObsTermPtr lhs, rhs;                // Add, Sub, conditions
  ObsTermPtr then_branch, else_branch;
};

struct ObservationDef {
  std::string name;
  std::vector<std::string> params;
  bool affine = false;
  ObsTermPtr body;
};

std::uint64_t eval_obs_term(const ObsTerm& t, const State& s, std::span<const Atom> args);
Observation make_user_observation(const ObservationDef& def);

}  // namespace freshml
