#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "freshml/signature.hpp"
#include "freshml/syntax.hpp"

namespace freshml {

enum class FreshPolicy {
  LeastUnused,      // least index not in the state
  GreatestPlusOne,  // one past the largest index in the state
};

Atom fresh_atom(const State& s, FreshPolicy policy = FreshPolicy::LeastUnused);

struct StepResult {
  enum class Kind { Next, Terminal, Stuck };
  Kind kind = Kind::Stuck;
  std::optional<Configuration> next;  // Next
  std::optional<Value> value;         // Terminal
  std::string reason;                 // Stuck
  int rule = 0;                       // 1-9 for Next
};

StepResult step(const Signature& sig, const Configuration& cfg,
                FreshPolicy policy = FreshPolicy::LeastUnused);

struct Outcome {
  enum class Kind { Terminated, FuelExhausted, Stuck };
  Kind kind = Kind::Stuck;
  std::uint64_t steps = 0;
  State final_state;                   // Terminated
  std::optional<Value> value;          // Terminated
  std::string reason;                  // Stuck
  std::optional<Configuration> stuck;  // Stuck

  bool terminated() const { return kind == Kind::Terminated; }
  /// Same kind and step count.
  bool same_verdict(const Outcome& other) const {
    return kind == other.kind && steps == other.steps;
  }
};

struct RunOptions {
  std::uint64_t fuel = 10000;
  FreshPolicy policy = FreshPolicy::LeastUnused;
  /// Re-check the final configuration against the initial type and world.
  bool check_preservation = false;
  /// Report FuelExhausted(fuel) early when a rule-6 step reproduces the exact
  /// same configuration, which then repeats forever.
  bool detect_self_loops = true;
};

/// Iterates `step`. A configuration that is not well formed is Stuck with
/// E_ATOM_ESCAPE before any step is taken.
Outcome run(const Signature& sig, const Configuration& cfg, const RunOptions& options = {});
Outcome run(const Signature& sig, const Configuration& cfg, std::uint64_t fuel);

/// The configurations visited, starting with `cfg`; at most fuel+1 entries.
std::vector<Configuration> trace(const Signature& sig, const Configuration& cfg,
                                 std::uint64_t fuel, FreshPolicy policy = FreshPolicy::LeastUnused);

/// F[e]: Id[e] = e, (F o (x.e'))[e] = F[let x = e in e'].
Expr stack_apply(const FrameStack& f, const Expr& e);

/// `n | state=[...] | stack_depth=k | expr=...`
std::string format_trace_line(std::size_t n, const Configuration& cfg);
/// `TERMINATED n v`, `FUEL m` or `STUCK reason`.
std::string format_outcome(const Outcome& o);
/// Numeric exit code: 0 terminated, 2 fuel, 3 stuck.
int outcome_exit_code(const Outcome& o);

}  // namespace freshml
