#include "freshml/observation.hpp"

#include <algorithm>
#include <numeric>

#include "freshml/error.hpp"
#include "freshml/random.hpp"

namespace freshml {

std::uint64_t eval_obs(const Observation& o, const State& s, std::span<const Atom> args) {
  if (args.size() != o.arity) {
    throw Error(ErrorCode::Arity, "observation " + o.name + " expects " +
                                      std::to_string(o.arity) + " arguments, got " +
                                      std::to_string(args.size()));
  }
  for (Atom a : args) {
    if (!s.contains(a)) {
      throw Error(ErrorCode::AtomEscape,
                  "observation " + o.name + " applied to " + a.str() + " outside " + s.str());
    }
  }
  return o.eval(s, args);
}

Observation obs_eq() {
  return {"eq", 2,
          [](const State&, std::span<const Atom> a) -> std::uint64_t { return a[0] == a[1] ? 0 : 1; },
          true, true};
}

Observation obs_lt() {
  return {"lt", 2,
          [](const State& s, std::span<const Atom> a) -> std::uint64_t {
            return *s.position(a[0]) < *s.position(a[1]) ? 0 : 1;
          },
          true, true};
}

Observation obs_ord() {
  return {"ord", 1,
          [](const State& s, std::span<const Atom> a) -> std::uint64_t { return *s.position(a[0]); },
          true, false};
}

Observation obs_card() {
  return {"card", 0, [](const State& s, std::span<const Atom>) -> std::uint64_t { return s.size(); },
          true, false};
}

Observation obs_raw_index() {
  return {"raw_index", 1,
          [](const State&, std::span<const Atom> a) -> std::uint64_t { return a[0].id; }, false,
          false};
}

std::vector<Observation> builtin_registry() {
  return {obs_eq(), obs_lt(), obs_ord(), obs_card(), obs_raw_index()};
}

std::optional<Observation> builtin_observation(const std::string& name) {
  for (auto& o : builtin_registry()) {
    if (o.name == name) return o;
  }
  return std::nullopt;
}

std::string ObservationCounterexample::str() const {
  std::string out = "state=" + state.str();
  if (prepended) out += " | prepend=" + prepended->str();
  else out += " | perm=" + permutation.str();
  out += " | args=(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ",";
    out += args[i].str();
  }
  out += ") | " + std::to_string(lhs) + " vs " + std::to_string(rhs);
  return out;
}

namespace {

constexpr std::uint32_t kAtomPool = 16;

State random_state(Rng& rng, std::size_t min_len, std::size_t max_len) {
  std::vector<Atom> pool(kAtomPool);
  for (std::uint32_t i = 0; i < kAtomPool; ++i) pool[i] = Atom{i};
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(uniform(rng, min_len, max_len));
  return State(std::move(pool));
}

std::vector<Atom> random_args(Rng& rng, const State& s, std::size_t arity) {
  std::vector<Atom> args;
  for (std::size_t i = 0; i < arity; ++i) args.push_back(pick(rng, s.atoms()));
  return args;
}

}  // namespace

ObservationVerdict check_equivariance(const Observation& o, std::size_t trials, std::uint64_t seed) {
  Rng rng(seed);
  ObservationVerdict verdict;
  for (std::size_t t = 0; t < trials; ++t) {
    verdict.trials = t + 1;
    State s = random_state(rng, o.arity > 0 ? 1 : 0, 8);
    std::vector<Atom> args = random_args(rng, s, o.arity);
    std::vector<Atom> from(kAtomPool), to(kAtomPool);
    for (std::uint32_t i = 0; i < kAtomPool; ++i) from[i] = to[i] = Atom{i};
    std::shuffle(to.begin(), to.end(), rng);
    Permutation pi = Permutation::from_mapping(from, to);

    std::vector<Atom> moved;
    for (Atom a : args) moved.push_back(pi(a));
    std::uint64_t lhs = eval_obs(o, s, args);
    std::uint64_t rhs = eval_obs(o, perm_apply(pi, s), moved);
    if (lhs != rhs) {
      verdict.pass = false;
      verdict.counterexample = ObservationCounterexample{s, pi, std::nullopt, args, lhs, rhs};
      return verdict;
    }
  }
  return verdict;
}

ObservationVerdict check_affine(const Observation& o, std::size_t trials, std::uint64_t seed) {
  Rng rng(seed);
  ObservationVerdict verdict;
  for (std::size_t t = 0; t < trials; ++t) {
    verdict.trials = t + 1;
    State s = random_state(rng, o.arity > 0 ? 1 : 0, 8);
    std::vector<Atom> args = random_args(rng, s, o.arity);
    std::vector<Atom> outside;
    for (std::uint32_t i = 0; i < kAtomPool + 8; ++i) {
      if (!s.contains(Atom{i})) outside.push_back(Atom{i});
    }
    Atom fresh = pick(rng, outside);
    std::uint64_t lhs = eval_obs(o, s.prepend(fresh), args);
    std::uint64_t rhs = eval_obs(o, s, args);
    if (lhs != rhs) {
      verdict.pass = false;
      verdict.counterexample = ObservationCounterexample{s, Permutation{}, fresh, args, lhs, rhs};
      return verdict;
    }
  }
  return verdict;
}

ObservationRegistry::ObservationRegistry() { observations_.push_back(obs_eq()); }

void ObservationRegistry::add(Observation o, std::size_t check_trials, std::uint64_t seed) {
  if (o.declared_equivariant) {
    auto v = check_equivariance(o, check_trials, seed);
    if (!v.pass) {
      throw Error(ErrorCode::NotEquivariant,
                  "observation " + o.name + " is declared equivariant but " + v.counterexample->str());
    }
  }
  if (o.declared_affine) {
    auto v = check_affine(o, check_trials, seed);
    if (!v.pass) {
      throw Error(ErrorCode::NotAffine,
                  "observation " + o.name + " is declared affine but " + v.counterexample->str());
    }
  }
  add_unchecked(std::move(o));
}

void ObservationRegistry::add_unchecked(Observation o) {
  if (const Observation* existing = find(o.name)) {
    // Re-adding eq (or any identical built-in name) is a no-op for built-ins.
    if (builtin_observation(o.name)) return;
    (void)existing;
    throw Error(ErrorCode::DuplicateCon, "observation " + o.name + " registered twice");
  }
  observations_.push_back(std::move(o));
}

const Observation* ObservationRegistry::find(const std::string& name) const {
  for (const auto& o : observations_) {
    if (o.name == name) return &o;
  }
  return nullptr;
}

std::vector<std::string> ObservationRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& o : observations_) out.push_back(o.name);
  return out;
}

bool ObservationRegistry::all_affine() const {
  return std::all_of(observations_.begin(), observations_.end(),
                     [](const Observation& o) { return o.declared_affine; });
}

ObservationRegistry make_registry(const std::vector<std::string>& names) {
  ObservationRegistry reg;
  for (const auto& n : names) {
    auto o = builtin_observation(n);
    if (!o) throw Error(ErrorCode::UnknownObservation, "unknown observation " + n);
    reg.add_unchecked(std::move(*o));
  }
  return reg;
}

// ---------------------------------------------------------------------------

std::uint64_t eval_obs_term(const ObsTerm& t, const State& s, std::span<const Atom> args) {
  using K = ObsTerm::Kind;
  switch (t.kind) {
    case K::Num:
      return t.number;
    case K::Pos:
      return *s.position(args[t.param]);
    case K::Len:
      return s.size();
    case K::Add:
      return eval_obs_term(*t.lhs, s, args) + eval_obs_term(*t.rhs, s, args);
    case K::Sub: {
      std::uint64_t a = eval_obs_term(*t.lhs, s, args), b = eval_obs_term(*t.rhs, s, args);
      return a > b ? a - b : 0;
    }
    case K::IfLess:
    case K::IfEqual: {
      std::uint64_t a = eval_obs_term(*t.lhs, s, args), b = eval_obs_term(*t.rhs, s, args);
      bool c = t.kind == K::IfLess ? a < b : a == b;
      return eval_obs_term(c ? *t.then_branch : *t.else_branch, s, args);
    }
    case K::IfSameAtom:
      return eval_obs_term(args[t.param] == args[t.param2] ? *t.then_branch : *t.else_branch, s,
                           args);
  }
  return 0;
}

Observation make_user_observation(const ObservationDef& def) {
  ObsTermPtr body = def.body;
  return {def.name, def.params.size(),
          [body](const State& s, std::span<const Atom> args) { return eval_obs_term(*body, s, args); },
          true, def.affine};
}

}  // namespace freshml
