// Runs the acceptance criteria at their full budgets. One PASS/FAIL line per
// criterion; exit status is nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "freshml/harness.hpp"
#include "freshml/lambda.hpp"
#include "freshml/machine.hpp"
#include "freshml/nominal.hpp"
#include "freshml/observation.hpp"
#include "freshml/parser.hpp"
#include "freshml/printer.hpp"
#include "freshml/typecheck.hpp"

using namespace freshml;

namespace {

Atom A(std::uint32_t i) { return Atom{i}; }

struct Result {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string name;
  double limit_seconds;  // 0 = no runtime bound
  std::function<Result()> body;
};

Signature full_lambda() { return lambda_signature(make_registry({"eq", "lt", "ord", "card"})); }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Result remark() {
  Signature sig;
  State s{A(0), A(1)};
  auto eval = [&](const char* hole) {
    std::string text = std::string("let <x1> x2 = ") + hole + " #a0 in @eq x1 x2";
    return run(sig, Configuration{s, FrameStack(), parse_expr(text)}, 10000);
  };
  Outcome a = eval("fun(f (x : atm) : atm bnd = <#a0>x)");
  Outcome b = eval("fun(f (x : atm) : atm bnd = <#a1>x)");
  bool ok = a.terminated() && b.terminated() && print(*a.value) == "Zero()" &&
            print(*b.value) == "Succ(Zero())";
  return {ok, format_outcome(a) + " / " + format_outcome(b)};
}

Result conjecture_witness() {
  Signature sig = lambda_signature(make_registry({"eq", "ord"}));
  CiuOptions o;
  o.fuel = 10000;
  o.trials = 200;
  ConjectureReport r = test_example_conjecture(sig, o);
  return {r.witness_holds, "v' " + format_outcome(r.v_prime_run) + ", v " + format_outcome(r.v_run) +
                               "; CONJECTURE ciu: " + r.conjecture.label()};
}

// Atoms created during a run need not be images of each other under π, so the
// two final states are matched position by position instead.
Permutation matching(const State& x, const State& y) {
  std::vector<Atom> from = x.atoms(), to = y.atoms();
  World xs = x.world(), ys = y.world();
  std::vector<Atom> only_x, only_y;
  for (Atom a : xs) if (!ys.count(a)) only_x.push_back(a);
  for (Atom a : ys) if (!xs.count(a)) only_y.push_back(a);
  from.insert(from.end(), only_y.begin(), only_y.end());
  to.insert(to.end(), only_x.begin(), only_x.end());
  return Permutation::from_mapping(from, to);
}

Result termination_equivariance() {
  Signature sig = full_lambda();
  std::size_t ok = 0;
  for (std::size_t i = 0; i < 1000; ++i) {
    Rng rng(derive_seed(301, i));
    GeneratedConfig g = gen_config(sig, rng);
    std::vector<Atom> from;
    for (std::uint32_t k = 0; k < 12; ++k) from.push_back(A(k));
    std::vector<Atom> to = from;
    std::shuffle(to.begin(), to.end(), rng);
    Permutation pi = Permutation::from_mapping(from, to);
    Outcome a = run(sig, g.cfg, 5000), b = run(sig, perm_apply(pi, g.cfg), 5000);
    ok += a.same_verdict(b) &&
          (!a.terminated() || *b.value == perm_apply(matching(a.final_state, b.final_state), *a.value));
  }
  return {ok == 1000, fmt("%zu/1000 identical verdicts", ok)};
}

Result safety() {
  SafetyReport r = check_safety(full_lambda(), 1000, 200, 302);
  return {r.pass(), fmt("%zu/%zu configurations, %llu steps checked", r.passed, r.configs,
                        static_cast<unsigned long long>(r.steps_checked))};
}

// Verdict or step count changes when an extra atom is put in front of s.
bool prepend_changes(const Signature& sig, std::uint64_t seed) {
  Rng rng(seed);
  GeneratedConfig g = gen_config(sig, rng);
  // well-formedness puts every atom of F and e in s
  const World w = g.cfg.state.world();
  Atom extra{w.empty() ? 0 : w.rbegin()->id + 1};
  Outcome a = run(sig, g.cfg, 5000);
  Outcome b = run(sig, Configuration{g.cfg.state.prepend(extra), g.cfg.stack, g.cfg.expr}, 5000);
  return !a.same_verdict(b);
}

Result affine_invariance() {
  Signature affine = lambda_signature(make_registry({"eq", "lt"}));
  std::size_t same = 0;
  for (std::size_t i = 0; i < 1000; ++i) same += !prepend_changes(affine, derive_seed(303, i));
  Signature with_ord = lambda_signature(make_registry({"eq", "ord"}));
  std::size_t found_at = 0;
  for (std::size_t i = 0; i < 200 && !found_at; ++i) {
    if (prepend_changes(with_ord, derive_seed(304, i))) found_at = i + 1;
  }
  return {same == 1000 && found_at != 0,
          fmt("{eq,lt} %zu/1000 unchanged; {eq,ord} difference at sample %zu", same, found_at)};
}

Result observation_checkers() {
  bool ok = true;
  std::string detail;
  for (const char* n : {"eq", "lt", "ord", "card"}) {
    bool p = check_equivariance(*builtin_observation(n), 1000, 305).pass;
    ok &= p;
    detail += fmt("equi(%s)=%s ", n, p ? "pass" : "fail");
  }
  bool raw = check_equivariance(*builtin_observation("raw_index"), 1000, 305).pass;
  ok &= !raw;
  detail += fmt("equi(raw_index)=%s ", raw ? "pass" : "fail");
  for (const char* n : {"eq", "lt"}) {
    bool p = check_affine(*builtin_observation(n), 1000, 306).pass;
    ok &= p;
    detail += fmt("affine(%s)=%s ", n, p ? "pass" : "fail");
  }
  for (const char* n : {"ord", "card"}) {
    bool p = check_affine(*builtin_observation(n), 100, 306).pass;
    ok &= !p;
    detail += fmt("affine(%s)=%s ", n, p ? "pass" : "fail");
  }
  return {ok, detail};
}

Result representation() {
  CiuOptions o;
  o.trials = 2000;
  o.fuel = 10000;
  o.seed = 307;
  RepresentationReport r = test_correctness_of_representation(lambda_signature(), parse_type("term"), 200, o);
  std::string detail = fmt("%zu pairs, %zu alpha-equivalent, %zu violations, %zu inconclusive", r.pairs,
                           r.alpha_equivalent, r.violations.size(), r.inconclusive);
  if (!r.violations.empty()) detail += "; first: " + r.violations.front();
  return {r.pairs == 200 && r.violations.empty(), detail};
}

Result cross_oracle() {
  Signature sig = lambda_signature();
  Rng rng(308);
  std::vector<Atom> atoms{A(0), A(1), A(2), A(3)};
  World w(atoms.begin(), atoms.end());
  std::size_t agree = 0, equal = 0;
  for (int i = 0; i < 500; ++i) {
    auto [t1, t2] = gen_lambda_pair(rng, atoms, 4);
    bool expected = lambda_alpha(t1, t2);
    equal += expected;
    agree += alpha_eq(sig, w, rep(t1), rep(t2), parse_type("term")) == expected;
  }
  return {agree == 500, fmt("%zu/500 agree (%zu alpha-equivalent)", agree, equal)};
}

Result fresh_policy() {
  Signature sig = full_lambda();
  std::size_t ok = 0;
  for (std::size_t i = 0; i < 500; ++i) {
    Rng rng(derive_seed(309, i));
    GeneratedConfig g = gen_config(sig, rng);
    RunOptions least, greatest;
    least.fuel = greatest.fuel = 5000;
    greatest.policy = FreshPolicy::GreatestPlusOne;
    Outcome a = run(sig, g.cfg, least), b = run(sig, g.cfg, greatest);
    ok += a.same_verdict(b);
  }
  return {ok == 500, fmt("%zu/500 identical verdicts", ok)};
}

Result stack_correspondence() {
  Signature sig = full_lambda();
  const std::uint64_t fuel = 5000;
  std::size_t ok = 0, terminated = 0, admin_exact = 0;
  for (std::size_t i = 0; i < 200; ++i) {
    Rng rng(derive_seed(310, i));
    GeneratedConfig g = gen_config(sig, rng);
    std::uint64_t depth = g.cfg.stack.depth();
    Outcome a = run(sig, g.cfg, fuel);
    Outcome b = run(sig, Configuration{g.cfg.state, FrameStack(), stack_apply(g.cfg.stack, g.cfg.expr)},
                    fuel + depth);
    bool same = a.kind == b.kind;
    if (same && a.terminated()) {
      same = *a.value == *b.value;
      ++terminated;
      admin_exact += b.steps == a.steps + depth;
    }
    ok += same;
  }
  return {ok == 200, fmt("%zu/200 verdicts agree; %zu/%zu terminating runs take exactly depth(F) extra let steps",
                         ok, admin_exact, terminated)};
}

Result swap_involution() {
  Signature sig = lambda_signature();
  std::vector<Type> arities;
  for (const char* t : {"atm", "unit", "nat", "term", "atm bnd", "term bnd", "atm * term", "(atm * atm) bnd bnd",
                        "term * nat", "(term * atm bnd) bnd"}) {
    arities.push_back(parse_type(t));
  }
  World w{A(0), A(1), A(2), A(3)};
  State s(std::vector<Atom>(w.begin(), w.end()));
  Rng rng(311);
  std::size_t ok = 0;
  for (std::size_t i = 0; i < 300; ++i) {
    const Type& ar = arities[i % arities.size()];
    Value sw = gen_swap(sig, ar);
    Value v = gen_value(sig, ar, w, 3, rng);
    Value a = Value::atom(A(static_cast<std::uint32_t>(uniform(rng, 0, 3))));
    Value b = Value::atom(A(static_cast<std::uint32_t>(uniform(rng, 0, 3))));
    Outcome once = run(sig, Configuration{s, FrameStack(), apply_curried(sw, {a, b, v})}, 100000);
    if (!once.terminated()) continue;
    Outcome twice = run(sig, Configuration{once.final_state, FrameStack(), apply_curried(sw, {a, b, *once.value})},
                        100000);
    if (!twice.terminated()) continue;
    ok += alpha_eq(sig, twice.final_state.world(), *twice.value, v, ar);
  }
  return {ok == 300, fmt("%zu/300 returned to an alpha-equivalent value", ok)};
}

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {"1 object-level binding distinguisher", 1, remark},
      {"2 conjecture example witness", 1, conjecture_witness},
      {"3 termination equivariance", 60, termination_equivariance},
      {"4 type safety", 60, safety},
      {"5 affine state-prepend invariance", 0, affine_invariance},
      {"6 observation checkers", 0, observation_checkers},
      {"7 correctness of representation", 600, representation},
      {"8 cross-oracle agreement", 30, cross_oracle},
      {"9 fresh-atom policy irrelevance", 0, fresh_policy},
      {"10 stack/expression correspondence", 0, stack_correspondence},
      {"11 swap involution", 0, swap_involution},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Result r;
    try {
      r = c.body();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_time = c.limit_seconds == 0 || secs < c.limit_seconds;
    bool pass = r.pass && in_time;
    failures += !pass;
    std::printf("%s [%s] %.2fs%s: %s\n", pass ? "PASS" : "FAIL", c.name.c_str(), secs,
                in_time ? "" : fmt(" (limit %.0fs)", c.limit_seconds).c_str(), r.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
