#include "freshml/machine.hpp"

#include "freshml/overloaded.hpp"
#include "freshml/printer.hpp"
#include "freshml/typecheck.hpp"

namespace freshml {

Atom fresh_atom(const State& s, FreshPolicy policy) {
  if (policy == FreshPolicy::LeastUnused) return least_atom_not_in(s.world());
  std::uint32_t next = 0;
  for (Atom a : s.atoms()) next = std::max(next, a.id + 1);
  return Atom{next};
}

namespace {

StepResult next(Configuration cfg, int rule) {
  StepResult r;
  r.kind = StepResult::Kind::Next;
  r.next = std::move(cfg);
  r.rule = rule;
  return r;
}

StepResult stuck(std::string reason) {
  StepResult r;
  r.kind = StepResult::Kind::Stuck;
  r.reason = std::move(reason);
  return r;
}

}  // namespace

StepResult step(const Signature& sig, const Configuration& cfg, FreshPolicy policy) {
  const State& s = cfg.state;
  const FrameStack& f = cfg.stack;
  const Expr& e = cfg.expr;
  return std::visit(
      overloaded{
          [&](const Expr::Val& x) -> StepResult {
            if (f.empty()) {
              StepResult r;
              r.kind = StepResult::Kind::Terminal;
              r.value = x.value;
              return r;
            }
            const Frame& top = f.top();  // rule 1
            return next({s, f.pop(), substitute(top.body, {{top.var, x.value}})}, 1);
          },
          [&](const Expr::Let& x) -> StepResult {  // rule 2
            return next({s, f.push(Frame{x.var, x.body}), x.bound}, 2);
          },
          [&](const Expr::Match& x) -> StepResult {  // rule 3
            const auto* c = x.scrutinee.as_con();
            if (!c) return stuck("E_TYPE match on non-constructor " + print(x.scrutinee));
            for (const auto& arm : x.arms) {
              if (arm.constructor == c->constructor) {
                return next({s, f, substitute(arm.body, {{arm.var, c->arg}})}, 3);
              }
            }
            return stuck("E_NONEXHAUSTIVE_MATCH no arm for " + c->constructor);
          },
          [&](const Expr::Fst& x) -> StepResult {  // rule 4
            const auto* p = x.arg.as_pair();
            if (!p) return stuck("E_TYPE fst of non-pair " + print(x.arg));
            return next({s, f, p->first}, 4);
          },
          [&](const Expr::Snd& x) -> StepResult {  // rule 5
            const auto* p = x.arg.as_pair();
            if (!p) return stuck("E_TYPE snd of non-pair " + print(x.arg));
            return next({s, f, p->second}, 5);
          },
          [&](const Expr::App& x) -> StepResult {  // rule 6
            const auto* fn = x.fn.as_fun();
            if (!fn) return stuck("E_TYPE application of non-function " + print(x.fn));
            return next({s, f, substitute(fn->body, {{fn->self, x.fn}, {fn->param, x.arg}})}, 6);
          },
          [&](const Expr::Fresh&) -> StepResult {  // rule 7
            Atom a = fresh_atom(s, policy);
            return next({s.append(a), f, Value::atom(a)}, 7);
          },
          [&](const Expr::Unbind& x) -> StepResult {  // rule 8
            const auto* b = x.arg.as_bind();
            const auto* a = b ? b->atom.as_atom() : nullptr;
            if (!a) return stuck("E_TYPE unbind of non-binding " + print(x.arg));
            Atom fresh = fresh_atom(s, policy);
            Value renamed = rename_atom(b->body, a->atom, fresh);
            return next({s.append(fresh), f, Value::pair(Value::atom(fresh), renamed)}, 8);
          },
          [&](const Expr::Observe& x) -> StepResult {  // rule 9
            const Observation* o = sig.observations().find(x.name);
            if (!o) return stuck("E_UNKNOWN_OBSERVATION " + x.name);
            if (o->arity != x.args.size()) return stuck("E_ARITY " + print(e));
            std::vector<Atom> args;
            for (const auto& v : x.args) {
              const auto* a = v.as_atom();
              if (!a) return stuck("E_TYPE observation argument " + print(v) + " is not an atom");
              if (!s.contains(a->atom)) return stuck("E_ATOM_ESCAPE " + a->atom.str());
              args.push_back(a->atom);
            }
            return next({s, f, numeral(o->eval(s, args))}, 9);
          },
      },
      e.node().alt);
}

namespace {

// A rule-6 step that lands on an application with the very same function and
// argument nodes, the same stack and the same state is a fixed point of the
// transition function.
bool repeats(const Configuration& before, const Configuration& after) {
  const auto* a = before.expr.as_app();
  const auto* b = after.expr.as_app();
  return a && b && a->fn.identity() == b->fn.identity() &&
         a->arg.identity() == b->arg.identity() &&
         before.stack.identity() == after.stack.identity() && before.state == after.state;
}

}  // namespace

Outcome run(const Signature& sig, const Configuration& cfg, const RunOptions& options) {
  Outcome out;
  if (!cfg.well_formed()) {
    out.kind = Outcome::Kind::Stuck;
    out.reason = "E_ATOM_ESCAPE configuration mentions atoms outside " + cfg.state.str();
    out.stuck = cfg;
    return out;
  }
  std::optional<Type> initial_type;
  if (options.check_preservation) initial_type = check_config(sig, cfg).second;

  Configuration cur = cfg;
  for (std::uint64_t n = 0;; ++n) {
    StepResult r = step(sig, cur, options.policy);
    if (r.kind == StepResult::Kind::Terminal) {
      out.kind = Outcome::Kind::Terminated;
      out.steps = n;
      out.final_state = cur.state;
      out.value = r.value;
      if (initial_type) {
        check_config_against(sig, cur, *initial_type);
        if (!is_subset(cfg.state.world(), cur.state.world())) {
          throw Error(ErrorCode::AtomEscape, "world shrank during evaluation");
        }
      }
      return out;
    }
    if (r.kind == StepResult::Kind::Stuck) {
      out.kind = Outcome::Kind::Stuck;
      out.steps = n;
      out.reason = r.reason;
      out.stuck = cur;
      return out;
    }
    if (n == options.fuel) {
      out.kind = Outcome::Kind::FuelExhausted;
      out.steps = options.fuel;
      return out;
    }
    if (options.detect_self_loops && r.rule == 6 && repeats(cur, *r.next)) {
      out.kind = Outcome::Kind::FuelExhausted;
      out.steps = options.fuel;
      return out;
    }
    cur = std::move(*r.next);
  }
}

Outcome run(const Signature& sig, const Configuration& cfg, std::uint64_t fuel) {
  RunOptions options;
  options.fuel = fuel;
  return run(sig, cfg, options);
}

std::vector<Configuration> trace(const Signature& sig, const Configuration& cfg,
                                 std::uint64_t fuel, FreshPolicy policy) {
  std::vector<Configuration> out{cfg};
  Configuration cur = cfg;
  for (std::uint64_t n = 0; n < fuel; ++n) {
    StepResult r = step(sig, cur, policy);
    if (r.kind != StepResult::Kind::Next) break;
    cur = std::move(*r.next);
    out.push_back(cur);
  }
  return out;
}

Expr stack_apply(const FrameStack& f, const Expr& e) {
  if (f.empty()) return e;
  const Frame& top = f.top();
  return stack_apply(f.pop(), Expr::let(top.var, e, top.body));
}

std::string format_trace_line(std::size_t n, const Configuration& cfg) {
  return std::to_string(n) + " | state=" + cfg.state.str() +
         " | stack_depth=" + std::to_string(cfg.stack.depth()) + " | expr=" + print(cfg.expr);
}

std::string format_outcome(const Outcome& o) {
  switch (o.kind) {
    case Outcome::Kind::Terminated:
      return "TERMINATED " + std::to_string(o.steps) + " " + print(*o.value);
    case Outcome::Kind::FuelExhausted:
      return "FUEL " + std::to_string(o.steps);
    case Outcome::Kind::Stuck:
      return "STUCK " + o.reason;
  }
  return "";
}

int outcome_exit_code(const Outcome& o) {
  switch (o.kind) {
    case Outcome::Kind::Terminated: return 0;
    case Outcome::Kind::FuelExhausted: return 2;
    case Outcome::Kind::Stuck: return 3;
  }
  return 3;
}

}  // namespace freshml
