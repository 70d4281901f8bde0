#include "freshml/harness.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "freshml/nominal.hpp"
#include "freshml/overloaded.hpp"
#include "freshml/printer.hpp"

namespace freshml {

namespace {

using Env = std::vector<std::pair<Variable, Type>>;
using Prelude = std::vector<std::pair<Variable, Expr>>;

Expr wrap(const Prelude& pre, Expr body) {
  for (auto it = pre.rbegin(); it != pre.rend(); ++it) body = Expr::let(it->first, it->second, body);
  return body;
}

std::size_t down(std::size_t depth) { return depth == 0 ? 0 : depth - 1; }

Env extend(Env env, Variable x, Type t) {
  env.emplace_back(std::move(x), std::move(t));
  return env;
}

std::vector<Type> data_types(const Signature& sig) {
  std::vector<Type> out;
  for (const auto& d : sig.datatypes()) {
    Type t = Type::data(d.name);
    if (min_depth(sig, t)) out.push_back(t);
  }
  return out;
}

class ExprGen {
 public:
  ExprGen(const Signature& sig, Rng& rng, const World& atoms, GenOptions options)
      : sig_(sig), rng_(rng), atoms_(atoms.begin(), atoms.end()), options_(options) {
    for (const auto& o : sig.observations().all()) observations_.push_back(&o);
  }

  Variable var(const char* base) { return std::string(base) + "%" + std::to_string(next_++); }

  Value value(const Env& env, const Type& t, std::size_t depth, Prelude& pre) {
    std::vector<Variable> same;
    for (const auto& [x, xt] : env) {
      if (xt == t) same.push_back(x);
    }
    if (!same.empty() && chance(rng_, 0.5)) return Value::var(pick(rng_, same));
    return std::visit(
        overloaded{
            [&](const Type::Unit&) -> Value { return Value::unit(); },
            [&](const Type::Meta&) -> Value { return Value::unit(); },
            [&](const Type::Atm&) -> Value { return atom_value(pre); },
            [&](const Type::Prod& p) -> Value {
              Value l = value(env, p.left, depth, pre);
              return Value::pair(l, value(env, p.right, depth, pre));
            },
            [&](const Type::Bnd& b) -> Value {
              Value a = atom_value(pre);
              return Value::bind(a, value(env, b.body, depth, pre));
            },
            [&](const Type::Data& d) -> Value {
              const Constructor& c = constructor(d.name, depth);
              return Value::con(c.name, value(env, c.arg, down(depth), pre));
            },
            [&](const Type::Arrow& a) -> Value {
              Variable f = var("f"), x = var("x");
              Env inner = extend(env, x, a.from);
              if (options_.allow_recursion) inner = extend(inner, f, t);
              return Value::fun(f, x, expr(inner, a.to, down(depth)), a.from, a.to);
            },
        },
        t.node().alt);
  }

  Expr expr(const Env& env, const Type& t, std::size_t depth) {
    std::vector<std::function<std::optional<Expr>()>> forms;
    // Plain values are always available and dominate at depth 0.
    auto plain = [&]() -> std::optional<Expr> {
      Prelude pre;
      Value v = value(env, t, depth, pre);
      return wrap(pre, v);
    };
    forms.push_back(plain);
    if (t.is_atm()) forms.push_back([&]() -> std::optional<Expr> { return Expr::fresh(); });
    if (t == Type::nat()) forms.push_back([&]() { return observe(); });
    if (const auto* p = t.as_prod(); p && p->left.is_atm()) {
      forms.push_back([&, p]() -> std::optional<Expr> {
        Prelude pre;
        Value b = value(env, Type::bnd(p->right), depth, pre);
        return wrap(pre, Expr::unbind(b));
      });
    }
    forms.push_back([&]() { return projection(env, t, depth); });
    if (depth > 0) {
      forms.push_back([&]() { return let_form(env, t, depth); });
      forms.push_back([&]() { return let_form(env, t, depth); });
      forms.push_back([&]() { return observe_branch(env, t, depth); });
      forms.push_back([&]() { return observe_branch(env, t, depth); });
      forms.push_back([&]() { return match_form(env, t, depth); });
      forms.push_back([&]() { return application(env, t, depth); });
      forms.push_back([&]() { return application(env, t, depth); });
    }
    for (int attempt = 0; attempt < 8; ++attempt) {
      if (auto e = pick(rng_, forms)()) return *e;
    }
    return *plain();
  }

  std::vector<Atom>& atoms() { return atoms_; }
  const std::vector<const Observation*>& observations() const { return observations_; }

  /// Closed values cannot lean on a let-bound fresh() for their atoms.
  void literal_atoms_only() { literal_only_ = true; }

  Value atom_value(Prelude& pre) {
    if (!atoms_.empty() && (literal_only_ || chance(rng_, 0.8))) return Value::atom(pick(rng_, atoms_));
    Variable x = var("a");
    pre.emplace_back(x, Expr::fresh());
    return Value::var(x);
  }

 private:
  const Constructor& constructor(const std::string& name, std::size_t depth) {
    const DataType* dt = sig_.find_type(name);
    std::vector<const Constructor*> options;
    std::size_t best = SIZE_MAX;
    for (const auto& c : dt->constructors) {
      if (auto d = min_depth(sig_, c.arg)) best = std::min(best, *d);
    }
    for (const auto& c : dt->constructors) {
      auto d = min_depth(sig_, c.arg);
      if (!d || (depth == 0 && *d != best)) continue;
      options.push_back(&c);
    }
    return *pick(rng_, options);
  }

  std::optional<Expr> observe() {
    if (observations_.empty()) return std::nullopt;
    const Observation* o = pick(rng_, observations_);
    Prelude pre;
    std::vector<Value> args;
    for (std::size_t i = 0; i < o->arity; ++i) args.push_back(atom_value(pre));
    return wrap(pre, Expr::observe(o->name, std::move(args)));
  }

  std::optional<Expr> let_form(const Env& env, const Type& t, std::size_t depth) {
    Type bound_type = gen_type(sig_, rng_, 1, depth > 1);
    Variable x = var("x");
    Expr bound = expr(env, bound_type, down(depth));
    return Expr::let(x, bound, expr(extend(env, x, bound_type), t, down(depth)));
  }

  // let n = @o args in match n with (Zero z -> e1 | Succ m -> e2)
  std::optional<Expr> observe_branch(const Env& env, const Type& t, std::size_t depth) {
    auto obs = observe();
    if (!obs) return std::nullopt;
    Variable n = var("n"), z = var("z"), m = var("m");
    Expr zero = expr(extend(env, z, Type::unit()), t, down(depth));
    Expr succ = expr(extend(env, m, Type::nat()), t, down(depth));
    return Expr::let(n, *obs,
                     Expr::match(Value::var(n), {MatchArm{"Zero", z, zero}, MatchArm{"Succ", m, succ}}));
  }

  std::optional<Expr> match_form(const Env& env, const Type& t, std::size_t depth) {
    std::vector<std::pair<Variable, Type>> scrutinees;
    for (const auto& [x, xt] : env) {
      if (xt.as_data()) scrutinees.emplace_back(x, xt);
    }
    Prelude pre;
    Value scrutinee = Value::unit();
    Type st = Type::unit();
    if (!scrutinees.empty() && chance(rng_, 0.7)) {
      const auto& [x, xt] = pick(rng_, scrutinees);
      scrutinee = Value::var(x);
      st = xt;
    } else {
      auto types = data_types(sig_);
      st = pick(rng_, types);
      scrutinee = value(env, st, down(depth), pre);
    }
    const DataType* dt = sig_.find_type(st.as_data()->name);
    std::vector<MatchArm> arms;
    for (const auto& c : dt->constructors) {
      Variable y = var("y");
      arms.push_back(MatchArm{c.name, y, expr(extend(env, y, c.arg), t, down(depth))});
    }
    return wrap(pre, Expr::match(scrutinee, std::move(arms)));
  }

  std::optional<Expr> projection(const Env& env, const Type& t, std::size_t depth) {
    for (const auto& [x, xt] : env) {
      const auto* p = xt.as_prod();
      if (p && p->left == t && chance(rng_, 0.5)) return Expr::fst(Value::var(x));
      if (p && p->right == t && chance(rng_, 0.5)) return Expr::snd(Value::var(x));
    }
    Prelude pre;
    Type other = gen_type(sig_, rng_, 0, false);
    Value mine = value(env, t, down(depth), pre);
    Value theirs = value(env, other, down(depth), pre);
    if (chance(rng_, 0.5)) return wrap(pre, Expr::fst(Value::pair(mine, theirs)));
    return wrap(pre, Expr::snd(Value::pair(theirs, mine)));
  }

  std::optional<Expr> application(const Env& env, const Type& t, std::size_t depth) {
    std::vector<std::pair<Variable, Type>> fns;
    for (const auto& [x, xt] : env) {
      if (const auto* a = xt.as_arrow(); a && a->to == t) fns.emplace_back(x, a->from);
    }
    Prelude pre;
    if (!fns.empty() && chance(rng_, 0.5)) {
      const auto& [f, from] = pick(rng_, fns);
      Value arg = value(env, from, down(depth), pre);
      return wrap(pre, Expr::app(Value::var(f), arg));
    }
    Type from = gen_type(sig_, rng_, 1, false);
    Value fn = value(env, Type::arrow(from, t), depth, pre);
    if (fn.as_var()) return std::nullopt;
    Value arg = value(env, from, down(depth), pre);
    return wrap(pre, Expr::app(fn, arg));
  }

  const Signature& sig_;
  Rng& rng_;
  std::vector<Atom> atoms_;
  GenOptions options_;
  std::vector<const Observation*> observations_;
  std::size_t next_ = 0;
  bool literal_only_ = false;
};

Env env_of(const TypingEnv& env) { return Env(env.begin(), env.end()); }

}  // namespace

Type gen_type(const Signature& sig, Rng& rng, std::size_t depth, bool arrows) {
  std::vector<Type> leaves{Type::unit(), Type::atm(), Type::nat()};
  for (const auto& d : data_types(sig)) {
    if (!(d == Type::nat())) leaves.push_back(d);
  }
  if (depth == 0 || chance(rng, 0.5)) return pick(rng, leaves);
  std::size_t choice = uniform(rng, 0, arrows ? 2 : 1);
  if (choice == 0) {
    Type l = gen_type(sig, rng, depth - 1, arrows);
    return Type::prod(l, gen_type(sig, rng, depth - 1, arrows));
  }
  if (choice == 1) return Type::bnd(gen_type(sig, rng, depth - 1, arrows));
  Type from = gen_type(sig, rng, depth - 1, arrows);
  return Type::arrow(from, gen_type(sig, rng, depth - 1, arrows));
}

Expr gen_expr(const Signature& sig, Rng& rng, const TypingEnv& env, const Type& t,
              const World& atoms, const GenOptions& options) {
  return ExprGen(sig, rng, atoms, options).expr(env_of(env), t, options.max_depth);
}

Value gen_closed_value(const Signature& sig, Rng& rng, const Type& t, const World& atoms,
                       const GenOptions& options) {
  // With an empty world, atoms come from a world of one.
  ExprGen gen(sig, rng, atoms.empty() ? World{Atom{0}} : atoms, options);
  gen.literal_atoms_only();
  Prelude pre;
  return gen.value({}, t, options.max_depth, pre);
}

Expr diverge(const Type& t) {
  Value loop = Value::fun("diverge", "u", Expr::app(Value::var("diverge"), Value::var("u")),
                          Type::unit(), t);
  return Expr::app(loop, Value::unit());
}

GeneratedConfig gen_config(const Signature& sig, Rng& rng, const GenOptions& options) {
  std::vector<Atom> atoms;
  for (std::uint32_t i = 0; i < 6; ++i) atoms.push_back(Atom{i});
  std::shuffle(atoms.begin(), atoms.end(), rng);
  atoms.resize(uniform(rng, 0, 4));
  State s(atoms);
  Type t = gen_type(sig, rng, 2);
  Expr e = gen_expr(sig, rng, {}, t, s.world(), options);
  StackGenSpec spec;
  spec.argument = t;
  spec.world = s.world();
  spec.max_depth = uniform(rng, 0, 3);
  auto [f, result] = gen_stack(sig, spec, rng);
  return {Configuration{s, f, e}, result};
}

// ---------------------------------------------------------------------------
// Stacks.

namespace {

class StackGen {
 public:
  StackGen(const Signature& sig, const StackGenSpec& spec, Rng& rng)
      : sig_(sig), spec_(spec), rng_(rng), gen_(sig, rng, spec.world, GenOptions{2, false}) {}

  std::pair<FrameStack, Type> run() {
    if (spec_.max_depth == 0) return {FrameStack(), spec_.argument};
    std::vector<Frame> top_first;
    Type t = spec_.argument;
    std::size_t depth = uniform(rng_, 1, spec_.max_depth);
    for (std::size_t i = 0; i < depth; ++i) {
      bool last = i + 1 == depth;
      Variable x = gen_.var("x");
      auto [body, next] = consumer(x, t, last);
      top_first.push_back(Frame{x, body});
      t = next;
    }
    std::reverse(top_first.begin(), top_first.end());
    return {FrameStack::from_frames(top_first), t};
  }

 private:
  using Candidate = std::function<std::optional<std::pair<Expr, Type>>()>;

  std::pair<Expr, Type> consumer(const Variable& x, const Type& t, bool last) {
    std::vector<std::pair<double, Candidate>> cands;
    Value xv = Value::var(x);
    const Type nat = Type::nat();

    cands.emplace_back(last ? 0.5 : 1.0, [&]() -> std::optional<std::pair<Expr, Type>> {
      Type rt = chance(rng_, 0.5) ? nat : gen_type(sig_, rng_, 1, false);
      return std::pair{gen_.expr({{x, t}}, rt, 2), rt};
    });
    if (t == nat) {
      cands.emplace_back(last ? 6.0 : 1.0, [&]() -> std::optional<std::pair<Expr, Type>> {
        return std::pair{termination_test(xv), Type::unit()};
      });
    }
    if (const auto* p = t.as_prod()) {
      cands.emplace_back(1.0, [&, p]() -> std::optional<std::pair<Expr, Type>> {
        return std::pair{Expr::fst(xv), p->left};
      });
      cands.emplace_back(1.0, [&, p]() -> std::optional<std::pair<Expr, Type>> {
        return std::pair{Expr::snd(xv), p->right};
      });
      if (p->left.is_atm() && p->right.is_atm()) {
        cands.emplace_back(2.0, [&]() -> std::optional<std::pair<Expr, Type>> {
          Variable l = gen_.var("l"), r = gen_.var("r");
          Expr e = Expr::let(l, Expr::fst(xv),
                             Expr::let(r, Expr::snd(xv),
                                       Expr::observe("eq", {Value::var(l), Value::var(r)})));
          return std::pair{e, nat};
        });
      }
    }
    if (const auto* a = t.as_arrow()) {
      cands.emplace_back(3.0, [&, a]() -> std::optional<std::pair<Expr, Type>> {
        Prelude pre;
        Value arg = gen_.value({}, a->from, 2, pre);
        return std::pair{wrap(pre, Expr::app(xv, arg)), a->to};
      });
    }
    if (const auto* d = t.as_data()) {
      const DataType* dt = sig_.find_type(d->name);
      cands.emplace_back(last ? 2.0 : 1.0, [&, dt]() -> std::optional<std::pair<Expr, Type>> {
        std::vector<MatchArm> arms;
        for (std::size_t i = 0; i < dt->constructors.size(); ++i) {
          arms.push_back(MatchArm{dt->constructors[i].name, gen_.var("y"), numeral(i)});
        }
        return std::pair{Expr::match(xv, std::move(arms)), nat};
      });
      cands.emplace_back(2.0, [&, dt]() -> std::optional<std::pair<Expr, Type>> {
        std::size_t j = uniform(rng_, 0, dt->constructors.size() - 1);
        const Type& tj = dt->constructors[j].arg;
        std::vector<MatchArm> arms;
        for (std::size_t i = 0; i < dt->constructors.size(); ++i) {
          Variable y = gen_.var("y");
          arms.push_back(MatchArm{dt->constructors[i].name, y, i == j ? Expr(Value::var(y)) : diverge(tj)});
        }
        return std::pair{Expr::match(xv, std::move(arms)), tj};
      });
    }
    if (t.is_atm()) {
      if (!gen_.atoms().empty()) {
        cands.emplace_back(3.0, [&]() -> std::optional<std::pair<Expr, Type>> {
          Atom a = pick(rng_, gen_.atoms());
          Variable y = gen_.var("y");
          bool zero_terminates = chance(rng_, 0.7);
          Expr ok = Value::unit();
          Expr bad = diverge(Type::unit());
          Expr e = Expr::let(y, Expr::observe("eq", {xv, Value::atom(a)}),
                             Expr::match(Value::var(y),
                                         {MatchArm{"Zero", gen_.var("u"), zero_terminates ? ok : bad},
                                          MatchArm{"Succ", gen_.var("z"), zero_terminates ? bad : ok}}));
          return std::pair{e, Type::unit()};
        });
      }
      std::vector<const Observation*> unary;
      for (const auto* o : gen_.observations()) {
        if (o->arity >= 1) unary.push_back(o);
      }
      if (!unary.empty()) {
        cands.emplace_back(2.0, [&, unary]() -> std::optional<std::pair<Expr, Type>> {
          const Observation* o = pick(rng_, unary);
          Prelude pre;
          std::vector<Value> args;
          std::size_t slot = uniform(rng_, 0, o->arity - 1);
          for (std::size_t i = 0; i < o->arity; ++i) args.push_back(i == slot ? xv : gen_.atom_value(pre));
          return std::pair{wrap(pre, Expr::observe(o->name, std::move(args))), nat};
        });
      }
    }
    if (const auto* b = t.as_bnd()) {
      cands.emplace_back(3.0, [&, b]() -> std::optional<std::pair<Expr, Type>> {
        return std::pair{Expr::unbind(xv), Type::prod(Type::atm(), b->body)};
      });
    }
    if (is_nominal_arity(sig_, t)) {
      cands.emplace_back(3.0, [&]() -> std::optional<std::pair<Expr, Type>> {
        auto other = comparand(t);
        if (!other) return std::nullopt;
        return std::pair{apply_curried(aeq(t), {xv, *other}), nat};
      });
    }

    double total = 0;
    for (const auto& c : cands) total += c.first;
    for (int attempt = 0; attempt < 8; ++attempt) {
      double r = std::uniform_real_distribution<double>(0, total)(rng_);
      for (const auto& c : cands) {
        if ((r -= c.first) <= 0) {
          if (auto out = c.second()) return *out;
          break;
        }
      }
    }
    return {xv, t};
  }

  Expr termination_test(const Value& n) {
    bool zero_terminates = chance(rng_, 0.5);
    Expr ok = Value::unit();
    Expr bad = diverge(Type::unit());
    return Expr::match(n, {MatchArm{"Zero", gen_.var("u"), zero_terminates ? ok : bad},
                           MatchArm{"Succ", gen_.var("z"), zero_terminates ? bad : ok}});
  }

  std::optional<Value> comparand(const Type& t) {
    std::vector<Value> same;
    for (const auto& p : spec_.pool) {
      if (p.type == t) same.push_back(p.value);
    }
    if (!same.empty() && chance(rng_, 0.7)) return pick(rng_, same);
    try {
      return gen_value(sig_, t, spec_.world, 3, rng_);
    } catch (const Error&) {
      return std::nullopt;
    }
  }

  Value aeq(const Type& t) {
    std::string key = t.str();
    auto it = aeq_cache_.find(key);
    if (it == aeq_cache_.end()) it = aeq_cache_.emplace(key, gen_aeq(sig_, t)).first;
    return it->second;
  }

  const Signature& sig_;
  const StackGenSpec& spec_;
  Rng& rng_;
  ExprGen gen_;
  std::map<std::string, Value> aeq_cache_;
};

}  // namespace

std::pair<FrameStack, Type> gen_stack(const Signature& sig, const StackGenSpec& spec, Rng& rng) {
  return StackGen(sig, spec, rng).run();
}

std::pair<FrameStack, Type> gen_stack(const Signature& sig, const StackGenSpec& spec) {
  Rng rng(spec.seed);
  return gen_stack(sig, spec, rng);
}

// ---------------------------------------------------------------------------
// CIU.

std::string CiuVerdict::label() const {
  switch (kind) {
    case Kind::NoCounterexampleFound: return "NoCounterexampleFound";
    case Kind::Distinguished: return "Distinguished";
    case Kind::Inconclusive: return "Inconclusive";
  }
  return "";
}

nlohmann::json outcome_json(const Outcome& o) {
  nlohmann::json j;
  switch (o.kind) {
    case Outcome::Kind::Terminated:
      j["kind"] = "terminated";
      j["value"] = print(*o.value);
      j["final_state"] = o.final_state.str();
      break;
    case Outcome::Kind::FuelExhausted:
      j["kind"] = "fuel";
      break;
    case Outcome::Kind::Stuck:
      j["kind"] = "stuck";
      j["reason"] = o.reason;
      break;
  }
  j["steps"] = o.steps;
  return j;
}

nlohmann::json CiuVerdict::to_json() const {
  nlohmann::json j;
  j["verdict"] = label();
  j["trials"] = trials_run;
  j["inconclusive"] = inconclusive;
  j["fuel"] = fuel;
  j["seed"] = seed;
  if (counterexample) {
    j["counterexample"] = {{"trial", counterexample->trial},
                           {"state", counterexample->state.str()},
                           {"stack", print(counterexample->stack)},
                           {"left", outcome_json(counterexample->left)},
                           {"right", outcome_json(counterexample->right)}};
  }
  return j;
}

namespace {

std::vector<PoolEntry> canonical_pool(const Signature& sig, const CiuOptions& options,
                                      const Expr& e, const Expr& e2, const Type& t) {
  std::vector<PoolEntry> pool = options.pool;
  for (const Expr* x : {&e, &e2}) {
    if (x->is_value() && x->closed()) pool.push_back(PoolEntry{x->as_val()->value, t});
  }
  (void)sig;
  std::vector<std::pair<std::string, PoolEntry>> keyed;
  for (auto& p : pool) keyed.emplace_back(print(p.value) + " : " + p.type.str(), p);
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  keyed.erase(std::unique(keyed.begin(), keyed.end(),
                          [](const auto& a, const auto& b) { return a.first == b.first; }),
              keyed.end());
  std::vector<PoolEntry> out;
  for (auto& [k, p] : keyed) out.push_back(p);
  return out;
}

CiuTrial sample_trial(const Signature& sig, const World& w, const Type& t, const CiuOptions& options,
                      const std::vector<PoolEntry>& pool, std::size_t index) {
  Rng rng(derive_seed(options.seed, index));
  std::uint32_t top = 0;
  for (Atom a : w) top = std::max(top, a.id + 1);
  std::vector<Atom> outside;
  for (std::uint32_t i = 0; i < top + options.extra_atoms + 2; ++i) {
    if (!w.count(Atom{i})) outside.push_back(Atom{i});
  }
  std::shuffle(outside.begin(), outside.end(), rng);
  outside.resize(std::min(outside.size(), uniform(rng, 0, options.extra_atoms)));
  std::vector<Atom> atoms(w.begin(), w.end());
  atoms.insert(atoms.end(), outside.begin(), outside.end());
  std::shuffle(atoms.begin(), atoms.end(), rng);
  State s(atoms);

  StackGenSpec spec;
  spec.argument = t;
  spec.world = s.world();
  spec.max_depth = options.max_stack_depth;
  spec.pool = pool;
  auto [f, result] = gen_stack(sig, spec, rng);
  (void)result;
  return CiuTrial{s, f};
}

}  // namespace

CiuTrial ciu_trial(const Signature& sig, const World& w, const Expr& e, const Expr& e2,
                   const Type& t, const CiuOptions& options, std::size_t index) {
  return sample_trial(sig, w, t, options, canonical_pool(sig, options, e, e2, t), index);
}

CiuVerdict ciu_test(const Signature& sig, const World& w, const Expr& e, const Expr& e2,
                    const Type& t, const CiuOptions& options) {
  auto pool = canonical_pool(sig, options, e, e2, t);
  CiuVerdict verdict;
  verdict.fuel = options.fuel;
  verdict.seed = options.seed;
  RunOptions run_options;
  run_options.fuel = options.fuel;
  for (std::size_t i = 0; i < options.trials; ++i) {
    CiuTrial trial = sample_trial(sig, w, t, options, pool, i);
    Outcome left = run(sig, Configuration{trial.state, trial.stack, e}, run_options);
    Outcome right = run(sig, Configuration{trial.state, trial.stack, e2}, run_options);
    verdict.trials_run = i + 1;
    if (left.terminated() != right.terminated()) {
      verdict.kind = CiuVerdict::Kind::Distinguished;
      verdict.counterexample = CiuCounterexample{i, trial.state, trial.stack, left, right};
      return verdict;
    }
    if (left.kind == Outcome::Kind::FuelExhausted && right.kind == Outcome::Kind::FuelExhausted) {
      ++verdict.inconclusive;
    }
  }
  if (verdict.trials_run > 0 && 2 * verdict.inconclusive > verdict.trials_run) {
    verdict.kind = CiuVerdict::Kind::Inconclusive;
  }
  return verdict;
}

CiuVerdict open_ciu_test(const Signature& sig, const TypingEnv& env, const World& w, const Expr& e,
                         const Expr& e2, const Type& t, const CiuOptions& options) {
  std::size_t instantiations = std::max<std::size_t>(1, std::min<std::size_t>(options.trials, 20));
  std::size_t per = (options.trials + instantiations - 1) / instantiations;
  CiuVerdict total;
  total.fuel = options.fuel;
  total.seed = options.seed;
  for (std::size_t k = 0; k < instantiations; ++k) {
    Rng rng(derive_seed(options.seed ^ 0x6f70656eULL, k));
    World wider = w;
    std::uint32_t next = 0;
    for (Atom a : w) next = std::max(next, a.id + 1);
    std::size_t extra = uniform(rng, wider.empty() ? 1 : 0, 2);
    for (std::size_t i = 0; i < extra; ++i) wider.insert(Atom{next++});

    Substitution closing;
    for (const auto& [x, xt] : env) {
      Value v = is_nominal_arity(sig, xt) ? gen_value(sig, xt, wider, 3, rng)
                                          : gen_closed_value(sig, rng, xt, wider, GenOptions{2, false});
      closing.emplace_back(x, v);
    }
    CiuOptions sub = options;
    sub.trials = per;
    sub.seed = derive_seed(options.seed, k);
    CiuVerdict v = ciu_test(sig, wider, substitute(e, closing), substitute(e2, closing), t, sub);
    total.trials_run += v.trials_run;
    total.inconclusive += v.inconclusive;
    if (v.kind == CiuVerdict::Kind::Distinguished) {
      total.kind = v.kind;
      total.counterexample = v.counterexample;
      return total;
    }
  }
  if (2 * total.inconclusive > total.trials_run) total.kind = CiuVerdict::Kind::Inconclusive;
  return total;
}

// ---------------------------------------------------------------------------
// Reports.

nlohmann::json ExtensionalityReport::to_json() const {
  return {{"fresh", fresh.str()},
          {"bodies", bodies.to_json()},
          {"bindings", bindings.to_json()},
          {"affine_only", affine_only},
          {"consistent", consistent}};
}

ExtensionalityReport test_extensionality_bind(const Signature& sig, const World& w, Atom a,
                                              const Value& v, Atom a2, const Value& v2,
                                              const Type& t, const CiuOptions& options) {
  ExtensionalityReport r;
  r.fresh = least_atom_not_in(w);
  World wider = w;
  wider.insert(r.fresh);
  r.bodies = ciu_test(sig, wider, rename_atom(v, a, r.fresh), rename_atom(v2, a2, r.fresh), t, options);
  Value b1 = Value::bind(Value::atom(a), v);
  Value b2 = Value::bind(Value::atom(a2), v2);
  r.bindings = ciu_test(sig, w, b1, b2, Type::bnd(t), options);
  r.affine_only = sig.observations().all_affine();
  using K = CiuVerdict::Kind;
  bool forward = !(r.bodies.kind == K::NoCounterexampleFound && r.bindings.kind == K::Distinguished);
  bool backward = !r.affine_only ||
                  !(r.bindings.kind == K::NoCounterexampleFound && r.bodies.kind == K::Distinguished);
  r.consistent = forward && backward;
  return r;
}

std::pair<Value, Value> conjecture_values(Atom a) {
  Value v = Value::fun("f", "x", Expr::app(Value::var("f"), Value::var("x")), Type::unit(),
                       Type::unit());
  Expr body = Expr::let(
      "n", Expr::observe("ord", {Value::atom(a)}),
      Expr::match(Value::var("n"), {MatchArm{"Zero", "z", Value::unit()},
                                    MatchArm{"Succ", "y", Expr::app(v, Value::unit())}}));
  Value v2 = Value::fun("f", "x", body, Type::unit(), Type::unit());
  return {v, v2};
}

nlohmann::json ConjectureReport::to_json() const {
  return {{"witness", {{"v_prime", outcome_json(v_prime_run)}, {"v", outcome_json(v_run)}}},
          {"witness_holds", witness_holds},
          {"conjecture", conjecture.to_json()},
          {"conjecture_label", "CONJECTURE"}};
}

ConjectureReport test_example_conjecture(const Signature& sig, const CiuOptions& options) {
  if (!sig.observations().find("ord")) {
    throw Error(ErrorCode::UnknownObservation, "the conjecture example needs ord registered");
  }
  Atom a{0}, a2{1};
  auto [v, v2] = conjecture_values(a);
  State s{a2, a};
  Variable x = "x";
  FrameStack f = FrameStack().push(Frame{x, Expr::app(Value::var(x), Value::unit())});
  RunOptions run_options;
  run_options.fuel = options.fuel;
  ConjectureReport r;
  r.v_prime_run = run(sig, Configuration{s, f, rename_atom(v2, a, a2)}, run_options);
  r.v_run = run(sig, Configuration{s, f, rename_atom(v, a, a2)}, run_options);
  r.witness_holds = r.v_prime_run.terminated() && r.v_run.kind == Outcome::Kind::FuelExhausted;
  Type fn = Type::arrow(Type::unit(), Type::unit());
  r.conjecture = ciu_test(sig, World{a}, Value::bind(Value::atom(a), v), Value::bind(Value::atom(a), v2),
                          Type::bnd(fn), options);
  return r;
}

nlohmann::json RepresentationReport::to_json() const {
  return {{"pairs", pairs},
          {"alpha_equivalent", alpha_equivalent},
          {"distinguished_by_ciu", distinguished_by_ciu},
          {"inconclusive", inconclusive},
          {"violations", violations}};
}

std::pair<Value, Value> gen_value_pair(const Signature& sig, const Type& ar, const World& w,
                                       std::size_t size, Rng& rng) {
  Value v = gen_value(sig, ar, w, size, rng);
  Value v2 = alpha_variant(sig, ar, w, v, rng);
  if (chance(rng, 0.5)) v2 = perturb(sig, ar, w, v2, size, rng);
  if (chance(rng, 0.5)) std::swap(v, v2);
  return {v, v2};
}

RepresentationReport test_correctness_of_representation(const Signature& sig, const Type& ar,
                                                        std::size_t pairs,
                                                        const CiuOptions& options) {
  if (!sig.is_nominal()) throw Error(ErrorCode::NotNominal, "signature is not nominal");
  if (!is_nominal_arity(sig, ar)) throw Error(ErrorCode::NotNominal, ar.str() + " is not a nominal arity");
  World w{Atom{0}, Atom{1}, Atom{2}};
  State s(std::vector<Atom>(w.begin(), w.end()));
  Rng rng(options.seed);
  Value aeq = gen_aeq(sig, ar);
  RepresentationReport r;
  RunOptions run_options;
  run_options.fuel = options.fuel;
  for (std::size_t i = 0; i < pairs; ++i) {
    auto [v, v2] = gen_value_pair(sig, ar, w, 3, rng);
    ++r.pairs;
    std::string shown = print(v) + " vs " + print(v2);
    CiuOptions sub = options;
    sub.seed = derive_seed(options.seed, i);
    if (alpha_eq(sig, w, v, v2, ar)) {
      ++r.alpha_equivalent;
      CiuVerdict verdict = ciu_test(sig, w, v, v2, ar, sub);
      if (verdict.kind == CiuVerdict::Kind::Distinguished) {
        r.violations.push_back("alpha-equivalent but distinguished: " + shown + " by " +
                               print(verdict.counterexample->stack));
      }
      if (verdict.kind == CiuVerdict::Kind::Inconclusive) ++r.inconclusive;
      continue;
    }
    // aeq_ar [-] v2 alone: Succ(Zero()) for v, Zero() for v2.
    Variable x = "x";
    FrameStack compare = FrameStack().push(Frame{x, apply_curried(aeq, {Value::var(x), v2})});
    Outcome left = run(sig, Configuration{s, compare, v}, run_options);
    Outcome right = run(sig, Configuration{s, compare, v2}, run_options);
    bool ok = left.terminated() && right.terminated() && numeral_value(*left.value) == 1u &&
              numeral_value(*right.value) == 0u;
    if (!ok) {
      r.violations.push_back("not alpha-equivalent but aeq context gives " + format_outcome(left) +
                             " / " + format_outcome(right) + ": " + shown);
    }
    CiuVerdict verdict = ciu_test(sig, w, v, v2, ar, sub);
    if (verdict.kind == CiuVerdict::Kind::Distinguished) ++r.distinguished_by_ciu;
  }
  return r;
}

nlohmann::json WorldSensitivityReport::to_json() const {
  return {{"at_w", at_w.to_json()}, {"at_w2", at_w2.to_json()}, {"differ", differ}};
}

WorldSensitivityReport test_world_sensitivity(const Signature& sig, const Expr& e, const Expr& e2,
                                              const Type& t, const World& w, const World& w2,
                                              const CiuOptions& options) {
  WorldSensitivityReport r;
  r.at_w = ciu_test(sig, w, e, e2, t, options);
  r.at_w2 = ciu_test(sig, w2, e, e2, t, options);
  r.differ = r.at_w.kind != r.at_w2.kind;
  return r;
}

}  // namespace freshml

namespace freshml {

nlohmann::json SafetyReport::to_json() const {
  return {{"configs", configs}, {"passed", passed}, {"steps_checked", steps_checked},
          {"failures", failures}};
}

SafetyReport check_safety(const Signature& sig, std::size_t configs, std::uint64_t steps,
                          std::uint64_t seed) {
  SafetyReport r;
  for (std::size_t i = 0; i < configs; ++i) {
    Rng rng(derive_seed(seed, i));
    GeneratedConfig g = gen_config(sig, rng);
    ++r.configs;
    std::string failure;
    try {
      check_config_against(sig, g.cfg, g.type);
      World previous = g.cfg.state.world();
      Configuration current = g.cfg;
      for (std::uint64_t n = 0; n < steps && failure.empty(); ++n) {
        StepResult st = step(sig, current);
        if (st.kind == StepResult::Kind::Terminal) break;
        if (st.kind == StepResult::Kind::Stuck) {
          failure = "stuck: " + st.reason;
          break;
        }
        current = *st.next;
        ++r.steps_checked;
        World now = current.state.world();
        if (!is_subset(previous, now)) failure = "state shrank";
        if (!is_subset(atoms_of(current.stack, current.expr), now)) failure = "atom escaped the state";
        check_config_against(sig, current, g.type);
        previous = now;
      }
    } catch (const Error& e) {
      failure = e.what();
    }
    if (failure.empty()) {
      ++r.passed;
    } else if (r.failures.size() < 10) {
      r.failures.push_back("config " + std::to_string(i) + ": " + failure + " in " + print(g.cfg));
    }
  }
  return r;
}

}  // namespace freshml
