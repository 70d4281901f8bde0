#include "freshml/typecheck.hpp"

#include <set>
#include <vector>

#include "freshml/overloaded.hpp"
#include "freshml/printer.hpp"

namespace freshml {

namespace {

class Checker {
 public:
  Checker(const Signature& sig, const TypingEnv& env) : sig_(sig) {
    for (const auto& [x, t] : env) scope_.emplace_back(x, t);
  }

  Type value(const Value& v) {
    return std::visit(
        overloaded{
            [&](const Value::Var& x) -> Type {
              for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
                if (it->first == x.name) return it->second;
              }
              throw Error(ErrorCode::UnboundVar, "unbound variable " + x.name);
            },
            [&](const Value::Unit&) -> Type { return Type::unit(); },
            [&](const Value::AtomLit&) -> Type { return Type::atm(); },
            [&](const Value::Pair& p) -> Type {
              Type l = value(p.first);
              return Type::prod(l, value(p.second));
            },
            [&](const Value::Con& c) -> Type {
              auto ref = sig_.find_constructor(c.constructor);
              if (!ref) fail("con", "unknown constructor " + c.constructor, print(v));
              unify(value(c.arg), ref->constructor->arg, "con", v);
              return Type::data(ref->datatype->name);
            },
            [&](const Value::Bind& b) -> Type {
              unify(value(b.atom), Type::atm(), "bind", v);
              return Type::bnd(value(b.body));
            },
            [&](const Value::Fun& f) -> Type {
              Type from = f.param_type ? declared(*f.param_type) : fresh_meta();
              Type to = f.result_type ? declared(*f.result_type) : fresh_meta();
              Type self = Type::arrow(from, to);
              std::size_t mark = scope_.size();
              scope_.emplace_back(f.self, self);
              scope_.emplace_back(f.param, from);
              Type body = expr(f.body);
              scope_.resize(mark, {std::string(), Type::unit()});
              unify(body, to, "fun", v);
              return self;
            },
        },
        v.node().alt);
  }

  Type expr(const Expr& e) {
    return std::visit(
        overloaded{
            [&](const Expr::Val& x) -> Type { return value(x.value); },
            [&](const Expr::Let& x) -> Type {
              Type bound = expr(x.bound);
              std::size_t mark = scope_.size();
              scope_.emplace_back(x.var, bound);
              Type body = expr(x.body);
              scope_.resize(mark, {std::string(), Type::unit()});
              return body;
            },
            [&](const Expr::Fst& x) -> Type {
              auto [l, r] = split_prod(value(x.arg), "fst", e);
              (void)r;
              return l;
            },
            [&](const Expr::Snd& x) -> Type {
              auto [l, r] = split_prod(value(x.arg), "snd", e);
              (void)l;
              return r;
            },
            [&](const Expr::App& x) -> Type {
              Type fn = value(x.fn);
              Type arg = value(x.arg);
              Type result = fresh_meta();
              unify(fn, Type::arrow(arg, result), "app", e);
              return result;
            },
            [&](const Expr::Match& x) -> Type { return match(x, e); },
            [&](const Expr::Fresh&) -> Type { return Type::atm(); },
            [&](const Expr::Unbind& x) -> Type {
              Type body = fresh_meta();
              unify(value(x.arg), Type::bnd(body), "unbind", e);
              return Type::prod(Type::atm(), body);
            },
            [&](const Expr::Observe& x) -> Type {
              const Observation* o = sig_.observations().find(x.name);
              if (!o) {
                throw Error(ErrorCode::UnknownObservation,
                            "observation " + x.name + " is not registered");
              }
              if (o->arity != x.args.size()) {
                throw Error(ErrorCode::Arity, "observation " + x.name + " has arity " +
                                                  std::to_string(o->arity) + " but is given " +
                                                  std::to_string(x.args.size()) + " in " + print(e));
              }
              for (const auto& a : x.args) unify(value(a), Type::atm(), "obs", e);
              return Type::nat();
            },
        },
        e.node().alt);
  }

  Type stack(const FrameStack& f, Type argument) {
    auto frames = f.frames();
    for (auto it = frames.rbegin(); it != frames.rend(); ++it) {
      std::size_t mark = scope_.size();
      scope_.emplace_back(it->var, argument);
      argument = expr(it->body);
      scope_.resize(mark, {std::string(), Type::unit()});
    }
    return argument;
  }

  void unify(const Type& a, const Type& b, const char* rule, const Expr& at) {
    if (!unify_types(a, b)) {
      fail(rule, "expected " + zonk(b, false).str() + " but found " + zonk(a, false).str(),
           print(at));
    }
  }

  /// Replaces solved metas; unsolved ones become unit when `fix` is set.
  Type zonk(const Type& t, bool fix) {
    Type r = resolve(t);
    return std::visit(
        overloaded{
            [&](const Type::Meta&) -> Type { return fix ? Type::unit() : r; },
            [&](const Type::Prod& p) -> Type { return Type::prod(zonk(p.left, fix), zonk(p.right, fix)); },
            [&](const Type::Arrow& p) -> Type { return Type::arrow(zonk(p.from, fix), zonk(p.to, fix)); },
            [&](const Type::Bnd& p) -> Type { return Type::bnd(zonk(p.body, fix)); },
            [&](const auto&) -> Type { return r; },
        },
        r.node().alt);
  }

  [[noreturn]] static void fail(const std::string& rule, const std::string& msg,
                                const std::string& subterm) {
    throw Error(ErrorCode::Type, "rule " + rule + ": " + msg + " in " + subterm);
  }

 private:
  Type fresh_meta() {
    metas_.emplace_back(std::nullopt);
    return Type::meta(static_cast<std::uint32_t>(metas_.size() - 1));
  }

  Type declared(const Type& t) {
    sig_.check_type(t);
    return t;
  }

  Type resolve(Type t) {
    while (const auto* m = t.as_meta()) {
      if (!metas_[m->id]) break;
      t = *metas_[m->id];
    }
    return t;
  }

  bool occurs(std::uint32_t id, const Type& t) {
    Type r = resolve(t);
    return std::visit(
        overloaded{
            [&](const Type::Meta& m) { return m.id == id; },
            [&](const Type::Prod& p) { return occurs(id, p.left) || occurs(id, p.right); },
            [&](const Type::Arrow& p) { return occurs(id, p.from) || occurs(id, p.to); },
            [&](const Type::Bnd& p) { return occurs(id, p.body); },
            [&](const auto&) { return false; },
        },
        r.node().alt);
  }

  bool unify_types(const Type& a0, const Type& b0) {
    Type a = resolve(a0), b = resolve(b0);
    if (const auto* m = a.as_meta()) {
      if (const auto* n = b.as_meta(); n && n->id == m->id) return true;
      if (occurs(m->id, b)) return false;
      metas_[m->id] = b;
      return true;
    }
    if (b.as_meta()) return unify_types(b, a);
    if (a.node().alt.index() != b.node().alt.index()) return false;
    if (a.is_unit() || a.is_atm()) return true;
    if (const auto* d = a.as_data()) return d->name == b.as_data()->name;
    if (const auto* p = a.as_prod()) {
      return unify_types(p->left, b.as_prod()->left) && unify_types(p->right, b.as_prod()->right);
    }
    if (const auto* p = a.as_arrow()) {
      return unify_types(p->from, b.as_arrow()->from) && unify_types(p->to, b.as_arrow()->to);
    }
    if (const auto* p = a.as_bnd()) return unify_types(p->body, b.as_bnd()->body);
    return false;
  }

  std::pair<Type, Type> split_prod(const Type& t, const char* rule, const Expr& at) {
    Type l = fresh_meta(), r = fresh_meta();
    unify(t, Type::prod(l, r), rule, at);
    return {l, r};
  }

  Type match(const Expr::Match& m, const Expr& at) {
    Type scrutinee = resolve(value(m.scrutinee));
    const DataType* dt = nullptr;
    if (const auto* d = scrutinee.as_data()) {
      dt = sig_.find_type(d->name);
    } else if (!m.arms.empty()) {
      if (auto ref = sig_.find_constructor(m.arms.front().constructor)) dt = ref->datatype;
    }
    if (!dt) fail("match", "scrutinee of type " + zonk(scrutinee, false).str() + " is not a data type", print(at));
    unify(scrutinee, Type::data(dt->name), "match", at);

    std::set<std::string> seen;
    std::optional<Type> result;
    for (const auto& arm : m.arms) {
      const Constructor* con = nullptr;
      for (const auto& c : dt->constructors) {
        if (c.name == arm.constructor) con = &c;
      }
      if (!con) {
        fail("match", "constructor " + arm.constructor + " does not belong to " + dt->name, print(at));
      }
      if (!seen.insert(arm.constructor).second) {
        throw Error(ErrorCode::NonexhaustiveMatch,
                    "constructor " + arm.constructor + " matched twice in " + print(at));
      }
      std::size_t mark = scope_.size();
      scope_.emplace_back(arm.var, con->arg);
      Type body = expr(arm.body);
      scope_.resize(mark, {std::string(), Type::unit()});
      if (!result) result = body;
      else unify(body, *result, "match", arm.body);
    }
    if (seen.size() != dt->constructors.size()) {
      std::string missing;
      for (const auto& c : dt->constructors) {
        if (!seen.count(c.name)) missing += (missing.empty() ? "" : ", ") + c.name;
      }
      throw Error(ErrorCode::NonexhaustiveMatch, "match on " + dt->name + " misses " + missing +
                                                     " in " + print(at));
    }
    return *result;
  }

  const Signature& sig_;
  std::vector<std::pair<Variable, Type>> scope_;
  std::vector<std::optional<Type>> metas_;
};

}  // namespace

Type check_expr(const Signature& sig, const TypingEnv& env, const Expr& e) {
  Checker c(sig, env);
  return c.zonk(c.expr(e), true);
}

Type check_value(const Signature& sig, const TypingEnv& env, const Value& v) {
  Checker c(sig, env);
  return c.zonk(c.value(v), true);
}

void check_expr_against(const Signature& sig, const TypingEnv& env, const Expr& e,
                        const Type& expected) {
  sig.check_type(expected);
  Checker c(sig, env);
  c.unify(c.expr(e), expected, "check", e);
}

Type check_stack(const Signature& sig, const TypingEnv& env, const FrameStack& f,
                 const Type& argument) {
  Checker c(sig, env);
  return c.zonk(c.stack(f, argument), true);
}

namespace {

World containment(const Configuration& cfg) {
  World w = cfg.state.world();
  World used = atoms_of(cfg.stack, cfg.expr);
  if (!is_subset(used, w)) {
    throw Error(ErrorCode::AtomEscape, "atoms " + format_world(used) + " not contained in state " +
                                           cfg.state.str());
  }
  return w;
}

}  // namespace

std::pair<World, Type> check_config(const Signature& sig, const Configuration& cfg) {
  World w = containment(cfg);
  Checker c(sig, {});
  Type t = c.stack(cfg.stack, c.expr(cfg.expr));
  return {w, c.zonk(t, true)};
}

World check_config_against(const Signature& sig, const Configuration& cfg, const Type& expected) {
  World w = containment(cfg);
  Checker c(sig, {});
  Type t = c.stack(cfg.stack, c.expr(cfg.expr));
  c.unify(t, expected, "config", cfg.expr);
  return w;
}

}  // namespace freshml
