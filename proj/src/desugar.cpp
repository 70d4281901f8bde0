#include "freshml/surface.hpp"

#include <charconv>

#include "freshml/overloaded.hpp"

namespace freshml {

const SurfaceExpr::Alt& SurfaceExpr::alt() const { return node_->alt; }
SourceLoc SurfaceExpr::loc() const { return node_->loc; }

namespace {

using Prelude = std::vector<std::pair<Variable, Expr>>;

// Applies `f` to every variable name (bound or free) in `s`.
template <class F>
void for_each_name(const SurfaceExpr& s, F&& f) {
  auto go = [&](const SurfaceExpr& x) { for_each_name(x, f); };
  std::visit(overloaded{
                 [&](const SurfaceExpr::Var& x) { f(x.name); },
                 [&](const SurfaceExpr::Pair& x) { go(x.first); go(x.second); },
                 [&](const SurfaceExpr::Fun& x) { f(x.self); f(x.param); go(x.body); },
                 [&](const SurfaceExpr::Lambda& x) { f(x.param); go(x.body); },
                 [&](const SurfaceExpr::Con& x) { go(x.arg); },
                 [&](const SurfaceExpr::Bind& x) { go(x.atom); go(x.body); },
                 [&](const SurfaceExpr::Let& x) { f(x.var); go(x.bound); go(x.body); },
                 [&](const SurfaceExpr::LetBind& x) {
                   f(x.atom_var); f(x.body_var); go(x.bound); go(x.body);
                 },
                 [&](const SurfaceExpr::Fst& x) { go(x.arg); },
                 [&](const SurfaceExpr::Snd& x) { go(x.arg); },
                 [&](const SurfaceExpr::App& x) { go(x.fn); go(x.arg); },
                 [&](const SurfaceExpr::Match& x) {
                   go(x.scrutinee);
                   for (const auto& a : x.arms) { f(a.var); go(a.body); }
                 },
                 [&](const SurfaceExpr::If& x) { go(x.cond); go(x.then_branch); go(x.else_branch); },
                 [&](const SurfaceExpr::FreshIn& x) { f(x.var); go(x.body); },
                 [&](const SurfaceExpr::Unbind& x) { go(x.arg); },
                 [&](const SurfaceExpr::Observe& x) { for (const auto& a : x.args) go(a); },
                 [](const auto&) {},
             },
             s.alt());
}

class Desugarer {
 public:
  explicit Desugarer(const SurfaceExpr& root) {
    for_each_name(root, [&](const Variable& name) {
      if (name.size() < 2 || name[0] != '%') return;
      std::size_t k = 0;
      auto [p, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), k);
      if (ec == std::errc() && p == name.data() + name.size()) next_ = std::max(next_, k + 1);
    });
  }

  Expr expr(const SurfaceExpr& s) {
    return std::visit(
        overloaded{
            [&](const SurfaceExpr::Let& x) -> Expr {
              Expr bound = expr(x.bound);
              return Expr::let(x.var, bound, expr(x.body));
            },
            [&](const SurfaceExpr::LetBind& x) -> Expr {
              Variable b = gen(), p = gen();
              Expr bound = expr(x.bound);
              Expr body = expr(x.body);
              return Expr::let(
                  b, bound,
                  Expr::let(p, Expr::unbind(Value::var(b)),
                            Expr::let(x.atom_var, Expr::fst(Value::var(p)),
                                      Expr::let(x.body_var, Expr::snd(Value::var(p)), body))));
            },
            [&](const SurfaceExpr::Fst& x) -> Expr {
              Prelude pre;
              Value v = atomize(x.arg, pre);
              return wrap(pre, Expr::fst(v));
            },
            [&](const SurfaceExpr::Snd& x) -> Expr {
              Prelude pre;
              Value v = atomize(x.arg, pre);
              return wrap(pre, Expr::snd(v));
            },
            [&](const SurfaceExpr::App& x) -> Expr {
              Prelude pre;
              Value fn = atomize(x.fn, pre);
              Value arg = atomize(x.arg, pre);
              return wrap(pre, Expr::app(fn, arg));
            },
            [&](const SurfaceExpr::Match& x) -> Expr {
              Prelude pre;
              Value v = atomize(x.scrutinee, pre);
              std::vector<MatchArm> arms;
              for (const auto& a : x.arms) arms.push_back(MatchArm{a.constructor, a.var, expr(a.body)});
              return wrap(pre, Expr::match(v, std::move(arms)));
            },
            [&](const SurfaceExpr::If& x) -> Expr {
              Prelude pre;
              Value v = atomize(x.cond, pre);
              Variable z = gen(), n = gen();
              Expr t = expr(x.then_branch);
              Expr f = expr(x.else_branch);
              return wrap(pre, Expr::match(v, {MatchArm{"Zero", z, t}, MatchArm{"Succ", n, f}}));
            },
            [&](const SurfaceExpr::Fresh&) -> Expr { return Expr::fresh(); },
            [&](const SurfaceExpr::FreshIn& x) -> Expr {
              return Expr::let(x.var, Expr::fresh(), expr(x.body));
            },
            [&](const SurfaceExpr::Unbind& x) -> Expr {
              Prelude pre;
              Value v = atomize(x.arg, pre);
              return wrap(pre, Expr::unbind(v));
            },
            [&](const SurfaceExpr::Observe& x) -> Expr {
              Prelude pre;
              std::vector<Value> args;
              for (const auto& a : x.args) args.push_back(atomize(a, pre));
              return wrap(pre, Expr::observe(x.name, std::move(args)));
            },
            [&](const SurfaceExpr::Hole&) -> Expr {
              throw Error(ErrorCode::UnknownForm, "unfilled hole [-]", s.loc());
            },
            [&](const auto&) -> Expr {
              Prelude pre;
              Value v = atomize(s, pre);
              return wrap(pre, Expr::val(v));
            },
        },
        s.alt());
  }

 private:
  Variable gen() { return "%" + std::to_string(next_++); }

  static Expr wrap(const Prelude& pre, Expr body) {
    for (auto it = pre.rbegin(); it != pre.rend(); ++it) body = Expr::let(it->first, it->second, body);
    return body;
  }

  // Value for `s`, let-binding (into `pre`, in evaluation order) every
  // component that is not already a value.
  Value atomize(const SurfaceExpr& s, Prelude& pre) {
    return std::visit(
        overloaded{
            [&](const SurfaceExpr::Var& x) -> Value { return Value::var(x.name); },
            [&](const SurfaceExpr::Unit&) -> Value { return Value::unit(); },
            [&](const SurfaceExpr::AtomLit& x) -> Value { return Value::atom(x.atom); },
            [&](const SurfaceExpr::Pair& x) -> Value {
              Value a = atomize(x.first, pre);
              return Value::pair(a, atomize(x.second, pre));
            },
            [&](const SurfaceExpr::Fun& x) -> Value {
              return Value::fun(x.self, x.param, expr(x.body), x.param_type, x.result_type);
            },
            [&](const SurfaceExpr::Lambda& x) -> Value {
              Variable self = gen();
              return Value::fun(self, x.param, expr(x.body), x.param_type, std::nullopt);
            },
            [&](const SurfaceExpr::Con& x) -> Value {
              return Value::con(x.constructor, atomize(x.arg, pre));
            },
            [&](const SurfaceExpr::Bind& x) -> Value {
              Value a = atomize(x.atom, pre);
              return Value::bind(a, atomize(x.body, pre));
            },
            [&](const auto&) -> Value {
              Expr e = expr(s);
              Variable x = gen();
              pre.emplace_back(x, e);
              return Value::var(x);
            },
        },
        s.alt());
  }

  std::size_t next_ = 0;
};

}  // namespace

Expr desugar(const SurfaceExpr& s) { return Desugarer(s).expr(s); }

SurfaceExpr fill_hole(const SurfaceExpr& c, const SurfaceExpr& filler) {
  using S = SurfaceExpr;
  auto go = [&](const S& x) { return fill_hole(x, filler); };
  SourceLoc loc = c.loc();
  return std::visit(
      overloaded{
          [&](const S::Hole&) -> S { return filler; },
          [&](const S::Pair& x) -> S { return S::make(S::Pair{go(x.first), go(x.second)}, loc); },
          [&](const S::Fun& x) -> S {
            return S::make(S::Fun{x.self, x.param, x.param_type, x.result_type, go(x.body)}, loc);
          },
          [&](const S::Lambda& x) -> S {
            return S::make(S::Lambda{x.param, x.param_type, go(x.body)}, loc);
          },
          [&](const S::Con& x) -> S { return S::make(S::Con{x.constructor, go(x.arg)}, loc); },
          [&](const S::Bind& x) -> S { return S::make(S::Bind{go(x.atom), go(x.body)}, loc); },
          [&](const S::Let& x) -> S { return S::make(S::Let{x.var, go(x.bound), go(x.body)}, loc); },
          [&](const S::LetBind& x) -> S {
            return S::make(S::LetBind{x.atom_var, x.body_var, go(x.bound), go(x.body)}, loc);
          },
          [&](const S::Fst& x) -> S { return S::make(S::Fst{go(x.arg)}, loc); },
          [&](const S::Snd& x) -> S { return S::make(S::Snd{go(x.arg)}, loc); },
          [&](const S::App& x) -> S { return S::make(S::App{go(x.fn), go(x.arg)}, loc); },
          [&](const S::Match& x) -> S {
            std::vector<SurfaceArm> arms;
            for (const auto& a : x.arms) arms.push_back(SurfaceArm{a.constructor, a.var, go(a.body)});
            return S::make(S::Match{go(x.scrutinee), std::move(arms)}, loc);
          },
          [&](const S::If& x) -> S {
            return S::make(S::If{go(x.cond), go(x.then_branch), go(x.else_branch)}, loc);
          },
          [&](const S::FreshIn& x) -> S { return S::make(S::FreshIn{x.var, go(x.body)}, loc); },
          [&](const S::Unbind& x) -> S { return S::make(S::Unbind{go(x.arg)}, loc); },
          [&](const S::Observe& x) -> S {
            std::vector<S> args;
            for (const auto& a : x.args) args.push_back(go(a));
            return S::make(S::Observe{x.name, std::move(args)}, loc);
          },
          [&](const auto&) -> S { return c; },
      },
      c.alt());
}

SurfaceExpr to_surface(const Value& v) {
  using S = SurfaceExpr;
  return std::visit(
      overloaded{
          [](const Value::Var& x) -> S { return S::make(S::Var{x.name}); },
          [](const Value::Unit&) -> S { return S::make(S::Unit{}); },
          [](const Value::AtomLit& x) -> S { return S::make(S::AtomLit{x.atom}); },
          [](const Value::Pair& x) -> S {
            return S::make(S::Pair{to_surface(x.first), to_surface(x.second)});
          },
          [](const Value::Fun& x) -> S {
            return S::make(S::Fun{x.self, x.param, x.param_type, x.result_type, to_surface(x.body)});
          },
          [](const Value::Con& x) -> S { return S::make(S::Con{x.constructor, to_surface(x.arg)}); },
          [](const Value::Bind& x) -> S {
            return S::make(S::Bind{to_surface(x.atom), to_surface(x.body)});
          },
      },
      v.node().alt);
}

SurfaceExpr to_surface(const Expr& e) {
  using S = SurfaceExpr;
  return std::visit(
      overloaded{
          [](const Expr::Val& x) -> S { return to_surface(x.value); },
          [](const Expr::Let& x) -> S {
            return S::make(S::Let{x.var, to_surface(x.bound), to_surface(x.body)});
          },
          [](const Expr::Fst& x) -> S { return S::make(S::Fst{to_surface(x.arg)}); },
          [](const Expr::Snd& x) -> S { return S::make(S::Snd{to_surface(x.arg)}); },
          [](const Expr::App& x) -> S { return S::make(S::App{to_surface(x.fn), to_surface(x.arg)}); },
          [](const Expr::Match& x) -> S {
            std::vector<SurfaceArm> arms;
            for (const auto& a : x.arms) arms.push_back(SurfaceArm{a.constructor, a.var, to_surface(a.body)});
            return S::make(S::Match{to_surface(x.scrutinee), std::move(arms)});
          },
          [](const Expr::Fresh&) -> S { return S::make(S::Fresh{}); },
          [](const Expr::Unbind& x) -> S { return S::make(S::Unbind{to_surface(x.arg)}); },
          [](const Expr::Observe& x) -> S {
            std::vector<S> args;
            for (const auto& a : x.args) args.push_back(to_surface(a));
            return S::make(S::Observe{x.name, std::move(args)});
          },
      },
      e.node().alt);
}

}  // namespace freshml
