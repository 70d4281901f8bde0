#include "freshml/nominal.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "freshml/error.hpp"
#include "freshml/overloaded.hpp"
#include "freshml/printer.hpp"
#include "freshml/typecheck.hpp"

namespace freshml {

namespace {

void require_nominal(const Signature& sig, const Type& ar) {
  if (!is_nominal_arity(sig, ar)) {
    throw Error(ErrorCode::NotNominal, ar.str() + " is not a nominal arity");
  }
}

Atom atom_of(const Value& v) {
  const auto* a = v.as_atom();
  if (!a) throw Error(ErrorCode::IllTyped, "expected an atom, found " + print(v));
  return a->atom;
}

const Constructor& constructor_of(const Signature& sig, const Value::Con& c) {
  auto ref = sig.find_constructor(c.constructor);
  if (!ref) throw Error(ErrorCode::IllTyped, "unknown constructor " + c.constructor);
  return *ref->constructor;
}

bool alpha_rec(const Signature& sig, const World& w, const Value& v, const Value& v2,
               const Type& ar, const BinderChooser& choose) {
  return std::visit(
      overloaded{
          [&](const Type::Unit&) { return true; },
          [&](const Type::Atm&) { return atom_of(v) == atom_of(v2); },
          [&](const Type::Prod& p) {
            const auto* a = v.as_pair();
            const auto* b = v2.as_pair();
            return alpha_rec(sig, w, a->first, b->first, p.left, choose) &&
                   alpha_rec(sig, w, a->second, b->second, p.right, choose);
          },
          [&](const Type::Data&) {
            const auto* a = v.as_con();
            const auto* b = v2.as_con();
            if (a->constructor != b->constructor) return false;
            return alpha_rec(sig, w, a->arg, b->arg, constructor_of(sig, *a).arg, choose);
          },
          [&](const Type::Bnd& t) {
            const auto* a = v.as_bind();
            const auto* b = v2.as_bind();
            Atom fresh = choose(w);
            if (w.count(fresh)) {
              throw Error(ErrorCode::AtomEscape, "binder choice " + fresh.str() + " is in the world");
            }
            World wider = w;
            wider.insert(fresh);
            return alpha_rec(sig, wider, rename_atom(a->body, atom_of(a->atom), fresh),
                             rename_atom(b->body, atom_of(b->atom), fresh), t.body, choose);
          },
          [&](const auto&) -> bool {
            throw Error(ErrorCode::NotNominal, ar.str() + " is not a nominal arity");
          },
      },
      ar.node().alt);
}

void require_judgement(const Signature& sig, const World& w, const Value& v, const Type& ar) {
  if (!v.closed()) throw Error(ErrorCode::IllTyped, "open value " + print(v));
  try {
    check_expr_against(sig, {}, Expr::val(v), ar);
  } catch (const Error& e) {
    throw Error(ErrorCode::IllTyped, print(v) + " is not of arity " + ar.str() + ": " + e.detail());
  }
  World used = atoms_of(v);
  if (!is_subset(used, w)) {
    throw Error(ErrorCode::AtomEscape,
                print(v) + " mentions atoms outside the world " + format_world(w));
  }
}

}  // namespace

bool alpha_eq(const Signature& sig, const World& w, const Value& v, const Value& v2,
              const Type& ar) {
  return alpha_eq(sig, w, v, v2, ar, [](const World& used) { return least_atom_not_in(used); });
}

bool alpha_eq(const Signature& sig, const World& w, const Value& v, const Value& v2,
              const Type& ar, const BinderChooser& choose) {
  require_nominal(sig, ar);
  require_judgement(sig, w, v, ar);
  require_judgement(sig, w, v2, ar);
  return alpha_rec(sig, w, v, v2, ar, choose);
}

World free_atoms(const Signature& sig, const Value& v, const Type& ar) {
  return std::visit(
      overloaded{
          [&](const Type::Atm&) { return World{atom_of(v)}; },
          [&](const Type::Prod& p) {
            return world_union(free_atoms(sig, v.as_pair()->first, p.left),
                               free_atoms(sig, v.as_pair()->second, p.right));
          },
          [&](const Type::Data&) {
            const auto* c = v.as_con();
            return free_atoms(sig, c->arg, constructor_of(sig, *c).arg);
          },
          [&](const Type::Bnd& t) {
            World inner = free_atoms(sig, v.as_bind()->body, t.body);
            inner.erase(atom_of(v.as_bind()->atom));
            return inner;
          },
          [&](const auto&) { return World{}; },
      },
      ar.node().alt);
}

// ---------------------------------------------------------------------------
// Generation.

namespace {

constexpr std::size_t kInfinite = std::numeric_limits<std::size_t>::max();

std::map<std::string, std::size_t> datatype_depths(const Signature& sig);

std::size_t depth_of(const Type& t, const std::map<std::string, std::size_t>& depths) {
  return std::visit(overloaded{
                        [&](const Type::Data& d) {
                          auto it = depths.find(d.name);
                          return it == depths.end() ? kInfinite : it->second;
                        },
                        [&](const Type::Prod& p) {
                          return std::max(depth_of(p.left, depths), depth_of(p.right, depths));
                        },
                        [&](const Type::Bnd& b) { return depth_of(b.body, depths); },
                        [&](const auto&) -> std::size_t { return 0; },
                    },
                    t.node().alt);
}

std::map<std::string, std::size_t> datatype_depths(const Signature& sig) {
  std::map<std::string, std::size_t> depths;
  for (const auto& d : sig.datatypes()) depths[d.name] = kInfinite;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& d : sig.datatypes()) {
      std::size_t best = kInfinite;
      for (const auto& c : d.constructors) {
        std::size_t a = depth_of(c.arg, depths);
        if (a != kInfinite) best = std::min(best, a + 1);
      }
      if (best < depths[d.name]) {
        depths[d.name] = best;
        changed = true;
      }
    }
  }
  return depths;
}

class Generator {
 public:
  Generator(const Signature& sig, const World& w, Rng& rng)
      : sig_(sig), atoms_(w.begin(), w.end()), rng_(rng), depths_(datatype_depths(sig)) {}

  Value value(const Type& t, std::size_t size) {
    return std::visit(
        overloaded{
            [&](const Type::Unit&) -> Value { return Value::unit(); },
            [&](const Type::Atm&) -> Value { return Value::atom(atom()); },
            [&](const Type::Prod& p) -> Value {
              Value l = value(p.left, size);
              return Value::pair(l, value(p.right, size));
            },
            [&](const Type::Bnd& b) -> Value {
              Value a = Value::atom(atom());
              return Value::bind(a, value(b.body, size));
            },
            [&](const Type::Data& d) -> Value {
              const DataType* dt = sig_.find_type(d.name);
              if (!dt) throw Error(ErrorCode::UndeclaredType, "undeclared type " + d.name);
              std::vector<const Constructor*> options;
              std::size_t best = kInfinite;
              for (const auto& c : dt->constructors) best = std::min(best, depth_of(c.arg, depths_));
              for (const auto& c : dt->constructors) {
                std::size_t a = depth_of(c.arg, depths_);
                if (a == kInfinite) continue;
                if (size == 0 && a != best) continue;
                options.push_back(&c);
              }
              if (options.empty()) throw Error(ErrorCode::Uninhabited, d.name + " has no values");
              const Constructor* c = pick(rng_, options);
              return Value::con(c->name, value(c->arg, size == 0 ? 0 : size - 1));
            },
            [&](const auto&) -> Value {
              throw Error(ErrorCode::NotNominal, t.str() + " is not a nominal arity");
            },
        },
        t.node().alt);
  }

  Atom atom() {
    if (atoms_.empty()) throw Error(ErrorCode::Uninhabited, "atm has no values in the empty world");
    return pick(rng_, atoms_);
  }

  const std::vector<Atom>& atoms() const { return atoms_; }

 private:
  const Signature& sig_;
  std::vector<Atom> atoms_;
  Rng& rng_;
  std::map<std::string, std::size_t> depths_;
};

}  // namespace

std::optional<std::size_t> min_depth(const Signature& sig, const Type& t) {
  std::size_t d = depth_of(t, datatype_depths(sig));
  if (d == kInfinite) return std::nullopt;
  return d;
}

Value gen_value(const Signature& sig, const Type& ar, const World& w, std::size_t size, Rng& rng) {
  require_nominal(sig, ar);
  return Generator(sig, w, rng).value(ar, size);
}

Value gen_value(const Signature& sig, const Type& ar, const World& w, std::size_t size,
                std::uint64_t seed) {
  Rng rng(seed);
  return gen_value(sig, ar, w, size, rng);
}

Value alpha_variant(const Signature& sig, const Type& ar, const World& w, const Value& v, Rng& rng) {
  return std::visit(
      overloaded{
          [&](const Type::Prod& p) -> Value {
            const auto* x = v.as_pair();
            Value l = alpha_variant(sig, p.left, w, x->first, rng);
            return Value::pair(l, alpha_variant(sig, p.right, w, x->second, rng));
          },
          [&](const Type::Data&) -> Value {
            const auto* c = v.as_con();
            return Value::con(c->constructor,
                              alpha_variant(sig, constructor_of(sig, *c).arg, w, c->arg, rng));
          },
          [&](const Type::Bnd& t) -> Value {
            const auto* b = v.as_bind();
            Atom a = atom_of(b->atom);
            Value body = alpha_variant(sig, t.body, w, b->body, rng);
            World avoid = free_atoms(sig, Value::bind(b->atom, body), ar);
            std::vector<Atom> options;
            for (Atom c : w) {
              if (c == a || !avoid.count(c)) options.push_back(c);
            }
            Atom c = pick(rng, options);
            return Value::bind(Value::atom(c), perm_apply(Permutation::swap(a, c), body));
          },
          [&](const auto&) -> Value { return v; },
      },
      ar.node().alt);
}

Value perturb(const Signature& sig, const Type& ar, const World& w, const Value& v,
              std::size_t size, Rng& rng) {
  Generator gen(sig, w, rng);
  return std::visit(
      overloaded{
          [&](const Type::Atm&) -> Value { return Value::atom(gen.atom()); },
          [&](const Type::Prod& p) -> Value {
            const auto* x = v.as_pair();
            if (chance(rng, 0.5)) return Value::pair(perturb(sig, p.left, w, x->first, size, rng), x->second);
            return Value::pair(x->first, perturb(sig, p.right, w, x->second, size, rng));
          },
          [&](const Type::Data&) -> Value {
            const auto* c = v.as_con();
            if (chance(rng, 0.3)) return gen.value(ar, size);
            return Value::con(c->constructor,
                              perturb(sig, constructor_of(sig, *c).arg, w, c->arg, size, rng));
          },
          [&](const Type::Bnd& t) -> Value {
            const auto* b = v.as_bind();
            if (chance(rng, 0.4)) return Value::bind(Value::atom(gen.atom()), b->body);
            return Value::bind(b->atom, perturb(sig, t.body, w, b->body, size, rng));
          },
          [&](const auto&) -> Value { return v; },
      },
      ar.node().alt);
}

// ---------------------------------------------------------------------------
// In-language swap and aeq.

namespace {

class CodeGen {
 public:
  explicit CodeGen(const Signature& sig) : sig_(sig) {}

  Variable name(const std::string& base) { return base + "%" + std::to_string(next_++); }

  /// Expression computing (x y)·z for z : t.
  Expr swap(const Type& t, const Value& x, const Value& y, const Value& z,
            std::map<std::string, Variable>& env) {
    return std::visit(
        overloaded{
            [&](const Type::Unit&) -> Expr { return z; },
            [&](const Type::Meta&) -> Expr { return z; },
            [&](const Type::Atm&) -> Expr {
              Variable c = name("c"), d = name("d");
              Expr inner = Expr::let(
                  d, Expr::observe("eq", {z, y}),
                  Expr::match(Value::var(d), {MatchArm{"Zero", name("u"), x},
                                              MatchArm{"Succ", name("u"), z}}));
              return Expr::let(c, Expr::observe("eq", {z, x}),
                               Expr::match(Value::var(c), {MatchArm{"Zero", name("u"), y},
                                                           MatchArm{"Succ", name("u"), inner}}));
            },
            [&](const Type::Prod& p) -> Expr {
              Variable p1 = name("p"), p2 = name("p"), r1 = name("r"), r2 = name("r");
              return Expr::let(
                  p1, Expr::fst(z),
                  Expr::let(p2, Expr::snd(z),
                            Expr::let(r1, swap(p.left, x, y, Value::var(p1), env),
                                      Expr::let(r2, swap(p.right, x, y, Value::var(p2), env),
                                                Value::pair(Value::var(r1), Value::var(r2))))));
            },
            [&](const Type::Arrow& a) -> Expr {
              Variable g = name("g"), w = name("w"), u = name("u"), r = name("r");
              Expr body = Expr::let(
                  u, swap(a.from, x, y, Value::var(w), env),
                  Expr::let(r, Expr::app(z, Value::var(u)), swap(a.to, x, y, Value::var(r), env)));
              return Value::fun(g, w, body, a.from, a.to);
            },
            [&](const Type::Bnd& b) -> Expr {
              Variable p = name("p"), a = name("a"), v = name("v"), a2 = name("a"), v2 = name("v");
              return Expr::let(
                  p, Expr::unbind(z),
                  Expr::let(a, Expr::fst(Value::var(p)),
                            Expr::let(v, Expr::snd(Value::var(p)),
                                      Expr::let(a2, swap(Type::atm(), x, y, Value::var(a), env),
                                                Expr::let(v2, swap(b.body, x, y, Value::var(v), env),
                                                          Value::bind(Value::var(a2), Value::var(v2)))))));
            },
            [&](const Type::Data& d) -> Expr {
              if (auto it = env.find(d.name); it != env.end()) {
                return Expr::app(Value::var(it->second), z);
              }
              const DataType* dt = sig_.find_type(d.name);
              if (!dt) throw Error(ErrorCode::UndeclaredType, "undeclared type " + d.name);
              Variable self = name("swap_" + d.name), u = name("u");
              auto inner_env = env;
              inner_env[d.name] = self;
              std::vector<MatchArm> arms;
              for (const auto& c : dt->constructors) {
                Variable q = name("q"), r = name("r");
                arms.push_back(MatchArm{
                    c.name, q,
                    Expr::let(r, swap(c.arg, x, y, Value::var(q), inner_env),
                              Value::con(c.name, Value::var(r)))});
              }
              Value fn = Value::fun(self, u, Expr::match(Value::var(u), std::move(arms)), Type::data(d.name),
                                    Type::data(d.name));
              return Expr::app(fn, z);
            },
        },
        t.node().alt);
  }

  Value swap_function(const Type& t) {
    Variable fx = name("swap"), x = name("x"), fy = name("swap"), y = name("y"), fz = name("swap"),
             z = name("z");
    std::map<std::string, Variable> env;
    Expr body = swap(t, Value::var(x), Value::var(y), Value::var(z), env);
    Value inner = Value::fun(fz, z, body, t, t);
    Value middle = Value::fun(fy, y, inner, Type::atm(), Type::arrow(t, t));
    return Value::fun(fx, x, middle, Type::atm(), Type::arrow(Type::atm(), Type::arrow(t, t)));
  }

  /// Expression of type nat comparing u and u2 at arity t.
  Expr aeq(const Type& t, const Value& u, const Value& u2, std::map<std::string, Variable>& env) {
    return std::visit(
        overloaded{
            [&](const Type::Unit&) -> Expr { return numeral(0); },
            [&](const Type::Atm&) -> Expr { return Expr::observe("eq", {u, u2}); },
            [&](const Type::Prod& p) -> Expr {
              Variable a1 = name("l"), a2 = name("l"), b1 = name("r"), b2 = name("r"), r = name("c");
              Expr second = Expr::let(
                  b1, Expr::snd(u),
                  Expr::let(b2, Expr::snd(u2), aeq(p.right, Value::var(b1), Value::var(b2), env)));
              return Expr::let(
                  a1, Expr::fst(u),
                  Expr::let(a2, Expr::fst(u2),
                            Expr::let(r, aeq(p.left, Value::var(a1), Value::var(a2), env),
                                      Expr::match(Value::var(r),
                                                  {MatchArm{"Zero", name("k"), second},
                                                   MatchArm{"Succ", name("k"), numeral(1)}}))));
            },
            [&](const Type::Bnd& b) -> Expr {
              Variable p1 = name("p"), p2 = name("p"), a1 = name("a"), v1 = name("v"), a2 = name("a"),
                       v2 = name("v"), s1 = name("s"), s2 = name("s"), w = name("v");
              Value sw = swap_function(b.body);
              Expr rest = Expr::let(
                  s1, Expr::app(sw, Value::var(a1)),
                  Expr::let(s2, Expr::app(Value::var(s1), Value::var(a2)),
                            Expr::let(w, Expr::app(Value::var(s2), Value::var(v2)),
                                      aeq(b.body, Value::var(v1), Value::var(w), env))));
              return Expr::let(
                  p1, Expr::unbind(u),
                  Expr::let(
                      p2, Expr::unbind(u2),
                      Expr::let(a1, Expr::fst(Value::var(p1)),
                                Expr::let(v1, Expr::snd(Value::var(p1)),
                                          Expr::let(a2, Expr::fst(Value::var(p2)),
                                                    Expr::let(v2, Expr::snd(Value::var(p2)), rest))))));
            },
            [&](const Type::Data& d) -> Expr {
              if (auto it = env.find(d.name); it != env.end()) {
                return Expr::app(Value::var(it->second), Value::pair(u, u2));
              }
              const DataType* dt = sig_.find_type(d.name);
              if (!dt) throw Error(ErrorCode::UndeclaredType, "undeclared type " + d.name);
              Type dty = Type::data(d.name);
              Variable self = name("aeq_" + d.name), z = name("z"), l = name("l"), r = name("r");
              auto inner_env = env;
              inner_env[d.name] = self;
              std::vector<MatchArm> outer;
              for (const auto& c : dt->constructors) {
                Variable q = name("q");
                std::vector<MatchArm> inner;
                for (const auto& c2 : dt->constructors) {
                  Variable q2 = name("q");
                  inner.push_back(MatchArm{
                      c2.name, q2,
                      c2.name == c.name ? aeq(c.arg, Value::var(q), Value::var(q2), inner_env)
                                        : Expr(numeral(1))});
                }
                outer.push_back(MatchArm{c.name, q, Expr::match(Value::var(r), std::move(inner))});
              }
              Expr body = Expr::let(
                  l, Expr::fst(Value::var(z)),
                  Expr::let(r, Expr::snd(Value::var(z)), Expr::match(Value::var(l), std::move(outer))));
              Value fn = Value::fun(self, z, body, Type::prod(dty, dty), Type::nat());
              return Expr::app(fn, Value::pair(u, u2));
            },
            [&](const auto&) -> Expr {
              throw Error(ErrorCode::NotNominal, t.str() + " is not a nominal arity");
            },
        },
        t.node().alt);
  }

 private:
  const Signature& sig_;
  std::size_t next_ = 0;
};

}  // namespace

Value gen_swap(const Signature& sig, const Type& t) {
  sig.check_type(t);
  return CodeGen(sig).swap_function(t);
}

Value gen_aeq(const Signature& sig, const Type& ar) {
  require_nominal(sig, ar);
  sig.check_type(ar);
  CodeGen gen(sig);
  Variable f = gen.name("aeq"), u = gen.name("u"), g = gen.name("aeq"), u2 = gen.name("u");
  std::map<std::string, Variable> env;
  Expr body = gen.aeq(ar, Value::var(u), Value::var(u2), env);
  Value inner = Value::fun(g, u2, body, ar, Type::nat());
  return Value::fun(f, u, inner, ar, Type::arrow(ar, Type::nat()));
}

Expr apply_curried(const Value& f, const std::vector<Value>& args) {
  if (args.empty()) return f;
  // Build from the last application outwards.
  std::vector<Variable> names;
  for (std::size_t i = 0; i + 1 < args.size(); ++i) names.push_back("app%" + std::to_string(i));
  Value head = names.empty() ? f : Value::var(names.back());
  Expr body = Expr::app(head, args.back());
  for (std::size_t i = args.size() - 1; i-- > 0;) {
    Value fn = i == 0 ? f : Value::var(names[i - 1]);
    body = Expr::let(names[i], Expr::app(fn, args[i]), body);
  }
  return body;
}

}  // namespace freshml
