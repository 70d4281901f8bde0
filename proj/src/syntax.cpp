#include "freshml/syntax.hpp"

#include <algorithm>
#include <functional>
#include <iterator>

#include "freshml/error.hpp"
#include "freshml/overloaded.hpp"

namespace freshml {

namespace {

FreeVarList merge(const FreeVarList& a, const FreeVarList& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  FreeVarList out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

FreeVarList without(const FreeVarList& a, std::initializer_list<const Variable*> bound) {
  FreeVarList out;
  out.reserve(a.size());
  for (const auto& v : a) {
    bool hit = false;
    for (const Variable* b : bound) hit = hit || (*b == v);
    if (!hit) out.push_back(v);
  }
  return out;
}

bool mentions(const FreeVarList& free, const Variable& v) {
  return std::binary_search(free.begin(), free.end(), v);
}

}  // namespace

// ---------------------------------------------------------------------------
// Construction.

Value Value::var(Variable name) {
  FreeVarList fv{name};
  return Value(std::make_shared<const ValueNode>(ValueNode{Var{std::move(name)}, std::move(fv)}));
}

Value Value::unit() {
  static const Value u(std::make_shared<const ValueNode>(ValueNode{Unit{}, {}}));
  return u;
}

Value Value::pair(Value first, Value second) {
  FreeVarList fv = merge(first.free(), second.free());
  return Value(std::make_shared<const ValueNode>(
      ValueNode{Pair{std::move(first), std::move(second)}, std::move(fv)}));
}

Value Value::fun(Variable self, Variable param, Expr body, std::optional<Type> param_type,
                 std::optional<Type> result_type) {
  FreeVarList fv = without(body.free(), {&self, &param});
  return Value(std::make_shared<const ValueNode>(
      ValueNode{Fun{std::move(self), std::move(param), std::move(body), std::move(param_type),
                    std::move(result_type)},
                std::move(fv)}));
}

Value Value::con(std::string constructor, Value arg) {
  FreeVarList fv = arg.free();
  return Value(std::make_shared<const ValueNode>(
      ValueNode{Con{std::move(constructor), std::move(arg)}, std::move(fv)}));
}

Value Value::atom(Atom a) {
  return Value(std::make_shared<const ValueNode>(ValueNode{AtomLit{a}, {}}));
}

Value Value::bind(Value atom, Value body) {
  FreeVarList fv = merge(atom.free(), body.free());
  return Value(std::make_shared<const ValueNode>(
      ValueNode{Bind{std::move(atom), std::move(body)}, std::move(fv)}));
}

const Value::Var* Value::as_var() const { return std::get_if<Var>(&node_->alt); }
bool Value::is_unit() const { return std::holds_alternative<Unit>(node_->alt); }
const Value::Pair* Value::as_pair() const { return std::get_if<Pair>(&node_->alt); }
const Value::Fun* Value::as_fun() const { return std::get_if<Fun>(&node_->alt); }
const Value::Con* Value::as_con() const { return std::get_if<Con>(&node_->alt); }
const Value::AtomLit* Value::as_atom() const { return std::get_if<AtomLit>(&node_->alt); }
const Value::Bind* Value::as_bind() const { return std::get_if<Bind>(&node_->alt); }
const FreeVarList& Value::free() const { return node_->free; }

Expr::Expr(Value v) : Expr(val(std::move(v))) {}

Expr Expr::val(Value v) {
  FreeVarList fv = v.free();
  return Expr(std::make_shared<const ExprNode>(ExprNode{Val{std::move(v)}, std::move(fv)}));
}

Expr Expr::let(Variable var, Expr bound, Expr body) {
  FreeVarList fv = merge(bound.free(), without(body.free(), {&var}));
  return Expr(std::make_shared<const ExprNode>(
      ExprNode{Let{std::move(var), std::move(bound), std::move(body)}, std::move(fv)}));
}

Expr Expr::fst(Value v) {
  FreeVarList fv = v.free();
  return Expr(std::make_shared<const ExprNode>(ExprNode{Fst{std::move(v)}, std::move(fv)}));
}

Expr Expr::snd(Value v) {
  FreeVarList fv = v.free();
  return Expr(std::make_shared<const ExprNode>(ExprNode{Snd{std::move(v)}, std::move(fv)}));
}

Expr Expr::app(Value fn, Value arg) {
  FreeVarList fv = merge(fn.free(), arg.free());
  return Expr(std::make_shared<const ExprNode>(
      ExprNode{App{std::move(fn), std::move(arg)}, std::move(fv)}));
}

Expr Expr::match(Value scrutinee, std::vector<MatchArm> arms) {
  FreeVarList fv = scrutinee.free();
  for (const auto& arm : arms) fv = merge(fv, without(arm.body.free(), {&arm.var}));
  return Expr(std::make_shared<const ExprNode>(
      ExprNode{Match{std::move(scrutinee), std::move(arms)}, std::move(fv)}));
}

Expr Expr::fresh() {
  static const Expr f(std::make_shared<const ExprNode>(ExprNode{Fresh{}, {}}));
  return f;
}

Expr Expr::unbind(Value v) {
  FreeVarList fv = v.free();
  return Expr(std::make_shared<const ExprNode>(ExprNode{Unbind{std::move(v)}, std::move(fv)}));
}

Expr Expr::observe(std::string name, std::vector<Value> args) {
  FreeVarList fv;
  for (const auto& a : args) fv = merge(fv, a.free());
  return Expr(std::make_shared<const ExprNode>(
      ExprNode{Observe{std::move(name), std::move(args)}, std::move(fv)}));
}

const Expr::Val* Expr::as_val() const { return std::get_if<Val>(&node_->alt); }
const Expr::Let* Expr::as_let() const { return std::get_if<Let>(&node_->alt); }
const Expr::Match* Expr::as_match() const { return std::get_if<Match>(&node_->alt); }
const Expr::App* Expr::as_app() const { return std::get_if<App>(&node_->alt); }
const Expr::Observe* Expr::as_observe() const { return std::get_if<Observe>(&node_->alt); }
const FreeVarList& Expr::free() const { return node_->free; }

// ---------------------------------------------------------------------------
// Frame stacks and configurations.

FrameStack FrameStack::from_frames(const std::vector<Frame>& bottom_to_top) {
  FrameStack f;
  for (const auto& fr : bottom_to_top) f = f.push(fr);
  return f;
}

FrameStack FrameStack::push(Frame frame) const {
  FrameStack out;
  out.top_ = std::make_shared<const Node>(Node{std::move(frame), top_});
  out.depth_ = depth_ + 1;
  return out;
}

const Frame& FrameStack::top() const { return top_->frame; }

FrameStack FrameStack::pop() const {
  FrameStack out;
  out.top_ = top_->below;
  out.depth_ = depth_ - 1;
  return out;
}

std::vector<Frame> FrameStack::frames() const {
  std::vector<Frame> out;
  out.reserve(depth_);
  for (const Node* n = top_.get(); n != nullptr; n = n->below.get()) out.push_back(n->frame);
  std::reverse(out.begin(), out.end());
  return out;
}

Configuration Configuration::make(State state, FrameStack stack, Expr expr) {
  Configuration c{std::move(state), std::move(stack), std::move(expr)};
  if (!c.well_formed()) {
    throw Error(ErrorCode::AtomEscape,
                "configuration mentions atoms " + format_world(atoms_of(c.stack, c.expr)) +
                    " outside state " + c.state.str());
  }
  return c;
}

bool Configuration::well_formed() const {
  return is_subset(atoms_of(stack, expr), state.world());
}

// ---------------------------------------------------------------------------
// Numerals.

Value numeral(std::uint64_t m) {
  Value v = Value::con("Zero", Value::unit());
  for (std::uint64_t i = 0; i < m; ++i) v = Value::con("Succ", v);
  return v;
}

std::optional<std::uint64_t> numeral_value(const Value& v) {
  std::uint64_t n = 0;
  const Value* cur = &v;
  while (const auto* c = cur->as_con()) {
    if (c->constructor == "Zero") {
      if (!c->arg.is_unit()) return std::nullopt;
      return n;
    }
    if (c->constructor != "Succ") return std::nullopt;
    ++n;
    cur = &c->arg;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Atom traversal.

namespace {

void collect(const Value& v, World& out);
void collect(const Expr& e, World& out);

void collect(const Value& v, World& out) {
  std::visit(overloaded{
                 [](const Value::Var&) {},
                 [](const Value::Unit&) {},
                 [&](const Value::Pair& p) {
                   collect(p.first, out);
                   collect(p.second, out);
                 },
                 [&](const Value::Fun& f) { collect(f.body, out); },
                 [&](const Value::Con& c) { collect(c.arg, out); },
                 [&](const Value::AtomLit& a) { out.insert(a.atom); },
                 [&](const Value::Bind& b) {
                   collect(b.atom, out);
                   collect(b.body, out);
                 },
             },
             v.node().alt);
}

void collect(const Expr& e, World& out) {
  std::visit(overloaded{
                 [&](const Expr::Val& x) { collect(x.value, out); },
                 [&](const Expr::Let& x) {
                   collect(x.bound, out);
                   collect(x.body, out);
                 },
                 [&](const Expr::Fst& x) { collect(x.arg, out); },
                 [&](const Expr::Snd& x) { collect(x.arg, out); },
                 [&](const Expr::App& x) {
                   collect(x.fn, out);
                   collect(x.arg, out);
                 },
                 [&](const Expr::Match& x) {
                   collect(x.scrutinee, out);
                   for (const auto& arm : x.arms) collect(arm.body, out);
                 },
                 [](const Expr::Fresh&) {},
                 [&](const Expr::Unbind& x) { collect(x.arg, out); },
                 [&](const Expr::Observe& x) {
                   for (const auto& a : x.args) collect(a, out);
                 },
             },
             e.node().alt);
}

}  // namespace

World atoms_of(const Value& v) {
  World w;
  collect(v, w);
  return w;
}

World atoms_of(const Expr& e) {
  World w;
  collect(e, w);
  return w;
}

World atoms_of(const FrameStack& f) {
  World w;
  for (const auto& fr : f.frames()) collect(fr.body, w);
  return w;
}

World atoms_of(const State& s) { return s.world(); }

World atoms_of(const FrameStack& f, const Expr& e) {
  World w = atoms_of(f);
  collect(e, w);
  return w;
}

// ---------------------------------------------------------------------------
// Free variables.

VarSet free_vars(const Expr& e) { return VarSet(e.free().begin(), e.free().end()); }
VarSet free_vars(const Value& v) { return VarSet(v.free().begin(), v.free().end()); }

VarSet free_vars(const FrameStack& f) {
  VarSet out;
  for (const auto& fr : f.frames()) {
    for (const auto& v : fr.body.free()) {
      if (v != fr.var) out.insert(v);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Substitution.

namespace {

class Substituter {
 public:
  explicit Substituter(const Substitution& bindings) : bindings_(bindings) {}

  Value value(const Value& v) {
    if (!relevant(v.free())) return v;
    return std::visit(
        overloaded{
            [&](const Value::Var& x) -> Value {
              for (auto it = bindings_.rbegin(); it != bindings_.rend(); ++it) {
                if (it->first == x.name) return it->second;
              }
              return v;
            },
            [&](const Value::Unit&) -> Value { return v; },
            [&](const Value::AtomLit&) -> Value { return v; },
            [&](const Value::Pair& p) -> Value {
              return Value::pair(value(p.first), value(p.second));
            },
            [&](const Value::Con& c) -> Value { return Value::con(c.constructor, value(c.arg)); },
            [&](const Value::Bind& b) -> Value { return Value::bind(value(b.atom), value(b.body)); },
            [&](const Value::Fun& f) -> Value {
              Scope scope(*this);
              Variable self = scope.bind(f.self, f.body.free());
              Variable param = scope.bind(f.param, f.body.free());
              return Value::fun(self, param, expr(f.body), f.param_type, f.result_type);
            },
        },
        v.node().alt);
  }

  Expr expr(const Expr& e) {
    if (!relevant(e.free())) return e;
    return std::visit(
        overloaded{
            [&](const Expr::Val& x) -> Expr { return Expr::val(value(x.value)); },
            [&](const Expr::Let& x) -> Expr {
              Expr bound = expr(x.bound);
              Scope scope(*this);
              Variable var = scope.bind(x.var, x.body.free());
              return Expr::let(var, bound, expr(x.body));
            },
            [&](const Expr::Fst& x) -> Expr { return Expr::fst(value(x.arg)); },
            [&](const Expr::Snd& x) -> Expr { return Expr::snd(value(x.arg)); },
            [&](const Expr::App& x) -> Expr { return Expr::app(value(x.fn), value(x.arg)); },
            [&](const Expr::Match& x) -> Expr {
              Value scrutinee = value(x.scrutinee);
              std::vector<MatchArm> arms;
              arms.reserve(x.arms.size());
              for (const auto& arm : x.arms) {
                Scope scope(*this);
                Variable var = scope.bind(arm.var, arm.body.free());
                arms.push_back(MatchArm{arm.constructor, var, expr(arm.body)});
              }
              return Expr::match(scrutinee, std::move(arms));
            },
            [&](const Expr::Fresh&) -> Expr { return e; },
            [&](const Expr::Unbind& x) -> Expr { return Expr::unbind(value(x.arg)); },
            [&](const Expr::Observe& x) -> Expr {
              std::vector<Value> args;
              args.reserve(x.args.size());
              for (const auto& a : x.args) args.push_back(value(a));
              return Expr::observe(x.name, std::move(args));
            },
        },
        e.node().alt);
  }

 private:
  // Entering a binder shadows any binding for the bound name; if a substituted
  // value mentions the bound name freely, the binder is renamed.
  class Scope {
   public:
    explicit Scope(Substituter& s) : s_(s), mark_(s.bindings_.size()) {}
    ~Scope() { s_.bindings_.erase(s_.bindings_.begin() + static_cast<std::ptrdiff_t>(mark_), s_.bindings_.end()); }
    Scope(const Scope&) = delete;
    Scope& operator=(const Scope&) = delete;

    Variable bind(const Variable& name, const FreeVarList& body_free) {
      // Shadow: any outer binding of `name` is not visible below.
      s_.bindings_.emplace_back(name, Value::var(name));
      bool captures = false;
      for (const auto& [k, v] : s_.bindings_) {
        if (k != name && mentions(body_free, k) && mentions(v.free(), name)) captures = true;
      }
      if (!captures) return name;
      Variable fresh = s_.fresh_name(name, body_free);
      s_.bindings_.back().second = Value::var(fresh);
      return fresh;
    }

   private:
    Substituter& s_;
    std::size_t mark_;
  };

  bool relevant(const FreeVarList& free) const {
    for (const auto& [k, v] : bindings_) {
      if (mentions(free, k)) {
        if (!(v.as_var() && v.as_var()->name == k)) return true;
      }
    }
    return false;
  }

  Variable fresh_name(const Variable& base, const FreeVarList& body_free) const {
    for (std::size_t n = 1;; ++n) {
      Variable candidate = base + "_" + std::to_string(n);
      if (mentions(body_free, candidate)) continue;
      bool clash = false;
      for (const auto& [k, v] : bindings_) {
        if (k == candidate || mentions(v.free(), candidate)) clash = true;
      }
      if (!clash) return candidate;
    }
  }

  Substitution bindings_;
};

}  // namespace

Expr substitute(const Expr& e, const Substitution& bindings) {
  if (bindings.empty()) return e;
  return Substituter(bindings).expr(e);
}

Value substitute(const Value& v, const Substitution& bindings) {
  if (bindings.empty()) return v;
  return Substituter(bindings).value(v);
}

// ---------------------------------------------------------------------------
// Atom maps (renaming and permutation action). Unchanged subtrees are shared.

namespace {

using AtomMap = std::function<Atom(Atom)>;

Expr map_atoms(const Expr& e, const AtomMap& f, bool& changed);

Value map_atoms(const Value& v, const AtomMap& f, bool& changed) {
  bool local = false;
  Value out = std::visit(
      overloaded{
          [&](const Value::Var&) -> Value { return v; },
          [&](const Value::Unit&) -> Value { return v; },
          [&](const Value::AtomLit& a) -> Value {
            Atom b = f(a.atom);
            if (b == a.atom) return v;
            local = true;
            return Value::atom(b);
          },
          [&](const Value::Pair& p) -> Value {
            Value a = map_atoms(p.first, f, local);
            Value b = map_atoms(p.second, f, local);
            return local ? Value::pair(a, b) : v;
          },
          [&](const Value::Con& c) -> Value {
            Value a = map_atoms(c.arg, f, local);
            return local ? Value::con(c.constructor, a) : v;
          },
          [&](const Value::Bind& b) -> Value {
            Value a = map_atoms(b.atom, f, local);
            Value body = map_atoms(b.body, f, local);
            return local ? Value::bind(a, body) : v;
          },
          [&](const Value::Fun& fn) -> Value {
            Expr body = map_atoms(fn.body, f, local);
            return local ? Value::fun(fn.self, fn.param, body, fn.param_type, fn.result_type) : v;
          },
      },
      v.node().alt);
  changed = changed || local;
  return out;
}

Expr map_atoms(const Expr& e, const AtomMap& f, bool& changed) {
  bool local = false;
  Expr out = std::visit(
      overloaded{
          [&](const Expr::Val& x) -> Expr {
            Value v = map_atoms(x.value, f, local);
            return local ? Expr::val(v) : e;
          },
          [&](const Expr::Let& x) -> Expr {
            Expr a = map_atoms(x.bound, f, local);
            Expr b = map_atoms(x.body, f, local);
            return local ? Expr::let(x.var, a, b) : e;
          },
          [&](const Expr::Fst& x) -> Expr {
            Value v = map_atoms(x.arg, f, local);
            return local ? Expr::fst(v) : e;
          },
          [&](const Expr::Snd& x) -> Expr {
            Value v = map_atoms(x.arg, f, local);
            return local ? Expr::snd(v) : e;
          },
          [&](const Expr::App& x) -> Expr {
            Value a = map_atoms(x.fn, f, local);
            Value b = map_atoms(x.arg, f, local);
            return local ? Expr::app(a, b) : e;
          },
          [&](const Expr::Match& x) -> Expr {
            Value s = map_atoms(x.scrutinee, f, local);
            std::vector<MatchArm> arms;
            arms.reserve(x.arms.size());
            for (const auto& arm : x.arms) {
              arms.push_back(MatchArm{arm.constructor, arm.var, map_atoms(arm.body, f, local)});
            }
            return local ? Expr::match(s, std::move(arms)) : e;
          },
          [&](const Expr::Fresh&) -> Expr { return e; },
          [&](const Expr::Unbind& x) -> Expr {
            Value v = map_atoms(x.arg, f, local);
            return local ? Expr::unbind(v) : e;
          },
          [&](const Expr::Observe& x) -> Expr {
            std::vector<Value> args;
            args.reserve(x.args.size());
            for (const auto& a : x.args) args.push_back(map_atoms(a, f, local));
            return local ? Expr::observe(x.name, std::move(args)) : e;
          },
      },
      e.node().alt);
  changed = changed || local;
  return out;
}

template <class T>
T map_atoms(const T& x, const AtomMap& f) {
  bool changed = false;
  return map_atoms(x, f, changed);
}

}  // namespace

Value rename_atom(const Value& v, Atom from, Atom to) {
  if (from == to) return v;
  return map_atoms(v, [&](Atom a) { return a == from ? to : a; });
}

Expr rename_atom(const Expr& e, Atom from, Atom to) {
  if (from == to) return e;
  return map_atoms(e, [&](Atom a) { return a == from ? to : a; });
}

Value perm_apply(const Permutation& pi, const Value& v) {
  if (pi.transpositions().empty()) return v;
  return map_atoms(v, [&](Atom a) { return pi(a); });
}

Expr perm_apply(const Permutation& pi, const Expr& e) {
  if (pi.transpositions().empty()) return e;
  return map_atoms(e, [&](Atom a) { return pi(a); });
}

FrameStack perm_apply(const Permutation& pi, const FrameStack& f) {
  if (pi.transpositions().empty()) return f;
  std::vector<Frame> frames = f.frames();
  for (auto& fr : frames) fr.body = perm_apply(pi, fr.body);
  return FrameStack::from_frames(frames);
}

Configuration perm_apply(const Permutation& pi, const Configuration& c) {
  return Configuration{perm_apply(pi, c.state), perm_apply(pi, c.stack), perm_apply(pi, c.expr)};
}

// ---------------------------------------------------------------------------
// Equality up to bound-variable renaming.

namespace {

class AlphaEq {
 public:
  bool value(const Value& a, const Value& b) {
    if (a.identity() == b.identity() && a.closed()) return true;
    if (a.node().alt.index() != b.node().alt.index()) return false;
    return std::visit(
        overloaded{
            [&](const Value::Var& x) { return var(x.name, std::get<Value::Var>(b.node().alt).name); },
            [](const Value::Unit&) { return true; },
            [&](const Value::AtomLit& x) {
              return x.atom == std::get<Value::AtomLit>(b.node().alt).atom;
            },
            [&](const Value::Pair& x) {
              const auto& y = std::get<Value::Pair>(b.node().alt);
              return value(x.first, y.first) && value(x.second, y.second);
            },
            [&](const Value::Con& x) {
              const auto& y = std::get<Value::Con>(b.node().alt);
              return x.constructor == y.constructor && value(x.arg, y.arg);
            },
            [&](const Value::Bind& x) {
              const auto& y = std::get<Value::Bind>(b.node().alt);
              return value(x.atom, y.atom) && value(x.body, y.body);
            },
            [&](const Value::Fun& x) {
              const auto& y = std::get<Value::Fun>(b.node().alt);
              if (x.param_type != y.param_type || x.result_type != y.result_type) return false;
              std::size_t mark = left_.size();
              push(x.self, y.self);
              push(x.param, y.param);
              bool ok = expr(x.body, y.body);
              pop(mark);
              return ok;
            },
        },
        a.node().alt);
  }

  bool expr(const Expr& a, const Expr& b) {
    if (a.identity() == b.identity() && a.closed()) return true;
    if (a.node().alt.index() != b.node().alt.index()) return false;
    return std::visit(
        overloaded{
            [&](const Expr::Val& x) { return value(x.value, std::get<Expr::Val>(b.node().alt).value); },
            [&](const Expr::Let& x) {
              const auto& y = std::get<Expr::Let>(b.node().alt);
              if (!expr(x.bound, y.bound)) return false;
              std::size_t mark = left_.size();
              push(x.var, y.var);
              bool ok = expr(x.body, y.body);
              pop(mark);
              return ok;
            },
            [&](const Expr::Fst& x) { return value(x.arg, std::get<Expr::Fst>(b.node().alt).arg); },
            [&](const Expr::Snd& x) { return value(x.arg, std::get<Expr::Snd>(b.node().alt).arg); },
            [&](const Expr::App& x) {
              const auto& y = std::get<Expr::App>(b.node().alt);
              return value(x.fn, y.fn) && value(x.arg, y.arg);
            },
            [&](const Expr::Match& x) {
              const auto& y = std::get<Expr::Match>(b.node().alt);
              if (x.arms.size() != y.arms.size() || !value(x.scrutinee, y.scrutinee)) return false;
              for (std::size_t i = 0; i < x.arms.size(); ++i) {
                if (x.arms[i].constructor != y.arms[i].constructor) return false;
                std::size_t mark = left_.size();
                push(x.arms[i].var, y.arms[i].var);
                bool ok = expr(x.arms[i].body, y.arms[i].body);
                pop(mark);
                if (!ok) return false;
              }
              return true;
            },
            [](const Expr::Fresh&) { return true; },
            [&](const Expr::Unbind& x) {
              return value(x.arg, std::get<Expr::Unbind>(b.node().alt).arg);
            },
            [&](const Expr::Observe& x) {
              const auto& y = std::get<Expr::Observe>(b.node().alt);
              if (x.name != y.name || x.args.size() != y.args.size()) return false;
              for (std::size_t i = 0; i < x.args.size(); ++i) {
                if (!value(x.args[i], y.args[i])) return false;
              }
              return true;
            },
        },
        a.node().alt);
  }

  void push(const Variable& a, const Variable& b) {
    left_.push_back(a);
    right_.push_back(b);
  }

  void pop(std::size_t mark) {
    left_.resize(mark);
    right_.resize(mark);
  }

 private:
  // Binder depth of the innermost binding of `name`, or -1 if free.
  static long index_of(const std::vector<Variable>& env, const Variable& name) {
    for (std::size_t i = env.size(); i-- > 0;) {
      if (env[i] == name) return static_cast<long>(i);
    }
    return -1;
  }

  bool var(const Variable& a, const Variable& b) const {
    long i = index_of(left_, a);
    long j = index_of(right_, b);
    if (i < 0 && j < 0) return a == b;
    return i == j;
  }

  std::vector<Variable> left_, right_;
};

}  // namespace

bool alpha_equal(const Value& a, const Value& b) { return AlphaEq().value(a, b); }
bool alpha_equal(const Expr& a, const Expr& b) { return AlphaEq().expr(a, b); }

bool alpha_equal(const FrameStack& a, const FrameStack& b) {
  if (a.depth() != b.depth()) return false;
  auto fa = a.frames();
  auto fb = b.frames();
  for (std::size_t i = 0; i < fa.size(); ++i) {
    AlphaEq eq;
    eq.push(fa[i].var, fb[i].var);
    if (!eq.expr(fa[i].body, fb[i].body)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

std::size_t size_of(const Value& v) {
  return std::visit(overloaded{
                        [](const Value::Var&) -> std::size_t { return 1; },
                        [](const Value::Unit&) -> std::size_t { return 1; },
                        [](const Value::AtomLit&) -> std::size_t { return 1; },
                        [](const Value::Pair& p) -> std::size_t {
                          return 1 + size_of(p.first) + size_of(p.second);
                        },
                        [](const Value::Con& c) -> std::size_t { return 1 + size_of(c.arg); },
                        [](const Value::Bind& b) -> std::size_t {
                          return 1 + size_of(b.atom) + size_of(b.body);
                        },
                        [](const Value::Fun& f) -> std::size_t { return 1 + size_of(f.body); },
                    },
                    v.node().alt);
}

std::size_t size_of(const Expr& e) {
  return std::visit(overloaded{
                        [](const Expr::Val& x) -> std::size_t { return size_of(x.value); },
                        [](const Expr::Let& x) -> std::size_t {
                          return 1 + size_of(x.bound) + size_of(x.body);
                        },
                        [](const Expr::Fst& x) -> std::size_t { return 1 + size_of(x.arg); },
                        [](const Expr::Snd& x) -> std::size_t { return 1 + size_of(x.arg); },
                        [](const Expr::App& x) -> std::size_t {
                          return 1 + size_of(x.fn) + size_of(x.arg);
                        },
                        [](const Expr::Match& x) -> std::size_t {
                          std::size_t n = 1 + size_of(x.scrutinee);
                          for (const auto& arm : x.arms) n += size_of(arm.body);
                          return n;
                        },
                        [](const Expr::Fresh&) -> std::size_t { return 1; },
                        [](const Expr::Unbind& x) -> std::size_t { return 1 + size_of(x.arg); },
                        [](const Expr::Observe& x) -> std::size_t {
                          std::size_t n = 1;
                          for (const auto& a : x.args) n += size_of(a);
                          return n;
                        },
                    },
                    e.node().alt);
}

}  // namespace freshml
