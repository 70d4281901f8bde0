#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "freshml/atom.hpp"
#include "freshml/type.hpp"

namespace freshml {

using Variable = std::string;
using VarSet = std::set<Variable>;

struct ValueNode;
struct ExprNode;
class Expr;

/// Sorted, duplicate-free list of free variables, cached on every node.
using FreeVarList = std::vector<Variable>;

/// Values of the reduced grammar. Immutable and cheap to copy (shared nodes).
class Value {
 public:
  struct Var { Variable name; };
  struct Unit {};
  struct Pair;
  struct Fun;
  struct Con;
  struct AtomLit { Atom atom; };
  struct Bind;

  static Value var(Variable name);
  static Value unit();
  static Value pair(Value first, Value second);
  /// fun(self param = body). Annotations are optional; when present the type
  /// checker holds the function to them.
  static Value fun(Variable self, Variable param, Expr body,
                   std::optional<Type> param_type = std::nullopt,
                   std::optional<Type> result_type = std::nullopt);
  static Value con(std::string constructor, Value arg);
  static Value atom(Atom a);
  static Value bind(Value atom, Value body);

  const ValueNode& node() const { return *node_; }
  const ValueNode* identity() const { return node_.get(); }

  const Var* as_var() const;
  bool is_unit() const;
  const Pair* as_pair() const;
  const Fun* as_fun() const;
  const Con* as_con() const;
  const AtomLit* as_atom() const;
  const Bind* as_bind() const;

  const FreeVarList& free() const;
  bool closed() const { return free().empty(); }

 private:
  explicit Value(std::shared_ptr<const ValueNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const ValueNode> node_;
};

struct MatchArm;

/// Expressions of the reduced (A-normal) grammar.
class Expr {
 public:
  struct Val { Value value; };
  struct Let;
  struct Fst { Value arg; };
  struct Snd { Value arg; };
  struct App { Value fn, arg; };
  struct Match;
  struct Fresh {};
  struct Unbind { Value arg; };
  struct Observe;

  static Expr val(Value v);
  static Expr let(Variable var, Expr bound, Expr body);
  static Expr fst(Value v);
  static Expr snd(Value v);
  static Expr app(Value fn, Value arg);
  static Expr match(Value scrutinee, std::vector<MatchArm> arms);
  static Expr fresh();
  static Expr unbind(Value v);
  static Expr observe(std::string name, std::vector<Value> args);

  // Implicit so that a Value can be used wherever an Expr is expected.
  Expr(Value v);  // NOLINT(google-explicit-constructor)

  const ExprNode& node() const { return *node_; }
  const ExprNode* identity() const { return node_.get(); }

  const Val* as_val() const;
  const Let* as_let() const;
  const Match* as_match() const;
  const App* as_app() const;
  const Observe* as_observe() const;
  bool is_value() const { return as_val() != nullptr; }

  const FreeVarList& free() const;
  bool closed() const { return free().empty(); }

 private:
  explicit Expr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const ExprNode> node_;
};

struct Value::Pair { Value first, second; };
struct Value::Fun {
  Variable self, param;
  Expr body;
  std::optional<Type> param_type, result_type;
};
struct Value::Con { std::string constructor; Value arg; };
struct Value::Bind { Value atom, body; };

struct MatchArm {
  std::string constructor;
  Variable var;
  Expr body;
};

struct Expr::Let { Variable var; Expr bound, body; };
struct Expr::Match { Value scrutinee; std::vector<MatchArm> arms; };
struct Expr::Observe { std::string name; std::vector<Value> args; };

struct ValueNode {
  std::variant<Value::Var, Value::Unit, Value::Pair, Value::Fun, Value::Con, Value::AtomLit,
               Value::Bind>
      alt;
  FreeVarList free;
};

struct ExprNode {
  std::variant<Expr::Val, Expr::Let, Expr::Fst, Expr::Snd, Expr::App, Expr::Match, Expr::Fresh,
               Expr::Unbind, Expr::Observe>
      alt;
  FreeVarList free;
};

/// One let-continuation frame (x.e).
struct Frame {
  Variable var;
  Expr body;
};

/// Persistent frame stack; `push` adds on the right (top), `Id` is empty.
class FrameStack {
 public:
  FrameStack() = default;  // Id
  static FrameStack from_frames(const std::vector<Frame>& bottom_to_top);

  bool empty() const { return top_ == nullptr; }
  std::size_t depth() const { return depth_; }
  FrameStack push(Frame frame) const;
  const Frame& top() const;
  FrameStack pop() const;
  /// Frames listed from the bottom (outermost) to the top.
  std::vector<Frame> frames() const;
  const void* identity() const { return top_.get(); }

 private:
  struct Node {
    Frame frame;
    std::shared_ptr<const Node> below;
  };
  std::shared_ptr<const Node> top_;
  std::size_t depth_ = 0;
};

/// Machine configuration ⟨s, F, e⟩. Plain aggregate: well-formedness
/// (atoms of F and e contained in s) is established by `make` or checked by
/// `well_formed`.
struct Configuration {
  State state;
  FrameStack stack;
  Expr expr = Expr::val(Value::unit());

  /// Throws Error(E_ATOM_ESCAPE) unless atoms_of(stack, expr) ⊆ atoms_of(state).
  static Configuration make(State state, FrameStack stack, Expr expr);
  bool well_formed() const;
};

// ---------------------------------------------------------------------------
// Numerals and small helpers.

/// ⌈m⌉: Zero() for 0, Succ ⌈m-1⌉ otherwise.
Value numeral(std::uint64_t m);
/// Inverse of `numeral`, nullopt if `v` is not a closed numeral.
std::optional<std::uint64_t> numeral_value(const Value& v);

// ---------------------------------------------------------------------------
// Atoms.

World atoms_of(const Value& v);
World atoms_of(const Expr& e);
World atoms_of(const FrameStack& f);
World atoms_of(const State& s);
World atoms_of(const FrameStack& f, const Expr& e);

// ---------------------------------------------------------------------------
// Variables and substitution.

VarSet free_vars(const Expr& e);
VarSet free_vars(const Value& v);
VarSet free_vars(const FrameStack& f);

using Substitution = std::vector<std::pair<Variable, Value>>;

/// Simultaneous substitution of values for variables, capture-avoiding with
/// respect to variable binders. Atoms are copied verbatim, so an atom in a
/// substituted value can end up under a `<a>-` binding of the same atom.
Expr substitute(const Expr& e, const Substitution& bindings);
Value substitute(const Value& v, const Substitution& bindings);

/// Replaces every literal occurrence of `from` by `to`.
Value rename_atom(const Value& v, Atom from, Atom to);
Expr rename_atom(const Expr& e, Atom from, Atom to);

// ---------------------------------------------------------------------------
// Permutation action.

Value perm_apply(const Permutation& pi, const Value& v);
Expr perm_apply(const Permutation& pi, const Expr& e);
FrameStack perm_apply(const Permutation& pi, const FrameStack& f);
Configuration perm_apply(const Permutation& pi, const Configuration& c);

// ---------------------------------------------------------------------------
// Equality up to renaming of bound variables. Atoms are compared literally;
// `<a>v` is not a meta-level binder.

bool alpha_equal(const Value& a, const Value& b);
bool alpha_equal(const Expr& a, const Expr& b);
bool alpha_equal(const FrameStack& a, const FrameStack& b);
inline bool operator==(const Value& a, const Value& b) { return alpha_equal(a, b); }
inline bool operator==(const Expr& a, const Expr& b) { return alpha_equal(a, b); }

/// Number of syntax nodes; used to bound generators and tests.
std::size_t size_of(const Value& v);
std::size_t size_of(const Expr& e);

}  // namespace freshml
