#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "freshml/error.hpp"
#include "freshml/syntax.hpp"

namespace freshml {

struct SurfaceNode;

/// Parsed expression before desugaring. Arguments of destructors may be
/// arbitrary expressions here; `desugar` names them with lets.
class SurfaceExpr {
 public:
  struct Var { Variable name; };
  struct Unit {};
  struct AtomLit { Atom atom; };
  struct Pair;
  struct Fun;
  struct Lambda;
  struct Con;
  struct Bind;
  struct Let;
  struct LetBind;
  struct Fst;
  struct Snd;
  struct App;
  struct Match;
  struct If;
  struct Fresh {};
  struct FreshIn;
  struct Unbind;
  struct Observe;
  /// `[-]`, a context hole.
  struct Hole {};

  using Alt = std::variant<Var, Unit, AtomLit, Pair, Fun, Lambda, Con, Bind, Let, LetBind, Fst,
                           Snd, App, Match, If, Fresh, FreshIn, Unbind, Observe, Hole>;

  template <class T>
  static SurfaceExpr make(T alt, SourceLoc loc = {});

  const Alt& alt() const;
  SourceLoc loc() const;

 private:
  explicit SurfaceExpr(std::shared_ptr<const SurfaceNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const SurfaceNode> node_;
};

struct SurfaceExpr::Pair { SurfaceExpr first, second; };
struct SurfaceExpr::Fun {
  Variable self, param;
  std::optional<Type> param_type, result_type;
  SurfaceExpr body;
};
struct SurfaceExpr::Lambda {
  Variable param;
  std::optional<Type> param_type;
  SurfaceExpr body;
};
struct SurfaceExpr::Con { std::string constructor; SurfaceExpr arg; };
struct SurfaceExpr::Bind { SurfaceExpr atom, body; };
struct SurfaceExpr::Let { Variable var; SurfaceExpr bound, body; };
struct SurfaceExpr::LetBind { Variable atom_var, body_var; SurfaceExpr bound, body; };
struct SurfaceExpr::Fst { SurfaceExpr arg; };
struct SurfaceExpr::Snd { SurfaceExpr arg; };
struct SurfaceExpr::App { SurfaceExpr fn, arg; };
struct SurfaceArm {
  std::string constructor;
  Variable var;
  SurfaceExpr body;
};
struct SurfaceExpr::Match { SurfaceExpr scrutinee; std::vector<SurfaceArm> arms; };
struct SurfaceExpr::If { SurfaceExpr cond, then_branch, else_branch; };
struct SurfaceExpr::FreshIn { Variable var; SurfaceExpr body; };
struct SurfaceExpr::Unbind { SurfaceExpr arg; };
struct SurfaceExpr::Observe { std::string name; std::vector<SurfaceExpr> args; };

struct SurfaceNode {
  SurfaceExpr::Alt alt;
  SourceLoc loc;
};

template <class T>
SurfaceExpr SurfaceExpr::make(T alt, SourceLoc loc) {
  return SurfaceExpr(std::make_shared<const SurfaceNode>(SurfaceNode{std::move(alt), loc}));
}

/// Into the reduced grammar. Only non-value subterms are let-bound, so
/// desugaring text that is already reduced gives the same term back.
/// Throws E_UNKNOWN_FORM on a hole.
Expr desugar(const SurfaceExpr& s);

/// Replaces every hole by `filler`.
SurfaceExpr fill_hole(const SurfaceExpr& context, const SurfaceExpr& filler);

/// Embeds a reduced expression (for building contexts programmatically).
SurfaceExpr to_surface(const Expr& e);
SurfaceExpr to_surface(const Value& v);

}  // namespace freshml
