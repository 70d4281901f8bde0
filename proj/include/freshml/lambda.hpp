#pragma once

#include <memory>
#include <string>
#include <variant>

#include "freshml/random.hpp"
#include "freshml/syntax.hpp"

namespace freshml {

struct LambdaNode;

/// Object-level λ-terms t ::= a | λa.t | t t, with atoms as names.
class LambdaTerm {
 public:
  struct Var { Atom atom; };
  struct Lam;
  struct App;

  static LambdaTerm var(Atom a);
  static LambdaTerm lam(Atom a, LambdaTerm body);
  static LambdaTerm app(LambdaTerm fn, LambdaTerm arg);

  const Var* as_var() const;
  const Lam* as_lam() const;
  const App* as_app() const;

  std::string str() const;

 private:
  explicit LambdaTerm(std::shared_ptr<const LambdaNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const LambdaNode> node_;
};

struct LambdaTerm::Lam { Atom atom; LambdaTerm body; };
struct LambdaTerm::App { LambdaTerm fn, arg; };

struct LambdaNode {
  std::variant<LambdaTerm::Var, LambdaTerm::Lam, LambdaTerm::App> alt;
};

/// ⌈a⌉ = V a, ⌈λa.t⌉ = L <a>⌈t⌉, ⌈t1 t2⌉ = A(⌈t1⌉, ⌈t2⌉).
Value rep(const LambdaTerm& t);

/// Textbook α-equivalence via conversion to de Bruijn indices (free names
/// are kept as names).
bool lambda_alpha(const LambdaTerm& t1, const LambdaTerm& t2);

World lambda_atoms(const LambdaTerm& t);

/// Random term over `atoms` with the given depth bound.
LambdaTerm gen_lambda(Rng& rng, const std::vector<Atom>& atoms, std::size_t depth);

/// A pair that is α-equivalent about half the time: the second component is
/// either a capture-free renaming of the bound names of the first or a
/// local edit of it.
std::pair<LambdaTerm, LambdaTerm> gen_lambda_pair(Rng& rng, const std::vector<Atom>& atoms,
                                                  std::size_t depth);

}  // namespace freshml
