#include "freshml/lambda.hpp"

#include <map>

#include "freshml/overloaded.hpp"

namespace freshml {

LambdaTerm LambdaTerm::var(Atom a) {
  return LambdaTerm(std::make_shared<const LambdaNode>(LambdaNode{Var{a}}));
}
LambdaTerm LambdaTerm::lam(Atom a, LambdaTerm body) {
  return LambdaTerm(std::make_shared<const LambdaNode>(LambdaNode{Lam{a, std::move(body)}}));
}
LambdaTerm LambdaTerm::app(LambdaTerm fn, LambdaTerm arg) {
  return LambdaTerm(
      std::make_shared<const LambdaNode>(LambdaNode{App{std::move(fn), std::move(arg)}}));
}

const LambdaTerm::Var* LambdaTerm::as_var() const { return std::get_if<Var>(&node_->alt); }
const LambdaTerm::Lam* LambdaTerm::as_lam() const { return std::get_if<Lam>(&node_->alt); }
const LambdaTerm::App* LambdaTerm::as_app() const { return std::get_if<App>(&node_->alt); }

std::string LambdaTerm::str() const {
  if (const auto* v = as_var()) return v->atom.str();
  if (const auto* l = as_lam()) return "(\\" + l->atom.str() + ". " + l->body.str() + ")";
  const auto* a = as_app();
  return "(" + a->fn.str() + " " + a->arg.str() + ")";
}

Value rep(const LambdaTerm& t) {
  if (const auto* v = t.as_var()) return Value::con("V", Value::atom(v->atom));
  if (const auto* l = t.as_lam()) {
    return Value::con("L", Value::bind(Value::atom(l->atom), rep(l->body)));
  }
  const auto* a = t.as_app();
  return Value::con("A", Value::pair(rep(a->fn), rep(a->arg)));
}

namespace {

// Bound occurrences become their binder distance, free ones keep the name.
void de_bruijn(const LambdaTerm& t, std::vector<Atom>& binders, std::string& out) {
  if (const auto* v = t.as_var()) {
    for (std::size_t i = binders.size(); i-- > 0;) {
      if (binders[i] == v->atom) {
        out += "b" + std::to_string(binders.size() - 1 - i) + " ";
        return;
      }
    }
    out += "f" + std::to_string(v->atom.id) + " ";
  } else if (const auto* l = t.as_lam()) {
    out += "L ";
    binders.push_back(l->atom);
    de_bruijn(l->body, binders, out);
    binders.pop_back();
  } else {
    const auto* a = t.as_app();
    out += "A ";
    de_bruijn(a->fn, binders, out);
    de_bruijn(a->arg, binders, out);
  }
}

std::string canonical(const LambdaTerm& t) {
  std::vector<Atom> binders;
  std::string out;
  de_bruijn(t, binders, out);
  return out;
}

World free_names(const LambdaTerm& t) {
  if (const auto* v = t.as_var()) return {v->atom};
  if (const auto* l = t.as_lam()) {
    World w = free_names(l->body);
    w.erase(l->atom);
    return w;
  }
  const auto* a = t.as_app();
  return world_union(free_names(a->fn), free_names(a->arg));
}

LambdaTerm swap_names(const LambdaTerm& t, Atom a, Atom b) {
  auto sw = [&](Atom c) { return c == a ? b : c == b ? a : c; };
  if (const auto* v = t.as_var()) return LambdaTerm::var(sw(v->atom));
  if (const auto* l = t.as_lam()) return LambdaTerm::lam(sw(l->atom), swap_names(l->body, a, b));
  const auto* x = t.as_app();
  return LambdaTerm::app(swap_names(x->fn, a, b), swap_names(x->arg, a, b));
}

LambdaTerm rename_bound(const LambdaTerm& t, Rng& rng, const std::vector<Atom>& atoms) {
  if (t.as_var()) return t;
  if (const auto* x = t.as_app()) {
    return LambdaTerm::app(rename_bound(x->fn, rng, atoms), rename_bound(x->arg, rng, atoms));
  }
  const auto* l = t.as_lam();
  LambdaTerm body = rename_bound(l->body, rng, atoms);
  World avoid = free_names(LambdaTerm::lam(l->atom, body));
  std::vector<Atom> options;
  for (Atom c : atoms) {
    if (c == l->atom || !avoid.count(c)) options.push_back(c);
  }
  Atom c = pick(rng, options);
  return LambdaTerm::lam(c, swap_names(body, l->atom, c));
}

LambdaTerm edit(const LambdaTerm& t, Rng& rng, const std::vector<Atom>& atoms, std::size_t depth) {
  if (chance(rng, 0.25)) return gen_lambda(rng, atoms, depth);
  if (t.as_var()) return LambdaTerm::var(pick(rng, atoms));
  if (const auto* l = t.as_lam()) {
    if (chance(rng, 0.4)) return LambdaTerm::lam(pick(rng, atoms), l->body);
    return LambdaTerm::lam(l->atom, edit(l->body, rng, atoms, depth));
  }
  const auto* x = t.as_app();
  if (chance(rng, 0.5)) return LambdaTerm::app(edit(x->fn, rng, atoms, depth), x->arg);
  return LambdaTerm::app(x->fn, edit(x->arg, rng, atoms, depth));
}

}  // namespace

bool lambda_alpha(const LambdaTerm& t1, const LambdaTerm& t2) {
  return canonical(t1) == canonical(t2);
}

World lambda_atoms(const LambdaTerm& t) {
  if (const auto* v = t.as_var()) return {v->atom};
  if (const auto* l = t.as_lam()) {
    World w = lambda_atoms(l->body);
    w.insert(l->atom);
    return w;
  }
  const auto* a = t.as_app();
  return world_union(lambda_atoms(a->fn), lambda_atoms(a->arg));
}

LambdaTerm gen_lambda(Rng& rng, const std::vector<Atom>& atoms, std::size_t depth) {
  std::size_t choice = depth == 0 ? 0 : uniform(rng, 0, 2);
  if (choice == 0) return LambdaTerm::var(pick(rng, atoms));
  if (choice == 1) return LambdaTerm::lam(pick(rng, atoms), gen_lambda(rng, atoms, depth - 1));
  LambdaTerm fn = gen_lambda(rng, atoms, depth - 1);
  return LambdaTerm::app(fn, gen_lambda(rng, atoms, depth - 1));
}

std::pair<LambdaTerm, LambdaTerm> gen_lambda_pair(Rng& rng, const std::vector<Atom>& atoms,
                                                  std::size_t depth) {
  LambdaTerm t = gen_lambda(rng, atoms, depth);
  LambdaTerm renamed = rename_bound(t, rng, atoms);
  if (chance(rng, 0.5)) return {t, renamed};
  return {t, edit(renamed, rng, atoms, depth)};
}

}  // namespace freshml
