#include "freshml/type.hpp"

#include "freshml/overloaded.hpp"

namespace freshml {

Type Type::unit() {
  static const Type t(std::make_shared<const TypeNode>(TypeNode{Unit{}}));
  return t;
}

Type Type::atm() {
  static const Type t(std::make_shared<const TypeNode>(TypeNode{Atm{}}));
  return t;
}

Type Type::prod(Type left, Type right) {
  return Type(std::make_shared<const TypeNode>(TypeNode{Prod{std::move(left), std::move(right)}}));
}

Type Type::arrow(Type from, Type to) {
  return Type(std::make_shared<const TypeNode>(TypeNode{Arrow{std::move(from), std::move(to)}}));
}

Type Type::data(std::string name) {
  return Type(std::make_shared<const TypeNode>(TypeNode{Data{std::move(name)}}));
}

Type Type::bnd(Type body) {
  return Type(std::make_shared<const TypeNode>(TypeNode{Bnd{std::move(body)}}));
}

Type Type::meta(std::uint32_t id) {
  return Type(std::make_shared<const TypeNode>(TypeNode{Meta{id}}));
}

bool Type::is_unit() const { return std::holds_alternative<Unit>(node_->alt); }
bool Type::is_atm() const { return std::holds_alternative<Atm>(node_->alt); }
const Type::Prod* Type::as_prod() const { return std::get_if<Prod>(&node_->alt); }
const Type::Arrow* Type::as_arrow() const { return std::get_if<Arrow>(&node_->alt); }
const Type::Data* Type::as_data() const { return std::get_if<Data>(&node_->alt); }
const Type::Bnd* Type::as_bnd() const { return std::get_if<Bnd>(&node_->alt); }
const Type::Meta* Type::as_meta() const { return std::get_if<Meta>(&node_->alt); }

bool operator==(const Type& a, const Type& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->alt.index() != b.node_->alt.index()) return false;
  return std::visit(
      overloaded{
          [](const Type::Unit&) { return true; },
          [](const Type::Atm&) { return true; },
          [&](const Type::Prod& p) {
            const auto& q = std::get<Type::Prod>(b.node_->alt);
            return p.left == q.left && p.right == q.right;
          },
          [&](const Type::Arrow& p) {
            const auto& q = std::get<Type::Arrow>(b.node_->alt);
            return p.from == q.from && p.to == q.to;
          },
          [&](const Type::Data& p) { return p.name == std::get<Type::Data>(b.node_->alt).name; },
          [&](const Type::Bnd& p) { return p.body == std::get<Type::Bnd>(b.node_->alt).body; },
          [&](const Type::Meta& p) { return p.id == std::get<Type::Meta>(b.node_->alt).id; },
      },
      a.node_->alt);
}

namespace {

// Precedence: 0 = arrow, 1 = product, 2 = postfix bnd / atomic.
std::string show(const Type& t, int context) {
  return std::visit(
      overloaded{
          [](const Type::Unit&) -> std::string { return "unit"; },
          [](const Type::Atm&) -> std::string { return "atm"; },
          [](const Type::Data& d) -> std::string { return d.name; },
          [](const Type::Meta& m) -> std::string { return "?" + std::to_string(m.id); },
          [](const Type::Bnd& b) -> std::string { return show(b.body, 2) + " bnd"; },
          [&](const Type::Prod& p) -> std::string {
            std::string s = show(p.left, 2) + " * " + show(p.right, 1);
            return context > 1 ? "(" + s + ")" : s;
          },
          [&](const Type::Arrow& a) -> std::string {
            std::string s = show(a.from, 1) + " -> " + show(a.to, 0);
            return context > 0 ? "(" + s + ")" : s;
          },
      },
      t.node().alt);
}

}  // namespace

std::string Type::str() const { return show(*this, 0); }

}  // namespace freshml
