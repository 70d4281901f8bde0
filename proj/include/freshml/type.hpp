#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>

namespace freshml {

struct TypeNode;

/// Types: unit | τ*τ | τ→τ | δ | atm | τ bnd. The `Meta` alternative is a
/// unification variable; it only appears inside the type checker and is never
/// returned from a public checking entry point.
class Type {
 public:
  struct Unit {};
  struct Atm {};
  struct Prod;
  struct Arrow;
  struct Data;
  struct Bnd;
  struct Meta;

  static Type unit();
  static Type atm();
  static Type prod(Type left, Type right);
  static Type arrow(Type from, Type to);
  static Type data(std::string name);
  static Type bnd(Type body);
  static Type meta(std::uint32_t id);
  static Type nat() { return data("nat"); }

  const TypeNode& node() const { return *node_; }

  bool is_unit() const;
  bool is_atm() const;
  const Prod* as_prod() const;
  const Arrow* as_arrow() const;
  const Data* as_data() const;
  const Bnd* as_bnd() const;
  const Meta* as_meta() const;

  friend bool operator==(const Type& a, const Type& b);

  std::string str() const;

 private:
  explicit Type(std::shared_ptr<const TypeNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const TypeNode> node_;
};

struct Type::Prod { Type left, right; };
struct Type::Arrow { Type from, to; };
struct Type::Data { std::string name; };
struct Type::Bnd { Type body; };
struct Type::Meta { std::uint32_t id; };

struct TypeNode {
  std::variant<Type::Unit, Type::Prod, Type::Arrow, Type::Data, Type::Atm, Type::Bnd, Type::Meta>
      alt;
};

}  // namespace freshml
