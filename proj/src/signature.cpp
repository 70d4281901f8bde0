#include "freshml/signature.hpp"

#include <set>

#include "freshml/overloaded.hpp"

namespace freshml {

namespace {

DataType nat_type() {
  return {"nat", {{"Zero", Type::unit()}, {"Succ", Type::nat()}}, std::nullopt};
}

void check_declared(const Type& t, const std::set<std::string>& names,
                    const std::optional<SourceLoc>& loc) {
  std::visit(overloaded{
                 [](const Type::Unit&) {},
                 [](const Type::Atm&) {},
                 [](const Type::Meta&) {},
                 [&](const Type::Prod& p) {
                   check_declared(p.left, names, loc);
                   check_declared(p.right, names, loc);
                 },
                 [&](const Type::Arrow& a) {
                   check_declared(a.from, names, loc);
                   check_declared(a.to, names, loc);
                 },
                 [&](const Type::Bnd& b) { check_declared(b.body, names, loc); },
                 [&](const Type::Data& d) {
                   if (!names.count(d.name)) {
                     throw Error(ErrorCode::UndeclaredType, "undeclared type " + d.name, loc);
                   }
                 },
             },
             t.node().alt);
}

bool nominal_shape(const Type& t) {
  return std::visit(overloaded{
                        [](const Type::Unit&) { return true; },
                        [](const Type::Atm&) { return true; },
                        [](const Type::Data&) { return true; },
                        [](const Type::Meta&) { return false; },
                        [](const Type::Arrow&) { return false; },
                        [](const Type::Prod& p) { return nominal_shape(p.left) && nominal_shape(p.right); },
                        [](const Type::Bnd& b) { return nominal_shape(b.body); },
                    },
                    t.node().alt);
}

}  // namespace

Signature::Signature() { datatypes_.push_back(nat_type()); }

const DataType* Signature::find_type(const std::string& name) const {
  for (const auto& d : datatypes_) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

std::optional<Signature::ConstructorRef> Signature::find_constructor(const std::string& name) const {
  for (const auto& d : datatypes_) {
    for (std::size_t i = 0; i < d.constructors.size(); ++i) {
      if (d.constructors[i].name == name) return ConstructorRef{&d, &d.constructors[i], i};
    }
  }
  return std::nullopt;
}

void Signature::check_type(const Type& t) const {
  std::set<std::string> names;
  for (const auto& d : datatypes_) names.insert(d.name);
  check_declared(t, names, std::nullopt);
}

Signature validate_signature(const SignatureDecl& decl, ObservationRegistry observations) {
  Signature sig;
  sig.observations_ = std::move(observations);
  std::set<std::string> type_names{"nat"};
  std::set<std::string> con_names{"Zero", "Succ"};
  for (const auto& d : decl.datatypes) {
    if (!type_names.insert(d.name).second) {
      throw Error(ErrorCode::DuplicateType, "type " + d.name + " declared twice", d.loc);
    }
    for (const auto& c : d.constructors) {
      if (!con_names.insert(c.name).second) {
        throw Error(ErrorCode::DuplicateCon, "constructor " + c.name + " declared twice", d.loc);
      }
    }
  }
  for (const auto& d : decl.datatypes) {
    for (const auto& c : d.constructors) {
      check_declared(c.arg, type_names, d.loc);
      if (!nominal_shape(c.arg)) sig.nominal_ = false;
    }
    sig.datatypes_.push_back(d);
  }
  return sig;
}

bool is_nominal_arity(const Signature& sig, const Type& t) {
  (void)sig;
  return nominal_shape(t);
}

Signature lambda_signature(ObservationRegistry observations) {
  Type term = Type::data("term");
  SignatureDecl decl;
  decl.datatypes.push_back(DataType{"term",
                                    {{"V", Type::atm()},
                                     {"L", Type::bnd(term)},
                                     {"A", Type::prod(term, term)}},
                                    std::nullopt});
  return validate_signature(decl, std::move(observations));
}

}  // namespace freshml
