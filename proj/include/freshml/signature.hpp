#pragma once

#include <optional>
#include <string>
#include <vector>

#include "freshml/error.hpp"
#include "freshml/observation.hpp"
#include "freshml/type.hpp"

namespace freshml {

struct Constructor {
  std::string name;
  Type arg;
};

struct DataType {
  std::string name;
  std::vector<Constructor> constructors;
  std::optional<SourceLoc> loc;
};

/// Unchecked declaration as written: data types in source order.
struct SignatureDecl {
  std::vector<DataType> datatypes;
};

/// Validated data-type declaration together with the observation set.
class Signature {
 public:
  struct ConstructorRef {
    const DataType* datatype;
    const Constructor* constructor;
    std::size_t index;  // position within the datatype
  };

  /// nat only, observations {eq}.
  Signature();

  const std::vector<DataType>& datatypes() const { return datatypes_; }
  const DataType* find_type(const std::string& name) const;
  std::optional<ConstructorRef> find_constructor(const std::string& name) const;

  /// Every constructor argument type is a nominal arity.
  bool is_nominal() const { return nominal_; }

  ObservationRegistry& observations() { return observations_; }
  const ObservationRegistry& observations() const { return observations_; }

  /// Throws E_UNDECLARED_TYPE if τ names an unknown data type.
  void check_type(const Type& t) const;

 private:
  friend Signature validate_signature(const SignatureDecl&, ObservationRegistry);
  std::vector<DataType> datatypes_;
  bool nominal_ = true;
  ObservationRegistry observations_;
};

/// Checks constructor distinctness and that every named type is declared;
/// adds nat (Zero of unit | Succ of nat). Throws E_DUPLICATE_CON,
/// E_DUPLICATE_TYPE, E_UNDECLARED_TYPE.
Signature validate_signature(const SignatureDecl& decl,
                             ObservationRegistry observations = ObservationRegistry());

/// ar ::= unit | ar*ar | δ | atm | ar bnd
bool is_nominal_arity(const Signature& sig, const Type& t);

/// term = V of atm | L of term bnd | A of term * term
Signature lambda_signature(ObservationRegistry observations = ObservationRegistry());

}  // namespace freshml
