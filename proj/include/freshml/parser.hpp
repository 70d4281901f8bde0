#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "freshml/observation.hpp"
#include "freshml/signature.hpp"
#include "freshml/surface.hpp"

namespace freshml {

/// Contents of a program file: optional declarations, then one expression.
///
///   type term = V of atm | L of term bnd | A of term * term ;
///   observations: eq, lt ;
///   observe affine before (a, b) = if pos a < pos b then 0 else 1 ;
///   <expression>
struct ProgramFile {
  SignatureDecl decl;
  /// Built-ins named on the `observations:` line; nullopt means just eq.
  std::optional<std::vector<std::string>> observations;
  std::vector<ObservationDef> definitions;
  SurfaceExpr body = SurfaceExpr::make(SurfaceExpr::Unit{});
};

/// All parse functions throw Error(E_SYNTAX) with a line/column.
SurfaceExpr parse_surface(std::string_view text);
Type parse_type(std::string_view text);
ProgramFile parse_program(std::string_view text);

/// parse_surface followed by desugar.
Expr parse_expr(std::string_view text);
/// As parse_expr, but the result must be a value.
Value parse_value(std::string_view text);

}  // namespace freshml
