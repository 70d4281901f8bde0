#pragma once

#include <string>
#include <string_view>

#include "freshml/parser.hpp"
#include "freshml/signature.hpp"
#include "freshml/syntax.hpp"

namespace freshml {

/// A checked signature (with its observation set) and the desugared body.
struct Program {
  Signature sig;
  Expr expr = Expr::val(Value::unit());
};

/// Builds the observation set (eq, the named built-ins, then the user
/// definitions, each run through the sampled checkers), validates the
/// declarations and desugars the body.
Program load_program(const ProgramFile& file);
Program load_program_text(std::string_view text);
/// Throws E_IO if the file cannot be read.
Program load_program_file(const std::string& path);
std::string read_file(const std::string& path);

}  // namespace freshml
