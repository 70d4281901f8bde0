#include "freshml/error.hpp"

namespace freshml {

std::string_view code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Syntax: return "E_SYNTAX";
    case ErrorCode::UnknownForm: return "E_UNKNOWN_FORM";
    case ErrorCode::Type: return "E_TYPE";
    case ErrorCode::NonexhaustiveMatch: return "E_NONEXHAUSTIVE_MATCH";
    case ErrorCode::Arity: return "E_ARITY";
    case ErrorCode::UnboundVar: return "E_UNBOUND_VAR";
    case ErrorCode::AtomEscape: return "E_ATOM_ESCAPE";
    case ErrorCode::DuplicateCon: return "E_DUPLICATE_CON";
    case ErrorCode::DuplicateType: return "E_DUPLICATE_TYPE";
    case ErrorCode::UndeclaredType: return "E_UNDECLARED_TYPE";
    case ErrorCode::NotNominal: return "E_NOT_NOMINAL";
    case ErrorCode::IllTyped: return "E_ILL_TYPED";
    case ErrorCode::Uninhabited: return "E_UNINHABITED";
    case ErrorCode::NotEquivariant: return "E_NOT_EQUIVARIANT";
    case ErrorCode::NotAffine: return "E_NOT_AFFINE";
    case ErrorCode::UnknownObservation: return "E_UNKNOWN_OBSERVATION";
    case ErrorCode::Io: return "E_IO";
  }
  return "E_UNKNOWN";
}

namespace {

std::string render(ErrorCode code, const std::string& message,
                   const std::optional<SourceLoc>& loc) {
  std::string out(code_name(code));
  if (loc) {
    out += " at " + std::to_string(loc->line) + ":" + std::to_string(loc->column);
  }
  out += ": ";
  out += message;
  return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message, std::optional<SourceLoc> loc)
    : std::runtime_error(render(code, message, loc)),
      code_(code),
      loc_(loc),
      detail_(message) {}

}  // namespace freshml
