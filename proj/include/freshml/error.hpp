#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace freshml {

enum class ErrorCode {
  Syntax,
  UnknownForm,
  Type,
  NonexhaustiveMatch,
  Arity,
  UnboundVar,
  AtomEscape,
  DuplicateCon,
  DuplicateType,
  UndeclaredType,
  NotNominal,
  IllTyped,
  Uninhabited,
  NotEquivariant,
  NotAffine,
  UnknownObservation,
  Io,
};

/// Stable diagnostic tag, e.g. "E_SYNTAX".
std::string_view code_name(ErrorCode code);

struct SourceLoc {
  std::size_t line = 1;
  std::size_t column = 1;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<SourceLoc> loc = std::nullopt);

  ErrorCode code() const { return code_; }
  const std::optional<SourceLoc>& loc() const { return loc_; }
  /// Message without the code prefix.
  const std::string& detail() const { return detail_; }

 private:
  ErrorCode code_;
  std::optional<SourceLoc> loc_;
  std::string detail_;
};

}  // namespace freshml
