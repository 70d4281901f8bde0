#pragma once

#include <string>

#include "freshml/syntax.hpp"

namespace freshml {

/// Concrete syntax; the output re-parses to an alpha-equal term.
std::string print(const Value& v);
std::string print(const Expr& e);
std::string print(const Type& t);
/// `Id o (x. e1) o (y. e2)`, bottom frame first.
std::string print(const FrameStack& f);
std::string print(const Configuration& c);

}  // namespace freshml
