#pragma once
// Reference oracles used by the unit tests. Each is written against the
// concrete syntax or plain data, never through the library routine it checks.

#include <algorithm>
#include <cstdio>
#include <map>
#include <regex>
#include <string>
#include <vector>

#include "freshml/atom.hpp"
#include "freshml/overloaded.hpp"
#include "freshml/parser.hpp"
#include "freshml/printer.hpp"
#include "freshml/signature.hpp"
#include "freshml/syntax.hpp"

namespace oracle {

using namespace freshml;

/// Atom literals found by scanning printed text.
inline World atoms_in_text(const std::string& text) {
  World w;
  static const std::regex lit("#a([0-9]+)");
  for (auto it = std::sregex_iterator(text.begin(), text.end(), lit); it != std::sregex_iterator(); ++it) {
    w.insert(Atom{static_cast<std::uint32_t>(std::stoul((*it)[1]))});
  }
  return w;
}

/// Observations evaluated straight from their definitions on a plain vector.
inline std::uint64_t observe(const std::string& name, const std::vector<Atom>& s,
                             const std::vector<Atom>& args) {
  auto pos = [&](Atom a) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == a) return i;
    }
    return s.size();
  };
  if (name == "eq") return args[0] == args[1] ? 0 : 1;
  if (name == "lt") return pos(args[0]) < pos(args[1]) ? 0 : 1;
  if (name == "ord") return pos(args[0]);
  if (name == "card") return s.size();
  if (name == "raw_index") return args[0].id;
  return 999;
}

/// De Bruijn canonical form of a closed value read at a nominal arity: bound
/// atoms become their binder distance, free ones keep their index. Two values
/// are α-equivalent iff their canonical strings coincide.
inline void canon(const Signature& sig, const Value& v, const Type& ar, std::vector<Atom>& binders,
                  std::string& out) {
  if (ar.is_unit()) {
    out += "u ";
  } else if (ar.is_atm()) {
    Atom a = v.as_atom()->atom;
    for (std::size_t i = binders.size(); i-- > 0;) {
      if (binders[i] == a) {
        out += "b" + std::to_string(binders.size() - 1 - i) + " ";
        return;
      }
    }
    out += "f" + std::to_string(a.id) + " ";
  } else if (const auto* p = ar.as_prod()) {
    out += "( ";
    canon(sig, v.as_pair()->first, p->left, binders, out);
    canon(sig, v.as_pair()->second, p->right, binders, out);
    out += ") ";
  } else if (const auto* b = ar.as_bnd()) {
    out += "< ";
    binders.push_back(v.as_bind()->atom.as_atom()->atom);
    canon(sig, v.as_bind()->body, b->body, binders, out);
    binders.pop_back();
    out += "> ";
  } else if (ar.as_data()) {
    const auto* c = v.as_con();
    auto ref = sig.find_constructor(c->constructor);
    out += c->constructor + " ";
    canon(sig, c->arg, ref->constructor->arg, binders, out);
  }
}

inline std::string canonical(const Signature& sig, const Value& v, const Type& ar) {
  std::vector<Atom> binders;
  std::string out;
  canon(sig, v, ar, binders, out);
  return out;
}

inline bool alpha(const Signature& sig, const Value& v, const Value& v2, const Type& ar) {
  return canonical(sig, v, ar) == canonical(sig, v2, ar);
}

/// Runs a shell command and returns (exit code, stdout [+ stderr]).
inline std::pair<int, std::string> shell(const std::string& cmd, bool with_stderr = false) {
  std::string out;
  FILE* p = popen((cmd + (with_stderr ? " 2>&1" : " 2>/dev/null")).c_str(), "r");
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  int status = pclose(p);
  return {WEXITSTATUS(status), out};
}

}  // namespace oracle
