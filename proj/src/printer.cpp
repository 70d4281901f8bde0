#include "freshml/printer.hpp"

#include "freshml/overloaded.hpp"

namespace freshml {

namespace {

bool self_delimiting(const Value& v) {
  return v.as_var() || v.is_unit() || v.as_pair() || v.as_fun() || v.as_atom() || v.as_bind();
}

std::string atomic(const Value& v) {
  std::string s = print(v);
  return self_delimiting(v) ? s : "(" + s + ")";
}

}  // namespace

std::string print(const Value& v) {
  return std::visit(
      overloaded{
          [](const Value::Var& x) -> std::string { return x.name; },
          [](const Value::Unit&) -> std::string { return "()"; },
          [](const Value::AtomLit& a) -> std::string { return a.atom.str(); },
          [](const Value::Pair& p) -> std::string {
            return "(" + print(p.first) + ", " + print(p.second) + ")";
          },
          [](const Value::Con& c) -> std::string {
            if (c.arg.is_unit() || c.arg.as_pair()) return c.constructor + print(c.arg);
            if (self_delimiting(c.arg)) return c.constructor + " " + print(c.arg);
            return c.constructor + "(" + print(c.arg) + ")";
          },
          [](const Value::Bind& b) -> std::string {
            return "<" + print(b.atom) + ">" + atomic(b.body);
          },
          [](const Value::Fun& f) -> std::string {
            std::string param = f.param_type ? "(" + f.param + " : " + f.param_type->str() + ")"
                                             : f.param;
            std::string result = f.result_type ? " : " + f.result_type->str() : "";
            return "fun(" + f.self + " " + param + result + " = " + print(f.body) + ")";
          },
      },
      v.node().alt);
}

std::string print(const Expr& e) {
  return std::visit(
      overloaded{
          [](const Expr::Val& x) -> std::string { return print(x.value); },
          [](const Expr::Let& x) -> std::string {
            return "let " + x.var + " = " + print(x.bound) + " in " + print(x.body);
          },
          [](const Expr::Fst& x) -> std::string { return "fst " + atomic(x.arg); },
          [](const Expr::Snd& x) -> std::string { return "snd " + atomic(x.arg); },
          [](const Expr::App& x) -> std::string { return atomic(x.fn) + " " + atomic(x.arg); },
          [](const Expr::Match& x) -> std::string {
            std::string out = "match " + atomic(x.scrutinee) + " with (";
            for (std::size_t i = 0; i < x.arms.size(); ++i) {
              if (i) out += " | ";
              out += x.arms[i].constructor + " " + x.arms[i].var + " -> " + print(x.arms[i].body);
            }
            return out + ")";
          },
          [](const Expr::Fresh&) -> std::string { return "fresh()"; },
          [](const Expr::Unbind& x) -> std::string { return "unbind " + atomic(x.arg); },
          [](const Expr::Observe& x) -> std::string {
            std::string out = "@" + x.name;
            for (const auto& a : x.args) out += " " + atomic(a);
            return out;
          },
      },
      e.node().alt);
}

std::string print(const Type& t) { return t.str(); }

std::string print(const FrameStack& f) {
  std::string out = "Id";
  for (const auto& fr : f.frames()) out += " o (" + fr.var + ". " + print(fr.body) + ")";
  return out;
}

std::string print(const Configuration& c) {
  return "<" + c.state.str() + ", " + print(c.stack) + ", " + print(c.expr) + ">";
}

}  // namespace freshml
