// freshml: run, check and test programs of the nominal calculus.

#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "freshml/error.hpp"
#include "freshml/harness.hpp"
#include "freshml/machine.hpp"
#include "freshml/nominal.hpp"
#include "freshml/observation.hpp"
#include "freshml/parser.hpp"
#include "freshml/printer.hpp"
#include "freshml/program.hpp"
#include "freshml/typecheck.hpp"

using namespace freshml;
using nlohmann::json;

namespace {

constexpr int kStaticError = 1;

Atom parse_atom(std::string text) {
  auto trim = [](std::string& s) {
    s.erase(0, s.find_first_not_of(" \t"));
    s.erase(s.find_last_not_of(" \t") + 1);
  };
  trim(text);
  if (!text.empty() && text[0] == '#') text.erase(0, 1);
  if (text.size() < 2 || text[0] != 'a' || text.find_first_not_of("0123456789", 1) != std::string::npos) {
    throw Error(ErrorCode::Syntax, "bad atom '" + text + "' (expected #aN)");
  }
  return Atom{static_cast<std::uint32_t>(std::stoul(text.substr(1)))};
}

std::vector<Atom> parse_atoms(const std::string& list) {
  std::vector<Atom> out;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.find_first_not_of(" \t") != std::string::npos) out.push_back(parse_atom(item));
  }
  return out;
}

Type checked_type(const Signature& sig, const std::string& text) {
  Type t = parse_type(text);
  sig.check_type(t);
  return t;
}

Value value_of(const Program& p, const std::string& path) {
  if (!p.expr.is_value()) throw Error(ErrorCode::Type, path + ": expected a value");
  return p.expr.as_val()->value;
}

void emit(bool as_json, json j, const std::string& text) {
  if (as_json) {
    json out = {{"schema", 1}};
    out.update(j);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << text << "\n";
  }
}

Signature signature_from(const std::string& program_path, const std::vector<std::string>& observations) {
  if (!program_path.empty()) return load_program_file(program_path).sig;
  std::vector<std::string> names = observations.empty() ? std::vector<std::string>{"eq"} : observations;
  return validate_signature(SignatureDecl{}, make_registry(names));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"freshml: a nominal functional calculus with an abstract machine"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable output")->trigger_on_parse();

  // run
  std::string run_path, run_state;
  std::uint64_t run_fuel = 10000;
  bool run_trace = false;
  std::string run_policy = "least";
  auto* run_cmd = app.add_subcommand("run", "evaluate a program");
  run_cmd->add_option("file", run_path)->required();
  run_cmd->add_option("--state", run_state, "initial state, e.g. #a0,#a1");
  run_cmd->add_option("--fuel", run_fuel);
  run_cmd->add_flag("--trace", run_trace, "print every configuration");
  run_cmd->add_option("--policy", run_policy, "fresh atoms: least | greatest")
      ->check(CLI::IsMember({"least", "greatest"}));
  run_cmd->add_flag("--json", as_json);

  // check
  std::string check_path;
  auto* check_cmd = app.add_subcommand("check", "type-check a program");
  check_cmd->add_option("file", check_path)->required();
  check_cmd->add_flag("--json", as_json);

  // alpha
  std::string alpha_left, alpha_right, alpha_arity, alpha_world;
  auto* alpha_cmd = app.add_subcommand("alpha", "alpha-equivalence of two values");
  alpha_cmd->add_option("left", alpha_left)->required();
  alpha_cmd->add_option("right", alpha_right)->required();
  alpha_cmd->add_option("--arity", alpha_arity)->required();
  alpha_cmd->add_option("--world", alpha_world, "default: atoms of both values");
  alpha_cmd->add_flag("--json", as_json);

  // fuzz-equiv
  std::string fe_left, fe_right, fe_type, fe_world;
  CiuOptions fe;
  auto* fe_cmd = app.add_subcommand("fuzz-equiv", "CIU testing of two closed programs");
  fe_cmd->add_option("left", fe_left)->required();
  fe_cmd->add_option("right", fe_right)->required();
  fe_cmd->add_option("--type", fe_type)->required();
  fe_cmd->add_option("--world", fe_world, "default: atoms of both programs");
  fe_cmd->add_option("--trials", fe.trials);
  fe_cmd->add_option("--fuel", fe.fuel);
  fe_cmd->add_option("--seed", fe.seed);
  fe_cmd->add_option("--max-stack-depth", fe.max_stack_depth);
  fe_cmd->add_flag("--json", as_json);

  // fuzz-safety
  std::size_t fs_trials = 1000;
  std::uint64_t fs_steps = 200, fs_seed = 1;
  std::string fs_program;
  std::vector<std::string> fs_observations;
  auto* fs_cmd = app.add_subcommand("fuzz-safety", "preservation and progress on generated programs");
  fs_cmd->add_option("--trials", fs_trials);
  fs_cmd->add_option("--steps", fs_steps);
  fs_cmd->add_option("--seed", fs_seed);
  fs_cmd->add_option("--program", fs_program, "take declarations and observations from this file");
  fs_cmd->add_option("--observations", fs_observations)->delimiter(',');
  fs_cmd->add_flag("--json", as_json);

  // obs-check
  std::string oc_name, oc_program;
  std::size_t oc_trials = 1000;
  std::uint64_t oc_seed = 1;
  auto* oc_cmd = app.add_subcommand("obs-check", "sampled equivariance and affineness of an observation");
  oc_cmd->add_option("name", oc_name)->required();
  oc_cmd->add_option("--trials", oc_trials);
  oc_cmd->add_option("--seed", oc_seed);
  oc_cmd->add_option("--program", oc_program, "file defining the observation");
  oc_cmd->add_flag("--json", as_json);

  // emit-swap / emit-aeq
  std::string emit_type, emit_program;
  auto* swap_cmd = app.add_subcommand("emit-swap", "print swap at a type");
  auto* aeq_cmd = app.add_subcommand("emit-aeq", "print aeq at a nominal arity");
  for (auto* c : {swap_cmd, aeq_cmd}) {
    c->add_option("type,--type", emit_type)->required();
    c->add_option("--program", emit_program, "take declarations from this file");
    c->add_flag("--json", as_json);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      Program p = load_program_file(run_path);
      check_expr(p.sig, {}, p.expr);
      std::vector<Atom> atoms;
      if (run_cmd->count("--state")) {
        atoms = parse_atoms(run_state);
      } else {
        World w = atoms_of(p.expr);
        atoms.assign(w.begin(), w.end());
      }
      Configuration cfg{State(atoms), FrameStack(), p.expr};
      RunOptions options;
      options.fuel = run_fuel;
      options.policy = run_policy == "least" ? FreshPolicy::LeastUnused : FreshPolicy::GreatestPlusOne;
      json trace_lines = json::array();
      if (run_trace) {
        auto visited = trace(p.sig, cfg, run_fuel, options.policy);
        for (std::size_t i = 0; i < visited.size(); ++i) {
          std::string line = format_trace_line(i, visited[i]);
          if (as_json) trace_lines.push_back(line);
          else std::cout << line << "\n";
        }
      }
      Outcome o = run(p.sig, cfg, options);
      json j = outcome_json(o);
      if (run_trace) j["trace"] = trace_lines;
      emit(as_json, {{"outcome", j}}, format_outcome(o));
      return outcome_exit_code(o);
    }

    if (*check_cmd) {
      Program p = load_program_file(check_path);
      Type t = check_expr(p.sig, {}, p.expr);
      bool nominal = p.sig.is_nominal() && is_nominal_arity(p.sig, t);
      emit(as_json, {{"type", print(t)}, {"nominal", nominal}},
           print(t) + "\nnominal: " + (nominal ? "yes" : "no"));
      return 0;
    }

    if (*alpha_cmd) {
      Program l = load_program_file(alpha_left);
      Program r = load_program_file(alpha_right);
      Value v = value_of(l, alpha_left), v2 = value_of(r, alpha_right);
      Type ar = checked_type(l.sig, alpha_arity);
      World w = world_union(atoms_of(v), atoms_of(v2));
      if (alpha_cmd->count("--world")) {
        auto listed = parse_atoms(alpha_world);
        w = World(listed.begin(), listed.end());
      }
      bool eq = alpha_eq(l.sig, w, v, v2, ar);
      emit(as_json, {{"alpha_eq", eq}, {"arity", print(ar)}, {"world", format_world(w)}},
           eq ? "ALPHA-EQ" : "NOT-ALPHA-EQ");
      return 0;
    }

    if (*fe_cmd) {
      Program l = load_program_file(fe_left);
      Program r = load_program_file(fe_right);
      Type t = checked_type(l.sig, fe_type);
      check_expr_against(l.sig, {}, l.expr, t);
      check_expr_against(l.sig, {}, r.expr, t);
      World w;
      if (fe_cmd->count("--world")) {
        for (Atom a : parse_atoms(fe_world)) w.insert(a);
      } else {
        w = world_union(atoms_of(l.expr), atoms_of(r.expr));
      }
      CiuVerdict v = ciu_test(l.sig, w, l.expr, r.expr, t, fe);
      std::string text = v.label() + " trials=" + std::to_string(v.trials_run) +
                         " inconclusive=" + std::to_string(v.inconclusive);
      if (v.counterexample) {
        text += "\nstate: " + v.counterexample->state.str() + "\nstack: " +
                print(v.counterexample->stack) + "\nleft: " + format_outcome(v.counterexample->left) +
                "\nright: " + format_outcome(v.counterexample->right);
      }
      emit(as_json, v.to_json(), text);
      return 0;
    }

    if (*fs_cmd) {
      Signature sig = signature_from(fs_program, fs_observations);
      SafetyReport r = check_safety(sig, fs_trials, fs_steps, fs_seed);
      std::string text = std::string(r.pass() ? "PASS" : "FAIL") + " preservation+progress " +
                         std::to_string(r.passed) + "/" + std::to_string(r.configs);
      for (const auto& f : r.failures) text += "\n  " + f;
      json j = r.to_json();
      j["verdict"] = r.pass() ? "PASS" : "FAIL";
      emit(as_json, j, text);
      return r.pass() ? 0 : 4;
    }

    if (*oc_cmd) {
      std::optional<Observation> found;
      if (!oc_program.empty()) {
        Signature sig = load_program_file(oc_program).sig;
        if (const Observation* user = sig.observations().find(oc_name)) found = *user;
      }
      if (!found) found = builtin_observation(oc_name);
      if (!found) throw Error(ErrorCode::UnknownObservation, "unknown observation '" + oc_name + "'");
      const Observation* o = &*found;
      ObservationVerdict eqv = check_equivariance(*o, oc_trials, oc_seed);
      ObservationVerdict aff = check_affine(*o, oc_trials, oc_seed);
      auto line = [](const char* what, const ObservationVerdict& v) {
        std::string s = std::string(what) + " " + (v.pass ? "PASS" : "FAIL") + " (" +
                        std::to_string(v.trials) + " trials)";
        if (v.counterexample) s += " witness: " + v.counterexample->str();
        return s;
      };
      auto verdict_json = [](const ObservationVerdict& v) {
        json j = {{"pass", v.pass}, {"trials", v.trials}};
        if (v.counterexample) j["witness"] = v.counterexample->str();
        return j;
      };
      emit(as_json,
           {{"observation", o->name}, {"equivariance", verdict_json(eqv)}, {"affine", verdict_json(aff)}},
           line("equivariance", eqv) + "\n" + line("affine", aff));
      return 0;
    }

    if (*swap_cmd || *aeq_cmd) {
      Signature sig = emit_program.empty() ? lambda_signature() : load_program_file(emit_program).sig;
      Type t = checked_type(sig, emit_type);
      Value v = *swap_cmd ? gen_swap(sig, t) : gen_aeq(sig, t);
      Type vt = check_value(sig, {}, v);
      emit(as_json, {{"value", print(v)}, {"type", print(vt)}}, print(v));
      return 0;
    }
  } catch (const Error& e) {
    std::string where;
    if (e.loc()) where = " at " + std::to_string(e.loc()->line) + ":" + std::to_string(e.loc()->column);
    if (as_json) {
      std::cout << json{{"schema", 1}, {"error", code_name(e.code())}, {"message", e.detail()}}.dump(2)
                << "\n";
    }
    std::cerr << code_name(e.code()) << where << ": " << e.detail() << "\n";
    return kStaticError;
  }
  return 0;
}
