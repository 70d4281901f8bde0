#include "freshml/program.hpp"

#include <fstream>
#include <sstream>

namespace freshml {

Program load_program(const ProgramFile& file) {
  ObservationRegistry registry =
      make_registry(file.observations ? *file.observations : std::vector<std::string>{});
  for (const auto& def : file.definitions) registry.add(make_user_observation(def));
  Program p{validate_signature(file.decl, std::move(registry)), desugar(file.body)};
  return p;
}

Program load_program_text(std::string_view text) { return load_program(parse_program(text)); }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Program load_program_file(const std::string& path) { return load_program_text(read_file(path)); }

}  // namespace freshml
