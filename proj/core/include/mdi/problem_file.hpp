#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "mdi/problem.hpp"
#include "mdi/reference.hpp"

namespace mdi {

struct SolverSettings {
  double eps0 = 0.1;
  std::size_t max_levels = 10;
  double tol = 1e-3;
  std::uint64_t seed = 1;
};

struct ProblemFile {
  std::string name;
  ProblemPtr problem;
  SolverSettings solver;
  std::optional<OracleKind> oracle;
};

// JSON document with sections space, rho, operator, perturbation, initial,
// solver and an optional oracle. Unknown keys, wrong types and invalid data
// raise ParseError.
ProblemFile parse_problem(const std::string& text, const std::string& origin = "<string>");
ProblemFile load_problem(const std::filesystem::path& path);

}  // namespace mdi
