#pragma once

#include <algorithm>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "mdi/problem.hpp"
#include "mdi/problem_file.hpp"

namespace mdi::testing {

inline Point vec1(double x) { return Point::Constant(1, x); }

inline Point vec(std::initializer_list<double> xs) {
  Point p(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) p(i++) = x;
  return p;
}

// [a, inf) in R^1.
inline Shape half_line(double a) { return HalfSpace{vec1(1.0), a}; }

inline OperatorFamily moving_half_line(std::vector<double> starts, const std::vector<double>& lows,
                                       RhoSpec rho) {
  MovingConvexSet set;
  set.starts = std::move(starts);
  for (double a : lows) set.shapes.push_back(half_line(a));
  return {set, std::move(rho), 0.0};
}

inline OperatorFamily static_linear(const Matrix& q, RhoSpec rho, double c) {
  return {TimeVaryingLinear{{0.0}, {q}}, std::move(rho), c};
}

inline ProblemPtr make_problem(OperatorFamily family, Point u0) {
  const Eigen::Index d = family.dimension();
  return std::make_shared<const ProblemSpec>(std::move(family), Perturbation::zero(d), std::move(u0));
}

inline ProblemPtr make_problem(OperatorFamily family, Perturbation f, Point u0) {
  return std::make_shared<const ProblemSpec>(std::move(family), std::move(f), std::move(u0));
}

inline std::vector<std::filesystem::path> shipped_problem_paths() {
  std::vector<std::filesystem::path> out;
  for (const auto& entry : std::filesystem::directory_iterator(MDI_PROBLEMS_DIR)) {
    if (entry.path().extension() == ".json") out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<ProblemFile> shipped_problems() {
  std::vector<ProblemFile> out;
  for (const auto& p : shipped_problem_paths()) out.push_back(load_problem(p));
  return out;
}

inline std::string problem_path(const std::string& stem) {
  return (std::filesystem::path(MDI_PROBLEMS_DIR) / (stem + ".json")).string();
}

}  // namespace mdi::testing
