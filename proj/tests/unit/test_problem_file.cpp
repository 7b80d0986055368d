#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "../support/fixtures.hpp"
#include "mdi/errors.hpp"

using namespace mdi;
using namespace mdi::testing;
using nlohmann::json;

namespace {

json base() {
  return json::parse(R"({
    "name": "base",
    "space": {"dimension": 1, "horizon": 1.0},
    "rho": {"atoms": [{"time": 0.5, "mass": 2.0}]},
    "operator": {"kind": "moving_set", "growth_c": 0.0,
                 "pieces": [{"start": 0.0, "shape": {"type": "halfspace", "normal": [1.0], "offset": 0.0}},
                            {"start": 0.5, "shape": {"type": "halfspace", "normal": [1.0], "offset": 2.0}}]},
    "perturbation": {"kind": "zero"},
    "initial": {"u0": [0.0]},
    "solver": {"eps0": 0.1, "max_levels": 8, "tol": 1e-3, "seed": 4},
    "oracle": "running_max"
  })");
}

void expect_parse_error(const json& doc, const std::string& fragment) {
  try {
    parse_problem(doc.dump());
    FAIL() << "expected ParseError mentioning " << fragment;
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
  }
}

}  // namespace

TEST(ParseProblem, Base) {
  const ProblemFile f = parse_problem(base().dump());
  EXPECT_EQ(f.name, "base");
  EXPECT_EQ(f.problem->dimension(), 1);
  EXPECT_EQ(f.problem->rho().atoms().size(), 1u);
  EXPECT_EQ(f.solver.max_levels, 8u);
  EXPECT_EQ(f.solver.seed, 4u);
  EXPECT_EQ(f.oracle, OracleKind::RunningMax);
  EXPECT_EQ(f.problem->family().kind(), OperatorKind::MovingConvexSet);
}

TEST(ParseProblem, SolverSectionDefaults) {
  json doc = base();
  doc["solver"] = json::object();
  doc.erase("oracle");
  const ProblemFile f = parse_problem(doc.dump());
  EXPECT_EQ(f.solver.eps0, SolverSettings{}.eps0);
  EXPECT_FALSE(f.oracle);
}

TEST(ParseProblem, RejectsUnknownKeys) {
  json doc = base();
  doc["extra"] = 1;
  expect_parse_error(doc, "extra");
  doc = base();
  doc["operator"]["pieces"][0]["shape"]["radius"] = 1.0;
  expect_parse_error(doc, "radius");
  doc = base();
  doc["solver"]["levels"] = 3;
  expect_parse_error(doc, "levels");
}

TEST(ParseProblem, RejectsWrongTypes) {
  json doc = base();
  doc["space"]["dimension"] = "one";
  expect_parse_error(doc, "dimension");
  doc = base();
  doc["initial"]["u0"] = 0.0;
  expect_parse_error(doc, "u0");
  doc = base();
  doc["solver"]["max_levels"] = -1;
  expect_parse_error(doc, "max_levels");
  EXPECT_THROW(parse_problem("{not json"), ParseError);
  EXPECT_THROW(parse_problem("[]"), ParseError);
}

TEST(ParseProblem, RejectsMissingSections) {
  for (const char* key : {"space", "rho", "operator", "perturbation", "initial"}) {
    json doc = base();
    doc.erase(key);
    expect_parse_error(doc, key);
  }
}

TEST(ParseProblem, RejectsInvalidData) {
  json doc = base();
  doc["initial"]["u0"] = {-1.0};
  EXPECT_THROW(parse_problem(doc.dump()), ParseError);
  doc = base();
  doc["initial"]["u0"] = {0.0, 0.0};
  EXPECT_THROW(parse_problem(doc.dump()), ParseError);
  doc = base();
  doc["rho"]["atoms"][0]["mass"] = -1.0;
  EXPECT_THROW(parse_problem(doc.dump()), ParseError);
  doc = base();
  doc["operator"]["kind"] = "maximal";
  expect_parse_error(doc, "maximal");
  doc = base();
  doc["oracle"] = "closed_form";
  expect_parse_error(doc, "closed_form");
  doc = base();
  doc["oracle"] = "linear_exponential";
  EXPECT_THROW(parse_problem(doc.dump()), ParseError);
  doc = base();
  doc["space"]["horizon"] = 0.0;
  EXPECT_THROW(parse_problem(doc.dump()), ParseError);
}

TEST(ParseProblem, AcceptsInfiniteBounds) {
  json doc = base();
  doc["operator"] = json::parse(R"({"kind": "moving_set", "growth_c": 0.0,
      "shape": {"type": "box", "lower": ["-inf"], "upper": [1.0]}})");
  doc.erase("oracle");
  const ProblemFile f = parse_problem(doc.dump());
  EXPECT_EQ(f.problem->family().domain_distance(0.3, vec1(-1e9)), 0.0);
  EXPECT_NEAR(f.problem->family().domain_distance(0.3, vec1(3.0)), 2.0, 1e-15);
}

TEST(ParseProblem, AllFamiliesAndForces) {
  const ProblemFile f = parse_problem(R"({
    "space": {"dimension": 2, "horizon": 1.0},
    "rho": {"ac_breakpoints": [0.0, 0.5], "ac_density": [0.0, 1.0]},
    "operator": {"kind": "subdifferential", "growth_c": 2.0,
                 "coordinates": [{"type": "abs"}, {"type": "half_square", "q": 2.0}]},
    "perturbation": {"kind": "coordinate", "m": 1.0, "alpha": {"breakpoints": [0.0, 0.5], "values": [1.0, 0.5]},
                     "functions": ["tanh", "clip"], "scale": [1.0, 0.5],
                     "time_profile": {"breakpoints": [0.0, 0.5], "values": [1.0, 0.5]}},
    "initial": {"u0": [0.5, 0.5]},
    "solver": {}
  })");
  EXPECT_EQ(f.problem->family().kind(), OperatorKind::SeparableSubdifferential);
  EXPECT_FALSE(f.problem->perturbation().is_zero());
  EXPECT_EQ(f.problem->perturbation().alpha()(0.7), 0.5);
}

TEST(LoadProblem, ShippedFilesLoad) {
  const auto paths = shipped_problem_paths();
  EXPECT_GE(paths.size(), 10u);
  for (const auto& path : paths) {
    EXPECT_NO_THROW(load_problem(path)) << path;
  }
  EXPECT_THROW(load_problem("/nonexistent/problem.json"), ParseError);
}
