#include "mdi/problem_file.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mdi/errors.hpp"

namespace mdi {
namespace {

using Json = nlohmann::json;

// A JSON node together with its path, for error messages.
class Node {
 public:
  Node(const Json& j, std::string path) : j_(&j), path_(std::move(path)) {}

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(path_ + ": " + what); }

  const Json& json() const { return *j_; }
  const std::string& path() const { return path_; }

  void object(std::initializer_list<const char*> allowed) const {
    if (!j_->is_object()) fail("expected an object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, value] : j_->items()) {
      if (!ok.count(key)) fail("unknown key '" + key + "'");
    }
  }

  bool has(const char* key) const { return j_->contains(key); }

  Node at(const char* key) const {
    if (!j_->contains(key)) fail(std::string("missing key '") + key + "'");
    return {(*j_)[key], path_ + "." + key};
  }

  std::optional<Node> maybe(const char* key) const {
    if (!j_->contains(key)) return std::nullopt;
    return Node((*j_)[key], path_ + "." + key);
  }

  std::vector<Node> array() const {
    if (!j_->is_array()) fail("expected an array");
    std::vector<Node> out;
    for (std::size_t i = 0; i < j_->size(); ++i) {
      out.emplace_back((*j_)[i], path_ + "[" + std::to_string(i) + "]");
    }
    return out;
  }

  // Finite number; "inf" / "-inf" strings only when `allow_inf`.
  double number(bool allow_inf = false) const {
    if (j_->is_number()) {
      const double v = j_->get<double>();
      if (!std::isfinite(v)) fail("expected a finite number");
      return v;
    }
    if (allow_inf && j_->is_string()) {
      const std::string s = j_->get<std::string>();
      if (s == "inf") return std::numeric_limits<double>::infinity();
      if (s == "-inf") return -std::numeric_limits<double>::infinity();
    }
    fail(allow_inf ? "expected a number or \"inf\"/\"-inf\"" : "expected a number");
  }

  std::uint64_t unsigned_integer() const {
    if (!j_->is_number_unsigned() && !(j_->is_number_integer() && j_->get<std::int64_t>() >= 0)) {
      fail("expected a nonnegative integer");
    }
    return j_->get<std::uint64_t>();
  }

  std::string string() const {
    if (!j_->is_string()) fail("expected a string");
    return j_->get<std::string>();
  }

  std::vector<double> numbers(bool allow_inf = false) const {
    std::vector<double> out;
    for (const Node& n : array()) out.push_back(n.number(allow_inf));
    return out;
  }

  Point point(Eigen::Index d, bool allow_inf = false) const {
    const std::vector<double> v = numbers(allow_inf);
    if (static_cast<Eigen::Index>(v.size()) != d) {
      fail("expected " + std::to_string(d) + " components, got " + std::to_string(v.size()));
    }
    return Eigen::Map<const Point>(v.data(), d);
  }

  Matrix matrix(Eigen::Index d) const {
    const std::vector<Node> rows = array();
    if (static_cast<Eigen::Index>(rows.size()) != d) fail("expected " + std::to_string(d) + " rows");
    Matrix m(d, d);
    for (Eigen::Index r = 0; r < d; ++r) m.row(r) = rows[static_cast<std::size_t>(r)].point(d).transpose();
    return m;
  }

 private:
  const Json* j_;
  std::string path_;
};

PiecewiseConstant piecewise(const Node& n) {
  if (n.json().is_number()) return PiecewiseConstant(n.number());
  n.object({"breakpoints", "values"});
  try {
    return {n.at("breakpoints").numbers(), n.at("values").numbers()};
  } catch (const DomainError& e) {
    n.fail(e.what());
  }
}

RhoSpec parse_rho(const Node& n, double horizon) {
  n.object({"ac_breakpoints", "ac_density", "atoms"});
  std::vector<double> breaks{0.0};
  std::vector<double> density{0.0};
  if (auto b = n.maybe("ac_breakpoints")) breaks = b->numbers();
  if (auto r = n.maybe("ac_density")) density = r->numbers();
  std::vector<Atom> atoms;
  if (auto a = n.maybe("atoms")) {
    for (const Node& atom : a->array()) {
      atom.object({"time", "mass"});
      atoms.push_back({atom.at("time").number(), atom.at("mass").number()});
    }
  }
  try {
    return {horizon, std::move(breaks), std::move(density), std::move(atoms)};
  } catch (const DomainError& e) {
    n.fail(e.what());
  }
}

HalfSpace parse_halfspace(const Node& n, Eigen::Index d) {
  return {n.at("normal").point(d), n.at("offset").number()};
}

Shape parse_shape(const Node& n, Eigen::Index d) {
  if (!n.json().is_object()) n.fail("expected an object");
  const std::string type = n.at("type").string();
  Shape shape;
  if (type == "box") {
    n.object({"type", "lower", "upper"});
    shape = Box{n.at("lower").point(d, true), n.at("upper").point(d, true)};
  } else if (type == "ball") {
    n.object({"type", "center", "radius"});
    shape = Ball{n.at("center").point(d), n.at("radius").number()};
  } else if (type == "halfspace") {
    n.object({"type", "normal", "offset"});
    shape = parse_halfspace(n, d);
  } else if (type == "polyhedron") {
    n.object({"type", "faces"});
    Polyhedron p;
    for (const Node& face : n.at("faces").array()) {
      face.object({"normal", "offset"});
      p.faces.push_back(parse_halfspace(face, d));
    }
    shape = std::move(p);
  } else {
    n.at("type").fail("unknown shape type '" + type + "'");
  }
  try {
    validate_shape(shape);
  } catch (const std::exception& e) {
    n.fail(e.what());
  }
  return shape;
}

ScalarConvex parse_scalar(const Node& n) {
  if (!n.json().is_object()) n.fail("expected an object");
  const std::string type = n.at("type").string();
  if (type == "abs") {
    n.object({"type"});
    return ScalarConvex::abs();
  }
  if (type == "half_square") {
    n.object({"type", "q"});
    return ScalarConvex::half_square(n.at("q").number());
  }
  if (type == "indicator") {
    n.object({"type", "lower", "upper"});
    return ScalarConvex::indicator(n.at("lower").number(true), n.at("upper").number(true));
  }
  if (type == "hinge") {
    n.object({"type"});
    return ScalarConvex::hinge();
  }
  n.at("type").fail("unknown function type '" + type + "'");
}

OperatorData parse_operator_data(const Node& n, Eigen::Index d) {
  const std::string kind = n.at("kind").string();
  if (kind == "moving_set") {
    if (n.has("pieces")) {
      n.object({"kind", "growth_c", "pieces"});
      MovingConvexSet set;
      for (const Node& piece : n.at("pieces").array()) {
        piece.object({"start", "shape"});
        set.starts.push_back(piece.at("start").number());
        set.shapes.push_back(parse_shape(piece.at("shape"), d));
      }
      return set;
    }
    n.object({"kind", "growth_c", "shape", "translation"});
    const Shape base = parse_shape(n.at("shape"), d);
    const auto path = n.maybe("translation");
    if (!path) return MovingConvexSet::fixed(base);
    std::vector<double> starts;
    std::vector<Point> vs;
    for (const Node& piece : path->array()) {
      piece.object({"start", "vector"});
      starts.push_back(piece.at("start").number());
      vs.push_back(piece.at("vector").point(d));
    }
    return MovingConvexSet::translating(base, std::move(starts), vs);
  }
  if (kind == "linear") {
    TimeVaryingLinear lin;
    if (n.has("matrix")) {
      n.object({"kind", "growth_c", "matrix"});
      lin.starts = {0.0};
      lin.matrices = {n.at("matrix").matrix(d)};
      return lin;
    }
    n.object({"kind", "growth_c", "pieces"});
    for (const Node& piece : n.at("pieces").array()) {
      piece.object({"start", "matrix"});
      lin.starts.push_back(piece.at("start").number());
      lin.matrices.push_back(piece.at("matrix").matrix(d));
    }
    return lin;
  }
  if (kind == "subdifferential") {
    n.object({"kind", "growth_c", "coordinates"});
    SeparableSubdifferential sub;
    for (const Node& c : n.at("coordinates").array()) sub.coordinates.push_back(parse_scalar(c));
    if (static_cast<Eigen::Index>(sub.coordinates.size()) != d) {
      n.at("coordinates").fail("expected one function per coordinate");
    }
    return sub;
  }
  n.at("kind").fail("unknown operator kind '" + kind + "'");
}

CoordinateForce::Nonlinearity parse_nonlinearity(const Node& n) {
  const std::string s = n.string();
  if (s == "sin") return CoordinateForce::Nonlinearity::Sin;
  if (s == "tanh") return CoordinateForce::Nonlinearity::Tanh;
  if (s == "atan") return CoordinateForce::Nonlinearity::Atan;
  if (s == "clip") return CoordinateForce::Nonlinearity::Clip;
  n.fail("unknown nonlinearity '" + s + "'");
}

Perturbation parse_perturbation(const Node& n, Eigen::Index d) {
  if (!n.json().is_object()) n.fail("expected an object");
  const std::string kind = n.at("kind").string();
  if (kind == "zero") {
    n.object({"kind"});
    return Perturbation::zero(d);
  }
  ForceData force;
  if (kind == "constant") {
    n.object({"kind", "value", "m", "alpha", "time_profile"});
    force = ConstantForce{n.at("value").point(d)};
  } else if (kind == "linear") {
    n.object({"kind", "map", "offset", "m", "alpha", "time_profile"});
    const Point offset = n.has("offset") ? n.at("offset").point(d) : Point(Point::Zero(d));
    force = LinearForce{n.at("map").matrix(d), offset};
  } else if (kind == "coordinate") {
    n.object({"kind", "functions", "scale", "offset", "m", "alpha", "time_profile"});
    CoordinateForce c;
    for (const Node& f : n.at("functions").array()) c.functions.push_back(parse_nonlinearity(f));
    c.scale = n.at("scale").point(d);
    c.offset = n.has("offset") ? n.at("offset").point(d) : Point(Point::Zero(d));
    force = std::move(c);
  } else {
    n.at("kind").fail("unknown perturbation kind '" + kind + "'");
  }
  PiecewiseConstant profile(1.0);
  if (auto p = n.maybe("time_profile")) profile = piecewise(*p);
  try {
    return {d, std::move(force), n.at("m").number(), piecewise(n.at("alpha")), std::move(profile)};
  } catch (const DomainError& e) {
    n.fail(e.what());
  }
}

SolverSettings parse_solver(const Node& n) {
  n.object({"eps0", "max_levels", "tol", "seed"});
  SolverSettings s;
  if (auto v = n.maybe("eps0")) s.eps0 = v->number();
  if (auto v = n.maybe("max_levels")) s.max_levels = v->unsigned_integer();
  if (auto v = n.maybe("tol")) s.tol = v->number();
  if (auto v = n.maybe("seed")) s.seed = v->unsigned_integer();
  if (!(s.eps0 > 0.0)) n.at("eps0").fail("must be positive");
  if (!(s.tol > 0.0)) n.at("tol").fail("must be positive");
  if (s.max_levels == 0) n.at("max_levels").fail("must be at least 1");
  return s;
}

}  // namespace

ProblemFile parse_problem(const std::string& text, const std::string& origin) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(origin + ": " + e.what());
  }
  const Node root(doc, origin);
  root.object({"name", "description", "space", "rho", "operator", "perturbation", "initial",
               "solver", "oracle"});

  ProblemFile out;
  if (auto n = root.maybe("name")) out.name = n->string();
  if (auto n = root.maybe("description")) n->string();

  const Node space = root.at("space");
  space.object({"dimension", "horizon"});
  const std::uint64_t dim = space.at("dimension").unsigned_integer();
  if (dim == 0 || dim > 10000) space.at("dimension").fail("must be in [1, 10000]");
  const auto d = static_cast<Eigen::Index>(dim);
  const double horizon = space.at("horizon").number();
  if (!(horizon > 0.0)) space.at("horizon").fail("must be positive");

  RhoSpec rho = parse_rho(root.at("rho"), horizon);

  const Node op = root.at("operator");
  if (!op.json().is_object()) op.fail("expected an object");
  OperatorData data = parse_operator_data(op, d);
  const double c = op.at("growth_c").number();

  Perturbation f = parse_perturbation(root.at("perturbation"), d);

  const Node initial = root.at("initial");
  initial.object({"u0"});
  Point u0 = initial.at("u0").point(d);

  out.solver = parse_solver(root.at("solver"));

  try {
    OperatorFamily family(std::move(data), std::move(rho), c);
    out.problem = std::make_shared<const ProblemSpec>(std::move(family), std::move(f), std::move(u0));
  } catch (const DomainError& e) {
    throw ParseError(origin + ": " + e.what());
  } catch (const NumericalError& e) {
    throw ParseError(origin + ": " + e.what());
  }

  if (auto o = root.maybe("oracle")) {
    const std::string name = o->string();
    out.oracle = oracle_from_string(name);
    if (!out.oracle) o->fail("unknown oracle '" + name + "'");
    try {
      require_oracle_applies(*out.oracle, *out.problem);
    } catch (const PreconditionError& e) {
      o->fail(e.what());
    }
  }
  return out;
}

ProblemFile load_problem(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_problem(text.str(), path.string());
}

}  // namespace mdi
