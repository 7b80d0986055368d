#include "mdi/trajectory_csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "mdi/errors.hpp"

namespace mdi {
namespace {

void put(std::ostream& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out << buf;
}

void put_row(std::ostream& out, double t, const Point& u, const Point& w, int flag) {
  put(out, t);
  for (Eigen::Index k = 0; k < u.size(); ++k) {
    out << ',';
    put(out, u(k));
  }
  for (Eigen::Index k = 0; k < w.size(); ++k) {
    out << ',';
    put(out, w(k));
  }
  out << ',' << flag << '\n';
}

std::string header(Eigen::Index d) {
  std::string h = "t";
  for (Eigen::Index k = 1; k <= d; ++k) h += ",u_" + std::to_string(k);
  for (Eigen::Index k = 1; k <= d; ++k) h += ",dudnu_" + std::to_string(k);
  return h + ",atom_flag";
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return fields;
}

double parse_double(const std::string& s, std::size_t line) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw ParseError("trajectory csv line " + std::to_string(line) + ": bad number '" + s + "'");
  }
  return v;
}

bool is_left_limit_row(const std::vector<CsvRow>& rows, std::size_t k) {
  return rows[k].atom_flag == 0 && k + 1 < rows.size() && rows[k + 1].t == rows[k].t;
}

}  // namespace

void write_trajectory_csv(const Trajectory& traj, std::ostream& out) {
  const Partition& part = traj.partition();
  const ProblemSpec& p = traj.problem();
  out << header(traj.dimension()) << '\n';
  put_row(out, 0.0, traj.node_value(0), traj.density(0.0), 0);
  for (std::size_t i = 1; i < part.nodes.size(); ++i) {
    const double t = part.nodes[i];
    if (part.right_atom[i - 1] > 0.0) {
      Point w = traj.cell_quotient(i - 1);
      if (!p.perturbation().is_zero()) {
        // dlambda/dnu just before the atom, on the rate piece ending at t.
        const double dl = 1.0 / (1.0 + p.rho().rate(std::nextafter(t, 0.0)));
        w -= dl * p.perturbation()(t, traj.node_value(i - 1));
      }
      put_row(out, t, traj.left_limit(t), w, 0);
      put_row(out, t, traj.node_value(i), traj.density(t), 1);
    } else {
      put_row(out, t, traj.node_value(i), traj.density(t), 0);
    }
  }
}

std::string trajectory_csv(const Trajectory& traj) {
  std::ostringstream os;
  write_trajectory_csv(traj, os);
  return os.str();
}

TrajectoryTable parse_trajectory_csv(std::istream& in, Eigen::Index d) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("trajectory csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header(d)) {
    const std::size_t cols = split(line).size();
    if (cols != static_cast<std::size_t>(2 * d + 2)) {
      throw ParseError("trajectory csv: header has " + std::to_string(cols) +
                       " columns, expected " + std::to_string(2 * d + 2) + " for dimension " +
                       std::to_string(d));
    }
    throw ParseError("trajectory csv: header must be '" + header(d) + "'");
  }
  TrajectoryTable table;
  table.dimension = d;
  std::size_t number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> f = split(line);
    if (f.size() != static_cast<std::size_t>(2 * d + 2)) {
      throw ParseError("trajectory csv line " + std::to_string(number) + ": expected " +
                       std::to_string(2 * d + 2) + " fields");
    }
    CsvRow row;
    row.t = parse_double(f[0], number);
    row.u.resize(d);
    row.dudnu.resize(d);
    for (Eigen::Index k = 0; k < d; ++k) {
      row.u(k) = parse_double(f[static_cast<std::size_t>(1 + k)], number);
      row.dudnu(k) = parse_double(f[static_cast<std::size_t>(1 + d + k)], number);
    }
    if (f.back() == "0") {
      row.atom_flag = 0;
    } else if (f.back() == "1") {
      row.atom_flag = 1;
    } else {
      throw ParseError("trajectory csv line " + std::to_string(number) + ": atom_flag must be 0 or 1");
    }
    if (!table.rows.empty()) {
      const CsvRow& prev = table.rows.back();
      const bool pair = row.t == prev.t && prev.atom_flag == 0 && row.atom_flag == 1;
      if (!(row.t > prev.t || pair)) {
        throw ParseError("trajectory csv line " + std::to_string(number) +
                         ": rows must be sorted by t, repeats only as (t-, t) atom pairs");
      }
    }
    if (row.atom_flag == 1 && (table.rows.empty() || table.rows.back().t != row.t)) {
      throw ParseError("trajectory csv line " + std::to_string(number) +
                       ": atom row without its left-limit row");
    }
    table.rows.push_back(std::move(row));
  }
  if (table.rows.empty()) throw ParseError("trajectory csv: no data rows");
  return table;
}

TrajectoryTable parse_trajectory_csv(const std::string& text, Eigen::Index d) {
  std::istringstream in(text);
  return parse_trajectory_csv(in, d);
}

Trajectory reconstruct_trajectory(const TrajectoryTable& table, const ProblemPtr& problem) {
  if (table.dimension != problem->dimension()) {
    throw ParseError("trajectory csv: dimension differs from the problem's");
  }
  const RhoSpec& rho = problem->rho();
  std::vector<double> nodes;
  std::vector<Point> values;
  for (std::size_t k = 0; k < table.rows.size(); ++k) {
    if (is_left_limit_row(table.rows, k)) continue;
    const CsvRow& row = table.rows[k];
    const bool atom = rho.atom_mass(row.t) > 0.0;
    if (atom != (row.atom_flag == 1)) {
      throw ParseError("trajectory csv: t = " + std::to_string(row.t) +
                       (atom ? " is an atom but has no (t-, t) pair" : " is flagged but is not an atom"));
    }
    nodes.push_back(row.t);
    values.push_back(row.u);
  }
  try {
    Partition part = partition_from_nodes(rho, std::move(nodes));
    return {problem, std::move(part), std::move(values)};
  } catch (const DomainError& e) {
    throw ParseError(std::string("trajectory csv: ") + e.what());
  }
}

}  // namespace mdi
