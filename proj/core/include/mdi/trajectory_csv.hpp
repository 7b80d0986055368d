#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mdi/trajectory.hpp"

namespace mdi {

struct CsvRow {
  double t = 0.0;
  Point u;
  Point dudnu;
  int atom_flag = 0;
};

struct TrajectoryTable {
  Eigen::Index dimension = 0;
  std::vector<CsvRow> rows;
};

// Header t,u_1..u_d,dudnu_1..dudnu_d,atom_flag; one row per node, 17
// significant digits. Each atom node is preceded by its left-limit row
// (flag 0) and written with flag 1.
void write_trajectory_csv(const Trajectory& traj, std::ostream& out);
std::string trajectory_csv(const Trajectory& traj);

// ParseError on malformed text, a header for a different dimension, unsorted
// rows or a bad atom pair.
TrajectoryTable parse_trajectory_csv(std::istream& in, Eigen::Index expected_dimension);
TrajectoryTable parse_trajectory_csv(const std::string& text, Eigen::Index expected_dimension);

// Rebuilds the node-value trajectory on the table's grid; ParseError unless
// the nodes start at 0, end at T and every atom of the problem appears as a
// (t-, t) pair.
Trajectory reconstruct_trajectory(const TrajectoryTable& table, const ProblemPtr& problem);

}  // namespace mdi
