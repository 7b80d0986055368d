#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mdi/measure.hpp"

namespace mdi {

// 0 = t_0 < ... < t_q = T. Cell i is ]t_i, t_{i+1}] with
//   delta[i] = d(rho)(cell), eta[i] = t_{i+1} - t_i, beta[i] = nu(cell).
// Every atom of rho is a node; the atom-free part of each beta is <= eps.
struct Partition {
  double eps = 0.0;
  std::vector<double> nodes;
  std::vector<double> delta;
  std::vector<double> eta;
  std::vector<double> beta;
  std::vector<double> right_atom;  // atom mass at t_{i+1}, 0 if none

  std::size_t cells() const { return eta.size(); }
  double horizon() const { return nodes.back(); }
  // i with t in [t_i, t_{i+1}); T maps to the last cell.
  std::size_t cell_containing(double t) const;
  // i with t in ]t_i, t_{i+1}]; 0 maps to cell 0.
  std::size_t cell_ending_at_or_after(double t) const;
  // Largest atom-free cell measure; the eps this partition certifies.
  double atom_free_mesh() const;
};

// Nodes at 0, T, every atom and every density breakpoint; between forced
// nodes, cells of equal atom-free nu-measure (<= eps). With a seed the cell
// measures are drawn uniformly from [eps/2, eps] instead.
Partition build_partition(const RhoSpec& rho, double eps, double horizon,
                          std::optional<std::uint64_t> jitter_seed = std::nullopt);

// Partition on caller-supplied nodes; DomainError unless the nodes start at 0,
// end at T, increase strictly and contain every atom.
Partition partition_from_nodes(const RhoSpec& rho, std::vector<double> nodes);

}  // namespace mdi
