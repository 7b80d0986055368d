#include "mdi/partition.hpp"

#include <algorithm>
#include <cmath>

#include "mdi/errors.hpp"
#include "mdi/sampling.hpp"

namespace mdi {
namespace {

void fill_cells(const RhoSpec& rho, Partition& p) {
  const std::size_t q = p.nodes.size() - 1;
  p.delta.resize(q);
  p.eta.resize(q);
  p.beta.resize(q);
  p.right_atom.resize(q);
  for (std::size_t i = 0; i < q; ++i) {
    const HalfOpenInterval cell{p.nodes[i], p.nodes[i + 1]};
    p.eta[i] = cell.right - cell.left;
    p.delta[i] = rho.rho_measure(cell);
    p.beta[i] = p.eta[i] + p.delta[i];
    p.right_atom[i] = rho.atom_mass(cell.right);
  }
}

}  // namespace

std::size_t Partition::cell_containing(double t) const {
  auto it = std::upper_bound(nodes.begin(), nodes.end(), t);
  if (it == nodes.begin()) return 0;
  const auto i = static_cast<std::size_t>(it - nodes.begin()) - 1;
  return std::min(i, cells() - 1);
}

std::size_t Partition::cell_ending_at_or_after(double t) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), t);
  if (it == nodes.begin()) return 0;
  const auto i = static_cast<std::size_t>(it - nodes.begin()) - 1;
  return std::min(i, cells() - 1);
}

double Partition::atom_free_mesh() const {
  double mesh = 0.0;
  for (std::size_t i = 0; i < cells(); ++i) mesh = std::max(mesh, beta[i] - right_atom[i]);
  return mesh;
}

Partition build_partition(const RhoSpec& rho, double eps, double horizon,
                          std::optional<std::uint64_t> jitter_seed) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw DomainError("build_partition: eps must be positive");
  if (horizon != rho.horizon()) throw DomainError("build_partition: horizon differs from rho's");

  std::vector<double> forced{0.0, horizon};
  for (const Atom& a : rho.atoms()) forced.push_back(a.time);
  for (double b : rho.ac_density().breakpoints()) forced.push_back(b);
  std::sort(forced.begin(), forced.end());
  forced.erase(std::unique(forced.begin(), forced.end()), forced.end());

  std::optional<Rng> rng;
  if (jitter_seed) rng.emplace(*jitter_seed);

  Partition p;
  p.eps = eps;
  p.nodes.push_back(0.0);
  for (std::size_t k = 0; k + 1 < forced.size(); ++k) {
    const double a = forced[k];
    const double b = forced[k + 1];
    const double total = rho.atom_free_nu(a, b);
    if (rng) {
      double used = 0.0;
      while (total - used > eps) {
        used += eps * uniform(*rng, 0.5, 1.0);
        const double t = rho.atom_free_inverse(a, used);
        if (t > p.nodes.back() && t < b) p.nodes.push_back(t);
      }
    } else {
      auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(total / eps)));
      // ceil can overshoot by one when total/eps rounds up past an integer.
      if (n > 1 && total / static_cast<double>(n - 1) <= eps) --n;
      for (std::size_t j = 1; j < n; ++j) {
        const double t = rho.atom_free_inverse(a, total * static_cast<double>(j) / static_cast<double>(n));
        if (t > p.nodes.back() && t < b) p.nodes.push_back(t);
      }
    }
    p.nodes.push_back(b);
  }
  fill_cells(rho, p);
  return p;
}

Partition partition_from_nodes(const RhoSpec& rho, std::vector<double> nodes) {
  if (nodes.size() < 2) throw DomainError("partition: at least two nodes are required");
  if (nodes.front() != 0.0 || nodes.back() != rho.horizon()) {
    throw DomainError("partition: nodes must start at 0 and end at T");
  }
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (!(nodes[i] > nodes[i - 1])) throw DomainError("partition: nodes must increase strictly");
  }
  for (const Atom& a : rho.atoms()) {
    if (!std::binary_search(nodes.begin(), nodes.end(), a.time)) {
      throw DomainError("partition: every atom of rho must be a node");
    }
  }
  Partition p;
  p.nodes = std::move(nodes);
  fill_cells(rho, p);
  p.eps = p.atom_free_mesh();
  return p;
}

}  // namespace mdi
