#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mdi/errors.hpp"

namespace mdi {

// Index of the piece active at t for right-continuous pieces starting at
// `starts` (strictly increasing, starts.front() == 0): the last start <= t.
inline std::size_t active_piece(std::span<const double> starts, double t) {
  auto it = std::upper_bound(starts.begin(), starts.end(), t);
  if (it == starts.begin()) return 0;
  return static_cast<std::size_t>(it - starts.begin()) - 1;
}

inline void require_piece_starts(std::span<const double> starts, const std::string& what) {
  if (starts.empty()) throw DomainError(what + ": at least one piece is required");
  if (starts.front() != 0.0) throw DomainError(what + ": first piece must start at 0");
  for (std::size_t k = 1; k < starts.size(); ++k) {
    if (!(starts[k] > starts[k - 1])) {
      throw DomainError(what + ": piece starts must be strictly increasing");
    }
  }
}

// Scalar function of time, constant on [b_k, b_{k+1}) and on [b_last, inf).
class PiecewiseConstant {
 public:
  PiecewiseConstant() : breakpoints_{0.0}, values_{0.0} {}
  explicit PiecewiseConstant(double value) : breakpoints_{0.0}, values_{value} {}
  PiecewiseConstant(std::vector<double> breakpoints, std::vector<double> values)
      : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
    require_piece_starts(breakpoints_, "piecewise constant function");
    if (values_.size() != breakpoints_.size()) {
      throw DomainError("piecewise constant function: one value per breakpoint is required");
    }
  }

  double operator()(double t) const { return values_[active_piece(breakpoints_, t)]; }

  // Lebesgue integral over [s, t], s <= t, both >= 0.
  double integral(double s, double t) const {
    if (t <= s) return 0.0;
    double total = 0.0;
    std::size_t k = active_piece(breakpoints_, s);
    double left = s;
    while (left < t) {
      const double right =
          k + 1 < breakpoints_.size() ? std::min(t, breakpoints_[k + 1]) : t;
      total += values_[k] * (right - left);
      left = right;
      ++k;
    }
    return total;
  }

  double max_value() const { return *std::max_element(values_.begin(), values_.end()); }
  double min_value() const { return *std::min_element(values_.begin(), values_.end()); }

  PiecewiseConstant scaled(double factor) const {
    std::vector<double> v = values_;
    for (double& x : v) x *= factor;
    return {breakpoints_, std::move(v)};
  }

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

}  // namespace mdi
