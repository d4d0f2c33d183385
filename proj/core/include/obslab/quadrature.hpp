#pragma once

// Panel Gauss-Legendre rules, including node sets adapted to the
// oscillation of Airy-type integrands Ai(x - lambda).

#include <cstddef>
#include <functional>
#include <vector>

#include "obslab/sets.hpp"

namespace obslab {

/// Nodes per Gauss-Legendre panel.
inline constexpr std::size_t kGaussPoints = 10;

struct NodeSet {
  std::vector<double> x;
  std::vector<double> w;

  std::size_t size() const { return x.size(); }
  /// Appends the 10-point Gauss-Legendre rule mapped to [a, b].
  void add_panel(double a, double b);
};

/// Panel endpoints covering [0, x_end] for integrands oscillating like
/// Ai(x - lambda)^2: in the allowed region x < lambda the panel length is
/// min(1, pi / (4 sqrt(lambda - x))), beyond it the length is 1.
std::vector<double> oscillatory_breaks(double lambda, double x_end);

/// The oscillatory panels intersected with `subset` (pieces outside [0, x_end)
/// are ignored). Panel boundaries are split at every piece endpoint.
NodeSet oscillatory_nodes(double lambda, double x_end, const IntervalUnion& subset);

/// Same panels over the whole of [0, x_end).
NodeSet oscillatory_nodes(double lambda, double x_end);

/// Panels of length at most `max_panel` on [a, b].
NodeSet uniform_nodes(double a, double b, double max_panel);

template <class F>
double integrate(const NodeSet& nodes, F&& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) s += nodes.w[i] * f(nodes.x[i]);
  return s;
}

}  // namespace obslab
