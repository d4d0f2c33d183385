#include "obslab/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss.hpp>

#include "obslab/error.hpp"

namespace obslab {

namespace {

using Gauss = boost::math::quadrature::gauss<double, kGaussPoints>;

}  // namespace

void NodeSet::add_panel(double a, double b) {
  if (!(b > a)) return;
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const auto& abscissa = Gauss::abscissa();
  const auto& weights = Gauss::weights();
  for (std::size_t i = abscissa.size(); i-- > 0;) {
    x.push_back(mid - half * abscissa[i]);
    w.push_back(half * weights[i]);
  }
  for (std::size_t i = 0; i < abscissa.size(); ++i) {
    if (abscissa[i] == 0.0) continue;
    x.push_back(mid + half * abscissa[i]);
    w.push_back(half * weights[i]);
  }
}

std::vector<double> oscillatory_breaks(double lambda, double x_end) {
  if (!(x_end > 0)) throw PreconditionError("oscillatory_breaks needs x_end > 0");
  std::vector<double> breaks = {0.0};
  double x = 0.0;
  while (x < x_end) {
    double step = 1.0;
    if (x < lambda) step = std::min(1.0, M_PI / (4.0 * std::sqrt(std::max(lambda - x, 1.0))));
    x = std::min(x_end, x + step);
    breaks.push_back(x);
  }
  return breaks;
}

NodeSet oscillatory_nodes(double lambda, double x_end, const IntervalUnion& subset) {
  const std::vector<double> breaks = oscillatory_breaks(lambda, x_end);
  const IntervalUnion pieces = subset.clip(0.0, x_end);
  NodeSet nodes;
  std::size_t p = 0;
  const auto& iv = pieces.intervals();
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i];
    const double b = breaks[i + 1];
    while (p < iv.size() && iv[p].hi <= a) ++p;
    for (std::size_t q = p; q < iv.size() && iv[q].lo < b; ++q) {
      nodes.add_panel(std::max(a, iv[q].lo), std::min(b, iv[q].hi));
    }
  }
  return nodes;
}

NodeSet oscillatory_nodes(double lambda, double x_end) {
  return oscillatory_nodes(lambda, x_end, IntervalUnion({{0.0, x_end}}));
}

NodeSet uniform_nodes(double a, double b, double max_panel) {
  if (!(max_panel > 0)) throw PreconditionError("uniform_nodes needs a positive panel length");
  NodeSet nodes;
  if (!(b > a)) return nodes;
  const auto panels = static_cast<std::size_t>(std::ceil((b - a) / max_panel));
  const double h = (b - a) / static_cast<double>(panels);
  for (std::size_t i = 0; i < panels; ++i) nodes.add_panel(a + i * h, i + 1 == panels ? b : a + (i + 1) * h);
  return nodes;
}

}  // namespace obslab
