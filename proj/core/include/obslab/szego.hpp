#pragma once

// Extreme eigenvalues of Toeplitz sections against the essential range of
// the symbol, and the half-line counterexample: the half-line Gram matrix of
// a high cluster splits into the Toeplitz section of the indicator of
// (-pi/2, pi/2) plus a residual of order 1/lambda_n.

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "obslab/linalg.hpp"

namespace obslab {

struct SzegoTrace {
  std::string symbol;
  std::vector<std::size_t> sizes;
  std::vector<double> min_eigs;
  std::vector<double> max_eigs;
  double m_f = 0.0;
  double M_f = 0.0;
  double min_gap = 0.0;  // |min_eig(n_max) - m_f|
  double max_gap = 0.0;  // |max_eig(n_max) - M_f|

  /// m_f <= min_eig(n) <= max_eig(n) <= M_f for every n, with `slack`.
  bool bracketed(double slack = 1e-12) const;
  /// min_eigs non-increasing and max_eigs non-decreasing, with `slack`.
  bool monotone(double slack = 1e-12) const;
};

/// Sizes must be ascending.
SzegoTrace szego_trace(const Symbol& f, const std::vector<std::size_t>& sizes);

/// t_kk = 1/2, t_kj = sin((k-j) pi/2) / (pi (k-j)).
Matrix halfline_toeplitz(std::size_t k);

struct CounterexampleRow {
  std::size_t n = 0;
  double lambda_n = 0.0;
  std::size_t first = 0;  // first retained index
  std::size_t k_n = 0;    // retained cluster size
  double lambda1_a = 0.0;
  double lambda1_t = 0.0;
  double lambda_max_r = 0.0;
  double max_r = 0.0;
  double max_r_times_lambda = 0.0;
  bool weyl_ok = false;  // lambda1_a <= lambda1_t + lambda_max_r (with 1e-12 slack)
};

/// Clusters at alpha = 1/2 around each n, aligned to an even offset; E = (0, inf).
std::vector<CounterexampleRow> counterexample_report(const std::vector<std::size_t>& n_list, double epsilon = 1.0);

nlohmann::json to_json(const SzegoTrace& t);
nlohmann::json to_json(const std::vector<CounterexampleRow>& rows);

}  // namespace obslab
