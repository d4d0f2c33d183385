#pragma once

// Finite-difference discretisation of H = -d^2/dx^2 + |x| + V on [-L, L]
// with Dirichlet walls, used as an independent check of the Airy-based
// spectral data and of the resolvent estimate.

#include <cstddef>
#include <functional>
#include <vector>

#include <nlohmann/json.hpp>

#include "obslab/linalg.hpp"
#include "obslab/sets.hpp"

namespace obslab {

/// Symmetric tridiagonal operator on the interior nodes x_i = a + i h.
struct FDOperator {
  double a = 0.0;
  double b = 0.0;
  double h = 0.0;
  std::vector<double> x;     // interior nodes
  std::vector<double> diag;  // 2/h^2 + potential(x_i)
  std::vector<double> off;   // -1/h^2, size n - 1

  std::size_t size() const { return x.size(); }
  double half_width() const { return 0.5 * (b - a); }
};

inline constexpr std::size_t kMaxGridSize = 1000000;

/// Operator on [-L, L] with potential |x| + V(x). Needs L >= 30, h <= 0.05,
/// 2L/h an even integer (so that 0 is a node) and at most 1e6 nodes.
FDOperator fd_build(double L, double h, const std::function<double(double)>& V = {});

/// Unchecked builder on [a, b] with `intervals` equal panels and an arbitrary
/// potential; used for solver self-tests.
FDOperator fd_build_interval(double a, double b, std::size_t intervals, const std::function<double(double)>& potential);

struct FDSpectrum {
  std::vector<double> eigenvalues;  // ascending
  Matrix vectors;                   // size() x m, columns normalised so that h sum v^2 = 1; empty unless requested
};

/// First m eigenvalues by Sturm-sequence bisection, optionally with vectors by
/// inverse iteration. m <= 200.
FDSpectrum fd_eigs(const FDOperator& op, std::size_t m, bool with_vectors = false);

struct ResolventRow {
  double lambda = 0.0;
  double upsilon2 = 0.0;
  double mu_min = 0.0;
};

/// Smallest eigenvalue of Upsilon2(lambda, alpha)^2 (H_h - lambda)^2 + diag(1_E)
/// for each lambda.
std::vector<ResolventRow> resolvent_check(const FDOperator& op, const IntervalUnion& e,
                                          const std::vector<double>& lambdas, double alpha);

/// Same quantity for a single lambda through LAPACK's banded eigensolver
/// (O(n^2)); used to cross-check resolvent_check on small grids.
double resolvent_min_eig_dense_check(const FDOperator& op, const IntervalUnion& e, double lambda, double alpha);

struct CrossValidation {
  std::size_t k_max = 0;
  double L = 0.0;
  double h = 0.0;
  double max_rel_eig_err = 0.0;        // Richardson(h, h/2) against the Airy eigenvalues
  double richardson_stability = 0.0;   // max |R(h, h/2) - R(h/2, h/4)|
  double max_gram_err = 0.0;           // half-line Gram block from FD vectors against the closed form
  std::vector<std::size_t> gram_indices;
  std::vector<double> rel_errors;      // per k
  bool parity_even_then_odd = false;   // first two FD vectors
};

/// k_max <= 100.
CrossValidation cross_validate(std::size_t k_max, double L = 60.0, double h = 0.01);

nlohmann::json to_json(const CrossValidation& c);
nlohmann::json to_json(const std::vector<ResolventRow>& rows);

}  // namespace obslab
