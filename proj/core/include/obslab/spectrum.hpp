#pragma once

// Spectral data of H = -d^2/dx^2 + |x| on L^2(R).
//
// The eigenvalues are the magnitudes of the negative zeros of Ai and Ai',
// merged in ascending order. They interlace, and the smallest one is a zero
// of Ai', so odd indices carry even eigenfunctions (phi'(0) = 0) and even
// indices carry odd eigenfunctions (phi(0) = 0).

#include <cstddef>
#include <vector>

#include "obslab/specfun.hpp"

namespace obslab {

enum class Parity { Even, Odd };

struct Eigenpair {
  std::size_t k = 0;
  double lambda = 0.0;
  Parity parity = Parity::Even;
  ZeroKind zero_kind = ZeroKind::Neumann;
  double norm_const = 0.0;  // A_k
  // Ai(-lambda) and Ai'(-lambda); the factor that vanishes is stored as 0.
  double ai_at_zero = 0.0;
  double aip_at_zero = 0.0;
};

/// Zero kind of index k: odd k -> Neumann, even k -> Dirichlet.
ZeroKind zero_kind_of(std::size_t k);
Parity parity_of(std::size_t k);

/// lambda_k, k >= 1.
double eigenvalue(std::size_t k);

/// A_k = (2 [lambda Ai(-lambda)^2 + Ai'(-lambda)^2])^{-1/2}, with the
/// vanishing factor substituted as an exact zero.
double normalization(std::size_t k);

Eigenpair eigenpair(std::size_t k);

/// phi_k(x) = A_k Ai(|x| - lambda_k), times (-1)^{k+1} for x < 0.
double eigenfunction_eval(std::size_t k, double x);

/// Same as eigenfunction_eval but reuses a precomputed eigenpair.
double eigenfunction_eval(const Eigenpair& e, double x);

/// Pre-builds eigenpairs 1..k_max so later lookups are pure reads.
void reserve_spectrum(std::size_t k_max);

/// Smallest index whose eigenvalue is closest to `target`.
std::size_t index_nearest(double target);

/// Largest k with lambda_k < bound (0 if none).
std::size_t count_below(double bound);

/// Leading-order asymptotic (3 pi k / 4)^{2/3}.
double weyl_asymptotic(std::size_t k);

/// Spectral window J_alpha^eps(lambda_n) around a centre eigenvalue.
struct ClusterSpec {
  std::size_t center = 0;
  double alpha = 0.5;
  double epsilon = 1.0;
  double width = 0.0;  // |lambda_k - lambda_n| < width
  std::size_t first = 0;  // n0 + 1
  std::size_t count = 0;  // K_n

  std::size_t offset() const { return first - 1; }  // n0
  std::size_t last() const { return first + count - 1; }
  std::vector<std::size_t> indices() const;

  /// Window with an even offset n0: when n0 is odd the first index is
  /// dropped (only if more than one index remains).
  ClusterSpec parity_aligned() const;

  /// K_n divided by the cardinality scale (eps lambda_n^alpha,
  /// eps lambda_n / log lambda_n or eps lambda_n depending on alpha).
  double cardinality_ratio() const;
};

/// Half-width of the window: eps lambda^{alpha-1/2} for alpha in [1/2, 1),
/// eps lambda^{1/2} / log(lambda) for alpha = 1, eps lambda^{1/2} for alpha > 1.
double cluster_width(double lambda_n, double alpha, double epsilon);

/// Maximal contiguous index set {k : |lambda_k - lambda_n| < width}.
ClusterSpec cluster(std::size_t n, double alpha, double epsilon = 1.0);

}  // namespace obslab
