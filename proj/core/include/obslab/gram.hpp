#pragma once

// Gram matrices a_jk = int_E phi_j phi_k over spectral clusters.
//
// Half-lines and the full line are handled in closed form through the Airy
// kernel. Other sets use panel Gauss-Legendre quadrature on [0, X) with
// X = lambda_max + 12, folding the negative axis by parity:
//   int_E phi_j phi_k = int_{E+} + (-1)^{j+k} int_{(-E)+}.

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "obslab/linalg.hpp"
#include "obslab/sets.hpp"
#include "obslab/spectrum.hpp"

namespace obslab {

/// Distance beyond the largest eigenvalue where quadrature stops.
inline constexpr double kTailCut = 12.0;

enum class GramMethod { ClosedForm, Quadrature };

/// Direct integrates over E; Complement uses delta_jk - int_{E^c};
/// Auto picks whichever needs fewer quadrature nodes.
enum class GramRoute { Direct, Complement, Auto };

std::string method_name(GramMethod m);
std::string route_name(GramRoute r);

/// int_0^inf phi_j phi_k = A_j A_k K(-lambda_j, -lambda_k). Exactly 1/2 on
/// the diagonal and exactly 0 when k - j is even.
double halfline_entry(std::size_t j, std::size_t k);

/// Bound on the contribution of |x| > x_cut to int |phi_j phi_k|.
double tail_bound(std::size_t j, std::size_t k, double x_cut);

struct GramOptions {
  double tol = 1e-10;
  GramRoute route = GramRoute::Auto;
  /// Drop the first index of a cluster whose offset n0 is odd.
  bool parity_align = true;
};

struct GramMatrix {
  std::vector<std::size_t> indices;
  ClusterSpec cluster;  // zero-initialised when built from an explicit index list
  std::string set_descriptor;
  GramMethod method = GramMethod::ClosedForm;
  GramRoute route = GramRoute::Direct;
  Matrix entries;
  double entry_err_est = 0.0;
  double tol = 0.0;
  std::size_t nodes = 0;

  std::size_t size() const { return indices.size(); }
};

/// Quadrature of phi_j phi_k over E (E is taken as given; points outside its
/// stored pieces count as outside E). Throws ToleranceError if the estimated
/// error exceeds tol, which must be >= 1e-10.
double set_entry(const IntervalUnion& e, std::size_t j, std::size_t k, double tol = 1e-10);

/// Gram matrix over an explicit concrete set.
GramMatrix gram_for_indices(const IntervalUnion& e, const std::vector<std::size_t>& indices,
                            const GramOptions& opts = {});

/// Gram matrix over a described set: closed form for the full line and
/// half-lines, quadrature otherwise (the set is generated on [-X, X)).
GramMatrix gram_for_indices(const SetSpec& e, const std::vector<std::size_t>& indices,
                            const GramOptions& opts = {});

GramMatrix cluster_gram(const SetSpec& e, std::size_t n, double alpha, double epsilon,
                        const GramOptions& opts = {});

struct OffdiagRow {
  std::size_t n = 0;
  double lambda_n = 0.0;
  std::size_t cluster_size = 0;
  double max_offdiag = 0.0;
  double upsilon0 = 0.0;
  double ratio = 0.0;
  double err_est = 0.0;
};

std::vector<OffdiagRow> offdiag_decay_profile(const SetSpec& e, double alpha, const std::vector<std::size_t>& n_list,
                                              double epsilon = 1.0, const GramOptions& opts = {});

struct DiagRow {
  std::size_t k = 0;
  double lambda = 0.0;
  double value = 0.0;
  double err_est = 0.0;
};

struct DiagProfile {
  std::vector<DiagRow> rows;
  double min_value = 0.0;
};

DiagProfile diag_lower_profile(const SetSpec& e, const std::vector<std::size_t>& k_list, const GramOptions& opts = {});

nlohmann::json gram_to_json(const GramMatrix& g);
/// One row per entry: j,k,value,err_est, preceded by '#' metadata lines.
std::string gram_to_csv(const GramMatrix& g);

}  // namespace obslab
