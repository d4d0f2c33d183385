#pragma once

// Observation energy on spectral truncations. For u = sum_k c_k e^{-i lambda_k t} phi_k,
//   int_0^T int_E |u|^2 dx dt = sum_{j,k} conj(c_j) c_k g_jk kappa_T(lambda_j - lambda_k),
// with g the Gram matrix of E and kappa_T(d) = int_0^T e^{i d t} dt. The
// time Gramian stores M_jk = g_jk kappa_T(lambda_k - lambda_j), the complex
// conjugate of that form, which has the same eigenvalues:
//   energy(c) = conj(c)^H M conj(c).

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "obslab/gram.hpp"
#include "obslab/linalg.hpp"
#include "obslab/rates.hpp"
#include "obslab/sets.hpp"

namespace obslab {

/// (e^{i delta T} - 1) / (i delta); second-order Taylor series for |delta T| < 1e-6.
std::complex<double> time_kernel(double delta, double T);

struct TimeGramian {
  std::vector<std::size_t> indices;
  double T = 0.0;
  std::string set_descriptor;
  CMatrix entries;
  Matrix gram;  // the spatial Gram matrix g
  double err_est = 0.0;

  /// conj(c)^H M conj(c): the observation energy of sum c_k e^{-i lambda_k t} phi_k.
  double energy(const std::vector<std::complex<double>>& c) const;
  std::vector<double> eigenvalues() const;
};

TimeGramian time_gramian(const SetSpec& e, const std::vector<std::size_t>& indices, double T,
                         const GramOptions& opts = {});

/// Threshold below which a truncation is reported as unobservable.
inline constexpr double kUnobservableFloor = 1e-14;

struct ObservabilityEstimate {
  std::size_t K = 0;
  double T = 0.0;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  /// 1 / lambda_min: a truncation-K lower bound for C_obs; +inf when unobservable.
  double constant = 0.0;
  bool unobservable = false;
  double err_est = 0.0;
};

/// Indices 1..K, K <= 200.
ObservabilityEstimate observability_constant_estimate(const SetSpec& e, double T, std::size_t K,
                                                      const GramOptions& opts = {});

struct InghamRow {
  std::size_t n = 0;
  double lambda_n = 0.0;
  std::size_t first = 0;
  std::size_t k_n = 0;
  double lambda_min = 0.0;
  double err_est = 0.0;
  std::string route;
};

struct InghamReport {
  std::vector<InghamRow> rows;
  double delta = 0.0;  // min over rows
};

InghamReport ingham_cluster_check(const SetSpec& e, double alpha, double epsilon, const std::vector<std::size_t>& n_list,
                                  const GramOptions& opts = {});

struct TimeInterval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

/// int_I |sum_k c_k e^{i lambda_k t}|^2 dt by Gauss-Legendre panels no longer
/// than a quarter period of the fastest beat.
double exp_poly_energy(const std::vector<double>& lambdas, const std::vector<std::complex<double>>& c,
                       const IntervalUnion& where);

struct SalemResult {
  double lhs = 0.0;  // sum |c_k|^2
  double rhs = 0.0;  // 4/|I| int_I |p|^2
  bool holds = false;
};

/// Needs a uniform gap Delta > 0 and |I| >= 4 pi / Delta; throws PreconditionError otherwise.
SalemResult salem_check(const std::vector<double>& lambdas, const std::vector<std::complex<double>>& c, TimeInterval I);

struct NazarovResult {
  double ratio = 0.0;      // int_I |p|^2 / int_E |p|^2
  double a_needed = 0.0;   // smallest A with ratio <= (A |I| / |E|)^{2n-1}
};

/// E_sub must lie inside I with positive measure.
NazarovResult nazarov_ratio(const std::vector<double>& lambdas, const std::vector<std::complex<double>>& c,
                            TimeInterval I, const IntervalUnion& e_sub);

nlohmann::json to_json(const ObservabilityEstimate& e);
nlohmann::json to_json(const InghamReport& r);

}  // namespace obslab
