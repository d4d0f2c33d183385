#include "obslab/observability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "obslab/error.hpp"
#include "obslab/parallel.hpp"
#include "obslab/quadrature.hpp"
#include "obslab/spectrum.hpp"

namespace obslab {

// Rates.

namespace {

void check_alpha(double alpha, bool strict) {
  if (!(alpha >= 0.5) || (strict && alpha == 0.5)) {
    throw PreconditionError(strict ? "rate needs alpha > 1/2" : "rate needs alpha >= 1/2");
  }
}

void check_time(double T) {
  if (!(T > 0 && T < 0.5)) throw PreconditionError("rate needs T in (0, 1/2)");
}

}  // namespace

double upsilon0(double lambda, double alpha) {
  check_alpha(alpha, false);
  if (!(lambda > 1)) throw PreconditionError("upsilon0 needs lambda > 1");
  if (alpha < 1.0) return kRateConstant * std::pow(lambda, -alpha);
  if (alpha == 1.0) return kRateConstant * std::log(lambda) / lambda;
  return kRateConstant / lambda;
}

double upsilon1(double T, double alpha) {
  check_alpha(alpha, true);
  check_time(T);
  if (alpha < 1.0) return kRateConstant * std::pow(T, -(1.0 + 6.0 / (2.0 * alpha - 1.0)));
  if (alpha == 1.0) return kRateConstant * std::pow(T, -7.0) * std::pow(std::log(1.0 / T), 6.0);
  return kRateConstant * std::pow(T, -7.0);
}

double upsilon2(double lambda, double alpha) {
  check_alpha(alpha, false);
  const double a = 1.0 + std::fabs(lambda);
  if (alpha < 1.0) return kRateConstant * std::pow(a, -(alpha - 0.5));
  if (alpha == 1.0) return kRateConstant * std::log(M_E + std::fabs(lambda)) / std::sqrt(a);
  return kRateConstant / std::sqrt(a);
}

double log_log_c_obs(double T, double alpha) {
  check_alpha(alpha, true);
  check_time(T);
  const double l = std::log(1.0 / T);
  if (alpha < 1.0) return kRateConstant * std::pow(T, -1.5 * (0.5 + 3.0 / (2.0 * alpha - 1.0))) * l;
  if (alpha == 1.0) return kRateConstant * std::pow(T, -21.0 / 4.0) * std::pow(l, 5.5);
  return kRateConstant * std::pow(T, -21.0 / 4.0) * l;
}

double c_obs(double T, double alpha) {
  const double inner = log_log_c_obs(T, alpha);
  if (inner > std::log(std::log(std::numeric_limits<double>::max()))) return std::numeric_limits<double>::infinity();
  return std::exp(std::exp(inner));
}

double rate_eval(const RateBundle& bundle, Rate which, double arg) {
  switch (which) {
    case Rate::Upsilon0: return bundle.upsilon0(arg);
    case Rate::Upsilon1: return bundle.upsilon1(arg);
    case Rate::Upsilon2: return bundle.upsilon2(arg);
    case Rate::Cobs: return bundle.c_obs(arg);
  }
  return 0.0;
}

Rate parse_rate(const std::string& name) {
  if (name == "upsilon0") return Rate::Upsilon0;
  if (name == "upsilon1") return Rate::Upsilon1;
  if (name == "upsilon2") return Rate::Upsilon2;
  if (name == "cobs") return Rate::Cobs;
  throw PreconditionError("unknown rate '" + name + "' (upsilon0, upsilon1, upsilon2, cobs)");
}

std::string rate_name(Rate r) {
  switch (r) {
    case Rate::Upsilon0: return "upsilon0";
    case Rate::Upsilon1: return "upsilon1";
    case Rate::Upsilon2: return "upsilon2";
    case Rate::Cobs: return "cobs";
  }
  return "";
}

// Time Gramian.

std::complex<double> time_kernel(double delta, double T) {
  if (!(T > 0)) throw PreconditionError("time_kernel needs T > 0");
  const double x = delta * T;
  if (std::fabs(x) < 1e-6) return T * std::complex<double>(1.0 - x * x / 6.0, x / 2.0);
  return (std::polar(1.0, x) - 1.0) / std::complex<double>(0.0, delta);
}

double TimeGramian::energy(const std::vector<std::complex<double>>& c) const {
  const std::size_t n = indices.size();
  if (c.size() != n) throw PreconditionError("coefficient vector has the wrong length");
  std::complex<double> s = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) s += c[j] * entries(j, k) * std::conj(c[k]);
  return s.real();
}

std::vector<double> TimeGramian::eigenvalues() const { return hermitian_eigs(entries); }

TimeGramian time_gramian(const SetSpec& e, const std::vector<std::size_t>& indices, double T, const GramOptions& opts) {
  if (!(T > 0)) throw PreconditionError("time_gramian needs T > 0");
  GramMatrix g = gram_for_indices(e, indices, opts);
  TimeGramian m;
  m.indices = indices;
  m.T = T;
  m.set_descriptor = g.set_descriptor;
  m.err_est = g.entry_err_est * T;
  const std::size_t n = indices.size();
  m.entries = CMatrix(n, n);
  std::vector<double> lambda(n);
  for (std::size_t i = 0; i < n; ++i) lambda[i] = eigenvalue(indices[i]);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) m.entries(j, k) = g.entries(j, k) * time_kernel(lambda[k] - lambda[j], T);
  m.gram = std::move(g.entries);
  return m;
}

ObservabilityEstimate observability_constant_estimate(const SetSpec& e, double T, std::size_t K,
                                                      const GramOptions& opts) {
  if (K < 1 || K > 200) throw PreconditionError("observability_constant_estimate needs 1 <= K <= 200");
  std::vector<std::size_t> idx(K);
  for (std::size_t i = 0; i < K; ++i) idx[i] = i + 1;
  const TimeGramian m = time_gramian(e, idx, T, opts);
  const std::vector<double> ev = m.eigenvalues();
  ObservabilityEstimate out;
  out.K = K;
  out.T = T;
  out.lambda_min = ev.front();
  out.lambda_max = ev.back();
  out.err_est = m.err_est;
  out.unobservable = out.lambda_min < kUnobservableFloor;
  out.constant = out.unobservable ? std::numeric_limits<double>::infinity() : 1.0 / out.lambda_min;
  return out;
}

InghamReport ingham_cluster_check(const SetSpec& e, double alpha, double epsilon, const std::vector<std::size_t>& n_list,
                                  const GramOptions& opts) {
  InghamReport rep;
  rep.rows.resize(n_list.size());
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    const GramMatrix g = cluster_gram(e, n_list[i], alpha, epsilon, opts);
    InghamRow& r = rep.rows[i];
    r.n = n_list[i];
    r.lambda_n = eigenvalue(r.n);
    r.first = g.cluster.first;
    r.k_n = g.size();
    r.lambda_min = min_eig(g.entries);
    r.err_est = g.entry_err_est;
    r.route = route_name(g.route);
  }
  rep.delta = std::numeric_limits<double>::infinity();
  for (const auto& r : rep.rows) rep.delta = std::min(rep.delta, r.lambda_min);
  return rep;
}

// Exponential polynomials.

double exp_poly_energy(const std::vector<double>& lambdas, const std::vector<std::complex<double>>& c,
                       const IntervalUnion& where) {
  if (lambdas.size() != c.size()) throw PreconditionError("frequencies and coefficients differ in length");
  if (lambdas.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(lambdas.begin(), lambdas.end());
  const double spread = *hi - *lo;
  const double panel = spread > 0 ? std::min(1.0, 0.25 * 2.0 * M_PI / spread) : 1.0;
  double s = 0.0;
  for (const Interval& piece : where.intervals()) {
    const NodeSet nodes = uniform_nodes(piece.lo, piece.hi, panel);
    s += integrate(nodes, [&](double t) {
      std::complex<double> p = 0.0;
      for (std::size_t k = 0; k < c.size(); ++k) p += c[k] * std::polar(1.0, lambdas[k] * t);
      return std::norm(p);
    });
  }
  return s;
}

SalemResult salem_check(const std::vector<double>& lambdas, const std::vector<std::complex<double>>& c, TimeInterval I) {
  if (lambdas.empty() || lambdas.size() != c.size()) throw PreconditionError("salem_check needs matching nonempty inputs");
  std::vector<double> sorted = lambdas;
  std::sort(sorted.begin(), sorted.end());
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < sorted.size(); ++k) gap = std::min(gap, sorted[k] - sorted[k - 1]);
  if (!(gap > 0)) throw PreconditionError("salem_check needs distinct frequencies");
  if (!(I.length() > 0) || (std::isfinite(gap) && I.length() < 4.0 * M_PI / gap)) {
    throw PreconditionError("salem_check needs |I| >= 4 pi / gap");
  }
  SalemResult r;
  for (const auto& ck : c) r.lhs += std::norm(ck);
  r.rhs = 4.0 / I.length() * exp_poly_energy(lambdas, c, IntervalUnion({{I.lo, I.hi}}));
  r.holds = r.lhs <= r.rhs + 1e-10;
  return r;
}

NazarovResult nazarov_ratio(const std::vector<double>& lambdas, const std::vector<std::complex<double>>& c,
                            TimeInterval I, const IntervalUnion& e_sub) {
  const IntervalUnion sub = e_sub.clip(I.lo, I.hi);
  if (!(sub.measure() > 0)) throw PreconditionError("nazarov_ratio needs E of positive measure inside I");
  const double whole = exp_poly_energy(lambdas, c, IntervalUnion({{I.lo, I.hi}}));
  const double part = exp_poly_energy(lambdas, c, sub);
  if (!(part > 0)) throw PreconditionError("nazarov_ratio: polynomial vanishes on E");
  NazarovResult r;
  r.ratio = whole / part;
  const double n = static_cast<double>(lambdas.size());
  r.a_needed = std::pow(r.ratio, 1.0 / (2.0 * n - 1.0)) * sub.measure() / I.length();
  return r;
}

nlohmann::json to_json(const ObservabilityEstimate& e) {
  return {{"K", e.K},
          {"T", e.T},
          {"lambda_min", e.lambda_min},
          {"lambda_max", e.lambda_max},
          {"truncation_K_lower_bound", e.unobservable ? nlohmann::json(nullptr) : nlohmann::json(e.constant)},
          {"unobservable", e.unobservable},
          {"err_est", e.err_est}};
}

nlohmann::json to_json(const InghamReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& x : r.rows) {
    rows.push_back({{"n", x.n},
                    {"lambda_n", x.lambda_n},
                    {"first", x.first},
                    {"K_n", x.k_n},
                    {"lambda_min", x.lambda_min},
                    {"err_est", x.err_est},
                    {"route", x.route}});
  }
  return {{"rows", rows}, {"delta", r.delta}};
}

}  // namespace obslab
