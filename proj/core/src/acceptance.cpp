#include "obslab/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <utility>

#include "obslab/gram.hpp"
#include "obslab/linalg.hpp"
#include "obslab/observability.hpp"
#include "obslab/oracle.hpp"
#include "obslab/quadrature.hpp"
#include "obslab/spectrum.hpp"
#include "obslab/szego.hpp"

namespace obslab {

namespace {

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

std::vector<std::size_t> centres_near(const std::vector<double>& targets) {
  std::vector<std::size_t> out;
  for (double t : targets) out.push_back(index_nearest(t));
  return out;
}

using Clock = std::chrono::steady_clock;

CriterionResult titled(int id, std::string name) {
  CriterionResult r;
  r.id = id;
  r.name = std::move(name);
  return r;
}

double elapsed(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

CriterionResult c1_eigenvalues(std::uint64_t) {
  const auto start = Clock::now();
  const CrossValidation cv = cross_validate(50, 60.0, 0.01);
  const double secs = elapsed(start);
  CriterionResult r = titled(1, "eigenvalues vs finite-difference oracle");
  r.passed = cv.max_rel_eig_err <= 1e-5 && secs <= 120.0;
  r.detail = "max rel err " + fmt("%.3e", cv.max_rel_eig_err) + " (limit 1e-5), k <= 50, L = 60, h = 0.01";
  r.data = {{"max_rel_eig_err", cv.max_rel_eig_err},
            {"richardson_stability", cv.richardson_stability},
            {"runtime_limit_s", 120}};
  return r;
}

CriterionResult c2_asymptotics(std::uint64_t) {
  reserve_spectrum(2001);
  double lo = 1e300, hi = -1e300;
  for (std::size_t k = 1000; k <= 2000; ++k) {
    const double ratio = eigenvalue(k) / weyl_asymptotic(k);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  const double dev200 = std::fabs(eigenvalue(200) / weyl_asymptotic(200) - 1.0);
  const double dev2000 = std::fabs(eigenvalue(2000) / weyl_asymptotic(2000) - 1.0);
  CriterionResult r = titled(2, "Weyl asymptotics");
  r.passed = lo >= 0.99 && hi <= 1.01 && dev2000 < dev200;
  r.detail = "ratio range [" + fmt("%.6f", lo) + ", " + fmt("%.6f", hi) + "] on 1000..2000; deviation " +
             fmt("%.3e", dev2000) + " at 2000 vs " + fmt("%.3e", dev200) + " at 200";
  r.data = {{"ratio_min", lo}, {"ratio_max", hi}, {"dev_200", dev200}, {"dev_2000", dev2000}};
  return r;
}

CriterionResult c3_gaps(std::uint64_t) {
  reserve_spectrum(2001);
  constexpr double kSlack = 1e-10;
  std::size_t violations = 0;
  double worst_lower = 1e300, worst_upper = 1e300;
  for (std::size_t k = 1; k <= 2000; ++k) {
    const double a = eigenvalue(k);
    const double b = eigenvalue(k + 1);
    const double gap = b - a;
    const double lower = 0.5 * M_PI / std::sqrt(b);
    const double upper = 0.5 * M_PI / std::sqrt(a);
    worst_lower = std::min(worst_lower, gap - lower);
    worst_upper = std::min(worst_upper, upper - gap);
    if (gap < lower - kSlack || gap > upper + kSlack) ++violations;
  }
  CriterionResult r = titled(3, "gap bounds");
  r.passed = violations == 0;
  r.detail = std::to_string(violations) + " violations for k <= 2000; min margins " + fmt("%.3e", worst_lower) +
             " (lower), " + fmt("%.3e", worst_upper) + " (upper)";
  r.data = {{"violations", violations}, {"min_lower_margin", worst_lower}, {"min_upper_margin", worst_upper}};
  return r;
}

CriterionResult c4_kernel(std::uint64_t seed) {
  const auto start = Clock::now();
  std::mt19937_64 rng(seed ^ 0x4b65726e656cULL);
  std::uniform_real_distribution<double> u(-10.0, 2.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double x = u(rng);
    const double y = u(rng);
    const double m = std::min(x, y);
    const NodeSet nodes = oscillatory_nodes(-m, 14.0 - m);
    const double quad = integrate(nodes, [&](double t) { return airy_ai(t + x) * airy_ai(t + y); });
    worst = std::max(worst, std::fabs(quad - airy_kernel(x, y)));
  }
  const double secs = elapsed(start);
  CriterionResult r = titled(4, "Airy kernel integral identity");
  r.passed = worst <= 1e-8 && secs <= 30.0;
  r.detail = "max |closed form - quadrature| " + fmt("%.3e", worst) + " over 100 points (limit 1e-8)";
  r.data = {{"max_abs_diff", worst}, {"points", 100}, {"runtime_limit_s", 30}};
  return r;
}

CriterionResult c5_halfline_structure(std::uint64_t) {
  const std::vector<std::size_t> centres = centres_near({50.0, 100.0, 150.0, 200.0});
  double diag_err = 0.0, worst_ratio = 0.0;
  std::size_t nonzero_even = 0, checked = 0;
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t n : centres) {
    const ClusterSpec c = cluster(n, 0.5, 1.0).parity_aligned();
    const double lambda_n = eigenvalue(n);
    const Matrix t = halfline_toeplitz(c.count);
    double max_dev = 0.0;
    for (std::size_t a = 0; a < c.count; ++a) {
      for (std::size_t b = 0; b < c.count; ++b) {
        const std::size_t j = c.first + a, k = c.first + b;
        const double v = halfline_entry(j, k);
        if (a == b) {
          diag_err = std::max(diag_err, std::fabs(v - 0.5));
        } else if ((a + b) % 2 == 0) {
          if (v != 0.0) ++nonzero_even;
        } else {
          max_dev = std::max(max_dev, std::fabs(v - t(a, b)));
          ++checked;
        }
      }
    }
    worst_ratio = std::max(worst_ratio, max_dev * lambda_n / 10.0);
    rows.push_back({{"n", n}, {"lambda_n", lambda_n}, {"first", c.first}, {"K", c.count},
                    {"max_dev_times_lambda", max_dev * lambda_n}});
  }
  CriterionResult r = titled(5, "half-line Gram structure");
  r.passed = diag_err <= 1e-10 && nonzero_even == 0 && worst_ratio <= 1.0 && checked > 0;
  r.detail = "diag err " + fmt("%.1e", diag_err) + ", " + std::to_string(nonzero_even) +
             " nonzero even-offset entries, max |a - t| lambda_n / 10 = " + fmt("%.4f", worst_ratio);
  r.data = {{"diag_err", diag_err}, {"nonzero_even", nonzero_even}, {"worst_ratio", worst_ratio}, {"clusters", rows}};
  return r;
}

CriterionResult c6_counterexample(std::uint64_t) {
  const auto start = Clock::now();
  const std::vector<CounterexampleRow> rows = counterexample_report(centres_near({50.0, 100.0, 150.0, 200.0}), 1.0);
  const double t32 = min_eig(halfline_toeplitz(32));
  const double secs = elapsed(start);
  bool decreasing = true;
  double rmin = 1e300, rmax = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0 && !(rows[i].lambda1_a < rows[i - 1].lambda1_a)) decreasing = false;
    rmin = std::min(rmin, rows[i].max_r_times_lambda);
    rmax = std::max(rmax, rows[i].max_r_times_lambda);
  }
  const bool halved = rows.back().lambda1_a < 0.5 * rows.front().lambda1_a;
  CriterionResult r = titled(6, "half-line counterexample");
  r.passed = decreasing && halved && t32 < 0.01 && rmax / rmin < 3.0 && secs <= 300.0;
  r.detail = "lambda1(A) " + fmt("%.3e", rows.front().lambda1_a) + " -> " + fmt("%.3e", rows.back().lambda1_a) +
             (decreasing ? " strictly decreasing" : " NOT decreasing") + ", lambda1(T_32) " + fmt("%.2e", t32) +
             ", max|r| lambda_n spread x" + fmt("%.3f", rmax / rmin);
  r.data = {{"rows", to_json(rows)}, {"lambda1_T32", t32}, {"residual_spread", rmax / rmin}, {"runtime_limit_s", 300}};
  return r;
}

CriterionResult c7_szego(std::uint64_t) {
  const std::vector<std::size_t> sizes = {8, 16, 32, 64};
  const std::vector<Symbol> symbols = {
      constant_symbol(3.0), indicator_symbol(-M_PI / 2, M_PI / 2), cosine_symbol({2.0, 1.0}),
      callable_symbol("abs", [](double t) { return std::fabs(t); }, {0.0}, true), indicator_symbol(0.0, M_PI / 2)};
  bool bracketed = true;
  nlohmann::json traces = nlohmann::json::array();
  SzegoTrace indicator;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    const SzegoTrace t = szego_trace(symbols[i], sizes);
    bracketed = bracketed && t.bracketed(1e-12);
    traces.push_back(to_json(t));
    if (i == 1) indicator = t;
  }
  const double lo = std::fabs(indicator.min_eigs.back());
  const double hi = std::fabs(indicator.max_eigs.back() - 1.0);
  CriterionResult r = titled(7, "Szego convergence");
  r.passed = lo < 1e-3 && hi < 1e-3 && bracketed;
  r.detail = "indicator n = 64: |min| " + fmt("%.2e", lo) + ", |max - 1| " + fmt("%.2e", hi) + "; bracketing " +
             (bracketed ? "holds" : "FAILS") + " for 5 symbols";
  r.data = {{"traces", traces}};
  return r;
}

CriterionResult c8_ingham(std::uint64_t) {
  std::vector<double> targets;
  for (double l = 50.0; l <= 200.0; l += 25.0) targets.push_back(l);
  const InghamReport rep = ingham_cluster_check(parse_set_spec("athin-comp:alpha=1.5"), 1.5, 1.0, centres_near(targets));
  CriterionResult r = titled(8, "Ingham-type cluster inequality");
  const double floor = (1.0 - kRegressionTolerance) * kRecordedInghamFloor;
  r.passed = rep.delta > 0 && rep.delta >= floor;
  r.detail = "min lambda1(A_E,n) " + fmt("%.6f", rep.delta) + " over lambda_n in [50, 200] (recorded " +
             fmt("%.4f", kRecordedInghamFloor) + ", floor " + fmt("%.4f", floor) + ")";
  r.data = to_json(rep);
  r.data["recorded"] = kRecordedInghamFloor;
  return r;
}

CriterionResult c9_truncation(std::uint64_t) {
  const SetSpec half = parse_set_spec("halfline:+");
  const SetSpec thin = parse_set_spec("athin-comp:alpha=1.5");
  const ObservabilityEstimate h10 = observability_constant_estimate(half, 1.0, 10);
  const ObservabilityEstimate h60 = observability_constant_estimate(half, 1.0, 60);
  const ObservabilityEstimate a30 = observability_constant_estimate(thin, 1.0, 30);
  const ObservabilityEstimate a60 = observability_constant_estimate(thin, 1.0, 60);
  // C(60) >= 5 C(10) written on the eigenvalues, so a vanishing lambda_min(60) counts as infinite growth.
  const bool grows = h10.lambda_min > 0 && std::max(h60.lambda_min, 0.0) * 5.0 <= h10.lambda_min;
  const double variation = std::fabs(a60.constant - a30.constant) / a30.constant;
  CriterionResult r = titled(9, "observability constant truncation");
  r.passed = grows && !a30.unobservable && !a60.unobservable && variation < 0.25;
  r.detail = "half-line lambda_min " + fmt("%.3e", h10.lambda_min) + " (K=10) -> " + fmt("%.3e", h60.lambda_min) +
             " (K=60); alpha=1.5 constant " + fmt("%.5f", a30.constant) + " -> " + fmt("%.5f", a60.constant) + " (" +
             fmt("%.2f", 100 * variation) + " %)";
  r.data = {{"half_K10", to_json(h10)}, {"half_K60", to_json(h60)}, {"thin_K30", to_json(a30)},
            {"thin_K60", to_json(a60)}, {"thin_variation", variation}};
  return r;
}

CriterionResult c10_salem(std::uint64_t seed) {
  const auto start = Clock::now();
  std::mt19937_64 rng(seed ^ 0x53616c656dULL);
  std::uniform_int_distribution<int> count(1, 8);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  constexpr int kTrials = 10000;
  int violations = 0;
  double min_margin = 1e300;
  for (int trial = 0; trial < kTrials; ++trial) {
    const int n = count(rng);
    const double delta = 0.5 + 1.5 * unit(rng);
    std::vector<double> lambdas(n);
    std::vector<std::complex<double>> c(n);
    lambdas[0] = -5.0 + 10.0 * unit(rng);
    for (int k = 1; k < n; ++k) lambdas[k] = lambdas[k - 1] + delta * (1.0 + unit(rng));
    for (int k = 0; k < n; ++k) c[k] = {normal(rng), normal(rng)};
    double gap = delta;
    if (n > 1) {
      gap = 1e300;
      for (int k = 1; k < n; ++k) gap = std::min(gap, lambdas[k] - lambdas[k - 1]);
    }
    const double length = 4.0 * M_PI / gap * (1.0 + unit(rng));
    const double a = -10.0 + 20.0 * unit(rng);
    const SalemResult s = salem_check(lambdas, c, {a, a + length});
    if (!s.holds) ++violations;
    min_margin = std::min(min_margin, (s.rhs - s.lhs) / s.lhs);
  }
  const double secs = elapsed(start);
  CriterionResult r = titled(10, "Salem inequality");
  r.passed = violations == 0 && secs <= 60.0;
  r.detail = std::to_string(violations) + " violations in " + std::to_string(kTrials) +
             " random instances; min relative margin " + fmt("%.4f", min_margin);
  r.data = {{"violations", violations}, {"trials", kTrials}, {"min_relative_margin", min_margin}, {"runtime_limit_s", 60}};
  return r;
}

CriterionResult c11_vandermonde(std::uint64_t) {
  reserve_spectrum(9);
  std::vector<double> lambdas;
  for (std::size_t k = 1; k <= 8; ++k) lambdas.push_back(eigenvalue(k));
  double a2 = 0.0, worst_det = 0.0;
  nlohmann::json rows = nlohmann::json::array();
  std::vector<VandermondeReport> reps;
  for (double T : {0.1, 0.3}) {
    for (std::size_t m = 2; m <= 8; ++m) {
      const VandermondeReport v = vandermonde_inverse_norm(lambdas, m, T);
      a2 = std::max(a2, v.a2_fit);
      worst_det = std::max(worst_det, v.det_rel_err);
      reps.push_back(v);
    }
  }
  bool bound_holds = true;
  for (const auto& v : reps) {
    const double md = static_cast<double>(v.m);
    const double log_bound = md * md * std::log(a2 * md / v.T);
    if (std::log(v.inverse_norm) > log_bound * (1 + 1e-12)) bound_holds = false;
    rows.push_back({{"m", v.m}, {"T", v.T}, {"inverse_norm", v.inverse_norm}, {"det_rel_err", v.det_rel_err},
                    {"a2_fit", v.a2_fit}});
  }
  CriterionResult r = titled(11, "Vandermonde inverse bound");
  r.passed = bound_holds && a2 <= 100.0 && worst_det <= 1e-9;
  r.detail = "fitted A2 " + fmt("%.4f", a2) + " (limit 100), max det rel err " + fmt("%.2e", worst_det);
  r.data = {{"A2", a2}, {"max_det_rel_err", worst_det}, {"rows", rows}};
  return r;
}

CriterionResult c12_resolvent(std::uint64_t) {
  const IntervalUnion e = parse_set_spec("athin-comp:alpha=1.5").generate(60.0);
  std::vector<double> lambdas;
  for (int i = 0; i <= 1100; ++i) lambdas.push_back(-10.0 + 0.1 * i);
  auto floor_of = [&](const std::function<double(double)>& v) {
    const std::vector<ResolventRow> rows = resolvent_check(fd_build(60.0, 0.01, v), e, lambdas, 1.5);
    double f = 1e300, at = 0.0;
    for (const auto& row : rows) {
      if (row.mu_min < f) {
        f = row.mu_min;
        at = row.lambda;
      }
    }
    return std::pair{f, at};
  };
  const auto [f0, at0] = floor_of({});
  const auto [f1, at1] = floor_of([](double x) { return std::sin(x); });
  const double need0 = (1.0 - kRegressionTolerance) * kRecordedResolventFloor;
  const double need1 = (1.0 - kRegressionTolerance) * kRecordedResolventFloorWithV;
  CriterionResult r = titled(12, "resolvent estimate");
  r.passed = f0 > 0 && f1 > 0 && f0 >= need0 && f1 >= need1;
  r.detail = "min mu " + fmt("%.5f", f0) + " (V = 0, at " + fmt("%.1f", at0) + "), " + fmt("%.5f", f1) +
             " (V = sin x, at " + fmt("%.1f", at1) + "); floors " + fmt("%.4f", need0) + ", " + fmt("%.4f", need1);
  r.data = {{"floor_V0", f0},          {"argmin_V0", at0},
            {"floor_V1", f1},          {"argmin_V1", at1},
            {"recorded_V0", kRecordedResolventFloor}, {"recorded_V1", kRecordedResolventFloorWithV},
            {"samples", lambdas.size()}};
  return r;
}

using Criterion = CriterionResult (*)(std::uint64_t);
constexpr Criterion kCriteria[] = {c1_eigenvalues, c2_asymptotics,      c3_gaps,      c4_kernel,
                                   c5_halfline_structure, c6_counterexample, c7_szego, c8_ingham,
                                   c9_truncation,  c10_salem,           c11_vandermonde, c12_resolvent};

CriterionResult run_one(int id, std::uint64_t seed) {
  const auto start = Clock::now();
  CriterionResult r;
  try {
    r = kCriteria[id - 1](seed);
  } catch (const std::exception& ex) {
    r.id = id;
    r.name = "criterion " + std::to_string(id);
    r.passed = false;
    r.detail = std::string("exception: ") + ex.what();
  }
  r.seconds = elapsed(start);
  return r;
}

}  // namespace

nlohmann::json acceptance_to_json(const std::vector<CriterionResult>& results, std::uint64_t seed) {
  nlohmann::json rows = nlohmann::json::array();
  bool all = true;
  for (const auto& r : results) {
    rows.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}, {"data", r.data}});
    all = all && r.passed;
  }
  return {{"seed", seed}, {"all_passed", all}, {"criteria", rows}};
}

std::string summary_line(const CriterionResult& r) {
  return std::string(r.passed ? "[PASS] " : "[FAIL] ") + std::to_string(r.id) + " " + r.name + ": " + r.detail;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts, const CriterionCallback& on_result) {
  auto wanted = [&](int id) { return opts.only.empty() || std::find(opts.only.begin(), opts.only.end(), id) != opts.only.end(); };
  std::vector<CriterionResult> results;
  double total = 0.0;
  for (int id = 1; id <= 12; ++id) {
    if (!wanted(id)) continue;
    results.push_back(run_one(id, opts.seed));
    total += results.back().seconds;
    if (on_result) on_result(results.back());
  }
  if (!wanted(13)) return results;

  CriterionResult r = titled(13, "determinism and runtime");
  const auto start = Clock::now();
  try {
    std::vector<CriterionResult> first = results;
    double first_total = total;
    if (first.size() != 12) {
      first.clear();
      first_total = 0.0;
      for (int id = 1; id <= 12; ++id) {
        first.push_back(run_one(id, opts.seed));
        first_total += first.back().seconds;
      }
    }
    // Criterion 13 repeats criteria 1-12 and compares the reports byte for byte.
    std::vector<CriterionResult> second;
    for (int id = 1; id <= 12; ++id) second.push_back(run_one(id, opts.seed));
    const bool identical = acceptance_to_json(first, opts.seed).dump() == acceptance_to_json(second, opts.seed).dump();
    r.passed = identical && first_total <= 900.0;
    r.detail = std::string(identical ? "rerun byte-identical" : "rerun DIFFERS") + "; suite " +
               (first_total <= 900.0 ? "within" : "OVER") + " the 15 min budget";
    r.data = {{"identical", identical}, {"runtime_limit_s", 900}};
  } catch (const std::exception& ex) {
    r.passed = false;
    r.detail = std::string("exception: ") + ex.what();
  }
  r.seconds = elapsed(start);
  results.push_back(r);
  if (on_result) on_result(results.back());
  return results;
}

}  // namespace obslab
