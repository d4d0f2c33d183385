#include <doctest.h>

#include <cmath>
#include <random>

#include "obslab/error.hpp"
#include "obslab/observability.hpp"
#include "obslab/quadrature.hpp"

using namespace obslab;

namespace {

std::vector<std::size_t> first_k(std::size_t k) {
  std::vector<std::size_t> v(k);
  for (std::size_t i = 0; i < k; ++i) v[i] = i + 1;
  return v;
}

}  // namespace

TEST_CASE("time kernel") {
  CHECK(time_kernel(0.0, 0.8) == std::complex<double>(0.8, 0.0));
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-40.0, 40.0);
  for (int i = 0; i < 50; ++i) {
    const double d = u(rng), T = 0.9;
    const NodeSet nodes = uniform_nodes(0.0, T, 0.05);
    const double re = integrate(nodes, [&](double t) { return std::cos(d * t); });
    const double im = integrate(nodes, [&](double t) { return std::sin(d * t); });
    const auto k = time_kernel(d, T);
    CHECK(std::abs(k - std::complex<double>(re, im)) <= 1e-10);
    CHECK(std::abs(k) <= std::min(T, 2 / std::fabs(d)) + 1e-15);
  }
  CHECK(std::abs(time_kernel(1e-9, 1.0) - time_kernel(2e-6, 1.0)) <= 1e-5);
}

TEST_CASE("time Gramian basics") {
  const TimeGramian full = time_gramian(parse_set_spec("full"), {1, 2, 3, 4}, 0.7);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(std::abs(full.entries(i, j) - (i == j ? 0.7 : 0.0)) <= 1e-12);

  const SetSpec e = parse_set_spec("athin-comp:alpha=1.5");
  const TimeGramian one = time_gramian(e, {5}, 0.6);
  CHECK(one.entries(0, 0).real() == doctest::Approx(0.6 * one.gram(0, 0)).epsilon(1e-14));

  for (double T : {0.3, 1.0, 2.5}) {
    const auto ev = time_gramian(e, first_k(20), T).eigenvalues();
    CHECK(ev.front() >= -1e-12);
    CHECK(ev.back() <= T + 1e-12);
  }
}

TEST_CASE("energy matches space-time quadrature") {
  const SetSpec e = parse_set_spec("intervals:[-3,1);[2,6)");
  const std::vector<std::size_t> idx = {1, 2, 3};
  const double T = 0.7;
  const TimeGramian m = time_gramian(e, idx, T);
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g(0.0, 1.0);
  const NodeSet tn = uniform_nodes(0.0, T, 0.05);
  NodeSet xn = uniform_nodes(-3.0, 1.0, 0.05);
  const NodeSet x2 = uniform_nodes(2.0, 6.0, 0.05);
  xn.x.insert(xn.x.end(), x2.x.begin(), x2.x.end());
  xn.w.insert(xn.w.end(), x2.w.begin(), x2.w.end());
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<std::complex<double>> c(3);
    for (auto& z : c) z = {g(rng), g(rng)};
    const double direct = integrate(tn, [&](double t) {
      return integrate(xn, [&](double x) {
        std::complex<double> u = 0;
        for (std::size_t k = 0; k < 3; ++k)
          u += c[k] * std::exp(std::complex<double>(0, -eigenvalue(idx[k]) * t)) * eigenfunction_eval(idx[k], x);
        return std::norm(u);
      });
    });
    CHECK(m.energy(c) == doctest::Approx(direct).epsilon(1e-5));
  }
}

TEST_CASE("truncated observability constant") {
  const auto line = observability_constant_estimate(parse_set_spec("full"), 0.5, 8);
  CHECK(line.constant == doctest::Approx(2.0).epsilon(1e-10));

  const SetSpec thin = parse_set_spec("athin-comp:alpha=1.5");
  double prev = 0.0;
  for (std::size_t K : {5u, 10u, 20u, 40u}) {
    const auto est = observability_constant_estimate(thin, 1.0, K);
    CHECK(est.constant >= prev * (1 - 1e-12));
    prev = est.constant;
  }
  prev = 1e300;
  for (double T : {0.25, 0.5, 1.0, 2.0}) {
    const auto est = observability_constant_estimate(thin, T, 20);
    CHECK(est.constant <= prev * (1 + 1e-12));
    prev = est.constant;
  }

  // recorded plateau 4.71 at T = 1
  const auto a30 = observability_constant_estimate(thin, 1.0, 30);
  const auto a60 = observability_constant_estimate(thin, 1.0, 60);
  CHECK(a60.constant == doctest::Approx(4.7179).epsilon(0.1));
  CHECK(std::fabs(a60.constant / a30.constant - 1) < 0.25);

  const SetSpec half = parse_set_spec("halfline:+");
  const auto h10 = observability_constant_estimate(half, 1.0, 10);
  const auto h60 = observability_constant_estimate(half, 1.0, 60);
  CHECK(h60.constant >= 5 * h10.constant);
  CHECK(h60.unobservable);

  CHECK_THROWS_AS(observability_constant_estimate(thin, 1.0, 201), PreconditionError);
}

TEST_CASE("Ingham-type cluster check") {
  std::vector<std::size_t> ns;
  for (double t : {50.0, 100.0}) ns.push_back(index_nearest(t));
  for (const auto& row : ingham_cluster_check(parse_set_spec("full"), 1.5, 1.0, ns).rows)
    CHECK(row.lambda_min == doctest::Approx(1.0).epsilon(1e-9));
  const InghamReport thin = ingham_cluster_check(parse_set_spec("athin-comp:alpha=1.5"), 1.5, 1.0, ns);
  CHECK(thin.delta >= 0.9 * 0.5438);

  std::vector<std::size_t> far;
  for (double t : {50.0, 100.0, 200.0}) far.push_back(index_nearest(t));
  const InghamReport half = ingham_cluster_check(parse_set_spec("halfline:+"), 0.5, 1.0, far);
  for (std::size_t i = 1; i < half.rows.size(); ++i) CHECK(half.rows[i].lambda_min < half.rows[i - 1].lambda_min);
}

TEST_CASE("Salem inequality") {
  const SalemResult one = salem_check({2.0}, {{3.0, 4.0}}, {0.0, 20.0});
  CHECK(one.lhs == doctest::Approx(25.0));
  CHECK(one.rhs == doctest::Approx(100.0).epsilon(1e-12));
  CHECK(one.holds);

  const std::vector<double> ints = {-2, 0, 1, 5};
  const std::vector<std::complex<double>> c = {{1, 0}, {0, 2}, {-1, 1}, {0.5, -0.5}};
  double sum = 0;
  for (const auto& z : c) sum += std::norm(z);
  CHECK(exp_poly_energy(ints, c, IntervalUnion({{0, 2 * M_PI}})) == doctest::Approx(2 * M_PI * sum).epsilon(1e-12));
  const SalemResult s = salem_check(ints, c, {0, 4 * M_PI});
  CHECK(s.rhs == doctest::Approx(4 * sum).epsilon(1e-12));

  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + static_cast<int>(u(rng) * 6);
    std::vector<double> l(n);
    std::vector<std::complex<double>> cc(n);
    l[0] = u(rng);
    for (int k = 1; k < n; ++k) l[k] = l[k - 1] + 0.5 + u(rng);
    for (auto& z : cc) z = {g(rng), g(rng)};
    double gap = 0.5;
    if (n > 1) {
      gap = 1e9;
      for (int k = 1; k < n; ++k) gap = std::min(gap, l[k] - l[k - 1]);
    }
    const double a = u(rng);
    REQUIRE(salem_check(l, cc, {a, a + 4 * M_PI / gap * (1 + u(rng))}).holds);
  }
  CHECK_THROWS_AS(salem_check({0.0, 1.0}, {{1, 0}, {1, 0}}, {0.0, 4.0}), PreconditionError);
}

TEST_CASE("Nazarov ratio") {
  const std::vector<double> l = {0.0, 1.3, 2.9};
  const std::vector<std::complex<double>> c = {{1, 0}, {0, 1}, {0.5, 0.5}};
  CHECK(nazarov_ratio(l, c, {0, 5}, IntervalUnion({{0, 5}})).ratio == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(nazarov_ratio({1.7}, {{2, 1}}, {0, 5}, IntervalUnion({{1, 2}, {3, 3.5}})).ratio ==
        doctest::Approx(5.0 / 1.5).epsilon(1e-12));
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g(0.0, 1.0);
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::complex<double>> cc(3);
    for (auto& z : cc) z = {g(rng), g(rng)};
    const auto r = nazarov_ratio(l, cc, {0, 4}, IntervalUnion({{0, 1}, {2, 3}}));
    worst = std::max(worst, r.ratio);
    CHECK(std::isfinite(r.a_needed));
  }
  CHECK(std::isfinite(worst));
  CHECK(worst >= 1.0);
  CHECK_THROWS_AS(nazarov_ratio(l, c, {0, 4}, IntervalUnion{}), PreconditionError);
}

TEST_CASE("rate formulas with unit constants") {
  CHECK(upsilon2(8.0, 1.5) == doctest::Approx(1.0 / 3.0));
  CHECK(log_log_c_obs(0.25, 1.5) == doctest::Approx(std::pow(0.25, -5.25) * std::log(4.0)));
  CHECK(upsilon1(0.25, 1.0) == doctest::Approx(std::pow(4.0, 7) * std::pow(std::log(4.0), 6)));
  CHECK(std::isinf(c_obs(0.25, 1.5)));
  // double-exponential: overflows for every admissible T, the log-log form stays finite
  CHECK(std::isinf(c_obs(0.49, 1.5)));
  CHECK(log_log_c_obs(0.49, 1.5) == doctest::Approx(std::pow(0.49, -5.25) * std::log(1 / 0.49)));
  CHECK(rate_eval(RateBundle{1.5}, parse_rate("upsilon2"), 8.0) == upsilon2(8.0, 1.5));
  CHECK(rate_name(Rate::Cobs) == "cobs");
  CHECK_THROWS_AS(upsilon1(0.6, 1.5), PreconditionError);
  CHECK_THROWS_AS(c_obs(0.2, 0.5), PreconditionError);
  CHECK_THROWS_AS(parse_rate("nope"), PreconditionError);
}
