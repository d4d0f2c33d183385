#include <doctest.h>

#include <cmath>
#include <random>

#include "obslab/error.hpp"
#include "obslab/quadrature.hpp"
#include "obslab/spectrum.hpp"

using namespace obslab;

TEST_CASE("first eigenvalues and the index convention") {
  CHECK(eigenvalue(1) == doctest::Approx(1.0187929716).epsilon(1e-10));
  CHECK(eigenvalue(2) == doctest::Approx(2.3381074105).epsilon(1e-10));
  CHECK(eigenpair(1).zero_kind == ZeroKind::Neumann);
  CHECK(eigenpair(1).parity == Parity::Even);
  CHECK(eigenpair(2).zero_kind == ZeroKind::Dirichlet);
  CHECK(eigenpair(2).parity == Parity::Odd);
  CHECK(std::fabs(eigenvalue(1000) / weyl_asymptotic(1000) - 1.0) < 0.01);
  CHECK_THROWS_AS(eigenvalue(0), PreconditionError);
}

TEST_CASE("strictly increasing, lambda_1 > 1, parity tied to zero kind") {
  reserve_spectrum(2001);
  CHECK(eigenvalue(1) > 1.0);
  for (std::size_t k = 1; k <= 2000; ++k) {
    const Eigenpair e = eigenpair(k);
    REQUIRE(eigenvalue(k + 1) > e.lambda);
    REQUIRE((e.parity == Parity::Even) == (e.zero_kind == ZeroKind::Neumann));
    REQUIRE(e.norm_const > 0.0);
  }
}

TEST_CASE("normalization") {
  const Eigenpair e1 = eigenpair(1);
  CHECK(e1.norm_const == doctest::Approx(1.0 / (std::sqrt(2 * e1.lambda) * std::fabs(airy_ai(-e1.lambda)))).epsilon(1e-13));
  // A_k lambda_k^{1/4} stays in one band
  double lo = 1e9, hi = 0;
  for (std::size_t k = 1; k <= 2000; ++k) {
    const double v = normalization(k) * std::pow(eigenvalue(k), 0.25);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(lo > 0.8);
  CHECK(hi < 1.4);
  const auto band = [](std::size_t k) { return normalization(k) * std::pow(eigenvalue(k), 0.25); };
  CHECK(band(50) == doctest::Approx(band(10)).epsilon(0.05));
  CHECK(band(50) == doctest::Approx(band(100)).epsilon(0.05));
}

TEST_CASE("eigenfunctions have unit norm") {
  for (std::size_t k : {1u, 2u, 7u, 40u, 151u}) {
    const Eigenpair e = eigenpair(k);
    const NodeSet nodes = oscillatory_nodes(e.lambda, e.lambda + 12.0);
    const double half = integrate(nodes, [&](double x) {
      const double v = eigenfunction_eval(e, x);
      return v * v;
    });
    CAPTURE(k);
    CHECK(2 * half == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("parity and decay of eigenfunctions") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 60.0);
  for (std::size_t k = 1; k <= 20; ++k) {
    if (parity_of(k) == Parity::Odd) CHECK(eigenfunction_eval(k, 0.0) == 0.0);
    for (int i = 0; i < 5; ++i) {
      const double x = u(rng);
      const double sign = k % 2 == 1 ? 1.0 : -1.0;
      CHECK(eigenfunction_eval(k, -x) == sign * eigenfunction_eval(k, x));
    }
  }
  for (std::size_t k : {1u, 5u, 30u}) {
    const Eigenpair e = eigenpair(k);
    for (double d = 5.5; d < 30.0; d += 1.5) {
      const double bound = 2 * e.norm_const * std::pow(d, -0.25) * std::exp(-2.0 / 3.0 * std::pow(d, 1.5));
      CHECK(std::fabs(eigenfunction_eval(e, e.lambda + d)) <= bound);
    }
  }
}

TEST_CASE("clusters") {
  const std::size_t n = index_nearest(100.0);
  CHECK(std::fabs(eigenvalue(n) - 100.0) < 0.2);

  const ClusterSpec tiny = cluster(n, 0.5, 1e-6);
  CHECK(tiny.count == 1);
  CHECK(tiny.first == n);

  for (double alpha : {0.5, 0.75, 1.0, 1.5}) {
    const ClusterSpec c = cluster(n, alpha, 1.0);
    const double ln = eigenvalue(n);
    for (std::size_t k = c.first; k <= c.last(); ++k) CHECK(std::fabs(eigenvalue(k) - ln) < c.width);
    if (c.first > 1) CHECK(std::fabs(eigenvalue(c.first - 1) - ln) >= c.width);
    CHECK(std::fabs(eigenvalue(c.last() + 1) - ln) >= c.width);
    for (std::size_t k = c.first; k < c.last(); ++k) {
      const double gap = eigenvalue(k + 1) - eigenvalue(k);
      CHECK(gap >= M_PI / 2 / std::sqrt(eigenvalue(k + 1)));
      CHECK(gap <= M_PI / 2 / std::sqrt(eigenvalue(k)));
    }
  }

  // K_n tracks sqrt(lambda_n) at alpha = 1/2
  for (double target : {50.0, 200.0, 450.0}) {
    const ClusterSpec c = cluster(index_nearest(target), 0.5, 1.0);
    const double ratio = c.count / std::sqrt(eigenvalue(c.center));
    CHECK(ratio > 0.5);
    CHECK(ratio < 2.0);
    const ClusterSpec a = c.parity_aligned();
    CHECK(a.offset() % 2 == 0);
    CHECK(a.last() == c.last());
  }

  // cardinality bound at alpha = 3/4 with a fixed D
  for (double target : {50.0, 100.0, 200.0, 400.0}) {
    CHECK(cluster(index_nearest(target), 0.75, 1.0).cardinality_ratio() <= 1.5);
  }

  CHECK_THROWS_AS(cluster(n, 0.4, 1.0), PreconditionError);
  CHECK_THROWS_AS(cluster(n, 0.5, 0.0), PreconditionError);
  CHECK_THROWS_AS(cluster(0, 0.5, 1.0), PreconditionError);
}
