#include <doctest.h>

#include <cmath>
#include <random>

#include "obslab/error.hpp"
#include "obslab/quadrature.hpp"
#include "obslab/specfun.hpp"

using namespace obslab;

namespace {

// mpmath airyai at 40 digits
struct AiryOracle {
  double x, ai, aip;
};
constexpr AiryOracle kAiry[] = {
    {-300, 0.038726362905137907187, 2.2502255138380941113},
    {-100, 0.17675339323955287809, -0.2422970316605838054},
    {-20, -0.17640612707798468959, 0.8928628567364712384},
    {-8.5, -0.33029023763020887902, -0.032313348284639135873},
    {-8, -0.052705050356386202622, 0.93556093819830655103},
    {-7.9, 0.041701883617386709387, 0.94004299802628024348},
    {-5, 0.35076100902411431979, 0.32719281855444313679},
    {-1, 0.5355608832923521188, -0.010160567116645209395},
    {0, 0.35502805388781723926, -0.25881940379280679841},
    {1, 0.13529241631288141552, -0.15914744129679321279},
    {3, 0.0065911393574607191443, -0.011912976705951318474},
    {7.9, 6.2396400972839341797e-8, -1.7729958329430335231e-7},
    {8, 4.6922076160992316256e-8, -1.3414392979067865743e-7},
    {8.5, 1.0997009755195506509e-8, -3.2377254404476022559e-8},
    {10, 1.1047532552898685934e-10, -3.5206336767389236366e-10},
    {20, 1.6916728686705403136e-27, -7.5863916257483549605e-27},
};

// Ai'' as the five-point derivative of Ai'
double ai_double_prime(double x, double h) {
  return (-airy_ai_prime(x + 2 * h) + 8 * airy_ai_prime(x + h) - 8 * airy_ai_prime(x - h) + airy_ai_prime(x - 2 * h)) /
         (12 * h);
}

}  // namespace

TEST_CASE("Ai and Ai' at the origin") {
  CHECK(airy_ai(0.0) == doctest::Approx(0.3550280538878172).epsilon(1e-15));
  CHECK(airy_ai_prime(0.0) == doctest::Approx(-0.2588194037928068).epsilon(1e-15));
}

TEST_CASE("Ai and Ai' against high-precision values") {
  for (const auto& o : kAiry) {
    CAPTURE(o.x);
    const AiryEval e = airy_eval(o.x);
    CHECK(std::fabs(e.ai - o.ai) <= 1e-12);
    CHECK(std::fabs(e.aip - o.aip) <= 1e-12);
    // relative accuracy on the decaying side
    if (o.x > 0) {
      CHECK(std::fabs(e.ai - o.ai) <= 1e-13 * std::fabs(o.ai));
      CHECK(std::fabs(e.aip - o.aip) <= 1e-13 * std::fabs(o.aip));
    }
  }
}

TEST_CASE("error estimate stays below 1e-12 on [-400, 400]") {
  double worst = 0.0;
  for (double x = -400.0; x <= 400.0; x += 0.0137) worst = std::max(worst, airy_eval(x).abs_err_est);
  for (double x : {-8.0, -4.0, 4.0, 8.0, -400.0, 400.0}) worst = std::max(worst, airy_eval(x).abs_err_est);
  CHECK(worst <= 1e-12);
}

TEST_CASE("branches agree across the crossovers") {
  for (double c : {-8.0, -4.0, 4.0, 8.0}) {
    const double below = std::nextafter(c, -1e9), above = std::nextafter(c, 1e9);
    CHECK(std::fabs(airy_ai(below) - airy_ai(above)) <= 1e-12);
    CHECK(std::fabs(airy_ai_prime(below) - airy_ai_prime(above)) <= 1e-12);
  }
}

TEST_CASE("positive and decreasing for x > 0") {
  const double at10 = airy_ai(10.0);
  CHECK(at10 > 0.0);
  CHECK(at10 < 1e-9);
  double prev = airy_ai(0.0);
  for (double x = 0.25; x <= 100.0; x += 0.25) {
    const double v = airy_ai(x);
    REQUIRE(v > 0.0);
    REQUIRE(v < prev);
    prev = v;
  }
}

TEST_CASE("range errors") {
  CHECK_THROWS_AS(airy_ai(500.5), RangeError);
  CHECK_THROWS_AS(airy_ai(-501.0), RangeError);
  CHECK_THROWS_AS(airy_ai(std::nan("")), RangeError);
  CHECK_NOTHROW(airy_ai(-500.0));
}

TEST_CASE("ODE residual at random points") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-50.0, 20.0);
  for (int i = 0; i < 100; ++i) {
    const double x = u(rng);
    CAPTURE(x);
    const double h = 1e-3 / (1.0 + std::sqrt(std::fabs(x)));
    const double lhs = ai_double_prime(x, h);
    const double rhs = x * airy_ai(x);
    CHECK(std::fabs(lhs - rhs) <= 1e-9 * (1.0 + std::fabs(rhs)));
  }
}

TEST_CASE("central difference of Ai converges to Ai' at second order") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-20.0, 10.0);
  for (int i = 0; i < 100; ++i) {
    const double x = u(rng);
    CAPTURE(x);
    const double scale = 1.0 + std::fabs(x);
    const double h1 = 1e-2 / scale, h2 = h1 / 2;
    const double e1 = std::fabs((airy_ai(x + h1) - airy_ai(x - h1)) / (2 * h1) - airy_ai_prime(x));
    const double e2 = std::fabs((airy_ai(x + h2) - airy_ai(x - h2)) / (2 * h2) - airy_ai_prime(x));
    // O(h^2): halving h cuts the error by about four, up to rounding
    CHECK(e2 <= 0.3 * e1 + 1e-11);
  }
}

TEST_CASE("kernel diagonal, symmetry and near-diagonal branch") {
  for (double x : {-30.0, -7.5, -1.0, 0.0, 2.0, 6.0}) {
    const double ai = airy_ai(x), aip = airy_ai_prime(x);
    CHECK(airy_kernel(x, x) == doctest::Approx(aip * aip - x * ai * ai).epsilon(1e-13));
  }
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-40.0, 10.0);
  for (int i = 0; i < 100; ++i) {
    const double x = u(rng), y = u(rng);
    CHECK(airy_kernel(x, y) == airy_kernel(y, x));
  }
  // mpmath
  CHECK(airy_kernel(-3.0, -1.0) == doctest::Approx(0.082314896627711358245).epsilon(1e-12));
  CHECK(airy_kernel(-9.5, 1.5) == doctest::Approx(0.0021199210739746950716).epsilon(1e-11));
  CHECK(airy_kernel(0.5, 2.0) == doctest::Approx(0.0029639319083583864917).epsilon(1e-12));
  CHECK(std::fabs(airy_kernel(-2.5, -2.5000001) - 0.49238333753020516287) <= 1e-12);
  // continuity across the Taylor switch
  const double a = airy_kernel(-4.0, -4.0 + 0.99e-6);
  const double b = airy_kernel(-4.0, -4.0 + 1.01e-6);
  CHECK(std::fabs(a - b) <= 1e-9);
}

TEST_CASE("kernel equals the integral of shifted products") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-10.0, 2.0);
  for (int i = 0; i < 20; ++i) {
    const double x = u(rng), y = u(rng);
    const double m = std::min(x, y);
    const NodeSet nodes = oscillatory_nodes(-m, 14.0 - m);
    const double quad = integrate(nodes, [&](double t) { return airy_ai(t + x) * airy_ai(t + y); });
    CHECK(std::fabs(quad - airy_kernel(x, y)) <= 1e-8);
  }
}

TEST_CASE("zeros: first values, residuals, interlacing, asymptotics") {
  CHECK(airy_zero(1, ZeroKind::Neumann) == doctest::Approx(1.018792971647471089).epsilon(1e-14));
  CHECK(airy_zero(1, ZeroKind::Dirichlet) == doctest::Approx(2.3381074104597670385).epsilon(1e-14));
  CHECK(airy_zero(3, ZeroKind::Dirichlet) == doctest::Approx(5.5205598280955510591).epsilon(1e-14));
  CHECK(airy_zero(100, ZeroKind::Neumann) == doctest::Approx(60.253295964424793174).epsilon(1e-14));
  CHECK(airy_zero(1000, ZeroKind::Dirichlet) == doctest::Approx(281.03151961252155284).epsilon(1e-14));
  CHECK(airy_zero(1000, ZeroKind::Neumann) == doctest::Approx(280.93780803589350706).epsilon(1e-14));

  CHECK(std::fabs(airy_ai_prime(-airy_zero(1, ZeroKind::Neumann))) <= 1e-10);

  AiryZeroTable::global().reserve(1200);
  double prev = 0.0;
  for (std::size_t k = 1; k <= 1200; ++k) {
    const double n = airy_zero(k, ZeroKind::Neumann);
    const double d = airy_zero(k, ZeroKind::Dirichlet);
    REQUIRE(prev < n);
    REQUIRE(n < d);
    prev = d;
    REQUIRE(std::fabs(airy_ai(-d)) <= 1e-10);
    REQUIRE(std::fabs(airy_ai_prime(-n)) <= 1e-10);
    if (k >= 10) {
      const double guess = std::pow(3 * M_PI * (4.0 * k - 1) / 8, 2.0 / 3.0);
      REQUIRE(std::fabs(d / guess - 1.0) <= 0.01);
    }
  }
  CHECK_THROWS_AS(airy_zero(0, ZeroKind::Dirichlet), PreconditionError);
}
