#include "obslab/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <mutex>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "obslab/error.hpp"

namespace obslab {

namespace {

using ld = long double;

constexpr ld kAi0 = 0.355028053887817239260063186004183176L;   // Ai(0)
constexpr ld kAip0 = 0.258819403792806798405183560189203963L;  // -Ai'(0)
constexpr ld kPi = 3.141592653589793238462643383279502884L;
constexpr ld kSqrtPi = 1.772453850905516027298167483341145183L;
constexpr ld kEpsLd = std::numeric_limits<ld>::epsilon();
constexpr double kEps = std::numeric_limits<double>::epsilon();

// u_k of the large-argument expansions; v_k = -(6k+1)/(6k-1) u_k.
constexpr std::size_t kAsymptoticTerms = 80;

struct AsymptoticCoefficients {
  std::array<ld, kAsymptoticTerms> u{};
  std::array<ld, kAsymptoticTerms> v{};

  AsymptoticCoefficients() {
    u[0] = 1.0L;
    v[0] = 1.0L;
    for (std::size_t k = 1; k < kAsymptoticTerms; ++k) {
      const ld kk = static_cast<ld>(k);
      u[k] = u[k - 1] * (6 * kk - 5) * (6 * kk - 3) * (6 * kk - 1) / ((2 * kk - 1) * 216 * kk);
      v[k] = -(6 * kk + 1) / (6 * kk - 1) * u[k];
    }
  }
};

const AsymptoticCoefficients& coefficients() {
  static const AsymptoticCoefficients c;
  return c;
}

AiryEval maclaurin(double x) {
  const ld xl = x;
  const ld x3 = xl * xl * xl;

  // f, g are the two power series with Ai = Ai(0) f + Ai'(0) g.
  ld t = 1.0L, f = 1.0L, abs_f = 1.0L;
  ld s = xl, g = xl, abs_g = std::fabs(xl);
  ld p = xl * xl / 2, fp = p, abs_fp = std::fabs(p);
  ld q = 1.0L, gp = 1.0L, abs_gp = 1.0L;

  for (int k = 0; k < 200; ++k) {
    const ld kk = k;
    t *= x3 / ((3 * kk + 2) * (3 * kk + 3));
    s *= x3 / ((3 * kk + 3) * (3 * kk + 4));
    q *= x3 / ((3 * kk + 1) * (3 * kk + 3));
    if (k > 0) p *= x3 / ((3 * kk) * (3 * kk + 2));
    f += t;
    g += s;
    gp += q;
    if (k > 0) fp += p;
    abs_f += std::fabs(t);
    abs_g += std::fabs(s);
    abs_gp += std::fabs(q);
    if (k > 0) abs_fp += std::fabs(p);
    const ld scale = abs_f + abs_g + abs_fp + abs_gp;
    if (std::fabs(t) + std::fabs(s) + std::fabs(p) + std::fabs(q) < 1e-24L * scale) break;
  }

  AiryEval r;
  r.x = x;
  const ld ai = kAi0 * f - kAip0 * g;
  const ld aip = kAi0 * fp - kAip0 * gp;
  r.ai = static_cast<double>(ai);
  r.aip = static_cast<double>(aip);
  const ld cancel = 8 * kEpsLd * (kAi0 * (abs_f + abs_fp) + kAip0 * (abs_g + abs_gp));
  r.abs_err_est = static_cast<double>(cancel) + kEps * (std::fabs(r.ai) + std::fabs(r.aip));
  return r;
}

// Maclaurin sums in 50 digits; used once to seed the Taylor anchors.
struct AnchorValue {
  ld ai;
  ld aip;
};

AnchorValue precise_maclaurin(double x) {
  using big = boost::multiprecision::cpp_bin_float_50;
  const big ai0("0.35502805388781723926006318600418317639797917419917724058");
  const big aip0("0.25881940379280679840518356018920396347909113835493458221");
  const big xb = x;
  const big x3 = xb * xb * xb;
  big t = 1, f = 1, s = xb, g = xb, p = xb * xb / 2, fp = p, q = 1, gp = 1;
  for (int k = 0; k < 400; ++k) {
    const big kk = k;
    t *= x3 / ((3 * kk + 2) * (3 * kk + 3));
    s *= x3 / ((3 * kk + 3) * (3 * kk + 4));
    q *= x3 / ((3 * kk + 1) * (3 * kk + 3));
    if (k > 0) p *= x3 / ((3 * kk) * (3 * kk + 2));
    f += t;
    g += s;
    gp += q;
    if (k > 0) fp += p;
    if (abs(t) + abs(s) + abs(p) + abs(q) < big("1e-60")) break;
  }
  return {static_cast<ld>(ai0 * f - aip0 * g), static_cast<ld>(ai0 * fp - aip0 * gp)};
}

// Anchors at +-(kTaylorInner + 0.5), ..., +-(kAirySeriesCrossover - 0.5).
constexpr double kTaylorInner = 4.0;
constexpr int kAnchorsPerSide = 4;

struct Anchors {
  std::array<AnchorValue, 2 * kAnchorsPerSide> at{};
  Anchors() {
    for (int i = 0; i < kAnchorsPerSide; ++i) {
      const double c = kTaylorInner + 0.5 + i;
      at[i] = precise_maclaurin(-c);
      at[kAnchorsPerSide + i] = precise_maclaurin(c);
    }
  }
};

const Anchors& anchors() {
  static const Anchors a;
  return a;
}

// Local Taylor series of the Airy equation y'' = x y around an anchor x0,
// |x - x0| <= 1/2, where the terms decay without cancellation.
AiryEval taylor(double x) {
  const double mag = std::fabs(x);
  const int i = std::min(kAnchorsPerSide - 1, static_cast<int>(mag - kTaylorInner));
  const ld x0 = (x < 0 ? -1 : 1) * (kTaylorInner + 0.5L + i);
  const AnchorValue& a = anchors().at[(x < 0 ? 0 : kAnchorsPerSide) + i];
  const ld h = static_cast<ld>(x) - x0;

  // a_{n+2} = (x0 a_n + a_{n-1}) / ((n+1)(n+2))
  ld prev = 0.0L, cur = a.ai, next = a.aip;
  ld hp = 1.0L;
  ld y = cur, dy = 0.0L, abs_y = std::fabs(cur), abs_dy = 0.0L;
  for (int n = 0; n < 80; ++n) {
    const ld after = (x0 * cur + prev) / ((n + 1) * (n + 2));
    prev = cur;
    cur = next;
    next = after;
    // cur is now a_{n+1}
    const ld term_dy = (n + 1) * cur * hp;
    hp *= h;
    const ld term_y = cur * hp;
    y += term_y;
    dy += term_dy;
    abs_y += std::fabs(term_y);
    abs_dy += std::fabs(term_dy);
    if (std::fabs(term_y) + std::fabs(term_dy) < 1e-24L * (abs_y + abs_dy)) break;
  }
  AiryEval r;
  r.x = x;
  r.ai = static_cast<double>(y);
  r.aip = static_cast<double>(dy);
  // Anchor rounding (relative kEpsLd) grows at most like exp(sqrt(|x0|) |h|) <= e^2.
  const ld anchor = 8 * kEpsLd * (std::fabs(a.ai) + std::fabs(a.aip)) * (1 + std::sqrt(std::fabs(x0)));
  r.abs_err_est = static_cast<double>(8 * kEpsLd * (abs_y + abs_dy) + anchor) + kEps * (std::fabs(r.ai) + std::fabs(r.aip));
  return r;
}

// Sums sum_k sign_k c_k / zeta^k until the terms stop decreasing. Returns the
// magnitude of the first omitted term in `tail`.
template <class SignFn>
ld asymptotic_sum(const std::array<ld, kAsymptoticTerms>& c, ld zeta, std::size_t first,
                  std::size_t stride, SignFn sign, ld& tail) {
  ld sum = 0.0L;
  ld prev = std::numeric_limits<ld>::infinity();
  tail = 0.0L;
  const ld inv = 1.0L / zeta;
  const ld step = stride == 1 ? inv : inv * inv;
  ld power = first == 0 ? 1.0L : inv;
  std::size_t m = 0;
  for (std::size_t k = first; k < kAsymptoticTerms; k += stride, ++m, power *= step) {
    const ld term = c[k] * power;
    const ld mag = std::fabs(term);
    if (mag >= prev) {
      tail = mag;
      return sum;
    }
    sum += sign(m) * term;
    prev = mag;
    if (mag < 1e-22L * std::fabs(sum)) {
      tail = mag;
      return sum;
    }
  }
  tail = prev;
  return sum;
}

AiryEval positive_asymptotic(double x) {
  const auto& c = coefficients();
  const ld xl = x;
  const ld zeta = 2.0L / 3.0L * xl * std::sqrt(xl);
  const ld x14 = std::sqrt(std::sqrt(xl));
  const ld decay = std::exp(-zeta) / (2 * kSqrtPi);
  auto alternating = [](std::size_t m) { return (m % 2 == 0) ? 1.0L : -1.0L; };
  ld tail_u = 0, tail_v = 0;
  const ld su = asymptotic_sum(c.u, zeta, 0, 1, alternating, tail_u);
  const ld sv = asymptotic_sum(c.v, zeta, 0, 1, alternating, tail_v);
  AiryEval r;
  r.x = x;
  r.ai = static_cast<double>(decay / x14 * su);
  r.aip = static_cast<double>(-decay * x14 * sv);
  r.abs_err_est = static_cast<double>(decay * (tail_u / x14 + tail_v * x14)) +
                  kEps * (std::fabs(r.ai) + std::fabs(r.aip));
  return r;
}

AiryEval negative_asymptotic(double x) {
  const auto& c = coefficients();
  const ld z = -static_cast<ld>(x);
  const ld zeta = 2.0L / 3.0L * z * std::sqrt(z);
  const ld z14 = std::sqrt(std::sqrt(z));
  const ld phase = zeta - kPi / 4;
  const ld cs = std::cos(phase);
  const ld sn = std::sin(phase);
  auto paired = [](std::size_t m) { return (m % 2 == 0) ? 1.0L : -1.0L; };
  ld t0 = 0, t1 = 0, t2 = 0, t3 = 0;
  const ld pu = asymptotic_sum(c.u, zeta, 0, 2, paired, t0);
  const ld qu = asymptotic_sum(c.u, zeta, 1, 2, paired, t1);
  const ld pv = asymptotic_sum(c.v, zeta, 0, 2, paired, t2);
  const ld qv = asymptotic_sum(c.v, zeta, 1, 2, paired, t3);
  AiryEval r;
  r.x = x;
  r.ai = static_cast<double>((cs * pu + sn * qu) / (kSqrtPi * z14));
  r.aip = static_cast<double>(z14 * (sn * pv - cs * qv) / kSqrtPi);
  // Truncation of the four sums plus the rounding of the phase argument.
  const ld phase_err = 4 * kEpsLd * zeta;
  r.abs_err_est = static_cast<double>((t0 + t1 + phase_err) / (kSqrtPi * z14) +
                                      z14 * (t2 + t3 + phase_err) / kSqrtPi) +
                  kEps * (std::fabs(r.ai) + std::fabs(r.aip));
  return r;
}

}  // namespace

AiryEval airy_eval(double x) {
  if (!(std::fabs(x) <= kAiryMaxArgument)) {
    throw RangeError("Airy argument " + std::to_string(x) + " outside [-500, 500]");
  }
  if (x > kAirySeriesCrossover) return positive_asymptotic(x);
  if (x < -kAirySeriesCrossover) return negative_asymptotic(x);
  if (std::fabs(x) > kTaylorInner) return taylor(x);
  return maclaurin(x);
}

double airy_ai(double x) { return airy_eval(x).ai; }

double airy_ai_prime(double x) { return airy_eval(x).aip; }

namespace {

constexpr double kKernelDiagonalBand = 1e-6;

// Expansion of the kernel about x in d = y - x, through second order.
double kernel_taylor(double x, double ai, double aip, double d) {
  const double k0 = aip * aip - x * ai * ai;
  const double k1 = -ai * ai / 2;
  const double k2 = -(ai * aip + x * x * ai * ai - x * aip * aip) / 6;
  return k0 + d * (k1 + d * k2);
}

}  // namespace

double airy_kernel(const AiryEval& at_x, const AiryEval& at_y) {
  const AiryEval& a = at_x.x <= at_y.x ? at_x : at_y;
  const AiryEval& b = at_x.x <= at_y.x ? at_y : at_x;
  const double d = b.x - a.x;
  if (d < kKernelDiagonalBand) return kernel_taylor(a.x, a.ai, a.aip, d);
  return (a.ai * b.aip - b.ai * a.aip) / (a.x - b.x);
}

double airy_kernel(double x, double y) { return airy_kernel(airy_eval(x), airy_eval(y)); }

double airy_zero_guess(std::size_t k, ZeroKind kind) {
  const double kk = static_cast<double>(k);
  if (kind == ZeroKind::Dirichlet) {
    const double t = 3 * M_PI * (4 * kk - 1) / 8;
    const double t2 = 1 / (t * t);
    double poly = 1 + t2 * (5.0 / 48 - t2 * 5.0 / 36);
    if (t > 5) poly += t2 * t2 * t2 * (77125.0 / 82944 - t2 * 108056875.0 / 6967296);
    return std::pow(t, 2.0 / 3.0) * poly;
  }
  const double t = 3 * M_PI * (4 * kk - 3) / 8;
  const double t2 = 1 / (t * t);
  double poly = 1 + t2 * (-7.0 / 48 + t2 * 35.0 / 288);
  if (t > 5) poly += t2 * t2 * t2 * (-181223.0 / 207360 + t2 * 18683371.0 / 1244160);
  return std::pow(t, 2.0 / 3.0) * poly;
}

namespace {

// Value of the function whose zero is sought, as a function of the magnitude a.
double zero_function(double a, ZeroKind kind) {
  const AiryEval e = airy_eval(-a);
  return kind == ZeroKind::Dirichlet ? e.ai : e.aip;
}

// Derivative with respect to a: d/da Ai(-a) = -Ai'(-a), d/da Ai'(-a) = a Ai(-a).
double zero_function_slope(double a, ZeroKind kind) {
  const AiryEval e = airy_eval(-a);
  return kind == ZeroKind::Dirichlet ? -e.aip : a * e.ai;
}

constexpr double kZeroResidual = 1e-10;

// Finds the first zero of `kind` strictly above `lo`, where `lo` is either 0
// or a zero of the other kind, so that interlacing leaves exactly one zero of
// `kind` before the next zero of the other kind.
double next_zero(double lo, double guess, ZeroKind kind) {
  const double f_lo = zero_function(lo, kind);
  const double spacing = 0.25 * M_PI / std::sqrt(std::max(lo, 1.0));

  // Within (lo, lo + 4 spacing) there is at most one zero of `kind`, so the
  // sign at the asymptotic guess tells which side of the zero it lies on.
  // Marching in steps below the gap lower bound cannot skip a zero.
  double a = lo;
  double b = -1.0;
  if (guess > lo && guess < lo + 4 * spacing) {
    if (zero_function(guess, kind) * f_lo < 0) {
      b = guess;
    } else {
      a = guess;
    }
  }
  if (b < 0) {
    int steps = 0;
    for (b = a + spacing; zero_function(b, kind) * f_lo > 0; b += spacing) {
      a = b;
      if (++steps > 1000 || b + spacing > kAiryMaxArgument) {
        throw RangeError("failed to bracket Airy zero above " + std::to_string(lo));
      }
    }
  }

  // Safeguarded Newton inside [a, b].
  double fa = zero_function(a, kind);
  double x = 0.5 * (a + b);
  for (int it = 0; it < 100; ++it) {
    const double fx = zero_function(x, kind);
    if (fx == 0.0) break;
    if ((fx < 0) == (fa < 0)) {
      a = x;
      fa = fx;
    } else {
      b = x;
    }
    const double slope = zero_function_slope(x, kind);
    double next = x - fx / slope;
    if (!(next > a && next < b)) next = 0.5 * (a + b);
    const double step = std::fabs(next - x);
    x = next;
    if (step < 4 * kEps * x || b - a < 4 * kEps * x) break;
  }
  const double residual = std::fabs(zero_function(x, kind));
  if (residual > kZeroResidual) {
    throw ConvergenceError("Airy zero near " + std::to_string(x) + " has residual " +
                           std::to_string(residual));
  }
  return x;
}

}  // namespace

void AiryZeroTable::extend_locked(std::size_t count) {
  while (neumann_.size() < count) {
    const std::size_t k = neumann_.size() + 1;
    const double below = dirichlet_.empty() ? 0.0 : dirichlet_.back();
    neumann_.push_back(next_zero(below, airy_zero_guess(k, ZeroKind::Neumann), ZeroKind::Neumann));
    dirichlet_.push_back(
        next_zero(neumann_.back(), airy_zero_guess(k, ZeroKind::Dirichlet), ZeroKind::Dirichlet));
  }
}

void AiryZeroTable::reserve(std::size_t count) {
  {
    std::shared_lock lock(mutex_);
    if (neumann_.size() >= count) return;
  }
  std::unique_lock lock(mutex_);
  extend_locked(count);
}

double AiryZeroTable::dirichlet(std::size_t k) {
  if (k == 0) throw PreconditionError("Airy zero index must be >= 1");
  reserve(k);
  std::shared_lock lock(mutex_);
  return dirichlet_[k - 1];
}

double AiryZeroTable::neumann(std::size_t k) {
  if (k == 0) throw PreconditionError("Airy zero index must be >= 1");
  reserve(k);
  std::shared_lock lock(mutex_);
  return neumann_[k - 1];
}

std::size_t AiryZeroTable::size() const {
  std::shared_lock lock(mutex_);
  return neumann_.size();
}

std::vector<double> AiryZeroTable::dirichlet_zeros() const {
  std::shared_lock lock(mutex_);
  return dirichlet_;
}

std::vector<double> AiryZeroTable::neumann_zeros() const {
  std::shared_lock lock(mutex_);
  return neumann_;
}

AiryZeroTable& AiryZeroTable::global() {
  static AiryZeroTable table;
  return table;
}

double airy_zero(std::size_t k, ZeroKind kind) {
  auto& table = AiryZeroTable::global();
  return kind == ZeroKind::Dirichlet ? table.dirichlet(k) : table.neumann(k);
}

}  // namespace obslab
