#include "obslab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <lapacke.h>

#include "obslab/error.hpp"
#include "obslab/gram.hpp"
#include "obslab/parallel.hpp"
#include "obslab/rates.hpp"
#include "obslab/spectrum.hpp"

namespace obslab {

FDOperator fd_build_interval(double a, double b, std::size_t intervals, const std::function<double(double)>& potential) {
  if (intervals < 2 || !(b > a)) throw PreconditionError("fd grid needs b > a and at least two panels");
  FDOperator op;
  op.a = a;
  op.b = b;
  op.h = (b - a) / static_cast<double>(intervals);
  const std::size_t n = intervals - 1;
  const double inv_h2 = 1.0 / (op.h * op.h);
  op.x.resize(n);
  op.diag.resize(n);
  op.off.assign(n - 1, -inv_h2);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i + 1);
    op.x[i] = 0.5 * (a + b) + (t - 0.5 * static_cast<double>(intervals)) * op.h;
    op.diag[i] = 2.0 * inv_h2 + (potential ? potential(op.x[i]) : 0.0);
  }
  return op;
}

FDOperator fd_build(double L, double h, const std::function<double(double)>& V) {
  if (!(L >= 30)) throw PreconditionError("fd_build needs L >= 30");
  if (!(h > 0 && h <= 0.05)) throw PreconditionError("fd_build needs 0 < h <= 0.05");
  const double ratio = 2.0 * L / h;
  const auto intervals = static_cast<std::size_t>(std::llround(ratio));
  if (std::fabs(ratio - static_cast<double>(intervals)) > 1e-9 * ratio || intervals % 2 != 0) {
    throw PreconditionError("fd_build needs 2L/h to be an even integer");
  }
  if (intervals - 1 > kMaxGridSize) throw PreconditionError("fd_build: grid exceeds 1e6 nodes");
  return fd_build_interval(-L, L, intervals, [&](double x) { return std::fabs(x) + (V ? V(x) : 0.0); });
}

FDSpectrum fd_eigs(const FDOperator& op, std::size_t m, bool with_vectors) {
  const std::size_t n = op.size();
  if (m < 1 || m > 200 || m > n) throw PreconditionError("fd_eigs needs 1 <= m <= 200");
  std::vector<double> w(n);
  std::vector<lapack_int> iblock(n), isplit(n);
  lapack_int found = 0, nsplit = 0;
  const double abstol = 2.0 * LAPACKE_dlamch('S');
  lapack_int info = LAPACKE_dstebz('I', 'B', static_cast<lapack_int>(n), 0.0, 0.0, 1, static_cast<lapack_int>(m), abstol,
                                   op.diag.data(), op.off.data(), &found, &nsplit, w.data(), iblock.data(), isplit.data());
  if (info != 0 || found != static_cast<lapack_int>(m)) throw ConvergenceError("fd_eigs: bisection failed");
  FDSpectrum out;
  out.eigenvalues.assign(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(m));
  if (with_vectors) {
    std::vector<double> z(n * m);
    std::vector<lapack_int> ifail(m);
    info = LAPACKE_dstein(LAPACK_COL_MAJOR, static_cast<lapack_int>(n), op.diag.data(), op.off.data(),
                          static_cast<lapack_int>(m), w.data(), iblock.data(), isplit.data(), z.data(),
                          static_cast<lapack_int>(n), ifail.data());
    if (info != 0) throw ConvergenceError("fd_eigs: inverse iteration failed");
    out.vectors = Matrix(n, m);
    const double scale = 1.0 / std::sqrt(op.h);
    for (std::size_t c = 0; c < m; ++c) {
      // Sign convention: positive where the vector is largest on the right half.
      std::size_t arg = 0;
      double best = -1.0;
      for (std::size_t r = n / 2; r < n; ++r) {
        if (std::fabs(z[c * n + r]) > best) {
          best = std::fabs(z[c * n + r]);
          arg = r;
        }
      }
      const double sign = z[c * n + arg] < 0 ? -1.0 : 1.0;
      for (std::size_t r = 0; r < n; ++r) out.vectors(r, c) = sign * scale * z[c * n + r];
    }
  }
  return out;
}

namespace {

// Upper band storage (kd = 2, column major) of u2 (H - lambda)^2 + diag(indicator).
std::vector<double> resolvent_band(const FDOperator& op, const std::vector<double>& indicator, double lambda, double u2) {
  const std::size_t n = op.size();
  constexpr std::size_t kd = 2, ldab = 3;
  std::vector<double> ab(ldab * n, 0.0);
  auto d = [&](std::size_t i) { return op.diag[i] - lambda; };
  for (std::size_t j = 0; j < n; ++j) {
    double s = d(j) * d(j);
    if (j > 0) s += op.off[j - 1] * op.off[j - 1];
    if (j + 1 < n) s += op.off[j] * op.off[j];
    ab[kd + j * ldab] = u2 * s + indicator[j];
    if (j >= 1) ab[(kd - 1) + j * ldab] = u2 * op.off[j - 1] * (d(j - 1) + d(j));
    if (j >= 2) ab[(kd - 2) + j * ldab] = u2 * op.off[j - 2] * op.off[j - 1];
  }
  return ab;
}

bool positive_definite_shifted(const std::vector<double>& band, std::size_t n, double shift) {
  std::vector<double> ab = band;
  for (std::size_t j = 0; j < n; ++j) ab[2 + j * 3] -= shift;
  return LAPACKE_dpbtrf(LAPACK_COL_MAJOR, 'U', static_cast<lapack_int>(n), 2, ab.data(), 3) == 0;
}

std::vector<double> grid_indicator(const FDOperator& op, const IntervalUnion& e) {
  std::vector<double> indicator(op.size());
  for (std::size_t i = 0; i < op.size(); ++i) indicator[i] = e.contains(op.x[i]) ? 1.0 : 0.0;
  return indicator;
}

}  // namespace

std::vector<ResolventRow> resolvent_check(const FDOperator& op, const IntervalUnion& e, const std::vector<double>& lambdas,
                                          double alpha) {
  const std::size_t n = op.size();
  const std::vector<double> indicator = grid_indicator(op, e);
  std::vector<ResolventRow> rows(lambdas.size());
  parallel_for(lambdas.size(), [&](std::size_t li) {
    const double lambda = lambdas[li];
    const double u = upsilon2(lambda, alpha);
    const std::vector<double> band = resolvent_band(op, indicator, lambda, u * u);
    // The matrix is positive semi-definite and its smallest diagonal entry bounds
    // the smallest eigenvalue from above.
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) hi = std::min(hi, band[2 + j * 3]);
    while (hi - lo > 1e-12 * std::max(1.0, hi)) {
      const double mid = 0.5 * (lo + hi);
      if (positive_definite_shifted(band, n, mid)) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    rows[li] = {lambda, u, lo};
  });
  return rows;
}

double resolvent_min_eig_dense_check(const FDOperator& op, const IntervalUnion& e, double lambda, double alpha) {
  const std::size_t n = op.size();
  const double u = upsilon2(lambda, alpha);
  std::vector<double> ab = resolvent_band(op, grid_indicator(op, e), lambda, u * u);
  lapack_int found = 0;
  double w[1];
  std::vector<lapack_int> ifail(n);
  double q[1];
  const lapack_int info = LAPACKE_dsbevx(LAPACK_COL_MAJOR, 'N', 'I', 'U', static_cast<lapack_int>(n), 2, ab.data(), 3, q, 1,
                                         0.0, 0.0, 1, 1, 2.0 * LAPACKE_dlamch('S'), &found, w, nullptr, 1, ifail.data());
  if (info != 0 || found != 1) throw ConvergenceError("banded eigensolver failed");
  return w[0];
}

namespace {

std::vector<double> richardson(const std::vector<double>& coarse, const std::vector<double>& fine) {
  std::vector<double> r(coarse.size());
  for (std::size_t i = 0; i < coarse.size(); ++i) r[i] = (4.0 * fine[i] - coarse[i]) / 3.0;
  return r;
}

// Half-line Gram block from FD vectors: trapezoid weights, half weight at x = 0.
Matrix fd_halfline_block(const FDOperator& op, const FDSpectrum& s, const std::vector<std::size_t>& cols) {
  const std::size_t m = cols.size();
  Matrix g(m, m);
  for (std::size_t i = 0; i < op.size(); ++i) {
    if (op.x[i] < -0.5 * op.h) continue;
    const double w = std::fabs(op.x[i]) < 0.5 * op.h ? 0.5 * op.h : op.h;
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) g(a, b) += w * s.vectors(i, cols[a]) * s.vectors(i, cols[b]);
  }
  return g;
}

}  // namespace

CrossValidation cross_validate(std::size_t k_max, double L, double h) {
  if (k_max < 1 || k_max > 100) throw PreconditionError("cross_validate needs 1 <= k_max <= 100");
  CrossValidation cv;
  cv.k_max = k_max;
  cv.L = L;
  cv.h = h;
  reserve_spectrum(k_max + 1);

  // Six consecutive indices starting at an odd index, inside the validated range.
  const std::size_t top = std::min<std::size_t>(k_max, 26);
  const std::size_t g_first = top > 6 ? ((top - 6) | 1) : 1;
  for (std::size_t i = 0; i < 6 && g_first + i <= k_max; ++i) cv.gram_indices.push_back(g_first + i);
  const std::size_t m_vec = cv.gram_indices.empty() ? 2 : std::max<std::size_t>(2, cv.gram_indices.back());

  std::vector<FDOperator> ops(3);
  std::vector<FDSpectrum> specs(3);
  parallel_for(3, [&](std::size_t g) {
    const double hg = h / static_cast<double>(1u << g);
    ops[g] = fd_build(L, hg);
    specs[g] = fd_eigs(ops[g], std::max(k_max, m_vec), g < 2);
  });

  const std::vector<double> r1 = richardson(specs[0].eigenvalues, specs[1].eigenvalues);
  const std::vector<double> r2 = richardson(specs[1].eigenvalues, specs[2].eigenvalues);
  cv.rel_errors.resize(k_max);
  for (std::size_t k = 1; k <= k_max; ++k) {
    const double exact = eigenvalue(k);
    cv.rel_errors[k - 1] = std::fabs(r1[k - 1] - exact) / exact;
    cv.max_rel_eig_err = std::max(cv.max_rel_eig_err, cv.rel_errors[k - 1]);
    cv.richardson_stability = std::max(cv.richardson_stability, std::fabs(r1[k - 1] - r2[k - 1]));
  }

  // Parity of the first two vectors on the finer grid.
  {
    const FDOperator& op = ops[1];
    const std::size_t n = op.size();
    double even_defect = 0.0, odd_defect = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t r = n - 1 - i;
      even_defect = std::max(even_defect, std::fabs(specs[1].vectors(i, 0) - specs[1].vectors(r, 0)));
      odd_defect = std::max(odd_defect, std::fabs(specs[1].vectors(i, 1) + specs[1].vectors(r, 1)));
      scale = std::max(scale, std::fabs(specs[1].vectors(i, 0)));
    }
    cv.parity_even_then_odd = even_defect < 1e-6 * scale && odd_defect < 1e-6 * scale;
  }

  if (!cv.gram_indices.empty()) {
    std::vector<std::size_t> cols;
    for (std::size_t k : cv.gram_indices) cols.push_back(k - 1);
    const Matrix g0 = fd_halfline_block(ops[0], specs[0], cols);
    const Matrix g1 = fd_halfline_block(ops[1], specs[1], cols);
    for (std::size_t a = 0; a < cols.size(); ++a) {
      for (std::size_t b = 0; b < cols.size(); ++b) {
        const double extrapolated = (4.0 * g1(a, b) - g0(a, b)) / 3.0;
        const double exact = halfline_entry(cv.gram_indices[a], cv.gram_indices[b]);
        cv.max_gram_err = std::max(cv.max_gram_err, std::fabs(extrapolated - exact));
      }
    }
  }
  return cv;
}

nlohmann::json to_json(const CrossValidation& c) {
  return {{"k_max", c.k_max},
          {"L", c.L},
          {"h", c.h},
          {"max_rel_eig_err", c.max_rel_eig_err},
          {"richardson_stability", c.richardson_stability},
          {"max_gram_err", c.max_gram_err},
          {"gram_indices", c.gram_indices},
          {"parity_even_then_odd", c.parity_even_then_odd},
          {"rel_errors", c.rel_errors}};
}

nlohmann::json to_json(const std::vector<ResolventRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) out.push_back({{"lambda", r.lambda}, {"upsilon2", r.upsilon2}, {"mu_min", r.mu_min}});
  return out;
}

}  // namespace obslab
