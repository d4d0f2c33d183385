#include "obslab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/tools/minima.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include "obslab/error.hpp"
#include "obslab/quadrature.hpp"

namespace obslab {

double frobenius_norm(const Matrix& m) {
  double s = 0.0;
  for (double v : m.data()) s += v * v;
  return std::sqrt(s);
}

double frobenius_norm(const CMatrix& m) {
  double s = 0.0;
  for (const auto& v : m.data()) s += std::norm(v);
  return std::sqrt(s);
}

double max_abs_offdiag(const Matrix& m) {
  double best = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (i != j) best = std::max(best, std::fabs(m(i, j)));
  return best;
}

double asymmetry(const Matrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  double best = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j) best = std::max(best, std::fabs(m(i, j) - m(j, i)));
  return best;
}

Matrix add(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw PreconditionError("add: shape mismatch");
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

Matrix subtract(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw PreconditionError("subtract: shape mismatch");
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw PreconditionError("multiply: shape mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

namespace {

double off_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j) s += 2.0 * a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace

SymSpectrum sym_eigs(const Matrix& m, bool with_vectors) {
  if (m.rows() != m.cols()) throw PreconditionError("sym_eigs: matrix is not square");
  const std::size_t n = m.rows();
  const double fro = frobenius_norm(m);
  if (!std::isfinite(fro)) throw PreconditionError("sym_eigs: non-finite entries");
  if (asymmetry(m) > 1e-10 * std::max(1.0, fro)) throw PreconditionError("sym_eigs: matrix is not symmetric");

  Matrix a = m;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) a(i, j) = a(j, i) = 0.5 * (m(i, j) + m(j, i));
  Matrix v = with_vectors ? Matrix::identity(n) : Matrix();

  constexpr int kMaxSweeps = 50;
  const double target = 1e-12 * fro;
  SymSpectrum out;
  double off = off_norm(a);
  while (off > target) {
    if (out.sweeps == kMaxSweeps) throw ConvergenceError("sym_eigs: no convergence after 50 sweeps");
    ++out.sweeps;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        if (out.sweeps > 4 && std::fabs(apq) < 1e-18 * (std::fabs(app) + std::fabs(aqq))) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        const double theta = (aqq - app) / (2.0 * apq);
        double t = 1.0 / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double g = a(r, p);
          const double h = a(r, q);
          const double np = g - s * (h + g * tau);
          const double nq = h + s * (g - h * tau);
          a(r, p) = a(p, r) = np;
          a(r, q) = a(q, r) = nq;
        }
        if (with_vectors) {
          for (std::size_t r = 0; r < n; ++r) {
            const double g = v(r, p);
            const double h = v(r, q);
            v(r, p) = g - s * (h + g * tau);
            v(r, q) = h + s * (g - h * tau);
          }
        }
      }
    }
    off = off_norm(a);
  }
  out.off_norm_residual = off;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });
  out.eigenvalues.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.eigenvalues[i] = a(order[i], order[i]);
  if (with_vectors) {
    out.vectors = Matrix(n, n);
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t r = 0; r < n; ++r) out.vectors(r, c) = v(r, order[c]);
  }
  return out;
}

std::vector<double> hermitian_eigs(const CMatrix& m) {
  if (m.rows() != m.cols()) throw PreconditionError("hermitian_eigs: matrix is not square");
  const std::size_t n = m.rows();
  Matrix e(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double re = m(i, j).real();
      const double im = m(i, j).imag();
      e(i, j) = re;
      e(n + i, n + j) = re;
      e(i, n + j) = -im;
      e(n + i, j) = im;
    }
  }
  const SymSpectrum s = sym_eigs(e);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = 0.5 * (s.eigenvalues[2 * i] + s.eigenvalues[2 * i + 1]);
  return out;
}

double min_eig(const Matrix& m) {
  const SymSpectrum s = sym_eigs(m);
  return s.eigenvalues.empty() ? 0.0 : s.eigenvalues.front();
}

// Symbols.

double Symbol::operator()(double theta) const {
  const double t = std::remainder(theta, 2.0 * M_PI);
  switch (kind) {
    case Kind::PiecewiseConstant: {
      for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
        if (t >= breaks[i] && t < breaks[i + 1]) return values[i];
      return values.back();
    }
    case Kind::Cosine: {
      double s = 0.0;
      for (std::size_t k = 0; k < cosine.size(); ++k) s += cosine[k] * std::cos(static_cast<double>(k) * t);
      return s;
    }
    case Kind::Callable:
      return fn(t);
  }
  return 0.0;
}

namespace {

std::complex<double> callable_coefficient(const Symbol& f, long k, double max_panel) {
  std::vector<double> cuts = {-M_PI};
  for (double b : f.breaks)
    if (b > -M_PI && b < M_PI) cuts.push_back(b);
  cuts.push_back(M_PI);
  std::sort(cuts.begin(), cuts.end());
  std::complex<double> s = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const NodeSet nodes = uniform_nodes(cuts[i], cuts[i + 1], max_panel);
    for (std::size_t q = 0; q < nodes.size(); ++q) {
      const double t = nodes.x[q];
      s += nodes.w[q] * f.fn(t) * std::polar(1.0, -static_cast<double>(k) * t);
    }
  }
  return s / (2.0 * M_PI);
}

double refine_extremum(const Symbol& f, bool maximize) {
  constexpr int kGrid = 4096;
  auto g = [&](double t) { return maximize ? -f(t) : f(t); };
  double best = g(-M_PI);
  double best_t = -M_PI;
  for (int i = 1; i <= kGrid; ++i) {
    const double t = -M_PI + 2.0 * M_PI * i / kGrid;
    const double v = g(t);
    if (v < best) {
      best = v;
      best_t = t;
    }
  }
  const double h = 2.0 * M_PI / kGrid;
  const auto r = boost::math::tools::brent_find_minima(g, best_t - h, best_t + h, 52);
  best = std::min(best, r.second);
  return maximize ? -best : best;
}

}  // namespace

std::complex<double> Symbol::coefficient(long k) const {
  switch (kind) {
    case Kind::PiecewiseConstant: {
      if (k == 0) {
        double s = 0.0;
        for (std::size_t i = 0; i + 1 < breaks.size(); ++i) s += values[i] * (breaks[i + 1] - breaks[i]);
        return s / (2.0 * M_PI);
      }
      // Summation by parts: only the jumps of f contribute, e^{+-ik pi} = (-1)^k at the ends.
      const double kd = static_cast<double>(k);
      const double ends = (k % 2 == 0 ? 1.0 : -1.0) * (values.back() - values.front());
      std::complex<double> s = ends;
      for (std::size_t m = 1; m + 1 < breaks.size(); ++m) {
        const double jump = values[m - 1] - values[m];
        if (jump != 0.0) s += jump * std::polar(1.0, -kd * breaks[m]);
      }
      return s / std::complex<double>(0.0, -2.0 * M_PI * kd);
    }
    case Kind::Cosine: {
      const auto idx = static_cast<std::size_t>(std::labs(k));
      if (idx >= cosine.size()) return 0.0;
      return idx == 0 ? cosine[0] : 0.5 * cosine[idx];
    }
    case Kind::Callable: {
      const double panel = std::min(0.25, M_PI / (4.0 * (std::labs(k) + 1)));
      const auto coarse = callable_coefficient(*this, k, panel);
      const auto fine = callable_coefficient(*this, k, panel / 2);
      const double err = std::abs(fine - coarse);
      if (err > 1e-12) throw ToleranceError("symbol coefficient quadrature for " + name, err);
      return fine;
    }
  }
  return 0.0;
}

double Symbol::ess_inf() const {
  if (kind == Kind::PiecewiseConstant) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
      if (breaks[i + 1] > breaks[i]) m = std::min(m, values[i]);
    return m;
  }
  return refine_extremum(*this, false);
}

double Symbol::ess_sup() const {
  if (kind == Kind::PiecewiseConstant) {
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
      if (breaks[i + 1] > breaks[i]) m = std::max(m, values[i]);
    return m;
  }
  return refine_extremum(*this, true);
}

bool Symbol::is_even() const { return even || kind == Kind::Cosine; }

Symbol constant_symbol(double c) {
  Symbol s;
  s.kind = Symbol::Kind::PiecewiseConstant;
  s.name = "constant";
  s.breaks = {-M_PI, M_PI};
  s.values = {c};
  s.even = true;
  return s;
}

Symbol indicator_symbol(double a, double b) {
  if (!(a >= -M_PI && b <= M_PI && a < b)) throw PreconditionError("indicator_symbol needs -pi <= a < b <= pi");
  Symbol s;
  s.kind = Symbol::Kind::PiecewiseConstant;
  s.name = "indicator";
  s.breaks = {-M_PI, a, b, M_PI};
  s.values = {0.0, 1.0, 0.0};
  s.even = (a == -b);
  return s;
}

Symbol cosine_symbol(std::vector<double> coeffs) {
  if (coeffs.empty()) throw PreconditionError("cosine_symbol needs at least one coefficient");
  Symbol s;
  s.kind = Symbol::Kind::Cosine;
  s.name = "cosine";
  s.cosine = std::move(coeffs);
  s.even = true;
  return s;
}

Symbol callable_symbol(std::string name, std::function<double(double)> f, std::vector<double> breaks, bool even) {
  Symbol s;
  s.kind = Symbol::Kind::Callable;
  s.name = std::move(name);
  s.fn = std::move(f);
  s.breaks = std::move(breaks);
  s.even = even;
  return s;
}

CMatrix toeplitz_from_symbol(const Symbol& f, std::size_t n) {
  std::vector<std::complex<double>> coeff(2 * n + 1);
  const long nn = static_cast<long>(n);
  for (long k = -nn; k <= nn; ++k) coeff[static_cast<std::size_t>(k + nn)] = f.coefficient(k);
  CMatrix t(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      t(j, k) = coeff[static_cast<std::size_t>(static_cast<long>(j) - static_cast<long>(k) + nn)];
  return t;
}

Matrix toeplitz_real(const Symbol& f, std::size_t n) {
  if (!f.is_even()) throw PreconditionError("toeplitz_real needs an even symbol");
  const CMatrix c = toeplitz_from_symbol(f, n);
  Matrix r(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) r(j, k) = c(j, k).real();
  return r;
}

// Vandermonde.

VandermondeReport vandermonde_inverse_norm(const std::vector<double>& lambdas, std::size_t m, double T) {
  using boost::multiprecision::cpp_complex_100;
  using Real = boost::multiprecision::cpp_bin_float_100;
  if (m < 1 || m > 12) throw PreconditionError("vandermonde_inverse_norm needs 1 <= m <= 12");
  if (!(T > 0 && T < 1)) throw PreconditionError("vandermonde_inverse_norm needs T in (0, 1)");
  if (lambdas.size() < m) throw PreconditionError("vandermonde_inverse_norm needs m frequencies");
  for (std::size_t j = 1; j < m; ++j)
    if (!(lambdas[j] > lambdas[j - 1])) throw PreconditionError("frequencies must be strictly ascending");

  VandermondeReport rep;
  rep.m = m;
  rep.T = T;
  rep.tau = T / (10.0 * static_cast<double>(m));
  const Real tau = Real(T) / (10 * static_cast<int>(m));

  std::vector<cpp_complex_100> a(m * m), inv(m * m);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = 0; k < m; ++k) {
      const Real phase = -Real(lambdas[j]) * static_cast<int>(k + 1) * tau;
      a[j * m + k] = cpp_complex_100(cos(phase), sin(phase));
      inv[j * m + k] = (j == k) ? cpp_complex_100(1) : cpp_complex_100(0);
    }
  }
  const std::vector<cpp_complex_100> original = a;

  // Gauss-Jordan with partial pivoting.
  cpp_complex_100 det = 1;
  for (std::size_t c = 0; c < m; ++c) {
    std::size_t piv = c;
    Real best = abs(a[c * m + c]);
    for (std::size_t r = c + 1; r < m; ++r) {
      const Real v = abs(a[r * m + c]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best < Real("1e-90")) throw PreconditionError("Vandermonde matrix singular to working precision");
    if (piv != c) {
      for (std::size_t k = 0; k < m; ++k) {
        std::swap(a[c * m + k], a[piv * m + k]);
        std::swap(inv[c * m + k], inv[piv * m + k]);
      }
      det = -det;
    }
    const cpp_complex_100 d = a[c * m + c];
    det *= d;
    for (std::size_t k = 0; k < m; ++k) {
      a[c * m + k] /= d;
      inv[c * m + k] /= d;
    }
    for (std::size_t r = 0; r < m; ++r) {
      if (r == c) continue;
      const cpp_complex_100 f = a[r * m + c];
      if (f == cpp_complex_100(0)) continue;
      for (std::size_t k = 0; k < m; ++k) {
        a[r * m + k] -= f * a[c * m + k];
        inv[r * m + k] -= f * inv[c * m + k];
      }
    }
  }

  Real fro2 = 0;
  for (const auto& v : inv) fro2 += norm(v);
  rep.inverse_norm = static_cast<double>(sqrt(fro2));
  rep.det_abs = static_cast<double>(abs(det));

  double prod = 1.0;
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = j + 1; k < m; ++k) prod *= 2.0 * std::fabs(std::sin(0.5 * (lambdas[k] - lambdas[j]) * rep.tau));
  rep.det_product_abs = prod;
  rep.det_rel_err = std::fabs(rep.det_abs - prod) / prod;

  double resid = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      cpp_complex_100 s = 0;
      for (std::size_t k = 0; k < m; ++k) s += original[i * m + k] * inv[k * m + j];
      if (i == j) s -= 1;
      resid = std::max(resid, static_cast<double>(abs(s)));
    }
  }
  rep.inverse_residual = resid;
  const double md = static_cast<double>(m);
  rep.a2_fit = (T / md) * std::pow(rep.inverse_norm, 1.0 / (md * md));
  return rep;
}

}  // namespace obslab
