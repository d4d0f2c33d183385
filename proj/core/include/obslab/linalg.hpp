#pragma once

// Dense matrices, the cyclic Jacobi eigensolver, Toeplitz sections of a
// symbol and the exponential Vandermonde matrix used for time-shift arguments.

#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace obslab {

template <class T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, T fill = T{}) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<T>& data() const { return data_; }

  /// Rows and columns [first, first + count).
  DenseMatrix principal(std::size_t first, std::size_t count) const {
    DenseMatrix m(count, count);
    for (std::size_t i = 0; i < count; ++i)
      for (std::size_t j = 0; j < count; ++j) m(i, j) = (*this)(first + i, first + j);
    return m;
  }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using Matrix = DenseMatrix<double>;
using CMatrix = DenseMatrix<std::complex<double>>;

double frobenius_norm(const Matrix& m);
double frobenius_norm(const CMatrix& m);
/// max_{i != j} |m_ij|
double max_abs_offdiag(const Matrix& m);
/// max |m_ij - m_ji|
double asymmetry(const Matrix& m);
Matrix add(const Matrix& a, const Matrix& b);
Matrix subtract(const Matrix& a, const Matrix& b);
Matrix multiply(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);

struct SymSpectrum {
  std::vector<double> eigenvalues;  // ascending
  Matrix vectors;                   // column i pairs with eigenvalues[i]; empty unless requested
  double off_norm_residual = 0.0;   // off-diagonal Frobenius norm at exit
  int sweeps = 0;
};

/// Cyclic Jacobi rotations until the off-diagonal norm drops below
/// 1e-12 ||M||_F; at most 50 sweeps. Throws PreconditionError if M is not
/// symmetric to 1e-10 (relative to max(1, ||M||_F)) and ConvergenceError on
/// hitting the sweep cap.
SymSpectrum sym_eigs(const Matrix& m, bool with_vectors = false);

/// Ascending eigenvalues of a Hermitian matrix via the real symmetric
/// embedding [[Re, -Im], [Im, Re]], whose spectrum is that of M doubled.
std::vector<double> hermitian_eigs(const CMatrix& m);

/// Smallest eigenvalue of a symmetric matrix.
double min_eig(const Matrix& m);

// A real-valued 2pi-periodic symbol f on [-pi, pi).
struct Symbol {
  enum class Kind { PiecewiseConstant, Cosine, Callable };
  Kind kind = Kind::PiecewiseConstant;
  std::string name;
  // PiecewiseConstant: value[i] on [breaks[i], breaks[i+1]); breaks span [-pi, pi].
  std::vector<double> breaks;
  std::vector<double> values;
  // Cosine: f = c[0] + sum_k c[k] cos(k theta).
  std::vector<double> cosine;
  // Callable: f with smoothness breakpoints inside (-pi, pi).
  std::function<double(double)> fn;
  bool even = false;

  double operator()(double theta) const;
  /// a_k = (1/2pi) int f(t) e^{-ikt} dt. Exact for the first two kinds;
  /// Callable uses panel quadrature and throws ToleranceError when two
  /// resolutions disagree by more than 1e-12.
  std::complex<double> coefficient(long k) const;
  double ess_inf() const;
  double ess_sup() const;
  bool is_even() const;
};

Symbol constant_symbol(double c);
/// Indicator of (a, b) inside [-pi, pi).
Symbol indicator_symbol(double a, double b);
Symbol cosine_symbol(std::vector<double> coeffs);
Symbol callable_symbol(std::string name, std::function<double(double)> f, std::vector<double> breaks, bool even);

/// T_n(f) with (T_n)_{jk} = a_{j-k}.
CMatrix toeplitz_from_symbol(const Symbol& f, std::size_t n);

/// Real part of toeplitz_from_symbol; throws PreconditionError if the symbol
/// is not even (the section would not be real).
Matrix toeplitz_real(const Symbol& f, std::size_t n);

struct VandermondeReport {
  std::size_t m = 0;
  double T = 0.0;
  double tau = 0.0;
  double inverse_norm = 0.0;     // Frobenius norm of the inverse
  double det_abs = 0.0;          // |det| from elimination
  double det_product_abs = 0.0;  // prod_{j<k} |e^{-i lambda_k tau} - e^{-i lambda_j tau}|
  double det_rel_err = 0.0;
  double a2_fit = 0.0;           // (T/m) * inverse_norm^{1/m^2}
  double inverse_residual = 0.0; // max |A A^{-1} - I| in working precision
};

/// The m x m matrix (e^{-i lambda_j k tau}), tau = T / (10 m), inverted by
/// Gaussian elimination in 100-digit complex arithmetic. Requires
/// 1 <= m <= 12, T in (0, 1) and at least m ascending lambdas.
VandermondeReport vandermonde_inverse_norm(const std::vector<double>& lambdas, std::size_t m, double T);

}  // namespace obslab
