#pragma once

// Airy function Ai, its derivative, the Airy kernel and the negative zeros of
// Ai and Ai' on the real line.
//
// Evaluation uses the Maclaurin series (summed in extended precision) for
// |x| <= 8 and the large-argument expansions beyond: the exponential form for
// x > 8 and the modulus/phase form for x < -8. Both branches agree to about
// 1e-13 at the crossover.

#include <cstddef>
#include <shared_mutex>
#include <vector>

namespace obslab {

/// Largest |x| accepted by the Airy evaluators.
inline constexpr double kAiryMaxArgument = 500.0;

/// |x| at which evaluation switches from the series to asymptotic expansions.
inline constexpr double kAirySeriesCrossover = 8.0;

struct AiryEval {
  double x = 0.0;
  double ai = 0.0;
  double aip = 0.0;
  double abs_err_est = 0.0;  // bound on the absolute error of ai and aip
};

/// Ai(x) and Ai'(x) together. Throws RangeError for |x| > kAiryMaxArgument.
AiryEval airy_eval(double x);

double airy_ai(double x);
double airy_ai_prime(double x);

/// Airy kernel (Ai(x)Ai'(y) - Ai(y)Ai'(x)) / (x - y), continued to the
/// diagonal as Ai'(x)^2 - x Ai(x)^2. For |x - y| < 1e-6 a second-order Taylor
/// expansion in (y - x) replaces the quotient.
double airy_kernel(double x, double y);

/// Kernel from precomputed values; used when the caller already holds Ai and
/// Ai' at both points (e.g. at eigenvalues, where one factor is an exact zero).
double airy_kernel(const AiryEval& at_x, const AiryEval& at_y);

enum class ZeroKind {
  Dirichlet,  // Ai(-a) = 0
  Neumann,    // Ai'(-a) = 0
};

/// Magnitude of the k-th negative zero (k >= 1) of Ai (Dirichlet) or Ai'
/// (Neumann). Served from a process-wide append-only cache.
double airy_zero(std::size_t k, ZeroKind kind);

/// Append-only table of zero magnitudes. Reads are safe from many threads
/// while another thread extends the table.
class AiryZeroTable {
 public:
  /// Ensures at least `count` zeros of each kind are tabulated.
  void reserve(std::size_t count);

  double dirichlet(std::size_t k);
  double neumann(std::size_t k);

  std::size_t size() const;

  /// Copies of the current tables, ascending.
  std::vector<double> dirichlet_zeros() const;
  std::vector<double> neumann_zeros() const;

  static AiryZeroTable& global();

 private:
  void extend_locked(std::size_t count);

  mutable std::shared_mutex mutex_;
  std::vector<double> dirichlet_;
  std::vector<double> neumann_;
};

/// Leading terms of the standard large-k expansions, used as initial guesses.
double airy_zero_guess(std::size_t k, ZeroKind kind);

}  // namespace obslab
