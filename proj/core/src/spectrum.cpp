#include "obslab/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <shared_mutex>
#include <string>

#include "obslab/error.hpp"

namespace obslab {

ZeroKind zero_kind_of(std::size_t k) { return (k % 2 == 1) ? ZeroKind::Neumann : ZeroKind::Dirichlet; }

Parity parity_of(std::size_t k) { return (k % 2 == 1) ? Parity::Even : Parity::Odd; }

namespace {

Eigenpair build_eigenpair(std::size_t k) {
  Eigenpair e;
  e.k = k;
  e.zero_kind = zero_kind_of(k);
  e.parity = parity_of(k);
  const std::size_t zero_index = (k + 1) / 2;
  e.lambda = airy_zero(zero_index, e.zero_kind);
  const AiryEval at = airy_eval(-e.lambda);
  if (e.zero_kind == ZeroKind::Neumann) {
    e.ai_at_zero = at.ai;
    e.aip_at_zero = 0.0;
  } else {
    e.ai_at_zero = 0.0;
    e.aip_at_zero = at.aip;
  }
  const double integral = e.lambda * e.ai_at_zero * e.ai_at_zero + e.aip_at_zero * e.aip_at_zero;
  e.norm_const = 1.0 / std::sqrt(2.0 * integral);
  return e;
}

class SpectrumCache {
 public:
  Eigenpair get(std::size_t k) {
    if (k == 0) throw PreconditionError("eigen-index must be >= 1");
    {
      std::shared_lock lock(mutex_);
      if (k <= pairs_.size()) return pairs_[k - 1];
    }
    reserve(k);
    std::shared_lock lock(mutex_);
    return pairs_[k - 1];
  }

  void reserve(std::size_t k_max) {
    {
      std::shared_lock lock(mutex_);
      if (k_max <= pairs_.size()) return;
    }
    AiryZeroTable::global().reserve((k_max + 1) / 2 + 1);
    std::unique_lock lock(mutex_);
    while (pairs_.size() < k_max) pairs_.push_back(build_eigenpair(pairs_.size() + 1));
  }

  static SpectrumCache& global() {
    static SpectrumCache cache;
    return cache;
  }

 private:
  std::shared_mutex mutex_;
  std::vector<Eigenpair> pairs_;
};

}  // namespace

void reserve_spectrum(std::size_t k_max) { SpectrumCache::global().reserve(k_max); }

Eigenpair eigenpair(std::size_t k) { return SpectrumCache::global().get(k); }

double eigenvalue(std::size_t k) { return eigenpair(k).lambda; }

double normalization(std::size_t k) { return eigenpair(k).norm_const; }

double eigenfunction_eval(const Eigenpair& e, double x) {
  if (x == 0.0 && e.parity == Parity::Odd) return 0.0;
  const double v = e.norm_const * airy_ai(std::fabs(x) - e.lambda);
  if (x < 0 && e.parity == Parity::Odd) return -v;
  return v;
}

double eigenfunction_eval(std::size_t k, double x) { return eigenfunction_eval(eigenpair(k), x); }

double weyl_asymptotic(std::size_t k) { return std::pow(3.0 * M_PI * static_cast<double>(k) / 4.0, 2.0 / 3.0); }

std::size_t count_below(double bound) {
  std::size_t k = 0;
  while (eigenvalue(k + 1) < bound) ++k;
  return k;
}

std::size_t index_nearest(double target) {
  const std::size_t below = count_below(target);
  if (below == 0) return 1;
  const double lo = eigenvalue(below);
  const double hi = eigenvalue(below + 1);
  return (target - lo <= hi - target) ? below : below + 1;
}

double cluster_width(double lambda_n, double alpha, double epsilon) {
  if (alpha < 0.5) throw PreconditionError("cluster alpha must be >= 1/2");
  if (!(epsilon > 0)) throw PreconditionError("cluster epsilon must be > 0");
  if (alpha < 1.0) return epsilon * std::pow(lambda_n, alpha - 0.5);
  if (alpha == 1.0) return epsilon * std::sqrt(lambda_n) / std::log(lambda_n);
  return epsilon * std::sqrt(lambda_n);
}

ClusterSpec cluster(std::size_t n, double alpha, double epsilon) {
  if (n == 0) throw PreconditionError("cluster centre index must be >= 1");
  ClusterSpec c;
  c.center = n;
  c.alpha = alpha;
  c.epsilon = epsilon;
  const double lambda_n = eigenvalue(n);
  c.width = cluster_width(lambda_n, alpha, epsilon);
  std::size_t lo = n;
  while (lo > 1 && lambda_n - eigenvalue(lo - 1) < c.width) --lo;
  std::size_t hi = n;
  while (eigenvalue(hi + 1) - lambda_n < c.width) ++hi;
  c.first = lo;
  c.count = hi - lo + 1;
  return c;
}

std::vector<std::size_t> ClusterSpec::indices() const {
  std::vector<std::size_t> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = first + i;
  return out;
}

ClusterSpec ClusterSpec::parity_aligned() const {
  ClusterSpec c = *this;
  if (offset() % 2 == 1 && count > 1) {
    c.first += 1;
    c.count -= 1;
  }
  return c;
}

double ClusterSpec::cardinality_ratio() const {
  const double lambda_n = eigenvalue(center);
  double scale;
  if (alpha < 1.0) {
    scale = epsilon * std::pow(lambda_n, alpha);
  } else if (alpha == 1.0) {
    scale = epsilon * lambda_n / std::log(lambda_n);
  } else {
    scale = epsilon * lambda_n;
  }
  return static_cast<double>(count) / scale;
}

}  // namespace obslab
