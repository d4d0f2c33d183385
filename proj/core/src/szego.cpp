#include "obslab/szego.hpp"

#include <algorithm>
#include <cmath>

#include "obslab/error.hpp"
#include "obslab/gram.hpp"
#include "obslab/parallel.hpp"
#include "obslab/spectrum.hpp"

namespace obslab {

bool SzegoTrace::bracketed(double slack) const {
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (min_eigs[i] < m_f - slack || max_eigs[i] > M_f + slack || min_eigs[i] > max_eigs[i] + slack) return false;
  }
  return true;
}

bool SzegoTrace::monotone(double slack) const {
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    if (min_eigs[i] > min_eigs[i - 1] + slack || max_eigs[i] < max_eigs[i - 1] - slack) return false;
  }
  return true;
}

SzegoTrace szego_trace(const Symbol& f, const std::vector<std::size_t>& sizes) {
  if (!std::is_sorted(sizes.begin(), sizes.end())) throw PreconditionError("szego_trace needs ascending sizes");
  SzegoTrace t;
  t.symbol = f.name;
  t.sizes = sizes;
  t.m_f = f.ess_inf();
  t.M_f = f.ess_sup();
  t.min_eigs.resize(sizes.size());
  t.max_eigs.resize(sizes.size());
  parallel_for(sizes.size(), [&](std::size_t i) {
    if (sizes[i] == 0) throw PreconditionError("szego_trace needs positive sizes");
    std::vector<double> ev;
    if (f.is_even()) {
      ev = sym_eigs(toeplitz_real(f, sizes[i])).eigenvalues;
    } else {
      ev = hermitian_eigs(toeplitz_from_symbol(f, sizes[i]));
    }
    t.min_eigs[i] = ev.front();
    t.max_eigs[i] = ev.back();
  });
  if (!sizes.empty()) {
    t.min_gap = std::fabs(t.min_eigs.back() - t.m_f);
    t.max_gap = std::fabs(t.max_eigs.back() - t.M_f);
  }
  return t;
}

Matrix halfline_toeplitz(std::size_t k) {
  if (k < 2) throw PreconditionError("halfline_toeplitz needs K >= 2");
  Matrix t(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const long d = static_cast<long>(i) - static_cast<long>(j);
      if (d == 0) {
        t(i, j) = 0.5;
      } else if (d % 2 == 0) {
        t(i, j) = 0.0;
      } else {
        // sin(d pi/2) is +1 for d = 1 mod 4 and -1 for d = 3 mod 4.
        const double s = (((d % 4) + 4) % 4 == 1) ? 1.0 : -1.0;
        t(i, j) = s / (M_PI * static_cast<double>(d));
      }
    }
  }
  return t;
}

std::vector<CounterexampleRow> counterexample_report(const std::vector<std::size_t>& n_list, double epsilon) {
  std::vector<CounterexampleRow> rows(n_list.size());
  const SetSpec half{HalfLine{true}, false};
  parallel_for(n_list.size(), [&](std::size_t i) {
    GramOptions opts;
    opts.parity_align = true;
    const GramMatrix a = cluster_gram(half, n_list[i], 0.5, epsilon, opts);
    if (a.size() < 2) throw PreconditionError("counterexample cluster at n = " + std::to_string(n_list[i]) + " has one index");
    const Matrix t = halfline_toeplitz(a.size());
    const Matrix r = subtract(a.entries, t);
    CounterexampleRow& row = rows[i];
    row.n = n_list[i];
    row.lambda_n = eigenvalue(row.n);
    row.first = a.cluster.first;
    row.k_n = a.size();
    row.lambda1_a = min_eig(a.entries);
    row.lambda1_t = min_eig(t);
    row.lambda_max_r = sym_eigs(r).eigenvalues.back();
    double mr = 0.0;
    for (double v : r.data()) mr = std::max(mr, std::fabs(v));
    row.max_r = mr;
    row.max_r_times_lambda = mr * row.lambda_n;
    row.weyl_ok = row.lambda1_a <= row.lambda1_t + row.lambda_max_r + 1e-12;
  });
  return rows;
}

nlohmann::json to_json(const SzegoTrace& t) {
  nlohmann::json j;
  j["symbol"] = t.symbol;
  j["m_f"] = t.m_f;
  j["M_f"] = t.M_f;
  j["min_gap"] = t.min_gap;
  j["max_gap"] = t.max_gap;
  j["bracketed"] = t.bracketed();
  j["monotone"] = t.monotone();
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < t.sizes.size(); ++i)
    rows.push_back({{"n", t.sizes[i]}, {"min_eig", t.min_eigs[i]}, {"max_eig", t.max_eigs[i]}});
  j["rows"] = std::move(rows);
  return j;
}

nlohmann::json to_json(const std::vector<CounterexampleRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    out.push_back({{"n", r.n},
                   {"lambda_n", r.lambda_n},
                   {"first", r.first},
                   {"K_n", r.k_n},
                   {"lambda1_A", r.lambda1_a},
                   {"lambda1_T", r.lambda1_t},
                   {"lambda_max_R", r.lambda_max_r},
                   {"max_r", r.max_r},
                   {"max_r_times_lambda_n", r.max_r_times_lambda},
                   {"weyl_ok", r.weyl_ok}});
  }
  return out;
}

}  // namespace obslab
