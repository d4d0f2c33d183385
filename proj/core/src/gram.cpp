#include "obslab/gram.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "obslab/error.hpp"
#include "obslab/parallel.hpp"
#include "obslab/quadrature.hpp"
#include "obslab/rates.hpp"

namespace obslab {

std::string method_name(GramMethod m) { return m == GramMethod::ClosedForm ? "closed_form" : "quadrature"; }

std::string route_name(GramRoute r) {
  switch (r) {
    case GramRoute::Direct: return "direct";
    case GramRoute::Complement: return "complement";
    case GramRoute::Auto: return "auto";
  }
  return "direct";
}

namespace {

AiryEval eval_at_zero(const Eigenpair& e) {
  AiryEval a;
  a.x = -e.lambda;
  a.ai = e.ai_at_zero;
  a.aip = e.aip_at_zero;
  return a;
}

double parity_sign(std::size_t j, std::size_t k) { return ((j + k) % 2 == 0) ? 1.0 : -1.0; }

constexpr std::size_t kNodeBlock = 4096;

// Adds sum_q w_q phi_i(x_q) phi_j(x_q) into g (upper triangle), times sign(i, j)
// when `reflected` is set.
void accumulate(Matrix& g, const std::vector<Eigenpair>& pairs, const NodeSet& nodes, bool reflected) {
  const std::size_t n = pairs.size();
  for (std::size_t start = 0; start < nodes.size(); start += kNodeBlock) {
    const std::size_t len = std::min(kNodeBlock, nodes.size() - start);
    Matrix phi(n, len);
    parallel_for(n, [&](std::size_t i) {
      for (std::size_t q = 0; q < len; ++q) phi(i, q) = eigenfunction_eval(pairs[i], nodes.x[start + q]);
    });
    parallel_for(n, [&](std::size_t i) {
      std::vector<double> wi(len);
      for (std::size_t q = 0; q < len; ++q) wi[q] = nodes.w[start + q] * phi(i, q);
      for (std::size_t j = i; j < n; ++j) {
        double s = 0.0;
        for (std::size_t q = 0; q < len; ++q) s += wi[q] * phi(j, q);
        if (reflected) s *= parity_sign(pairs[i].k, pairs[j].k);
        g(i, j) += s;
      }
    });
  }
}

std::vector<Eigenpair> pairs_for(const std::vector<std::size_t>& indices) {
  if (indices.empty()) throw PreconditionError("Gram matrix needs at least one index");
  const std::size_t k_max = *std::max_element(indices.begin(), indices.end());
  reserve_spectrum(k_max + 1);
  std::vector<Eigenpair> pairs;
  pairs.reserve(indices.size());
  for (std::size_t k : indices) pairs.push_back(eigenpair(k));
  return pairs;
}

double normalization_defect(const std::vector<Eigenpair>& pairs, double x_cut) {
  std::vector<std::size_t> sample = {0, pairs.size() / 2, pairs.size() - 1};
  sample.erase(std::unique(sample.begin(), sample.end()), sample.end());
  double worst = 0.0;
  for (std::size_t s : sample) {
    const NodeSet nodes = oscillatory_nodes(pairs[s].lambda, x_cut);
    const double mass = integrate(nodes, [&](double x) {
      const double v = eigenfunction_eval(pairs[s], x);
      return v * v;
    });
    worst = std::max(worst, std::fabs(2.0 * mass - 1.0));
  }
  return worst;
}

void symmetrize_from_upper(Matrix& g) {
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j) g(i, j) = g(j, i);
}

}  // namespace

double halfline_entry(std::size_t j, std::size_t k) {
  if (j == 0 || k == 0) throw PreconditionError("eigen-index must be >= 1");
  if (j == k) return 0.5;
  const Eigenpair a = eigenpair(j);
  const Eigenpair b = eigenpair(k);
  return a.norm_const * b.norm_const * airy_kernel(eval_at_zero(a), eval_at_zero(b));
}

double tail_bound(std::size_t j, std::size_t k, double x_cut) {
  const Eigenpair a = eigenpair(j);
  const Eigenpair b = eigenpair(k);
  const double sa = x_cut - a.lambda;
  const double sb = x_cut - b.lambda;
  const double ka = std::max(0.0, airy_kernel(sa, sa));
  const double kb = std::max(0.0, airy_kernel(sb, sb));
  return 2.0 * a.norm_const * b.norm_const * std::sqrt(ka * kb);
}

GramMatrix gram_for_indices(const IntervalUnion& e, const std::vector<std::size_t>& indices, const GramOptions& opts) {
  if (!(opts.tol >= 1e-10)) throw PreconditionError("Gram tolerance must be >= 1e-10");
  const std::vector<Eigenpair> pairs = pairs_for(indices);
  double lambda_max = 0.0;
  for (const auto& p : pairs) lambda_max = std::max(lambda_max, p.lambda);
  const double x_cut = lambda_max + kTailCut;

  const IntervalUnion inside = e.clip(-x_cut, x_cut);
  const IntervalUnion outside = inside.complement(-x_cut, x_cut);
  auto fold_nodes = [&](const IntervalUnion& s) {
    const IntervalUnion pos = s.clip(0.0, x_cut);
    const IntervalUnion neg = s.clip(-x_cut, 0.0).reflected();
    return std::pair{oscillatory_nodes(lambda_max, x_cut, pos), oscillatory_nodes(lambda_max, x_cut, neg)};
  };

  GramRoute route = opts.route;
  auto direct = fold_nodes(inside);
  decltype(direct) comp;
  if (route != GramRoute::Direct) {
    comp = fold_nodes(outside);
    if (route == GramRoute::Auto) {
      route = (comp.first.size() + comp.second.size() < direct.first.size() + direct.second.size())
                  ? GramRoute::Complement
                  : GramRoute::Direct;
    }
  }
  const auto& chosen = route == GramRoute::Direct ? direct : comp;

  const std::size_t n = pairs.size();
  Matrix g(n, n);
  accumulate(g, pairs, chosen.first, false);
  accumulate(g, pairs, chosen.second, true);
  if (route == GramRoute::Complement) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) g(i, j) = (i == j ? 1.0 : 0.0) - g(i, j);
  }
  symmetrize_from_upper(g);

  double tail = 0.0;
  for (std::size_t i = 0; i < n; ++i) tail = std::max(tail, tail_bound(pairs[i].k, pairs[i].k, x_cut));

  GramMatrix out;
  out.indices = indices;
  out.set_descriptor = "explicit";
  out.method = GramMethod::Quadrature;
  out.route = route;
  out.entries = std::move(g);
  out.entry_err_est = normalization_defect(pairs, x_cut) + tail;
  out.tol = opts.tol;
  out.nodes = chosen.first.size() + chosen.second.size();
  if (out.entry_err_est > opts.tol) throw ToleranceError("Gram quadrature missed its tolerance", out.entry_err_est);
  return out;
}

double set_entry(const IntervalUnion& e, std::size_t j, std::size_t k, double tol) {
  GramOptions opts;
  opts.tol = tol;
  opts.route = GramRoute::Direct;
  if (j == k) {
    return gram_for_indices(e, {j}, opts).entries(0, 0);
  }
  return gram_for_indices(e, {j, k}, opts).entries(0, 1);
}

GramMatrix gram_for_indices(const SetSpec& e, const std::vector<std::size_t>& indices, const GramOptions& opts) {
  GramMatrix out;
  const auto sign = e.half_line_sign();
  if (e.is_full_line() || sign.has_value()) {
    const std::vector<Eigenpair> pairs = pairs_for(indices);
    const std::size_t n = pairs.size();
    out.entries = Matrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        double v;
        if (e.is_full_line()) {
          v = (i == j) ? 1.0 : 0.0;
        } else if (i == j) {
          v = 0.5;
        } else {
          v = halfline_entry(pairs[i].k, pairs[j].k);
          if (!*sign) v *= parity_sign(pairs[i].k, pairs[j].k);
        }
        out.entries(i, j) = out.entries(j, i) = v;
      }
    }
    out.indices = indices;
    out.method = GramMethod::ClosedForm;
    out.route = GramRoute::Direct;
    out.entry_err_est = 0.0;
    out.tol = opts.tol;
  } else {
    double lambda_max = 0.0;
    for (std::size_t k : indices) lambda_max = std::max(lambda_max, eigenvalue(k));
    out = gram_for_indices(e.generate(lambda_max + kTailCut), indices, opts);
  }
  out.set_descriptor = e.describe();
  return out;
}

GramMatrix cluster_gram(const SetSpec& e, std::size_t n, double alpha, double epsilon, const GramOptions& opts) {
  ClusterSpec c = cluster(n, alpha, epsilon);
  if (opts.parity_align) c = c.parity_aligned();
  GramMatrix g = gram_for_indices(e, c.indices(), opts);
  g.cluster = c;
  return g;
}

std::vector<OffdiagRow> offdiag_decay_profile(const SetSpec& e, double alpha, const std::vector<std::size_t>& n_list,
                                              double epsilon, const GramOptions& opts) {
  std::vector<OffdiagRow> rows(n_list.size());
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    const GramMatrix g = cluster_gram(e, n_list[i], alpha, epsilon, opts);
    OffdiagRow& r = rows[i];
    r.n = n_list[i];
    r.lambda_n = eigenvalue(r.n);
    r.cluster_size = g.size();
    r.max_offdiag = max_abs_offdiag(g.entries);
    r.upsilon0 = upsilon0(r.lambda_n, alpha);
    r.ratio = r.max_offdiag / r.upsilon0;
    r.err_est = g.entry_err_est;
  }
  return rows;
}

DiagProfile diag_lower_profile(const SetSpec& e, const std::vector<std::size_t>& k_list, const GramOptions& opts) {
  DiagProfile prof;
  prof.rows.resize(k_list.size());
  if (!k_list.empty()) reserve_spectrum(*std::max_element(k_list.begin(), k_list.end()) + 1);
  parallel_for(k_list.size(), [&](std::size_t i) {
    const GramMatrix g = gram_for_indices(e, {k_list[i]}, opts);
    DiagRow& r = prof.rows[i];
    r.k = k_list[i];
    r.lambda = eigenvalue(r.k);
    r.value = g.entries(0, 0);
    r.err_est = g.entry_err_est;
  });
  prof.min_value = std::numeric_limits<double>::infinity();
  for (const auto& r : prof.rows) prof.min_value = std::min(prof.min_value, r.value);
  return prof;
}

nlohmann::json gram_to_json(const GramMatrix& g) {
  nlohmann::json j;
  j["set"] = g.set_descriptor;
  j["method"] = method_name(g.method);
  j["route"] = route_name(g.route);
  j["tol"] = g.tol;
  j["entry_err_est"] = g.entry_err_est;
  j["nodes"] = g.nodes;
  j["indices"] = g.indices;
  if (g.cluster.count > 0) {
    j["cluster"] = {{"center", g.cluster.center}, {"alpha", g.cluster.alpha}, {"epsilon", g.cluster.epsilon},
                    {"width", g.cluster.width},   {"first", g.cluster.first}, {"count", g.cluster.count}};
  }
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < g.size(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t k = 0; k < g.size(); ++k) row.push_back(g.entries(i, k));
    rows.push_back(std::move(row));
  }
  j["entries"] = std::move(rows);
  return j;
}

std::string gram_to_csv(const GramMatrix& g) {
  std::ostringstream os;
  os.precision(17);
  os << "# set=" << g.set_descriptor << "\n";
  os << "# method=" << method_name(g.method) << " route=" << route_name(g.route) << " tol=" << g.tol << "\n";
  if (g.cluster.count > 0) {
    os << "# cluster center=" << g.cluster.center << " alpha=" << g.cluster.alpha << " epsilon=" << g.cluster.epsilon
       << " first=" << g.cluster.first << " count=" << g.cluster.count << "\n";
  }
  os << "j,k,value,err_est\n";
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t k = 0; k < g.size(); ++k)
      os << g.indices[i] << "," << g.indices[k] << "," << g.entries(i, k) << "," << g.entry_err_est << "\n";
  return os.str();
}

}  // namespace obslab
