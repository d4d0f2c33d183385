// obslab: command-line front end. Every report embeds the configuration that
// produced it; timings go to stderr only.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "obslab/acceptance.hpp"
#include "obslab/error.hpp"
#include "obslab/gram.hpp"
#include "obslab/observability.hpp"
#include "obslab/oracle.hpp"
#include "obslab/rates.hpp"
#include "obslab/report.hpp"
#include "obslab/spectrum.hpp"
#include "obslab/szego.hpp"

namespace {

using namespace obslab;

constexpr int kExitNumerical = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || !std::isfinite(v)) throw UsageError("bad number '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("empty number list");
  return out;
}

// indicator | indicator:a=<r>,b=<r> | const:<r> | cos:<c0>,<c1>,...
Symbol parse_symbol(const std::string& text) {
  if (text == "indicator") return indicator_symbol(-M_PI / 2, M_PI / 2);
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("unknown symbol '" + text + "'");
  const std::string head = text.substr(0, colon);
  const std::string body = text.substr(colon + 1);
  if (head == "const") return constant_symbol(parse_real_list(body).at(0));
  if (head == "cos") return cosine_symbol(parse_real_list(body));
  if (head == "indicator") {
    double a = -M_PI / 2, b = M_PI / 2;
    std::stringstream ss(body);
    std::string kv;
    while (std::getline(ss, kv, ',')) {
      if (kv.rfind("a=", 0) == 0) {
        a = parse_real_list(kv.substr(2)).at(0);
      } else if (kv.rfind("b=", 0) == 0) {
        b = parse_real_list(kv.substr(2)).at(0);
      } else {
        throw UsageError("bad indicator parameter '" + kv + "'");
      }
    }
    return indicator_symbol(a, b);
  }
  throw UsageError("unknown symbol '" + text + "'");
}

std::function<double(double)> parse_potential(const std::string& name) {
  if (name == "zero") return {};
  if (name == "sin") return [](double x) { return std::sin(x); };
  if (name == "cos") return [](double x) { return std::cos(x); };
  if (name == "sign") return [](double x) { return x < 0 ? -1.0 : 1.0; };
  throw UsageError("unknown potential '" + name + "' (zero, sin, cos, sign)");
}

void emit(const ExperimentConfig& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.output, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + cfg.output + "'");
  out << text;
}

void emit_json(const ExperimentConfig& cfg, const nlohmann::json& result) { emit(cfg, render_json_report(cfg, result)); }

void require_format(const ExperimentConfig& cfg, bool csv_allowed) {
  if (cfg.format == "json") return;
  if (cfg.format == "csv" && csv_allowed) return;
  throw UsageError("format '" + cfg.format + "' not supported by '" + cfg.command + "'");
}

int cmd_spectrum(const ExperimentConfig& cfg) {
  require_format(cfg, true);
  if (cfg.k_max == 0) throw UsageError("--kmax must be >= 1");
  reserve_spectrum(cfg.k_max + 1);
  CsvTable table({"k", "lambda", "parity", "A_k", "gap", "asymptotic_ratio"});
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t k = 1; k <= cfg.k_max; ++k) {
    const Eigenpair e = eigenpair(k);
    const double gap = eigenvalue(k + 1) - e.lambda;
    const double ratio = e.lambda / weyl_asymptotic(k);
    const std::string parity = e.parity == Parity::Even ? "even" : "odd";
    table.row().cell(k).cell(e.lambda).cell(parity).cell(e.norm_const).cell(gap).cell(ratio);
    rows.push_back({{"k", k}, {"lambda", e.lambda}, {"parity", parity}, {"A_k", e.norm_const}, {"gap", gap},
                    {"asymptotic_ratio", ratio}});
  }
  if (cfg.format == "csv") {
    emit(cfg, table.render({config_comment(cfg)}));
  } else {
    emit_json(cfg, {{"rows", rows}});
  }
  return 0;
}

int cmd_gram(const ExperimentConfig& cfg, const std::vector<std::size_t>& indices, std::size_t centre) {
  require_format(cfg, true);
  const SetSpec set = parse_set_spec(cfg.set);
  GramOptions opts;
  opts.tol = cfg.tol;
  GramMatrix g;
  if (!indices.empty()) {
    g = gram_for_indices(set, indices, opts);
  } else {
    if (centre == 0) throw UsageError("gram needs --n or --indices");
    g = cluster_gram(set, centre, cfg.alpha, cfg.epsilon, opts);
  }
  if (cfg.format == "csv") {
    emit(cfg, "# " + config_comment(cfg) + "\n" + gram_to_csv(g));
  } else {
    emit_json(cfg, gram_to_json(g));
  }
  return 0;
}

int cmd_szego(const ExperimentConfig& cfg) {
  if (cfg.counterexample) {
    require_format(cfg, true);
    if (cfg.n_list.empty()) throw UsageError("--counterexample needs --n-list");
    const auto rows = counterexample_report(cfg.n_list, cfg.epsilon);
    if (cfg.format == "csv") {
      CsvTable t({"n", "lambda_n", "first", "K_n", "lambda1_A", "lambda1_T", "lambda_max_R", "max_abs_r",
                  "max_abs_r_times_lambda", "weyl_ok"});
      for (const auto& r : rows) {
        t.row().cell(r.n).cell(r.lambda_n).cell(r.first).cell(r.k_n).cell(r.lambda1_a).cell(r.lambda1_t);
        t.cell(r.lambda_max_r).cell(r.max_r).cell(r.max_r_times_lambda).cell(std::string(r.weyl_ok ? "true" : "false"));
      }
      emit(cfg, t.render({config_comment(cfg)}));
    } else {
      emit_json(cfg, {{"rows", to_json(rows)}});
    }
    return 0;
  }
  require_format(cfg, false);
  const std::vector<std::size_t> sizes = cfg.sizes.empty() ? std::vector<std::size_t>{8, 16, 32, 64} : cfg.sizes;
  const SzegoTrace t = szego_trace(parse_symbol(cfg.symbol), sizes);
  nlohmann::json result = to_json(t);
  result["bracketed"] = t.bracketed();
  result["monotone"] = t.monotone();
  emit_json(cfg, result);
  return 0;
}

nlohmann::json rate_metadata(double T, double alpha) {
  nlohmann::json j = {{"multiplicative_constant", kRateConstant}, {"constant_note", "undetermined constants set to 1"}};
  if (T > 0 && T < 0.5 && alpha > 0.5) {
    j["upsilon1"] = upsilon1(T, alpha);
    j["log_log_c_obs"] = log_log_c_obs(T, alpha);
  }
  return j;
}

int cmd_observe(const ExperimentConfig& cfg) {
  require_format(cfg, true);
  const SetSpec set = parse_set_spec(cfg.set);
  GramOptions opts;
  opts.tol = cfg.tol;
  const ObservabilityEstimate est = observability_constant_estimate(set, cfg.T, cfg.K, opts);
  if (cfg.format == "csv") {
    CsvTable t({"K", "T", "lambda_min", "lambda_max", "constant", "err_est", "unobservable"});
    t.row().cell(est.K).cell(est.T).cell(est.lambda_min).cell(est.lambda_max).cell(est.constant).cell(est.err_est);
    t.cell(std::string(est.unobservable ? "true" : "false"));
    emit(cfg, t.render({config_comment(cfg), "constant is a truncation-K lower bound"}));
    return 0;
  }
  nlohmann::json result = {{"estimate", to_json(est)}, {"label", "truncation-K lower bound"},
                           {"rates", rate_metadata(cfg.T, cfg.alpha)}};
  if (!cfg.n_list.empty()) result["ingham"] = to_json(ingham_cluster_check(set, cfg.alpha, cfg.epsilon, cfg.n_list, opts));
  emit_json(cfg, result);
  return 0;
}

int cmd_oracle(const ExperimentConfig& cfg) {
  require_format(cfg, false);
  nlohmann::json result;
  if (cfg.lambda_list.empty()) {
    result["cross_validation"] = to_json(cross_validate(cfg.k_max, cfg.L, cfg.h));
  } else {
    const IntervalUnion e = parse_set_spec(cfg.set).generate(cfg.L);
    const auto rows = resolvent_check(fd_build(cfg.L, cfg.h, parse_potential(cfg.potential)), e, cfg.lambda_list, cfg.alpha);
    double floor = rows.front().mu_min;
    for (const auto& r : rows) floor = std::min(floor, r.mu_min);
    result["resolvent"] = to_json(rows);
    result["mu_min_floor"] = floor;
  }
  emit_json(cfg, result);
  return 0;
}

int cmd_verify(const ExperimentConfig& cfg, const std::vector<int>& only) {
  require_format(cfg, false);
  AcceptanceOptions opts;
  opts.seed = cfg.seed;
  opts.only = only;
  const auto results = run_acceptance(opts, [](const CriterionResult& r) {
    std::fprintf(stderr, "%s  (%.2f s)\n", summary_line(r).c_str(), r.seconds);
  });
  const nlohmann::json report = acceptance_to_json(results, cfg.seed);
  emit_json(cfg, report);
  return report.at("all_passed").get<bool>() ? 0 : kExitNumerical;
}

void diagnostic(const std::string& kind, const std::string& what, const ExperimentConfig& cfg) {
  nlohmann::json j = {{"error", kind}, {"message", what}, {"config", cfg.to_json()}};
  std::cerr << j.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"obslab: spectral observability experiments for -d^2/dx^2 + |x|"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "obslab 0.1.0");

  ExperimentConfig cfg;
  std::string n_list, indices_text, sizes_text, lambda_text, only_text;
  std::size_t centre = 0;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--output,-o", cfg.output, "output file (default stdout)");
    sub->add_option("--seed", cfg.seed, "seed for randomized checks");
  };
  auto set_opts = [&](CLI::App* sub) {
    sub->add_option("--set", cfg.set, "set descriptor, e.g. halfline:+ or athin-comp:alpha=1.5");
    sub->add_option("--alpha", cfg.alpha, "cluster exponent alpha");
    sub->add_option("--epsilon", cfg.epsilon, "cluster width factor");
    sub->add_option("--tol", cfg.tol, "Gram entry tolerance");
  };

  CLI::App* spectrum = app.add_subcommand("spectrum", "eigenvalues, parities and normalizations");
  common(spectrum);
  spectrum->add_option("--kmax", cfg.k_max, "number of eigenvalues");

  CLI::App* gram = app.add_subcommand("gram", "Gram matrix of eigenfunctions restricted to a set");
  common(gram);
  set_opts(gram);
  gram->add_option("--n", centre, "cluster centre index");
  gram->add_option("--indices", indices_text, "explicit index list, e.g. 3,4,5");

  CLI::App* szego = app.add_subcommand("szego", "Toeplitz spectra and the half-line counterexample");
  common(szego);
  szego->add_flag("--counterexample", cfg.counterexample, "half-line counterexample table");
  szego->add_option("--n-list", n_list, "cluster centre indices");
  szego->add_option("--epsilon", cfg.epsilon, "cluster width factor");
  szego->add_option("--symbol", cfg.symbol, "indicator[:a=..,b=..], const:<c> or cos:<c0>,<c1>,...");
  szego->add_option("--sizes", sizes_text, "matrix sizes, e.g. 8,16,32,64");

  CLI::App* observe = app.add_subcommand("observe", "truncated observability constant and cluster check");
  common(observe);
  set_opts(observe);
  observe->add_option("--T", cfg.T, "observation time");
  observe->add_option("--K", cfg.K, "number of eigenmodes");
  observe->add_option("--n-list", n_list, "cluster centre indices for the Ingham check");

  CLI::App* oracle = app.add_subcommand("oracle", "finite-difference cross-validation and resolvent check");
  common(oracle);
  oracle->add_option("--kmax", cfg.k_max, "eigenvalues to cross-validate (<= 100)");
  oracle->add_option("--L", cfg.L, "domain half-width");
  oracle->add_option("--step", cfg.h, "grid step h");
  oracle->add_option("--lambda-list", lambda_text, "resolvent spectral parameters; enables the resolvent check");
  oracle->add_option("--set", cfg.set, "observation set for the resolvent check");
  oracle->add_option("--alpha", cfg.alpha, "thinness exponent for Upsilon2");
  oracle->add_option("--potential", cfg.potential, "zero, sin, cos or sign");

  CLI::App* verify = app.add_subcommand("verify", "run the acceptance suite");
  common(verify);
  verify->add_option("--only", only_text, "criteria to run, e.g. 1,2,13");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  cfg.command = chosen->get_name();
  const auto start = std::chrono::steady_clock::now();
  int rc = 0;
  try {
    std::vector<std::size_t> indices;
    std::vector<int> only;
    if (!n_list.empty()) cfg.n_list = parse_index_list(n_list);
    if (!indices_text.empty()) indices = parse_index_list(indices_text);
    if (!sizes_text.empty()) cfg.sizes = parse_index_list(sizes_text);
    if (!lambda_text.empty()) cfg.lambda_list = parse_real_list(lambda_text);
    if (!only_text.empty()) {
      for (std::size_t v : parse_index_list(only_text)) {
        if (v > 13) throw UsageError("criteria are numbered 1..13");
        only.push_back(static_cast<int>(v));
      }
    }
    if (cfg.command == "spectrum") rc = cmd_spectrum(cfg);
    else if (cfg.command == "gram") rc = cmd_gram(cfg, indices, centre);
    else if (cfg.command == "szego") rc = cmd_szego(cfg);
    else if (cfg.command == "observe") rc = cmd_observe(cfg);
    else if (cfg.command == "oracle") rc = cmd_oracle(cfg);
    else rc = cmd_verify(cfg, only);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const RangeError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ToleranceError& e) {
    diagnostic("tolerance", e.what(), cfg);
    return kExitNumerical;
  } catch (const ConvergenceError& e) {
    diagnostic("convergence", e.what(), cfg);
    return kExitNumerical;
  } catch (const std::exception& e) {
    diagnostic("numerical", e.what(), cfg);
    return kExitNumerical;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::fprintf(stderr, "%s finished in %.2f s\n", cfg.command.c_str(), secs);
  return rc;
}
