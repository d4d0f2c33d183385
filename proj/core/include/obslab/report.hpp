#pragma once

// Experiment configuration and deterministic CSV/JSON rendering.

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace obslab {

struct ExperimentConfig {
  std::string command;
  std::string set = "athin-comp:alpha=1.5";
  double alpha = 1.5;
  double epsilon = 1.0;
  double T = 1.0;
  std::size_t K = 60;
  std::vector<std::size_t> n_list;
  std::size_t k_max = 100;
  double tol = 1e-10;
  std::string format = "json";
  std::string output;
  std::uint64_t seed = 42;
  // oracle grid, resolvent sweep and Szego symbol
  double L = 60.0;
  double h = 0.01;
  std::vector<double> lambda_list;
  std::string potential = "zero";
  std::string symbol = "indicator";
  std::vector<std::size_t> sizes;
  bool counterexample = false;

  nlohmann::json to_json() const;
  static ExperimentConfig from_json(const nlohmann::json& j);
  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Shortest decimal form that round-trips.
std::string format_double(double v);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  CsvTable& row();
  CsvTable& cell(double v);
  CsvTable& cell(std::size_t v);
  CsvTable& cell(const std::string& v);

  std::size_t rows() const { return rows_.size(); }

  /// Comment lines are written first, each prefixed by '#'.
  std::string render(const std::vector<std::string>& comments = {}) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// {"config": ..., "result": ...}, pretty-printed with a trailing newline.
std::string render_json_report(const ExperimentConfig& config, const nlohmann::json& result);

/// The config as '#'-comment lines (one JSON line) for CSV headers.
std::string config_comment(const ExperimentConfig& config);

std::vector<std::size_t> parse_index_list(const std::string& text);

}  // namespace obslab
