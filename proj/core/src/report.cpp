#include "obslab/report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "obslab/error.hpp"

namespace obslab {

nlohmann::json ExperimentConfig::to_json() const {
  return {{"command", command}, {"set", set},     {"alpha", alpha},   {"epsilon", epsilon},
          {"T", T},             {"K", K},         {"n_list", n_list}, {"k_max", k_max},
          {"tol", tol},         {"format", format}, {"output", output}, {"seed", seed},
          {"L", L},             {"h", h},         {"lambda_list", lambda_list}, {"potential", potential},
          {"symbol", symbol},   {"sizes", sizes}, {"counterexample", counterexample}};
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  c.command = j.at("command").get<std::string>();
  c.set = j.at("set").get<std::string>();
  c.alpha = j.at("alpha").get<double>();
  c.epsilon = j.at("epsilon").get<double>();
  c.T = j.at("T").get<double>();
  c.K = j.at("K").get<std::size_t>();
  c.n_list = j.at("n_list").get<std::vector<std::size_t>>();
  c.k_max = j.at("k_max").get<std::size_t>();
  c.tol = j.at("tol").get<double>();
  c.format = j.at("format").get<std::string>();
  c.output = j.at("output").get<std::string>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.L = j.value("L", c.L);
  c.h = j.value("h", c.h);
  c.lambda_list = j.value("lambda_list", c.lambda_list);
  c.potential = j.value("potential", c.potential);
  c.symbol = j.value("symbol", c.symbol);
  c.sizes = j.value("sizes", c.sizes);
  c.counterexample = j.value("counterexample", c.counterexample);
  return c;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

CsvTable& CsvTable::row() {
  rows_.emplace_back();
  return *this;
}

CsvTable& CsvTable::cell(double v) { return cell(format_double(v)); }

CsvTable& CsvTable::cell(std::size_t v) { return cell(std::to_string(v)); }

CsvTable& CsvTable::cell(const std::string& v) {
  if (rows_.empty()) rows_.emplace_back();
  rows_.back().push_back(v);
  return *this;
}

std::string CsvTable::render(const std::vector<std::string>& comments) const {
  std::ostringstream os;
  for (const auto& c : comments) os << "# " << c << "\n";
  for (std::size_t i = 0; i < header_.size(); ++i) os << (i ? "," : "") << header_[i];
  os << "\n";
  for (const auto& r : rows_) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
    os << "\n";
  }
  return os.str();
}

std::string render_json_report(const ExperimentConfig& config, const nlohmann::json& result) {
  nlohmann::json j;
  j["config"] = config.to_json();
  j["result"] = result;
  return j.dump(2) + "\n";
}

std::string config_comment(const ExperimentConfig& config) { return "config " + config.to_json().dump(); }

std::vector<std::size_t> parse_index_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::string_view rest = text;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    std::size_t v = 0;
    const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || res.ec != std::errc() || res.ptr != item.data() + item.size() || v == 0) {
      throw PreconditionError("bad index list entry '" + std::string(item) + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw PreconditionError("empty index list");
  return out;
}

}  // namespace obslab
