#include "pucci_lab/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "pucci/error.hpp"

#ifndef PUCCI_LAB_VERSION
#define PUCCI_LAB_VERSION "0.0.0"
#endif

namespace pucci::lab {

nlohmann::json json_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double number_from_json(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  throw Error(ErrorCode::InvalidParameters, "expected a number, got " + j.dump());
}

std::string version() { return PUCCI_LAB_VERSION; }

bool RunReport::add(std::string name, bool pass, double value, double threshold) {
  checks.push_back({std::move(name), pass, value, threshold});
  return pass;
}

bool RunReport::add_at_most(std::string name, double value, double threshold) {
  return add(std::move(name), value <= threshold, value, threshold);
}

bool RunReport::all_pass() const noexcept {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

nlohmann::json RunReport::to_json() const {
  nlohmann::json j;
  j["command"] = command;
  j["parameters"] = parameters;
  j["results"] = results;
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    j["checks"].push_back(
        {{"name", c.name}, {"pass", c.pass}, {"value", json_number(c.value)}, {"threshold", json_number(c.threshold)}});
  }
  j["wall_time"] = wall_time;
  j["version"] = version;
  return j;
}

RunReport RunReport::from_json(const nlohmann::json& j) {
  try {
    RunReport r;
    r.command = j.at("command").get<std::string>();
    r.parameters = j.at("parameters");
    r.results = j.at("results");
    for (const auto& c : j.at("checks")) {
      r.checks.push_back({c.at("name").get<std::string>(), c.at("pass").get<bool>(), number_from_json(c.at("value")),
                          number_from_json(c.at("threshold"))});
    }
    r.wall_time = j.at("wall_time").get<double>();
    r.version = j.at("version").get<std::string>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidParameters, std::string("malformed report: ") + e.what());
  }
}

std::string RunReport::dump() const { return to_json().dump(2) + "\n"; }

bool RunReport::operator==(const RunReport& other) const {
  // nan compares unequal to itself, so compare through the serialized form
  return to_json() == other.to_json();
}

std::filesystem::path write_report(const RunReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto file = dir / (report.command + ".report.json");
  std::ofstream out(file);
  if (!out) throw Error(ErrorCode::InvalidParameters, "cannot write " + file.string());
  out << report.dump();
  return file;
}

RunReport read_report(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorCode::InvalidParameters, "cannot read " + file.string());
  try {
    return RunReport::from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::InvalidParameters, file.string() + ": " + e.what());
  }
}

void write_csv(const std::filesystem::path& file, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  std::FILE* f = std::fopen(file.string().c_str(), "w");
  if (!f) throw Error(ErrorCode::InvalidParameters, "cannot write " + file.string());
  for (std::size_t i = 0; i < header.size(); ++i) std::fprintf(f, "%s%s", i ? "," : "", header[i].c_str());
  std::fputc('\n', f);
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) std::fprintf(f, "%s%.17g", i ? "," : "", row[i]);
    std::fputc('\n', f);
  }
  std::fclose(f);
}

}  // namespace pucci::lab
