#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace pucci::lab {

struct Check {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double threshold = 0.0;

  bool operator==(const Check&) const = default;
};

struct RunReport {
  std::string command;
  nlohmann::json parameters = nlohmann::json::object();
  nlohmann::json results = nlohmann::json::object();
  std::vector<Check> checks;
  double wall_time = 0.0;  // seconds
  std::string version;

  /// Records a check; returns `pass`.
  bool add(std::string name, bool pass, double value, double threshold);
  /// value <= threshold
  bool add_at_most(std::string name, double value, double threshold);
  bool all_pass() const noexcept;

  nlohmann::json to_json() const;
  static RunReport from_json(const nlohmann::json& j);
  std::string dump() const;

  bool operator==(const RunReport& other) const;
};

/// JSON has no inf/nan; they are written as the strings "inf", "-inf" and
/// "nan" so that reports round-trip.
nlohmann::json json_number(double x);
double number_from_json(const nlohmann::json& j);

/// Tool version string.
std::string version();

/// Writes `<dir>/<command>.report.json`, creating the directory.
std::filesystem::path write_report(const RunReport& report, const std::filesystem::path& dir);
RunReport read_report(const std::filesystem::path& file);

/// CSV with a header row; numbers printed with 17 significant digits.
void write_csv(const std::filesystem::path& file, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace pucci::lab
