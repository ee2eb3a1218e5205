#pragma once

// Experiment configuration: a flat JSON object read from --config, with
// --set key=value overrides applied on top (flags win).

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pucci/operators.hpp"

namespace pucci::lab {

class ExperimentConfig {
 public:
  std::string command;
  std::uint64_t seed = 20240601;
  std::filesystem::path output_dir = ".";

  ExperimentConfig() = default;
  explicit ExperimentConfig(std::string cmd, nlohmann::json values = nlohmann::json::object());

  /// Reads the JSON file (if any), then applies the overrides in order.
  /// Throws InvalidParameters on unreadable files, non-object documents and
  /// malformed overrides.
  static ExperimentConfig load(std::string command, const std::optional<std::filesystem::path>& file,
                               const std::vector<std::string>& overrides, std::filesystem::path output_dir);

  /// "key=value"; the value is parsed as JSON, falling back to a string.
  void apply_override(std::string_view assignment);
  void set(const std::string& key, nlohmann::json value);

  // Typed getters. Every key read is recorded, together with the default
  // when it was missing, in effective().
  double number(const std::string& key, double fallback);
  int integer(const std::string& key, int fallback);
  bool flag(const std::string& key, bool fallback);
  std::string text(const std::string& key, const std::string& fallback);
  std::vector<double> numbers(const std::string& key, const std::vector<double>& fallback);
  std::vector<std::vector<double>> rows(const std::string& key, const std::vector<std::vector<double>>& fallback);
  Variant variant(const std::string& key = "variant", Variant fallback = Variant::Plus);

  /// Throws InvalidParameters naming every key that no getter has read.
  void reject_unknown() const;

  /// Parameters as used, defaults included, plus the seed.
  nlohmann::json effective() const;

 private:
  const nlohmann::json& lookup(const std::string& key, nlohmann::json fallback);

  nlohmann::json values_ = nlohmann::json::object();
  nlohmann::json used_ = nlohmann::json::object();
  std::set<std::string> read_;
};

}  // namespace pucci::lab
