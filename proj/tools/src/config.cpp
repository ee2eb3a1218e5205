#include "pucci_lab/config.hpp"

#include <fstream>
#include <limits>

#include "pucci/error.hpp"

namespace pucci::lab {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidParameters, what); }

}  // namespace

ExperimentConfig::ExperimentConfig(std::string cmd, nlohmann::json values) : command(std::move(cmd)) {
  if (!values.is_object()) bad("configuration must be a JSON object");
  for (auto& [key, value] : values.items()) set(key, value);
}

ExperimentConfig ExperimentConfig::load(std::string command, const std::optional<std::filesystem::path>& file,
                                        const std::vector<std::string>& overrides,
                                        std::filesystem::path output_dir) {
  nlohmann::json doc = nlohmann::json::object();
  if (file) {
    std::ifstream in(*file);
    if (!in) bad("cannot read config " + file->string());
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      bad("config " + file->string() + ": " + e.what());
    }
  }
  ExperimentConfig cfg(std::move(command), std::move(doc));
  for (const auto& o : overrides) cfg.apply_override(o);
  cfg.output_dir = std::move(output_dir);
  return cfg;
}

void ExperimentConfig::apply_override(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) bad("override '" + std::string(assignment) + "' is not key=value");
  const std::string key(assignment.substr(0, eq));
  const std::string raw(assignment.substr(eq + 1));
  nlohmann::json value = nlohmann::json::parse(raw, nullptr, false);
  if (value.is_discarded()) value = raw;
  set(key, std::move(value));
}

void ExperimentConfig::set(const std::string& key, nlohmann::json value) {
  if (key == "seed") {
    if (!value.is_number_integer() || value.get<long long>() < 0) bad("seed must be a non-negative integer");
    seed = value.get<std::uint64_t>();
    return;
  }
  values_[key] = std::move(value);
}

const nlohmann::json& ExperimentConfig::lookup(const std::string& key, nlohmann::json fallback) {
  read_.insert(key);
  const auto it = values_.find(key);
  used_[key] = it != values_.end() ? *it : std::move(fallback);
  return used_[key];
}

double ExperimentConfig::number(const std::string& key, double fallback) {
  const auto& v = lookup(key, fallback);
  if (!v.is_number()) bad(key + " must be a number");
  return v.get<double>();
}

int ExperimentConfig::integer(const std::string& key, int fallback) {
  const auto& v = lookup(key, fallback);
  if (v.is_number_integer()) {
    const auto x = v.get<long long>();
    if (x >= std::numeric_limits<int>::min() && x <= std::numeric_limits<int>::max()) return static_cast<int>(x);
  }
  bad(key + " must be an integer");
}

bool ExperimentConfig::flag(const std::string& key, bool fallback) {
  const auto& v = lookup(key, fallback);
  if (!v.is_boolean()) bad(key + " must be true or false");
  return v.get<bool>();
}

std::string ExperimentConfig::text(const std::string& key, const std::string& fallback) {
  const auto& v = lookup(key, fallback);
  if (!v.is_string()) bad(key + " must be a string");
  return v.get<std::string>();
}

std::vector<double> ExperimentConfig::numbers(const std::string& key, const std::vector<double>& fallback) {
  const auto& v = lookup(key, fallback);
  if (!v.is_array()) bad(key + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) bad(key + " must be an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

std::vector<std::vector<double>> ExperimentConfig::rows(const std::string& key,
                                                        const std::vector<std::vector<double>>& fallback) {
  const auto& v = lookup(key, fallback);
  if (!v.is_array()) bad(key + " must be an array of arrays");
  std::vector<std::vector<double>> out;
  for (const auto& row : v) {
    if (!row.is_array()) bad(key + " must be an array of arrays");
    auto& r = out.emplace_back();
    for (const auto& x : row) {
      if (!x.is_number()) bad(key + " must contain numbers only");
      r.push_back(x.get<double>());
    }
  }
  return out;
}

Variant ExperimentConfig::variant(const std::string& key, Variant fallback) {
  const std::string v = text(key, fallback == Variant::Plus ? "plus" : "minus");
  if (v == "plus") return Variant::Plus;
  if (v == "minus") return Variant::Minus;
  bad(key + " must be \"plus\" or \"minus\"");
}

void ExperimentConfig::reject_unknown() const {
  std::string unknown;
  for (const auto& [key, value] : values_.items()) {
    if (!read_.contains(key)) unknown += (unknown.empty() ? "" : ", ") + key;
  }
  if (!unknown.empty()) bad("unknown parameter(s) for " + command + ": " + unknown);
}

nlohmann::json ExperimentConfig::effective() const {
  nlohmann::json out = used_;
  out["seed"] = seed;
  return out;
}

}  // namespace pucci::lab
