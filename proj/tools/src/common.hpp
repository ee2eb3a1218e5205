#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "pucci/error.hpp"
#include "pucci/operators.hpp"
#include "pucci_lab/config.hpp"

namespace pucci::lab::detail {

/// a, A, variant, alpha; validated.
inline PucciParams read_params(ExperimentConfig& cfg) {
  PucciParams p;
  p.a = cfg.number("a", 1.0);
  p.A = cfg.number("A", 1.0);
  p.variant = cfg.variant();
  p.alpha = cfg.number("alpha", 0.0);
  p.validate();
  return p;
}

inline std::vector<int> as_ints(const std::vector<double>& xs, const std::string& key) {
  std::vector<int> out;
  for (double x : xs) {
    if (x != static_cast<int>(x)) throw Error(ErrorCode::InvalidParameters, key + " must hold integers");
    out.push_back(static_cast<int>(x));
  }
  return out;
}

inline void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::InvalidParameters, what);
}

/// Short label for check names, e.g. tag("alpha", -0.5) == "alpha=-0.5".
inline std::string tag(const std::string& key, double value) {
  std::ostringstream os;
  os << key << '=' << value;
  return os.str();
}

}  // namespace pucci::lab::detail
