#include "fpm/evaluator.hpp"

#include <algorithm>
#include <cmath>

namespace fpm {

std::string_view to_string(EvalFlag f) {
  switch (f) {
    case EvalFlag::pole_proximity:
      return "pole_proximity";
    case EvalFlag::overflow:
      return "overflow";
    case EvalFlag::max_depth_reached:
      return "max_depth_reached";
  }
  return "unknown";
}

std::vector<std::string_view> EvalFlags::names() const {
  std::vector<std::string_view> out;
  for (EvalFlag f : {EvalFlag::pole_proximity, EvalFlag::overflow,
                     EvalFlag::max_depth_reached}) {
    if (has(f)) {
      out.push_back(to_string(f));
    }
  }
  return out;
}

void validate(const EvalConfig& cfg) {
  if (!(cfg.tol > 0.0) || !std::isfinite(cfg.tol)) {
    throw domain_error("tolerance must be positive and finite");
  }
  if (cfg.n_max < 2 || cfg.n_start > cfg.n_max) {
    throw domain_error("depth schedule needs 2 <= n_max and n_start <= n_max");
  }
  if (!(cfg.c_margin > 0.0 && cfg.c_margin <= 1.0)) {
    throw domain_error("c_margin must lie in (0, 1]");
  }
  if (cfg.seed_order < 2 || cfg.seed_order > 32) {
    throw domain_error("seed_order must lie in [2, 32]");
  }
}

std::size_t required_table_nmax(const EvalConfig& cfg) {
  return cfg.n_max + static_cast<std::size_t>(cfg.seed_order);
}

std::size_t start_depth(const EvalConfig& cfg, double abs_z) {
  std::size_t n = std::max<std::size_t>(
      {cfg.n_start, 2, static_cast<std::size_t>(cfg.seed_order)});
  const double wanted = std::ceil(abs_z / cfg.c_margin);
  if (wanted >= static_cast<double>(cfg.n_max)) {
    return cfg.n_max;
  }
  n = std::max(n, static_cast<std::size_t>(wanted));
  return std::min(n, cfg.n_max);
}

}  // namespace fpm
