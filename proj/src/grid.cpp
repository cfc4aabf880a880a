#include "fpm/grid.hpp"

#include <cmath>

namespace fpm {

void validate(const GridSpec& spec) {
  const bool finite = std::isfinite(spec.re_min) && std::isfinite(spec.re_max) &&
                      std::isfinite(spec.im_min) && std::isfinite(spec.im_max);
  if (!finite || !(spec.re_min < spec.re_max) || !(spec.im_min < spec.im_max)) {
    throw domain_error("grid needs finite bounds with min < max on both axes");
  }
  if (spec.re_steps < 2 || spec.im_steps < 2) {
    throw domain_error("grid needs at least 2 steps per axis");
  }
  if (!(spec.tol > 0.0)) {
    throw domain_error("grid tolerance must be positive");
  }
}

std::string_view to_string(GridFlag f) {
  switch (f) {
    case GridFlag::ok:
      return "ok";
    case GridFlag::pole:
      return "pole";
    case GridFlag::overflow:
      return "overflow";
    case GridFlag::maxdepth:
      return "maxdepth";
  }
  return "ok";
}

GridFlag grid_flag(const EvalFlags& flags) {
  if (flags.has(EvalFlag::pole_proximity)) {
    return GridFlag::pole;
  }
  if (flags.has(EvalFlag::overflow)) {
    return GridFlag::overflow;
  }
  if (flags.has(EvalFlag::max_depth_reached)) {
    return GridFlag::maxdepth;
  }
  return GridFlag::ok;
}

double grid_coordinate(double lo, double hi, std::size_t i, std::size_t steps) {
  if (i + 1 == steps) {
    return hi;
  }
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

}  // namespace fpm
