#include <quadmath.h>

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>
#include <system_error>

#include "fpm/scalar.hpp"

namespace fpm {

std::string_view to_string(Precision p) {
  return p == Precision::extended ? "extended" : "standard";
}

Precision parse_precision(std::string_view text) {
  if (text == "standard") {
    return Precision::standard;
  }
  if (text == "extended") {
    return Precision::extended;
  }
  throw std::invalid_argument("unknown precision mode: " + std::string(text));
}

std::string to_shortest(double x) {
  if (std::isnan(x)) {
    return "nan";
  }
  if (std::isinf(x)) {
    return x > 0 ? "inf" : "-inf";
  }
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string to_shortest(const extended_real& x) {
  const __float128 v = x.backend().value();
  if (isnanq(v)) {
    return "nan";
  }
  if (isinfq(v)) {
    return v > 0 ? "inf" : "-inf";
  }
  char buf[128];
  for (int digits = 1; digits <= 36; ++digits) {
    quadmath_snprintf(buf, sizeof buf, "%.*Qg", digits, v);
    if (strtoflt128(buf, nullptr) == v) {
      break;
    }
  }
  return buf;
}

template <>
double parse_real<double>(std::string_view text) {
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw std::invalid_argument("not a number: " + std::string(text));
  }
  return value;
}

template <>
extended_real parse_real<extended_real>(std::string_view text) {
  const std::string owned(text);
  char* end = nullptr;
  const __float128 v = strtoflt128(owned.c_str(), &end);
  if (owned.empty() || end != owned.c_str() + owned.size()) {
    throw std::invalid_argument("not a number: " + owned);
  }
  return extended_real(v);
}

}  // namespace fpm
