#pragma once

// Scalar backends. Every numeric routine in the library is a template on a
// real type `Real`; the matching complex type is complex_t<Real>.
//
//   double        standard precision (binary64, 15 significant digits)
//   extended_real IEEE binary128 through Boost.Multiprecision (33 digits)

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include <boost/multiprecision/complex128.hpp>
#include <boost/multiprecision/float128.hpp>

namespace fpm {

using extended_real = boost::multiprecision::float128;
using extended_complex = boost::multiprecision::complex128;

enum class Precision { standard, extended };

std::string_view to_string(Precision p);
Precision parse_precision(std::string_view text);

template <class Real>
struct complex_of {
  using type = std::complex<Real>;
};

template <>
struct complex_of<extended_real> {
  using type = extended_complex;
};

template <class Real>
using complex_t = typename complex_of<Real>::type;

// Wider type used while building the lambda recursion, so that the stored
// table is correctly rounded instead of carrying a random walk of
// accumulated rounding errors.
template <class Real>
struct accumulator_of {
  using type = Real;
};

template <>
struct accumulator_of<double> {
  using type = long double;
};

template <class Real>
using accumulator_t = typename accumulator_of<Real>::type;

template <class Real>
inline constexpr int digits10_v = std::numeric_limits<Real>::digits10;

template <class Real>
inline Real epsilon_v() {
  return std::numeric_limits<Real>::epsilon();
}

template <class Real>
inline complex_t<Real> make_complex(const Real& re, const Real& im = Real(0)) {
  return complex_t<Real>(re, im);
}

template <class C>
inline auto re(const C& z) {
  return z.real();
}

template <class C>
inline auto im(const C& z) {
  return z.imag();
}

// max(|Re z|, |Im z|); cheap magnitude used for threshold tests.
template <class C>
inline auto max_abs(const C& z) {
  using std::abs;
  auto a = abs(z.real());
  auto b = abs(z.imag());
  return a < b ? b : a;
}

template <class C>
inline auto squared_abs(const C& z) {
  return z.real() * z.real() + z.imag() * z.imag();
}

// 1/z by Smith's algorithm; no intermediate over/underflow for moderate
// exponents. z must be nonzero.
template <class C>
inline C reciprocal(const C& z) {
  using std::abs;
  using R = decltype(z.real());
  const R a = z.real();
  const R b = z.imag();
  if (abs(a) >= abs(b)) {
    const R r = b / a;
    const R d = a + b * r;
    return C(R(1) / d, -r / d);
  }
  const R r = a / b;
  const R d = a * r + b;
  return C(r / d, R(-1) / d);
}

// exp(w) - 1 without cancellation for small |w|.
template <class C>
inline C expm1_complex(const C& w) {
  using std::cos;
  using std::exp;
  using std::expm1;
  using std::sin;
  using R = decltype(w.real());
  const R x = w.real();
  const R y = w.imag();
  if (y == R(0)) {
    return C(expm1(x), R(0));
  }
  const R half_sin = sin(y / 2);
  return C(expm1(x) * cos(y) - 2 * half_sin * half_sin, exp(x) * sin(y));
}

template <class C>
inline C exp_complex(const C& w) {
  using std::cos;
  using std::exp;
  using std::sin;
  using R = decltype(w.real());
  const R m = exp(w.real());
  if (w.imag() == R(0)) {
    return C(m, R(0));
  }
  return C(m * cos(w.imag()), m * sin(w.imag()));
}

template <class Real>
inline bool is_finite(const Real& x) {
  using std::isfinite;
  using boost::multiprecision::isfinite;
  return isfinite(x);
}

// Shortest decimal string that reads back to the same value.
std::string to_shortest(double x);
std::string to_shortest(const extended_real& x);

// Parses a decimal literal at full precision of the target type.
template <class Real>
Real parse_real(std::string_view text);

template <>
double parse_real<double>(std::string_view text);

template <>
extended_real parse_real<extended_real>(std::string_view text);

}  // namespace fpm
