#pragma once

// The rational map psi(z) = z - 1/z on the Riemann sphere, its increasing
// real inverse branch phi, and sampled disc-containment certificates.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>

#include "fpm/errors.hpp"
#include "fpm/lambda_table.hpp"
#include "fpm/scalar.hpp"

namespace fpm {

// Finite values above this magnitude collapse to infinity.
inline constexpr double overflow_threshold = 1e150;
// An argument below this magnitude is sent to infinity by psi.
inline constexpr double underflow_threshold = 1e-300;

/// A point of C u {infinity}. `value` is meaningless when at_infinity.
template <class Real>
struct ExtendedComplex {
  complex_t<Real> value{};
  bool at_infinity = false;

  static ExtendedComplex infinity() { return {complex_t<Real>{}, true}; }

  // Finite value, or infinity if it is non-finite or above the threshold.
  static ExtendedComplex from(const complex_t<Real>& z) {
    if (!fpm::is_finite(Real(z.real())) || !fpm::is_finite(Real(z.imag())) ||
        max_abs(z) > Real(overflow_threshold)) {
      return infinity();
    }
    return {z, false};
  }

  static ExtendedComplex from(const Real& re, const Real& im = Real(0)) {
    return from(make_complex(re, im));
  }

  bool is_finite() const { return !at_infinity; }
};

template <class Real>
ExtendedComplex<Real> psi(const ExtendedComplex<Real>& z) {
  using EC = ExtendedComplex<Real>;
  if (z.at_infinity || max_abs(z.value) < Real(underflow_threshold)) {
    return EC::infinity();
  }
  return EC::from(z.value - reciprocal(z.value));
}

/// psi restricted to the real line; psi(0) is +infinity.
template <class Real>
Real psi_real(const Real& x) {
  if (x == Real(0)) {
    return std::numeric_limits<Real>::infinity();
  }
  // Wider intermediate so psi(phi(x)) rounds back to x.
  using Acc = accumulator_t<Real>;
  const Acc w = x;
  return static_cast<Real>(w - Acc(1) / w);
}

/// The positive root y of psi(y) = x.
template <class Real>
Real phi(const Real& x) {
  using std::abs;
  using std::sqrt;
  if (abs(x) > Real(overflow_threshold)) {
    return x > 0 ? x + Real(1) / x : Real(-1) / x;
  }
  using Acc = accumulator_t<Real>;
  const Acc w = x;
  const Acc root = sqrt(w * w + 4);
  if (x >= 0) {
    return static_cast<Real>((w + root) / 2);
  }
  return static_cast<Real>(Acc(2) / (root - w));
}

template <class Real>
ExtendedComplex<Real> psi_iter(ExtendedComplex<Real> z, std::size_t n) {
  for (std::size_t k = 0; k < n && !z.at_infinity; ++k) {
    z = psi(z);
  }
  return z;
}

template <class Real>
Real phi_iter(Real x, std::size_t k) {
  for (std::size_t j = 0; j < k; ++j) {
    x = phi(x);
  }
  return x;
}

/// The disc D(lambda_n, c rho_{n,N}); psi maps it into D(lambda_{n-1},
/// c rho_{n-1,N}) whenever n > N.
template <class Real>
struct DiscCert {
  std::size_t n = 0;
  std::size_t N = 0;
  double c = 1.0;
  Real center{};
  Real radius{};
};

template <class Real>
DiscCert<Real> make_disc_cert(const LambdaTable<Real>& table, std::size_t n,
                              std::size_t N, double c) {
  if (!(c > 0.0 && c <= 1.0)) {
    throw domain_error("disc certificate needs 0 < c <= 1");
  }
  if (N < 1 || N > n) {
    throw domain_error("disc certificate needs 1 <= N <= n");
  }
  return {n, N, c, table.at(n), Real(c) * rho(table, n, N)};
}

/// Largest |psi(z) - lambda_{n-1}| / (c rho_{n-1,N}) over `samples` points
/// drawn uniformly from the open disc of `cert`. Values below 1 mean every
/// image landed inside the target disc.
template <class Real>
Real disc_step_worst_ratio(const DiscCert<Real>& cert,
                           const LambdaTable<Real>& table, std::size_t samples,
                           std::uint64_t seed) {
  if (cert.N < 1 || cert.n <= cert.N || !(cert.c > 0.0 && cert.c <= 1.0) ||
      !(cert.radius > 0)) {
    throw domain_error("invalid disc certificate: n=" + std::to_string(cert.n) +
                       " N=" + std::to_string(cert.N));
  }
  using std::sqrt;
  const Real target_center = table.at(cert.n - 1);
  const Real target_radius = Real(cert.c) * rho(table, cert.n - 1, cert.N);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Real worst = 0;
  for (std::size_t k = 0; k < samples; ++k) {
    const double r = std::sqrt(unit(rng));
    const double theta = 2.0 * std::numbers::pi * unit(rng);
    const auto z = make_complex<Real>(
        cert.center + cert.radius * Real(r * std::cos(theta)),
        cert.radius * Real(r * std::sin(theta)));
    const auto image = psi(ExtendedComplex<Real>::from(z));
    if (image.at_infinity) {
      return std::numeric_limits<Real>::infinity();
    }
    const auto d = image.value - make_complex<Real>(target_center);
    const Real ratio = sqrt(squared_abs(d)) / target_radius;
    if (ratio > worst) {
      worst = ratio;
    }
  }
  return worst;
}

/// Sampled check of psi(D(lambda_n, c rho_{n,N})) in D(lambda_{n-1},
/// c rho_{n-1,N}), with 1e-12 relative slack on the target boundary.
template <class Real>
bool check_disc_step(const DiscCert<Real>& cert, const LambdaTable<Real>& table,
                     std::size_t samples, std::uint64_t seed) {
  return disc_step_worst_ratio(cert, table, samples, seed) < Real(1 + 1e-12);
}

}  // namespace fpm
