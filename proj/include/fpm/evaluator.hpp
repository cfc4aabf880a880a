#pragma once

// Evaluation of the meromorphic Bernstein transform f and the Mellin
// transform F = 1 / f(z + 1) as limits of psi-iterates of seeds built from
// the lambda table:
//
//   f(z) = lim psi^n(a_n(z)) = lim psi^n(b_n(z)),
//   a_n(z) = lambda_n (lambda_n / lambda_{n-1})^z,
//   b_n(z) = lambda_n (lambda_{n+1} / lambda_n)^z.
//
// a_n and b_n are log-linear interpolants of f(n + z) through the nodes
// {n-1, n} and {n, n+1}. Their error, and therefore the error of the limit
// at depth n, is O(1/n). eval_f generalises them to log-space polynomial
// stencils of `seed_order` nodes ({n-1, ..., n+p-2} and {n, ..., n+p-1}),
// which reduces the error to O(n^{1-p}); seed_order = 2 reproduces a_n, b_n.
//
// Orbits are iterated relative to the lambda sequence: writing an iterate
// at level m as lambda_m + d, one psi step is
//
//   d <- d + d / (lambda_m (lambda_m + d)),
//
// which is exact algebra (psi(lambda_m) = lambda_{m-1}) and keeps rounding
// errors relative to d rather than to lambda_m.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fpm/errors.hpp"
#include "fpm/lambda_table.hpp"
#include "fpm/psi.hpp"
#include "fpm/scalar.hpp"

namespace fpm {

// An orbit passing closer than this to 0 is flagged as near a pole.
inline constexpr double pole_proximity_threshold = 1e-8;

enum class EvalFlag : unsigned {
  pole_proximity = 1u << 0,
  overflow = 1u << 1,
  max_depth_reached = 1u << 2,
};

class EvalFlags {
 public:
  void set(EvalFlag f) { bits_ |= static_cast<unsigned>(f); }
  void clear(EvalFlag f) { bits_ &= ~static_cast<unsigned>(f); }
  bool has(EvalFlag f) const { return (bits_ & static_cast<unsigned>(f)) != 0; }
  bool empty() const { return bits_ == 0; }
  unsigned bits() const { return bits_; }

  EvalFlags& operator|=(const EvalFlags& other) {
    bits_ |= other.bits_;
    return *this;
  }

  std::vector<std::string_view> names() const;

 private:
  unsigned bits_ = 0;
};

std::string_view to_string(EvalFlag f);

struct EvalConfig {
  double tol = 1e-10;
  std::size_t n_start = 16;
  std::size_t n_max = std::size_t{1} << 20;
  double c_margin = 0.25;
  int seed_order = 8;
};

// Throws domain_error on an inconsistent configuration.
void validate(const EvalConfig& cfg);

// Smallest table nmax that eval_f, eval_F and eval_f_real accept for cfg.
std::size_t required_table_nmax(const EvalConfig& cfg);

// First depth of the doubling schedule for an argument of modulus |z|.
std::size_t start_depth(const EvalConfig& cfg, double abs_z);

template <class Real>
struct EvalResult {
  ExtendedComplex<Real> value;
  double error_estimate = 0.0;
  std::size_t n_used = 0;
  EvalFlags flags;

  bool ok() const { return flags.empty(); }
};

template <class Real>
struct Bracket {
  Real lo{};
  Real hi{};

  Real width() const { return hi - lo; }
};

template <class Real>
struct ShiftCheck {
  Real residual{};
  EvalFlags flags;
};

namespace detail {

template <class Real>
void require_table(const LambdaTable<Real>& table, std::size_t needed) {
  if (table.nmax() < needed) {
    throw capacity_error("lambda table nmax " + std::to_string(table.nmax()) +
                         " is below the required " + std::to_string(needed));
  }
}

inline void require_finite_argument(double re, double im) {
  if (!std::isfinite(re) || !std::isfinite(im)) {
    throw domain_error("evaluation point must be finite");
  }
}

template <class Real>
inline Real magnitude2(const Real& x) {
  return x * x;
}

template <class Real>
inline Real magnitude2(const std::complex<Real>& z) {
  return squared_abs(z);
}

inline extended_real magnitude2(const extended_complex& z) {
  return squared_abs(z);
}

template <class Real>
inline Real inverse(const Real& x) {
  return Real(1) / x;
}

template <class Real>
inline std::complex<Real> inverse(const std::complex<Real>& z) {
  return reciprocal(z);
}

inline extended_complex inverse(const extended_complex& z) {
  return reciprocal(z);
}

template <class Real>
inline Real magnitude_max(const Real& x) {
  using std::abs;
  return abs(x);
}

template <class Real>
inline Real magnitude_max(const std::complex<Real>& z) {
  return max_abs(z);
}

inline extended_real magnitude_max(const extended_complex& z) {
  return max_abs(z);
}

template <class Value>
struct Orbit {
  Value value{};
  bool at_infinity = false;
  bool near_pole = false;
};

// psi^n(lambda_n + deviation), iterated in deviation form. Value is Real or
// complex_t<Real>.
template <class Real, class Value>
Orbit<Value> iterate_deviation(const LambdaTable<Real>& table, std::size_t n,
                               Value d) {
  const Real pole2 = Real(pole_proximity_threshold * pole_proximity_threshold);
  const Real tiny = Real(underflow_threshold);
  const Real huge = Real(overflow_threshold);
  Orbit<Value> out;
  for (std::size_t m = n; m >= 1; --m) {
    const Real& lam = table[m];
    const Value w = lam + d;
    if (magnitude2(w) < pole2) {
      out.near_pole = true;
      if (magnitude_max(w) < tiny) {
        out.at_infinity = true;
        return out;
      }
    }
    d += d * inverse(lam * w);
    if (!(magnitude_max(d) <= huge)) {
      out.at_infinity = true;
      return out;
    }
  }
  out.value = d;
  return out;
}

// Exponent Q with seed = lambda_n exp(Q): the Newton form of the log-space
// interpolant through nodes n+offset .. n+offset+order-1, relative to
// log lambda_n. Forward differences are taken of log_step values.
template <class Real>
complex_t<Real> stencil_exponent(const LambdaTable<Real>& table, std::size_t n,
                                 const complex_t<Real>& z, int order,
                                 int offset) {
  if (order < 2) {
    throw domain_error("seed order must be at least 2");
  }
  const long long base = static_cast<long long>(n) + offset;
  const long long top = base + order - 1;
  if (base < 1 || top > static_cast<long long>(table.nmax())) {
    throw index_error("seed stencil [" + std::to_string(base) + ", " +
                      std::to_string(top) + "] outside the lambda table");
  }
  std::vector<Real> diff(static_cast<std::size_t>(order - 1));
  for (std::size_t i = 0; i < diff.size(); ++i) {
    diff[i] = log_step(table, static_cast<std::size_t>(base) + i);
  }
  // Value of the interpolant at node `offset` relative to log lambda_n.
  Real g0 = 0;
  if (offset < 0) {
    for (long long j = base; j < static_cast<long long>(n); ++j) {
      g0 -= log_step(table, static_cast<std::size_t>(j));
    }
  } else {
    for (long long j = static_cast<long long>(n); j < base; ++j) {
      g0 += log_step(table, static_cast<std::size_t>(j));
    }
  }
  const complex_t<Real> w = z - make_complex<Real>(Real(offset));
  complex_t<Real> q = make_complex<Real>(g0);
  complex_t<Real> binom = make_complex<Real>(Real(1));
  std::size_t live = diff.size();
  for (std::size_t k = 1; k < static_cast<std::size_t>(order); ++k) {
    binom = binom * (w - make_complex<Real>(Real(k - 1))) / Real(k);
    q += binom * diff[0];
    for (std::size_t i = 0; i + 1 < live; ++i) {
      diff[i] = diff[i + 1] - diff[i];
    }
    --live;
  }
  return q;
}

template <class Real>
complex_t<Real> stencil_deviation(const LambdaTable<Real>& table, std::size_t n,
                                  const complex_t<Real>& z, int order,
                                  int offset) {
  return table[n] * expm1_complex(stencil_exponent(table, n, z, order, offset));
}

template <class Real>
double orbit_distance(const Orbit<complex_t<Real>>& a,
                      const Orbit<complex_t<Real>>& b) {
  using std::sqrt;
  if (a.at_infinity && b.at_infinity) {
    return 0.0;
  }
  if (a.at_infinity || b.at_infinity) {
    return std::numeric_limits<double>::infinity();
  }
  return static_cast<double>(sqrt(squared_abs(a.value - b.value)));
}

}  // namespace detail

/// a_n(z) = lambda_n exp(z log_step(n-1)); needs 2 <= n < nmax.
template <class Real>
complex_t<Real> seed_a(const LambdaTable<Real>& table, std::size_t n,
                       const complex_t<Real>& z) {
  if (n < 2 || n >= table.nmax()) {
    throw index_error("seed_a requires 2 <= n < nmax, got n=" +
                      std::to_string(n));
  }
  return table[n] * exp_complex(z * log_step(table, n - 1));
}

/// b_n(z) = lambda_n exp(z log_step(n)); needs 1 <= n < nmax.
template <class Real>
complex_t<Real> seed_b(const LambdaTable<Real>& table, std::size_t n,
                       const complex_t<Real>& z) {
  if (n < 1 || n >= table.nmax()) {
    throw index_error("seed_b requires 1 <= n < nmax, got n=" +
                      std::to_string(n));
  }
  return table[n] * exp_complex(z * log_step(table, n));
}

enum class SeedKind { a, b };

/// psi^n applied to the a- or b-seed of the given stencil order at depth n.
/// order = 2 is psi^n(a_n(z)) or psi^n(b_n(z)).
template <class Real>
ExtendedComplex<Real> seeded_iterate(const LambdaTable<Real>& table,
                                     std::size_t n, const complex_t<Real>& z,
                                     SeedKind kind, int order = 2) {
  const int offset = kind == SeedKind::a ? -1 : 0;
  const auto orbit = detail::iterate_deviation(
      table, n, detail::stencil_deviation(table, n, z, order, offset));
  if (orbit.at_infinity) {
    return ExtendedComplex<Real>::infinity();
  }
  return ExtendedComplex<Real>::from(orbit.value);
}

template <class Real>
EvalResult<Real> eval_f(const complex_t<Real>& z, const EvalConfig& cfg,
                        const LambdaTable<Real>& table) {
  validate(cfg);
  detail::require_table(table, required_table_nmax(cfg));
  const double zr = static_cast<double>(z.real());
  const double zi = static_cast<double>(z.imag());
  detail::require_finite_argument(zr, zi);

  std::size_t n = start_depth(cfg, std::hypot(zr, zi));
  std::optional<EvalResult<Real>> best;
  int passes_without_gain = 0;
  bool pole_seen = false;
  for (;;) {
    const auto a = detail::iterate_deviation(
        table, n, detail::stencil_deviation(table, n, z, cfg.seed_order, -1));
    const auto b = detail::iterate_deviation(
        table, n, detail::stencil_deviation(table, n, z, cfg.seed_order, 0));
    EvalResult<Real> pass;
    pass.n_used = n;
    pass.error_estimate = detail::orbit_distance<Real>(a, b);
    if (a.near_pole || b.near_pole) {
      pass.flags.set(EvalFlag::pole_proximity);
      pole_seen = true;
    }
    if (b.at_infinity) {
      pass.value = ExtendedComplex<Real>::infinity();
      pass.flags.set(EvalFlag::overflow);
    } else {
      pass.value = ExtendedComplex<Real>::from(b.value);
    }

    if (!best || pass.error_estimate < best->error_estimate) {
      best = pass;
      passes_without_gain = 0;
    } else {
      ++passes_without_gain;
    }
    // Stop once converged, at n_max, or after two doublings without gain
    // (the proxy has hit the rounding floor or the point is singular).
    if (best->error_estimate <= cfg.tol || n >= cfg.n_max ||
        passes_without_gain >= 2) {
      break;
    }
    n = std::min(2 * n, cfg.n_max);
  }

  EvalResult<Real> out = *best;
  // A deeper pass resolves the orbit better; its pole sighting stands even
  // when a shallower pass had the smaller proxy.
  if (pole_seen) {
    out.flags.set(EvalFlag::pole_proximity);
  }
  if (!(out.error_estimate <= cfg.tol)) {
    out.flags.set(EvalFlag::max_depth_reached);
  }
  if (out.value.at_infinity) {
    out.error_estimate = std::numeric_limits<double>::infinity();
  }
  return out;
}

/// F(z) = 1 / f(z + 1), with the first-order error |df| / |f|^2.
template <class Real>
EvalResult<Real> eval_F(const complex_t<Real>& z, const EvalConfig& cfg,
                        const LambdaTable<Real>& table) {
  const complex_t<Real> shifted = z + make_complex<Real>(Real(1));
  EvalConfig inner = cfg;
  for (int attempt = 0;; ++attempt) {
    const EvalResult<Real> f = eval_f(shifted, inner, table);
    EvalResult<Real> out;
    out.n_used = f.n_used;
    out.flags = f.flags;
    out.flags.clear(EvalFlag::overflow);
    if (f.value.at_infinity) {
      // Pole of f: F vanishes there.
      out.value = ExtendedComplex<Real>::from(Real(0));
      out.error_estimate = 0.0;
      out.flags.set(EvalFlag::pole_proximity);
      return out;
    }
    const Real mag2 = squared_abs(f.value.value);
    if (mag2 < Real(pole_proximity_threshold * pole_proximity_threshold)) {
      out.flags.set(EvalFlag::pole_proximity);
    }
    if (max_abs(f.value.value) < Real(underflow_threshold)) {
      out.value = ExtendedComplex<Real>::infinity();
      out.error_estimate = std::numeric_limits<double>::infinity();
      out.flags.set(EvalFlag::overflow);
      return out;
    }
    out.value = ExtendedComplex<Real>::from(reciprocal(f.value.value));
    if (out.value.at_infinity) {
      out.flags.set(EvalFlag::overflow);
      out.error_estimate = std::numeric_limits<double>::infinity();
      return out;
    }
    const double m2 = static_cast<double>(mag2);
    out.error_estimate = f.error_estimate / m2;
    if (out.error_estimate <= cfg.tol) {
      out.flags.clear(EvalFlag::max_depth_reached);
      return out;
    }
    // |f(z+1)| < 1 inflates the error; retry once with a tighter target.
    const double tighter = cfg.tol * m2;
    if (attempt == 0 && f.flags.empty() && tighter > 1e-300 &&
        tighter < inner.tol) {
      inner.tol = tighter;
      continue;
    }
    out.flags.set(EvalFlag::max_depth_reached);
    return out;
  }
}

/// Explicit bound on psi^n(a_n(s)) - psi^n(b_n(s)) for real s > 0:
/// max(lambda_2^{s-1}, 1) s (n+1) (lambda_n^2 - lambda_{n-1}^2)
///   / (lambda_n lambda_{n-1}^2).
template <class Real>
Real error_bound_step1(const Real& s, std::size_t n,
                       const LambdaTable<Real>& table) {
  if (n < 2) {
    throw index_error("error bound requires n >= 2");
  }
  if (!(s > 0)) {
    throw domain_error("error bound requires s > 0");
  }
  using std::pow;
  const Real& ln = table.at(n);
  const Real& lp = table[n - 1];
  const Real factor = s > 1 ? pow(table[2], s - 1) : Real(1);
  // lambda_n^2 - lambda_{n-1}^2 = (lambda_n + lambda_{n-1}) / lambda_n.
  const Real diff_sq = (ln + lp) / ln;
  return factor * s * Real(n + 1) * diff_sq / (ln * lp * lp);
}

/// Certified bracket psi^n(b_n(s)) <= f(s) <= psi^n(a_n(s)), 0 < s <= 1.
template <class Real>
Bracket<Real> bracket_f(const Real& s, std::size_t n,
                        const LambdaTable<Real>& table) {
  if (!(s > 0 && s <= 1)) {
    throw domain_error("bracket_f requires 0 < s <= 1");
  }
  if (n < 2 || n >= table.nmax()) {
    throw index_error("bracket_f requires 2 <= n < nmax, got n=" +
                      std::to_string(n));
  }
  using std::expm1;
  const Real dev_b = table[n] * expm1(s * log_step(table, n));
  const Real dev_a = table[n] * expm1(s * log_step(table, n - 1));
  return {detail::iterate_deviation(table, n, dev_b).value,
          detail::iterate_deviation(table, n, dev_a).value};
}

/// f(s) for real s > 0 via the certified bracket of f(s0), s = s0 + k with
/// s0 in (0, 1], transported by phi^k. error_estimate is the transported
/// bracket width.
template <class Real>
EvalResult<Real> eval_f_real(const Real& s, const EvalConfig& cfg,
                             const LambdaTable<Real>& table) {
  validate(cfg);
  detail::require_table(table, required_table_nmax(cfg));
  if (!(s > 0) || !is_finite(s)) {
    throw domain_error("eval_f_real requires finite s > 0");
  }
  using std::ceil;
  const Real k_real = ceil(s) - 1;
  const auto shift = static_cast<std::size_t>(static_cast<double>(k_real));
  const Real s0 = s - k_real;

  std::size_t n = std::max<std::size_t>(cfg.n_start, 2);
  EvalResult<Real> out;
  for (;;) {
    const Bracket<Real> br = bracket_f(s0, n, table);
    const Real lo = phi_iter(br.lo, shift);
    const Real hi = phi_iter(br.hi, shift);
    out.value = ExtendedComplex<Real>::from(phi_iter((br.lo + br.hi) / 2, shift));
    out.error_estimate = static_cast<double>(hi - lo);
    out.n_used = n;
    if (out.error_estimate <= cfg.tol || n >= cfg.n_max) {
      break;
    }
    n = std::min(2 * n, cfg.n_max);
  }
  if (!(out.error_estimate <= cfg.tol)) {
    out.flags.set(EvalFlag::max_depth_reached);
  }
  return out;
}

/// |f(z) - psi(f(z + 1))| from two independent evaluations.
template <class Real>
ShiftCheck<Real> shift_identity_check(const complex_t<Real>& z,
                                      const EvalConfig& cfg,
                                      const LambdaTable<Real>& table) {
  const auto here = eval_f(z, cfg, table);
  const auto next = eval_f(z + make_complex<Real>(Real(1)), cfg, table);
  ShiftCheck<Real> out;
  out.flags = here.flags;
  out.flags |= next.flags;
  const auto mapped = psi(next.value);
  if (here.value.at_infinity || mapped.at_infinity) {
    out.residual = here.value.at_infinity == mapped.at_infinity
                       ? Real(0)
                       : std::numeric_limits<Real>::infinity();
    return out;
  }
  using std::sqrt;
  out.residual = sqrt(squared_abs(here.value.value - mapped.value));
  return out;
}

}  // namespace fpm
