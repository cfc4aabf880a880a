// Acceptance run: one PASS/FAIL line per criterion with the measured worst
// case, its limit and the wall time. Exit status is nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fpm/evaluator.hpp"
#include "fpm/lambda_table.hpp"
#include "fpm/moments.hpp"
#include "fpm/psi.hpp"
#include "oracle_values.hpp"

using namespace fpm;
using C = std::complex<double>;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

const EvalConfig default_cfg{};

const LambdaTable<double>& eval_table() {
  static const auto t = build_lambda_table<double>(required_table_nmax(default_cfg));
  return t;
}

// 1. f(n) = lambda_n, n = 1..20, and f(2) against the golden ratio.
Outcome golden_values() {
  const auto t = build_lambda_table<double>(required_table_nmax(default_cfg));
  double worst = 0.0;
  bool flags_ok = true;
  for (int n = 1; n <= 20; ++n) {
    const auto r = eval_f(C(n), default_cfg, t);
    flags_ok = flags_ok && r.ok();
    worst = std::max(worst, std::abs(r.value.value - t[n]) / t[n]);
  }
  const auto two = eval_f(C(2.0), default_cfg, t);
  worst = std::max(worst, std::abs(two.value.value - oracle::lambda2_closed) /
                              oracle::lambda2_closed);
  return {flags_ok && worst < 1e-9, fmt("max rel err %.3g (limit %.0e)", worst, 1e-9)};
}

// 2. |f(z) - psi(f(z+1))| on a 41x41 grid of [-0.5, 4] x [-3, 3].
Outcome functional_equation() {
  const auto& t = eval_table();
  double worst = 0.0;
  int excluded = 0;
  for (int i = 0; i <= 40; ++i) {
    for (int j = 0; j <= 40; ++j) {
      const C z(-0.5 + 4.5 * i / 40.0, -3.0 + 6.0 * j / 40.0);
      const auto r = shift_identity_check(z, default_cfg, t);
      if (r.flags.has(EvalFlag::pole_proximity)) {
        ++excluded;
        continue;
      }
      worst = std::max(worst, r.residual);
    }
  }
  return {worst < 1e-8,
          fmt("max residual %.3g (limit 1e-08), %g pole-flagged points excluded",
              worst, excluded)};
}

// 3. F(n) = m_n for n <= 20.
Outcome mellin_duality() {
  const auto& t = eval_table();
  double worst = 0.0;
  for (int n = 0; n <= 20; ++n) {
    const double m = moment(t, n);
    const auto r = eval_F(C(n), default_cfg, t);
    worst = std::max(worst, std::abs(r.value.value - m) / m);
  }
  return {worst < 1e-9, fmt("max rel err %.3g (limit %.0e)", worst, 1e-9)};
}

// 4. Brackets for 100 seeded s and four depths.
Outcome certified_bracket() {
  const auto& t = eval_table();
  std::mt19937_64 rng(20240404);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double width_excess = -INFINITY;
  double outside = -INFINITY;
  bool ordered = true;
  for (int i = 0; i < 100; ++i) {
    const double s = 1.0 - unit(rng);
    const double f = eval_f(C(s), default_cfg, t).value.value.real();
    for (std::size_t n : {16u, 64u, 256u, 1024u}) {
      const auto br = bracket_f(s, n, t);
      ordered = ordered && br.lo <= br.hi;
      width_excess = std::max(width_excess, br.width() - error_bound_step1(s, n, t));
      outside = std::max({outside, (br.lo - 1e-12) - f, f - (br.hi + 1e-12)});
    }
  }
  return {ordered && width_excess <= 0.0 && outside <= 0.0,
          fmt("max(width - bound) %.3g, max distance of f outside [lo-1e-12, "
              "hi+1e-12] %.3g (both must be <= 0)",
              width_excess, outside)};
}

// 5. Classical seed gap against the explicit bound.
Outcome error_bound_validity() {
  const auto t = build_lambda_table<double>(10001);
  double worst = 0.0;
  for (double s : {0.1, 0.5, 1.0}) {
    for (std::size_t n : {10u, 100u, 1000u, 10000u}) {
      const auto a = seeded_iterate(t, n, C(s), SeedKind::a, 2);
      const auto b = seeded_iterate(t, n, C(s), SeedKind::b, 2);
      const double gap = std::abs(a.value - b.value);
      worst = std::max(worst, gap / error_bound_step1(s, n, t));
    }
  }
  return {worst <= 1.0, fmt("max gap/bound %.3g (limit %g)", worst, 1.0)};
}

// 6. Growth of lambda up to 10^6.
Outcome lambda_growth() {
  const std::size_t nmax = 1000000;
  const auto t = build_lambda_table<double>(nmax + 1);
  bool sandwich = true;
  for (std::size_t n = 0; n <= nmax; ++n) {
    const double nd = static_cast<double>(n);
    sandwich = sandwich && std::sqrt(nd) <= t[n] && t[n] <= std::sqrt(2 * nd);
  }
  // lambda_{n+1}/lambda_n = exp(log_step(n)); compare the exponents, which
  // keep full relative precision.
  bool decreasing = true;
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<std::size_t> pick(1, nmax - 1);
  std::vector<std::size_t> ns;
  for (int i = 0; i < 5000; ++i) {
    ns.push_back(pick(rng));
  }
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  for (std::size_t i = 1; i < ns.size(); ++i) {
    decreasing = decreasing && log_step(t, ns[i]) < log_step(t, ns[i - 1]);
  }
  const double l = t[nmax];
  const double l1 = t[nmax + 1];
  const double ratio_dev = std::abs(l * l / 1e6 - 2.0);
  const double step_dev = std::abs((l1 + l) / l1 - 2.0);
  const bool pass = sandwich && decreasing && ratio_dev < 1e-3 && step_dev < 1e-3;
  return {pass, std::string("sandwich ") + (sandwich ? "holds" : "broken") +
                    ", ratio " + (decreasing ? "decreasing" : "not decreasing") +
                    fmt(", |l^2/n - 2| %.3g, |l_{n+1}^2 - l_n^2 - 2| %.3g (limit 1e-03)",
                        ratio_dev, step_dev)};
}

// 7. Sampled disc containment.
Outcome disc_containment() {
  const auto t = build_lambda_table<double>(201);
  double worst = 0.0;
  std::size_t cases = 0;
  for (std::size_t n = 2; n <= 200; ++n) {
    for (std::size_t N = 1; N <= std::min<std::size_t>(n / 2, 20); ++N) {
      for (double c : {0.25, 0.5, 1.0}) {
        const auto cert = make_disc_cert(t, n, N, c);
        worst = std::max(worst, disc_step_worst_ratio(cert, t, 1000, 42));
        ++cases;
      }
    }
  }
  return {worst < 1.0 + 1e-12,
          fmt("worst image/target radius %.6g over %g certificates", worst,
              static_cast<double>(cases))};
}

// 8. lambda_{n+1}^{k-1} lambda_{n-k+1} <= lambda_n^k.
Outcome concavity() {
  const auto t = build_lambda_table<double>(1001);
  long double worst = 0.0L;
  for (std::size_t n = 1; n <= 1000; ++n) {
    for (std::size_t k = 1; k <= std::min<std::size_t>(n, 50); ++k) {
      long double lhs = t[n - k + 1];
      long double rhs = 1.0L;
      for (std::size_t j = 0; j < k; ++j) {
        if (j + 1 < k) {
          lhs *= t[n + 1];
        }
        rhs *= t[n];
      }
      worst = std::max(worst, lhs / rhs - 1.0L);
    }
  }
  return {worst <= 1e-12L,
          fmt("max lhs/rhs - 1 = %.3g (limit %.0e)", static_cast<double>(worst), 1e-12)};
}

// 9. Fixed point of T and its complete monotonicity.
Outcome fixed_point() {
  const auto t = build_lambda_table<double>(502);
  const auto m = fixed_point_prefix(t, 501);
  const auto tm = transform_T(m);
  double worst = 0.0;
  for (std::size_t n = 0; n < m.size(); ++n) {
    worst = std::max(worst, std::abs(tm.values[n] - m.values[n]) / m.values[n]);
  }
  const auto cm = completely_monotone_check(fixed_point_prefix(t, 26), 12, 1e-8);
  return {worst < 1e-11 && cm.pass,
          fmt("T rel err %.3g (limit 1e-11), worst signed difference %.3g (>= -1e-08)",
              worst, cm.worst)};
}

// 10. psi^n(lambda_n) = 0.
Outcome orbit_to_zero() {
  const auto t = build_lambda_table<double>(50);
  double worst = 0.0;
  for (std::size_t n = 1; n <= 50; ++n) {
    const auto w = psi_iter(ExtendedComplex<double>::from(t[n]), n);
    const double d = w.at_infinity ? INFINITY : std::abs(w.value);
    worst = std::max(worst, d / (1e-10 * static_cast<double>(n)));
  }
  return {worst <= 1.0, fmt("max |psi^n(lambda_n)| / (1e-10 n) = %.3g (limit %g)", worst, 1.0)};
}

// 11. Real-axis bracket path against the complex evaluator.
Outcome cross_path() {
  const auto& t = eval_table();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double s = 10.0 * (1.0 - unit(rng));
    const auto real_path = eval_f_real(s, default_cfg, t);
    const auto complex_path = eval_f(C(s), default_cfg, t);
    const double gap = std::abs(real_path.value.value - complex_path.value.value);
    worst = std::max(worst,
                     gap / (real_path.error_estimate + complex_path.error_estimate));
  }
  return {worst <= 1.0, fmt("max gap / combined estimate %.3g (limit %g)", worst, 1.0)};
}

// 12. Second central differences of -log f on [0.1, 10] at h = 0.01.
Outcome convexity() {
  const auto& t = eval_table();
  const double h = 0.01;
  std::vector<double> v;
  for (int k = 0; k <= 992; ++k) {
    const double s = 0.09 + h * k;
    v.push_back(-std::log(eval_f(C(s), default_cfg, t).value.value.real()));
  }
  double worst = INFINITY;
  for (std::size_t k = 1; k + 1 < v.size(); ++k) {
    worst = std::min(worst, v[k - 1] - 2 * v[k] + v[k + 1]);
  }
  return {worst >= -1e-6, fmt("min second difference %.3g (limit >= %.0e)", worst, -1e-6)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double time_limit;  // seconds; 0 means none stated
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "golden values f(n) = lambda_n", 1.0, golden_values},
      {2, "functional equation on 41x41 grid", 30.0, functional_equation},
      {3, "F(n) = m_n", 0.0, mellin_duality},
      {4, "certified bracket", 0.0, certified_bracket},
      {5, "explicit error bound dominates seed gap", 0.0, error_bound_validity},
      {6, "lambda growth suite at 10^6", 5.0, lambda_growth},
      {7, "disc containment", 0.0, disc_containment},
      {8, "concavity inequality", 0.0, concavity},
      {9, "fixed point of T", 0.0, fixed_point},
      {10, "psi^n(lambda_n) = 0", 0.0, orbit_to_zero},
      {11, "real and complex paths agree", 0.0, cross_path},
      {12, "convexity of log(1/f)", 0.0, convexity},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.time_limit == 0.0 || secs < c.time_limit;
    const bool pass = o.pass && in_time;
    failures += pass ? 0 : 1;
    std::printf("%s  %2d  %-42s %s; %.2fs", pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs);
    if (c.time_limit > 0.0) {
      std::printf(" (limit %.0fs)", c.time_limit);
    }
    std::printf("\n");
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
