#include "fpm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <iomanip>
#include <ostream>
#include <random>
#include <stdexcept>
#include <type_traits>

#include "fpm/evaluator.hpp"
#include "fpm/lambda_table.hpp"
#include "fpm/moments.hpp"
#include "fpm/psi.hpp"

namespace fpm {

Suite parse_suite(std::string_view text) {
  if (text == "sequences") return Suite::sequences;
  if (text == "dynamics") return Suite::dynamics;
  if (text == "evaluator") return Suite::evaluator;
  if (text == "moments") return Suite::moments;
  if (text == "all") return Suite::all;
  throw std::invalid_argument("unknown suite: " + std::string(text));
}

std::string_view to_string(Suite s) {
  switch (s) {
    case Suite::sequences:
      return "sequences";
    case Suite::dynamics:
      return "dynamics";
    case Suite::evaluator:
      return "evaluator";
    case Suite::moments:
      return "moments";
    case Suite::all:
      return "all";
  }
  return "all";
}

bool print_results(std::ostream& os, const std::vector<CheckResult>& results) {
  bool all = true;
  for (const auto& r : results) {
    all = all && r.pass;
    os << (r.pass ? "PASS " : "FAIL ") << r.suite << '.' << r.name
       << "  measured=" << to_shortest(r.measured) << "  required "
       << r.relation << ' ' << to_shortest(r.limit) << '\n';
  }
  os << (all ? "all checks passed" : "some checks FAILED") << " ("
     << results.size() << " checks)\n";
  return all;
}

namespace {

class Recorder {
 public:
  Recorder(std::vector<CheckResult>& out, std::string suite)
      : out_(out), suite_(std::move(suite)) {}

  void below(std::string name, double measured, double limit) {
    out_.push_back({suite_, std::move(name), measured < limit, measured, "<", limit});
  }
  void at_most(std::string name, double measured, double limit) {
    out_.push_back({suite_, std::move(name), measured <= limit, measured, "<=", limit});
  }
  void at_least(std::string name, double measured, double limit) {
    out_.push_back({suite_, std::move(name), measured >= limit, measured, ">=", limit});
  }

 private:
  std::vector<CheckResult>& out_;
  std::string suite_;
};

template <class Real>
double to_d(const Real& x) {
  return static_cast<double>(x);
}

template <class Real>
void sequences_suite(std::vector<CheckResult>& out) {
  Recorder rec(out, "sequences");
  constexpr std::size_t big = 1000000;
  const auto table = build_lambda_table<Real>(big + 1);

  // sqrt(n) <= lambda_n <= sqrt(2n), as slack in the squared form.
  double slack = 1.0;
  for (std::size_t n = 1; n <= big; ++n) {
    const Real sq = table[n] * table[n];
    const double lower = to_d((sq - Real(n)) / Real(n));
    const double upper = to_d((Real(2 * n) - sq) / Real(n));
    slack = std::min({slack, lower, upper});
  }
  rec.at_least("lambda_bounds_sqrt_n_sqrt_2n", slack, 0.0);

  // lambda_{n+1}/lambda_n strictly decreasing (via its logarithm).
  double worst_rise = -1.0;
  for (std::size_t n = 1; n + 2 <= big; ++n) {
    const double rise = to_d(log_step(table, n + 1) - log_step(table, n));
    worst_rise = std::max(worst_rise, rise);
  }
  rec.below("ratio_strictly_decreasing", worst_rise, 0.0);

  const Real ln = table[big];
  const Real ln1 = table[big + 1];
  // lambda_{n+1}^2 - lambda_n^2 = (lambda_{n+1} + lambda_n) / lambda_{n+1}.
  const double step_dev = to_d((ln1 + ln) / ln1 - 2);
  rec.below("square_step_limit_at_1e6", std::abs(step_dev), 1e-4);
  rec.below("square_ratio_limit_at_1e6", std::abs(to_d(ln * ln / Real(big) - 2)),
            1e-4);

  double prev = 1e300;
  bool decreasing = true;
  for (std::size_t n = 1; n <= big; n *= 2) {
    const double dev = std::abs(to_d((table[n + 1] + table[n]) / table[n + 1] - 2));
    decreasing = decreasing && dev < prev;
    prev = dev;
  }
  rec.at_least("square_step_deviation_decreasing", decreasing ? 1.0 : 0.0, 1.0);

  double fixed = 0.0;
  double quadratic = 0.0;
  CompensatedSum<Real> partial;
  for (std::size_t k = 0; k <= 10000; ++k) {
    const Real m = moment(table, k);
    partial += m;
    fixed = std::max(fixed, std::abs(to_d(m * partial.value() - 1)));
    const Real next = moment(table, k + 1);
    quadratic = std::max(quadratic, std::abs(to_d(next * next + next / m - 1)));
  }
  rec.below("fixed_point_equation_k_le_1e4", fixed, 1e-12);
  rec.below("quadratic_recursion_k_le_1e4", quadratic, 1e-12);

  // log of lambda_{n+1}^{k-1} lambda_{n-k+1} / lambda_n^k
  //   = (k-1) log_step(n) - sum_{j=n-k+1}^{n-1} log_step(j).
  double concave = -1.0;
  for (std::size_t n = 2; n <= 1000; ++n) {
    CompensatedSum<Real> tail;
    const Real ls = log_step(table, n);
    for (std::size_t k = 1; k <= std::min<std::size_t>(n, 50); ++k) {
      if (k >= 2) {
        tail += log_step(table, n - k + 1);
      }
      concave = std::max(concave, to_d(Real(k - 1) * ls - tail.value()));
    }
  }
  rec.at_most("concavity_inequality", concave, std::log1p(1e-12));

  double ulps = 0.0;
  for (std::size_t k = 0; k + 1 <= 100000; ++k) {
    const Real image = psi_real(table[k + 1]);
    const Real scale = epsilon_v<Real>() * std::max(Real(1), table[k + 1]);
    ulps = std::max(ulps, std::abs(to_d((image - table[k]) / scale)));
  }
  rec.at_most("table_consistent_with_psi_ulps", ulps, 10.0);

  double forms = 0.0;
  for (std::size_t n = 1; n <= 1000; ++n) {
    for (std::size_t N : {std::size_t{1}, std::size_t{2}, n / 2, n}) {
      if (N < 1 || N > n) continue;
      const Real sum = rho(table, n, N);
      const Real diff = table[n] - table[n - N];
      forms = std::max(forms, std::abs(to_d((sum - diff) / sum)));
    }
  }
  rec.below("rho_sum_and_difference_agree", forms, 1e-12);
}

template <class Real>
void dynamics_suite(std::vector<CheckResult>& out, std::uint64_t seed) {
  using C = complex_t<Real>;
  using EC = ExtendedComplex<Real>;
  using std::sqrt;
  Recorder rec(out, "dynamics");
  const auto table = build_lambda_table<Real>(400);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> wide(-1000.0, 1000.0);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  double inverse = 0.0;
  double inverse_ulps = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const Real x = Real(wide(rng));
    const double gap = std::abs(to_d(psi_real(phi(x)) - x));
    using std::abs;
    const Real mag = std::max(Real(abs(x)), Real(2));
    inverse = std::max(inverse, gap);
    inverse_ulps = std::max(inverse_ulps, gap / to_d(mag * epsilon_v<Real>()));
  }
  rec.below("psi_phi_inverse_abs", inverse, 1e-13);
  // Binary64 cannot do better than one ulp of x on [-1e3, -724].
  if constexpr (std::is_same_v<Real, double>) {
    rec.at_most("psi_phi_inverse_ulps", inverse_ulps, 1.0);
  }

  double odd = 0.0;
  double upper_min = 1.0;
  for (int i = 0; i < 20000; ++i) {
    const C z = make_complex<Real>(Real(5 * unit(rng)), Real(5 * unit(rng)));
    const auto p = psi(EC::from(z)).value;
    const auto q = psi(EC::from(-z)).value;
    odd = std::max(odd, to_d(max_abs(p + q)));
    if (z.imag() > 0) {
      upper_min = std::min(upper_min, to_d(p.imag()));
    }
  }
  rec.below("psi_odd", odd, 1e-13);
  rec.below("upper_half_plane_invariant_min_im", -upper_min, 0.0);

  double mono = 1.0;
  for (int i = 0; i < 20000; ++i) {
    const double a = std::exp(6 * unit(rng));
    const double b = a * (1 + std::abs(unit(rng)) + 1e-9);
    mono = std::min(mono, to_d(psi_real(Real(b)) - psi_real(Real(a))));
  }
  rec.at_least("psi_increasing_on_positive_axis", mono > 0 ? 1.0 : 0.0, 1.0);

  // |psi^n(z)| grows like sqrt(2n) at worst (z = i), so 1e3 needs n near
  // 5e5; 2^20 steps leave room.
  double escape = 1e300;
  const std::size_t escape_depth = std::size_t{1} << 20;
  const int escape_samples = std::is_same_v<Real, double> ? 24 : 4;
  for (int i = 0; i < escape_samples; ++i) {
    const double y = (i % 2 ? -1 : 1) * (i < 2 ? 1.0 : 1 + 4 * std::abs(unit(rng)));
    const double x = i < 2 ? 0.0 : 10 * unit(rng);
    const auto w = psi_iter(EC::from(Real(x), Real(y)), escape_depth);
    escape = std::min(escape, w.at_infinity ? 1e300 : to_d(sqrt(squared_abs(w.value))));
  }
  rec.at_least("fatou_escape_depth_2pow20", escape, 1e3);

  double zero = 0.0;
  for (std::size_t n = 1; n <= 50; ++n) {
    const auto w = psi_iter(EC::from(table[n]), n);
    zero = std::max(zero, w.at_infinity ? 1e300 : to_d(max_abs(w.value)) / (1e-10 * n));
  }
  rec.at_most("psi_n_of_lambda_n_over_1e-10n", zero, 1.0);

  double phis = 0.0;
  for (std::size_t k = 1; k <= 50; ++k) {
    phis = std::max(phis, std::abs(to_d((phi_iter(Real(0), k) - table[k]) / table[k])));
  }
  rec.below("phi_iter_zero_is_lambda", phis, 1e-13);

  double disc = 0.0;
  std::size_t certs = 0;
  for (std::size_t n = 2; n <= 200; ++n) {
    for (std::size_t N = 1; N <= n / 2 && N <= 20; ++N) {
      for (double c : {0.25, 0.5, 1.0}) {
        const auto cert = make_disc_cert(table, n, N, c);
        disc = std::max(disc, to_d(disc_step_worst_ratio(cert, table, 200, seed + certs)));
        ++certs;
      }
    }
  }
  rec.below("disc_step_containment_worst_ratio", disc, 1.0 + 1e-12);
}

template <class Real>
void evaluator_suite(std::vector<CheckResult>& out, std::uint64_t seed) {
  using C = complex_t<Real>;
  using std::sqrt;
  Recorder rec(out, "evaluator");
  EvalConfig cfg;
  cfg.n_max = std::size_t{1} << 16;
  const auto table = build_lambda_table<Real>(required_table_nmax(cfg));
  auto at = [](double re, double im = 0.0) {
    return make_complex<Real>(Real(re), Real(im));
  };

  double golden = 0.0;
  double mellin = 0.0;
  for (std::size_t n = 1; n <= 20; ++n) {
    const auto f = eval_f(at(double(n)), cfg, table);
    golden = std::max(golden, to_d(sqrt(squared_abs(f.value.value - C(table[n])))) / to_d(table[n]));
  }
  for (std::size_t n = 0; n <= 20; ++n) {
    const auto F = eval_F(at(double(n)), cfg, table);
    const Real m = moment(table, n);
    mellin = std::max(mellin, to_d(sqrt(squared_abs(F.value.value - C(m))) / m));
  }
  rec.below("golden_f_n_equals_lambda_n_rel", golden, 1e-9);
  rec.below("mellin_F_n_equals_m_n_rel", mellin, 1e-9);

  double functional = 0.0;
  for (int i = 0; i <= 20; ++i) {
    for (int j = 0; j <= 20; ++j) {
      const C z = at(-0.5 + 4.5 * i / 20, -3.0 + 6.0 * j / 20);
      const auto check = shift_identity_check(z, cfg, table);
      if (check.flags.has(EvalFlag::pole_proximity)) continue;
      functional = std::max(functional, to_d(check.residual));
    }
  }
  rec.below("functional_equation_grid", functional, 1e-8);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double bracket = 0.0;
  for (int i = 0; i < 30; ++i) {
    const Real s = Real(1.0 - unit(rng));
    for (std::size_t n : {16, 64, 256, 1024}) {
      const auto br = bracket_f(s, n, table);
      const double excess = to_d(br.width() - error_bound_step1(s, n, table));
      bracket = std::max({bracket, to_d(br.lo - br.hi), excess});
    }
  }
  rec.at_most("bracket_ordered_and_within_bound", bracket, 0.0);

  double convex = 1.0;
  const double h = 0.01;
  auto neg_log_f = [&](double s) {
    using std::log;
    return -log(eval_f(at(s), cfg, table).value.value.real());
  };
  for (int i = 0; i <= 99; ++i) {
    const double s = 0.1 + (10.0 - 0.1) * i / 99.0;
    const Real lo = neg_log_f(std::max(s - h, 1e-3));
    const Real mid = neg_log_f(s);
    const Real hi = neg_log_f(s + h);
    convex = std::min(convex, to_d(lo - 2 * mid + hi));
  }
  rec.at_least("log_inverse_f_convex", convex, -1e-6);

  double conj = 0.0;
  for (int i = 0; i < 50; ++i) {
    const C z = at(6 * unit(rng) - 0.5, 6 * unit(rng) - 3);
    const auto a = eval_f(z, cfg, table).value.value;
    const auto b = eval_f(C(z.real(), -z.imag()), cfg, table).value.value;
    conj = std::max(conj, to_d(sqrt(squared_abs(C(a.real(), -a.imag()) - b))));
  }
  rec.below("conjugate_symmetry", conj, 1e-12);

  double cross = 0.0;
  for (int i = 0; i < 10; ++i) {
    const Real s = Real(10.0 * (1.0 - unit(rng)));
    const auto real_path = eval_f_real(s, cfg, table);
    const auto complex_path = eval_f(C(s), cfg, table);
    const double gap = to_d(sqrt(squared_abs(real_path.value.value - complex_path.value.value)));
    cross = std::max(cross, gap / (real_path.error_estimate + complex_path.error_estimate));
  }
  rec.at_most("real_and_complex_paths_agree_within_estimates", cross, 1.0);
}

template <class Real>
void moments_suite(std::vector<CheckResult>& out) {
  Recorder rec(out, "moments");
  const auto table = build_lambda_table<Real>(2000);
  const auto prefix = fixed_point_prefix(table, 501);
  const auto image = transform_T(prefix);
  double rel = 0.0;
  for (std::size_t k = 0; k < prefix.size(); ++k) {
    rel = std::max(rel, std::abs(to_d((image.values[k] - prefix.values[k]) / prefix.values[k])));
  }
  rec.below("fixed_point_of_T_rel", rel, 1e-11);

  const std::size_t depth = default_monotone_depth<Real>();
  const double tol = depth > 12 ? 1e-15 : 1e-8;
  const auto cm = completely_monotone_check(fixed_point_prefix(table, 26), depth, Real(tol));
  rec.at_least("completely_monotone_depth_" + std::to_string(depth), to_d(cm.worst), -tol);
  rec.below("fixed_point_residual_1e3", to_d(fixed_point_residual(table, 1000)), 1e-11);
}

template <class Real>
std::vector<CheckResult> run_all(Suite suite, std::uint64_t seed) {
  std::vector<CheckResult> out;
  const bool all = suite == Suite::all;
  if (all || suite == Suite::sequences) sequences_suite<Real>(out);
  if (all || suite == Suite::dynamics) dynamics_suite<Real>(out, seed);
  if (all || suite == Suite::evaluator) evaluator_suite<Real>(out, seed);
  if (all || suite == Suite::moments) moments_suite<Real>(out);
  return out;
}

}  // namespace

std::vector<CheckResult> run_verify(Suite suite, std::uint64_t seed,
                                    Precision precision) {
  if (precision == Precision::extended) {
    return run_all<extended_real>(suite, seed);
  }
  return run_all<double>(suite, seed);
}

}  // namespace fpm
