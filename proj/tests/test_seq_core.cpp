#include <doctest.h>

#include <cmath>
#include <limits>

#include "fpm/errors.hpp"
#include "fpm/lambda_table.hpp"
#include "fpm/summation.hpp"
#include "oracle_values.hpp"
#include "test_util.hpp"

using namespace fpm;
using testutil::rel_err;

TEST_CASE("table of length one holds lambda_0 = 0") {
  const auto t = build_lambda_table<double>(0);
  CHECK(t.nmax() == 0);
  CHECK(t[0] == 0.0);
  CHECK_THROWS_AS((void)t.at(1), index_error);
}

TEST_CASE("first lambdas match their radical forms") {
  const auto t = build_lambda_table<double>(3);
  CHECK(t[1] == 1.0);
  CHECK(rel_err(t[2], oracle::lambda2_closed) < 4e-16);
  CHECK(rel_err(t[3], oracle::lambda3_closed) < 4e-16);
  CHECK(rel_err(t[2], (1 + std::sqrt(5.0)) / 2) < 4e-16);
  CHECK(rel_err(t[3], (std::sqrt(22 + 2 * std::sqrt(5.0)) + std::sqrt(5.0) + 1) / 4) <
        4e-16);
}

TEST_CASE("extended table carries more than 30 digits") {
  const auto t = build_lambda_table<extended_real>(4);
  CHECK(t.precision_digits() >= 30);
  const extended_real five = 5;
  const extended_real l2 = (1 + sqrt(five)) / 2;
  CHECK(abs(t[2] - l2) < extended_real("1e-32"));
  const extended_real l3 = (sqrt(22 + 2 * sqrt(five)) + sqrt(five) + 1) / 4;
  CHECK(abs(t[3] - l3) < extended_real("1e-32"));
}

TEST_CASE("capacity cap is an explicit error") {
  CHECK_THROWS_AS(build_lambda_table<double>(default_table_cap), capacity_error);
  CHECK_THROWS_AS(build_lambda_table<double>(100, 50), capacity_error);
  CHECK_NOTHROW(build_lambda_table<double>(49, 50));
}

TEST_CASE("moments") {
  const auto t = build_lambda_table<double>(10);
  CHECK(moment(t, 0) == 1.0);
  CHECK(rel_err(moment(t, 1), oracle::m1_closed) < 4e-16);
  CHECK(rel_err(moment(t, 1), (std::sqrt(5.0) - 1) / 2) < 4e-16);
  CHECK(rel_err(moment(t, 2), oracle::m2_closed) < 4e-16);
  CHECK(rel_err(moment(t, 2),
                (std::sqrt(22 + 2 * std::sqrt(5.0)) - std::sqrt(5.0) - 1) / 4) < 1e-15);
  CHECK(rel_err(moment(t, 3), oracle::m3) < 4e-16);
  CHECK_THROWS_AS((void)moment(t, 10), index_error);
}

TEST_CASE("rho") {
  const auto t = build_lambda_table<double>(1000);
  SUBCASE("n = N gives lambda_N") {
    for (std::size_t N : {1u, 2u, 7u, 100u, 1000u}) {
      CHECK(rel_err(rho(t, N, N), t[N]) < 1e-12);
    }
  }
  SUBCASE("N = 1 gives 1 / lambda_n") {
    for (std::size_t n : {1u, 2u, 50u, 999u}) {
      CHECK(rel_err(rho(t, n, 1), 1.0 / t[n]) < 1e-15);
    }
  }
  SUBCASE("smallest two-term case") {
    CHECK(rel_err(rho(t, 2, 2), 1.0 / t[1] + 1.0 / t[2]) < 1e-15);
    CHECK(rel_err(rho(t, 2, 2), t[2]) < 1e-15);
  }
  SUBCASE("sum and difference forms agree") {
    for (std::size_t n = 1; n <= 1000; n += 37) {
      for (std::size_t N = 1; N <= n; N += 11) {
        CHECK(rel_err(rho(t, n, N), t[n] - t[n - N]) < 1e-12);
      }
    }
  }
  SUBCASE("admissibility") {
    CHECK_THROWS((void)rho(t, 5, 0));
    CHECK_THROWS((void)rho(t, 5, 6));
    CHECK_THROWS((void)rho(t, 1001, 1));
  }
}

TEST_CASE("log_step") {
  const auto t = build_lambda_table<double>(1000001);
  CHECK(rel_err(log_step(t, 1), oracle::log_lambda2) < 4e-16);
  const std::size_t n = 1000000;
  const double ls = log_step(t, n);
  CHECK(ls > 0.0);
  CHECK(ls <= 1.0 / (t[n] * t[n + 1]));
  CHECK(std::abs(ls * 2.0 * n - 1.0) < 0.1);
  CHECK(rel_err(ls, oracle::log_step_1e6) < 1e-12);
  CHECK_THROWS((void)log_step(t, 0));
  CHECK_THROWS((void)log_step(t, 1000001));
}

TEST_CASE("deep table value against the oracle") {
  const auto t = build_lambda_table<double>(1000000);
  CHECK(rel_err(t[1000000], oracle::lambda_1e6) < 1e-14);
  const auto te = build_lambda_table<extended_real>(1000000);
  CHECK(rel_err(static_cast<double>(te[1000000]), oracle::lambda_1e6) < 1e-15);
}

TEST_CASE("squared growth of lambda at one million") {
  const auto t = build_lambda_table<double>(1000001);
  const double n = 1e6;
  const double l = t[1000000];
  const double l1 = t[1000001];
  const double ratio_dev = l * l / n - 2.0;
  // lambda_{n+1}^2 - lambda_n^2 = (lambda_{n+1} + lambda_n) / lambda_{n+1}.
  const double step_dev = (l1 + l) / l1 - 2.0;
  CHECK(std::abs(ratio_dev) < 1e-4);
  CHECK(std::abs(step_dev) < 1e-4);
  CHECK(std::abs(ratio_dev - oracle::lambda_sq_ratio_dev_1e6) < 1e-12);
  CHECK(std::abs(step_dev - oracle::lambda_sq_step_dev_1e6) < 1e-12);
}

TEST_CASE("compensated sum recovers cancelled terms") {
  CompensatedSum<double> s;
  s += 1.0;
  s += 1e-17;
  s += -1.0;
  CHECK(s.value() == doctest::Approx(1e-17).epsilon(1e-6));
}
