#pragma once

// The companion sequence lambda_0 = 0, lambda_{n+1} = phi(lambda_n) and the
// fixed-point moments m_n = 1 / lambda_{n+1}.

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fpm/errors.hpp"
#include "fpm/scalar.hpp"
#include "fpm/summation.hpp"

namespace fpm {

// 2^24 entries.
inline constexpr std::size_t default_table_cap = std::size_t{1} << 24;

template <class Real>
class LambdaTable;

template <class Real>
LambdaTable<Real> build_lambda_table(std::size_t nmax,
                                     std::size_t cap = default_table_cap);

/// Immutable prefix lambda_0..lambda_nmax. Safe for concurrent reads.
template <class Real>
class LambdaTable {
 public:
  std::size_t nmax() const { return values_.size() - 1; }
  int precision_digits() const { return digits10_v<Real>; }

  const Real& operator[](std::size_t k) const { return values_[k]; }

  const Real& at(std::size_t k) const {
    if (k >= values_.size()) {
      throw index_error("lambda index " + std::to_string(k) +
                        " beyond table nmax " + std::to_string(nmax()));
    }
    return values_[k];
  }

  std::span<const Real> values() const { return values_; }

 private:
  explicit LambdaTable(std::vector<Real> values) : values_(std::move(values)) {}

  friend LambdaTable build_lambda_table<Real>(std::size_t, std::size_t);

  std::vector<Real> values_;
};

template <class Real>
LambdaTable<Real> build_lambda_table(std::size_t nmax, std::size_t cap) {
  if (nmax >= cap) {
    throw capacity_error("lambda table of " + std::to_string(nmax + 1) +
                         " entries exceeds the cap of " + std::to_string(cap));
  }
  using Acc = accumulator_t<Real>;
  using std::sqrt;
  std::vector<Real> values;
  values.reserve(nmax + 1);
  Acc x = 0;
  values.push_back(Real(0));
  for (std::size_t k = 1; k <= nmax; ++k) {
    x = (x + sqrt(x * x + 4)) / 2;
    values.push_back(static_cast<Real>(x));
  }
  return LambdaTable<Real>(std::move(values));
}

/// m_n = 1 / lambda_{n+1}.
template <class Real>
Real moment(const LambdaTable<Real>& table, std::size_t n) {
  return Real(1) / table.at(n + 1);
}

/// rho_{n,N} = lambda_n - lambda_{n-N}, evaluated as the positive sum
/// of 1/lambda_{n+1-k} for k = 1..N.
template <class Real>
Real rho(const LambdaTable<Real>& table, std::size_t n, std::size_t N) {
  if (N < 1 || N > n) {
    throw index_error("rho requires n >= N >= 1, got n=" + std::to_string(n) +
                      " N=" + std::to_string(N));
  }
  table.at(n);
  CompensatedSum<Real> sum;
  for (std::size_t k = N; k >= 1; --k) {
    sum += Real(1) / table[n + 1 - k];
  }
  return sum.value();
}

/// log(lambda_{n+1} / lambda_n) as log1p(1 / (lambda_n lambda_{n+1})).
template <class Real>
Real log_step(const LambdaTable<Real>& table, std::size_t n) {
  if (n < 1 || n >= table.nmax()) {
    throw index_error("log_step requires 1 <= n < nmax, got n=" +
                      std::to_string(n));
  }
  using std::log1p;
  return log1p(Real(1) / (table[n] * table[n + 1]));
}

}  // namespace fpm
