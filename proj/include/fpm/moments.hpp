#pragma once

// The transform T((a_n))_n = 1 / (a_0 + ... + a_n) on finite prefixes, its
// fixed point m_n, and the Hausdorff (complete monotonicity) diagnostic.
// All operations are prefix-local: output n depends on a_0..a_n only.

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "fpm/errors.hpp"
#include "fpm/lambda_table.hpp"
#include "fpm/summation.hpp"

namespace fpm {

template <class Real>
struct MomentSeq {
  std::vector<Real> values;

  bool normalized() const { return !values.empty() && values.front() == Real(1); }
  std::size_t size() const { return values.size(); }
};

// Difference depths that survive rounding: one digit is lost per level.
template <class Real>
constexpr std::size_t default_monotone_depth() {
  return digits10_v<Real> > 20 ? 25 : 12;
}

/// (m_0, ..., m_{length-1}) from the lambda table.
template <class Real>
MomentSeq<Real> fixed_point_prefix(const LambdaTable<Real>& table,
                                   std::size_t length) {
  if (length > table.nmax()) {
    throw capacity_error("moment prefix of length " + std::to_string(length) +
                         " needs lambda up to index " + std::to_string(length));
  }
  MomentSeq<Real> out;
  out.values.reserve(length);
  for (std::size_t k = 0; k < length; ++k) {
    out.values.push_back(moment(table, k));
  }
  return out;
}

template <class Real>
MomentSeq<Real> transform_T(const MomentSeq<Real>& seq) {
  MomentSeq<Real> out;
  out.values.reserve(seq.size());
  CompensatedSum<Real> partial;
  for (std::size_t n = 0; n < seq.size(); ++n) {
    partial += seq.values[n];
    const Real s = partial.value();
    if (s == Real(0)) {
      throw division_error("partial sum vanishes at index " + std::to_string(n),
                           n);
    }
    out.values.push_back(Real(1) / s);
  }
  return out;
}

template <class Real>
MomentSeq<Real> iterate_T(MomentSeq<Real> seq, std::size_t k) {
  for (std::size_t j = 0; j < k; ++j) {
    seq = transform_T(seq);
  }
  return seq;
}

/// sup_n |a_n - b_n| over the common prefix.
template <class Real>
Real sup_distance(const MomentSeq<Real>& a, const MomentSeq<Real>& b) {
  using std::abs;
  Real worst = 0;
  const std::size_t len = a.size() < b.size() ? a.size() : b.size();
  for (std::size_t n = 0; n < len; ++n) {
    const Real d = abs(a.values[n] - b.values[n]);
    if (d > worst) {
      worst = d;
    }
  }
  return worst;
}

/// rows[k][n] = (-1)^k Delta^k a_n, k = 0..depth.
template <class Real>
struct DiffTable {
  std::vector<std::vector<Real>> rows;

  std::size_t depth() const { return rows.empty() ? 0 : rows.size() - 1; }
};

template <class Real>
DiffTable<Real> build_diff_table(const MomentSeq<Real>& seq, std::size_t depth) {
  if (depth + 1 > seq.size()) {
    throw domain_error("difference depth " + std::to_string(depth) +
                       " needs at least " + std::to_string(depth + 1) +
                       " terms, got " + std::to_string(seq.size()));
  }
  DiffTable<Real> table;
  table.rows.reserve(depth + 1);
  table.rows.push_back(seq.values);
  for (std::size_t k = 1; k <= depth; ++k) {
    const auto& prev = table.rows.back();
    std::vector<Real> row(prev.size() - 1);
    for (std::size_t n = 0; n < row.size(); ++n) {
      row[n] = prev[n] - prev[n + 1];
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

template <class Real>
struct MonotoneCheck {
  bool pass = true;
  Real worst{};  // most negative (or smallest) entry
  std::size_t k = 0;
  std::size_t n = 0;
};

/// Hausdorff criterion on a prefix: every (-1)^k Delta^k a_n >= -tol.
template <class Real>
MonotoneCheck<Real> completely_monotone_check(const MomentSeq<Real>& seq,
                                              std::size_t depth,
                                              const Real& tol) {
  const DiffTable<Real> table = build_diff_table(seq, depth);
  MonotoneCheck<Real> out;
  bool first = true;
  for (std::size_t k = 0; k < table.rows.size(); ++k) {
    for (std::size_t n = 0; n < table.rows[k].size(); ++n) {
      const Real& v = table.rows[k][n];
      if (first || v < out.worst) {
        out.worst = v;
        out.k = k;
        out.n = n;
        first = false;
      }
    }
  }
  out.pass = !(out.worst < -tol);
  return out;
}

/// max_{n <= n_check} |m_n (m_0 + ... + m_n) - 1|.
template <class Real>
Real fixed_point_residual(const LambdaTable<Real>& table, std::size_t n_check) {
  if (n_check + 1 > table.nmax()) {
    throw capacity_error("fixed point residual up to " +
                         std::to_string(n_check) + " needs lambda up to " +
                         std::to_string(n_check + 1));
  }
  using std::abs;
  CompensatedSum<Real> partial;
  Real worst = 0;
  for (std::size_t n = 0; n <= n_check; ++n) {
    const Real m = moment(table, n);
    partial += m;
    const Real r = abs(m * partial.value() - Real(1));
    if (r > worst) {
      worst = r;
    }
  }
  return worst;
}

}  // namespace fpm
