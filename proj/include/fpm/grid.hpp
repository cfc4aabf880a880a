#pragma once

// Rectangular sweeps of f over the complex plane. Records are ordered with
// the imaginary part in the outer loop and the real part in the inner loop,
// whatever the number of worker threads.

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "fpm/evaluator.hpp"
#include "fpm/scalar.hpp"

namespace fpm {

struct GridSpec {
  double re_min = 0.0;
  double re_max = 1.0;
  double im_min = 0.0;
  double im_max = 1.0;
  std::size_t re_steps = 2;
  std::size_t im_steps = 2;
  double tol = 1e-10;
};

// Throws domain_error unless min < max on both axes and steps >= 2.
void validate(const GridSpec& spec);

enum class GridFlag { ok, pole, overflow, maxdepth };

std::string_view to_string(GridFlag f);

// pole takes precedence over overflow, which takes precedence over maxdepth.
GridFlag grid_flag(const EvalFlags& flags);

double grid_coordinate(double lo, double hi, std::size_t i, std::size_t steps);

template <class Real>
struct GridRecord {
  double re = 0.0;
  double im = 0.0;
  ExtendedComplex<Real> f;
  double err = 0.0;
  std::size_t n_used = 0;
  GridFlag flag = GridFlag::ok;
};

template <class Real>
std::vector<GridRecord<Real>> evaluate_grid(const GridSpec& spec,
                                            EvalConfig cfg,
                                            const LambdaTable<Real>& table,
                                            unsigned threads = 0) {
  validate(spec);
  cfg.tol = spec.tol;
  validate(cfg);
  const std::size_t total = spec.re_steps * spec.im_steps;
  std::vector<GridRecord<Real>> out(total);

  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t idx = first; idx < total; idx += stride) {
      const std::size_t i_im = idx / spec.re_steps;
      const std::size_t i_re = idx % spec.re_steps;
      auto& rec = out[idx];
      rec.re = grid_coordinate(spec.re_min, spec.re_max, i_re, spec.re_steps);
      rec.im = grid_coordinate(spec.im_min, spec.im_max, i_im, spec.im_steps);
      const auto r = eval_f(make_complex<Real>(Real(rec.re), Real(rec.im)), cfg,
                            table);
      rec.f = r.value;
      rec.err = r.error_estimate;
      rec.n_used = r.n_used;
      rec.flag = grid_flag(r.flags);
    }
  };

  if (threads == 0) {
    threads = std::max(1u, std::thread::hardware_concurrency());
  }
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));
  if (threads <= 1) {
    work(0, 1);
    return out;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back(work, t, threads);
  }
  return out;
}

// CSV header "re,im,f_re,f_im,err,n_used,flag"; infinity is written as
// `inf` in f_re and f_im.
template <class Real>
void write_grid_csv(std::ostream& os, const std::vector<GridRecord<Real>>& recs) {
  os << "re,im,f_re,f_im,err,n_used,flag\n";
  for (const auto& r : recs) {
    os << to_shortest(r.re) << ',' << to_shortest(r.im) << ',';
    if (r.f.at_infinity) {
      os << "inf,inf,";
    } else {
      os << to_shortest(Real(r.f.value.real())) << ','
         << to_shortest(Real(r.f.value.imag())) << ',';
    }
    os << to_shortest(r.err) << ',' << r.n_used << ',' << to_string(r.flag)
       << '\n';
  }
}

// JSON array of objects with the CSV column names; infinity is null.
template <class Real>
void write_grid_json(std::ostream& os,
                     const std::vector<GridRecord<Real>>& recs) {
  auto number = [](const std::string& s) {
    return s == "inf" || s == "-inf" || s == "nan" ? std::string("null") : s;
  };
  os << "[\n";
  for (std::size_t i = 0; i < recs.size(); ++i) {
    const auto& r = recs[i];
    os << "  {\"re\":" << to_shortest(r.re) << ",\"im\":" << to_shortest(r.im);
    if (r.f.at_infinity) {
      os << ",\"f_re\":null,\"f_im\":null";
    } else {
      os << ",\"f_re\":" << number(to_shortest(Real(r.f.value.real())))
         << ",\"f_im\":" << number(to_shortest(Real(r.f.value.imag())));
    }
    os << ",\"err\":" << number(to_shortest(r.err)) << ",\"n_used\":" << r.n_used
       << ",\"flag\":\"" << to_string(r.flag) << "\"}"
       << (i + 1 < recs.size() ? ",\n" : "\n");
  }
  os << "]\n";
}

}  // namespace fpm
