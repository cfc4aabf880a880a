// fpm: sequence dumps, point evaluation, grid sweeps, real-axis brackets and
// the invariant suites.
//
// Exit codes: 0 success, 1 evaluation diagnostic (value still printed),
// 2 usage or capacity error.

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fpm/evaluator.hpp"
#include "fpm/grid.hpp"
#include "fpm/lambda_table.hpp"
#include "fpm/scalar.hpp"
#include "fpm/verify.hpp"

namespace {

using namespace fpm;

constexpr int exit_ok = 0;
constexpr int exit_diagnostic = 1;
constexpr int exit_usage = 2;

struct Common {
  std::string precision = "standard";
  std::string format = "csv";
  std::string out;
  double tol = 1e-10;
  std::size_t nmax = std::size_t{1} << 20;
  std::uint64_t seed = 42;
};

// Output sink: standard output unless --out names a file.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) {
        throw std::runtime_error("cannot open output file: " + path);
      }
    }
  }

  std::ostream& stream() { return file_ ? *file_ : std::cout; }

  void finish() {
    stream().flush();
    if (!stream()) {
      throw std::runtime_error("failed writing output");
    }
  }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::string json_number(const std::string& s) {
  return s == "inf" || s == "-inf" || s == "nan" ? "null" : s;
}

std::string json_flags(const EvalFlags& flags) {
  std::string out = "[";
  bool first = true;
  for (auto name : flags.names()) {
    out += first ? "\"" : ",\"";
    out += name;
    out += '"';
    first = false;
  }
  return out + "]";
}

EvalConfig make_config(const Common& c) {
  EvalConfig cfg;
  cfg.tol = c.tol;
  cfg.n_max = c.nmax;
  cfg.n_start = std::min(cfg.n_start, cfg.n_max);
  validate(cfg);
  return cfg;
}

template <class Real>
int run_seq(const std::string& kind, std::size_t n, const Common& c) {
  const bool lambda = kind == "lambda";
  const auto table = build_lambda_table<Real>(lambda ? n : n + 1);
  Sink sink(c.out);
  auto& os = sink.stream();
  if (c.format == "json") {
    os << "[";
  }
  for (std::size_t k = 0; k <= n; ++k) {
    const Real v = lambda ? table[k] : moment(table, k);
    if (c.format == "json") {
      os << (k == 0 ? "\n" : ",\n") << "  {\"index\":" << k
         << ",\"value\":" << to_shortest(v) << "}";
    } else {
      os << k << ',' << to_shortest(v) << '\n';
    }
  }
  if (c.format == "json") {
    os << "\n]\n";
  }
  sink.finish();
  return exit_ok;
}

template <class Real>
int run_eval(const std::string& re_text, const std::string& im_text,
             const std::string& which, const Common& c) {
  const EvalConfig cfg = make_config(c);
  const auto table = build_lambda_table<Real>(required_table_nmax(cfg));
  const auto z = make_complex<Real>(parse_real<Real>(re_text),
                                    parse_real<Real>(im_text));
  const EvalResult<Real> r =
      which == "F" ? eval_F(z, cfg, table) : eval_f(z, cfg, table);
  Sink sink(c.out);
  auto& os = sink.stream();
  os << "{\"re\":" << to_shortest(Real(z.real()))
     << ",\"im\":" << to_shortest(Real(z.imag()));
  if (r.value.at_infinity) {
    os << ",\"value_re\":null,\"value_im\":null";
  } else {
    os << ",\"value_re\":" << json_number(to_shortest(Real(r.value.value.real())))
       << ",\"value_im\":" << json_number(to_shortest(Real(r.value.value.imag())));
  }
  os << ",\"err\":" << json_number(to_shortest(r.error_estimate))
     << ",\"n_used\":" << r.n_used << ",\"flags\":" << json_flags(r.flags)
     << "}\n";
  sink.finish();
  return r.ok() ? exit_ok : exit_diagnostic;
}

template <class Real>
int run_grid(const GridSpec& spec, const Common& c) {
  validate(spec);
  Common local = c;
  local.tol = spec.tol;
  const EvalConfig cfg = make_config(local);
  const auto table = build_lambda_table<Real>(required_table_nmax(cfg));
  const auto records = evaluate_grid(spec, cfg, table);
  Sink sink(c.out);
  if (c.format == "json") {
    write_grid_json(sink.stream(), records);
  } else {
    write_grid_csv(sink.stream(), records);
  }
  sink.finish();
  return exit_ok;
}

template <class Real>
int run_bracket(const std::string& s_text, std::size_t n, const Common& c) {
  const Real s = parse_real<Real>(s_text);
  const auto table = build_lambda_table<Real>(n + 1);
  const auto br = bracket_f(s, n, table);
  const Real bound = error_bound_step1(s, n, table);
  Sink sink(c.out);
  auto& os = sink.stream();
  if (c.format == "json") {
    os << "{\"s\":" << to_shortest(s) << ",\"n\":" << n
       << ",\"lo\":" << to_shortest(br.lo) << ",\"hi\":" << to_shortest(br.hi)
       << ",\"width\":" << to_shortest(br.width())
       << ",\"bound\":" << to_shortest(bound) << "}\n";
  } else {
    os << "s,n,lo,hi,width,bound\n"
       << to_shortest(s) << ',' << n << ',' << to_shortest(br.lo) << ','
       << to_shortest(br.hi) << ',' << to_shortest(br.width()) << ','
       << to_shortest(bound) << '\n';
  }
  sink.finish();
  return exit_ok;
}

template <class F>
int dispatch(const Common& c, F&& body) {
  if (parse_precision(c.precision) == Precision::extended) {
    return body(extended_real{});
  }
  return body(double{});
}

// "re,im" or "re".
std::pair<std::string, std::string> split_point(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    return {text, "0"};
  }
  return {text.substr(0, comma), text.substr(comma + 1)};
}

// CLI11 reads "-1,0" after an option as another option; glue such values to
// their option name.
std::vector<std::string> glue_negative_values(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    const bool takes_value = a.rfind("--", 0) == 0 && a.find('=') == std::string::npos;
    if (takes_value && i + 1 < args.size() && args[i + 1].size() > 1 &&
        args[i + 1][0] == '-' &&
        (std::isdigit(static_cast<unsigned char>(args[i + 1][1])) ||
         args[i + 1][1] == '.')) {
      out.push_back(a + "=" + args[i + 1]);
      ++i;
    } else {
      out.push_back(a);
    }
  }
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fixed-point Hausdorff moments and the meromorphic transforms f, F"};
  app.require_subcommand(1);
  Common c;

  // Every subcommand takes the common flags; each uses the ones it needs.
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tol", c.tol, "Target error proxy")->check(CLI::PositiveNumber);
    sub->add_option("--nmax", c.nmax, "Maximum iteration depth");
    sub->add_option("--precision", c.precision, "Arithmetic backend")
        ->check(CLI::IsMember({"standard", "extended"}));
    sub->add_option("--format", c.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", c.out, "Output path (default: standard output)");
    sub->add_option("--seed", c.seed, "Seed for the sampling checks");
  };

  std::string seq_kind;
  std::size_t seq_n = 0;
  auto* seq = app.add_subcommand("seq", "Dump lambda_n or m_n for n = 0..N");
  seq->add_option("kind", seq_kind, "lambda or moment")
      ->required()
      ->check(CLI::IsMember({"lambda", "moment"}));
  seq->add_option("--n", seq_n, "Last index")->required();
  add_common(seq);

  std::string z_text;
  std::string which = "f";
  auto* eval = app.add_subcommand("eval", "Evaluate f or F at one point");
  eval->add_option("--z", z_text, "Point as re,im")->required();
  eval->add_option("--which", which, "f or F")->check(CLI::IsMember({"f", "F"}));
  add_common(eval);

  GridSpec spec;
  auto* grid = app.add_subcommand("grid", "Sample f on a rectangular grid");
  grid->add_option("--re-min", spec.re_min)->required();
  grid->add_option("--re-max", spec.re_max)->required();
  grid->add_option("--im-min", spec.im_min)->required();
  grid->add_option("--im-max", spec.im_max)->required();
  grid->add_option("--re-steps", spec.re_steps)->required();
  grid->add_option("--im-steps", spec.im_steps)->required();
  add_common(grid);

  std::string s_text;
  std::size_t bracket_n = 1000;
  auto* bracket = app.add_subcommand(
      "bracket", "Certified bracket of f(s), 0 < s <= 1, and its explicit bound");
  bracket->add_option("--s", s_text, "Real argument in (0, 1]")->required();
  bracket->add_option("--n", bracket_n, "Iteration depth (>= 2)");
  add_common(bracket);

  std::string suite_text = "all";
  auto* verify = app.add_subcommand("verify", "Run the invariant suites");
  verify->add_option("--suite", suite_text)
      ->check(CLI::IsMember({"sequences", "dynamics", "evaluator", "moments", "all"}));
  add_common(verify);

  try {
    app.parse(glue_negative_values(argc, argv));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (seq->parsed()) {
      return dispatch(c, [&](auto tag) {
        return run_seq<decltype(tag)>(seq_kind, seq_n, c);
      });
    }
    if (eval->parsed()) {
      const auto [re_text, im_text] = split_point(z_text);
      return dispatch(c, [&](auto tag) {
        return run_eval<decltype(tag)>(re_text, im_text, which, c);
      });
    }
    if (grid->parsed()) {
      spec.tol = c.tol;
      return dispatch(c, [&](auto tag) { return run_grid<decltype(tag)>(spec, c); });
    }
    if (bracket->parsed()) {
      return dispatch(c, [&](auto tag) {
        return run_bracket<decltype(tag)>(s_text, bracket_n, c);
      });
    }
    if (verify->parsed()) {
      const auto results =
          run_verify(parse_suite(suite_text), c.seed, parse_precision(c.precision));
      Sink sink(c.out);
      const bool pass = print_results(sink.stream(), results);
      sink.finish();
      return pass ? exit_ok : exit_diagnostic;
    }
  } catch (const std::exception& e) {
    std::cerr << "fpm: " << e.what() << '\n';
    return exit_usage;
  }
  return exit_usage;
}
