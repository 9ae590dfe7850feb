// dbr: command-line front end. JSON report on stdout, diagnostics on stderr.
// Exit codes: 0 success, 2 invalid input, 3 assertion failure, 4 indeterminate classification.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>

#include "CLI11.hpp"

#include "dbr/dbr.hpp"

namespace {

using namespace dbr;
using ojson = nlohmann::ordered_json;

enum Exit { kOk = 0, kInvalid = 2, kAssertion = 3, kIndeterminate = 4 };

struct JobConfig {
  std::string command;
  std::string symbol;
  std::string matrix;
  std::string points;
  std::string series;
  std::string output;
  int N = -1;  // resolved per command
  int M = kDefaultGrid;
  int K = -1;
  int outer_grid = kDefaultOuterGrid;
  std::string seed = "0xDB0B";
  int jobs = 1;
  bool no_timings = false;
};

ojson cx(cplx z) { return ojson::array({z.real(), z.imag()}); }

ojson cx_list(const Vec& v) {
  ojson a = ojson::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(cx(v(i)));
  return a;
}

ojson real_list(const std::vector<double>& v) {
  ojson a = ojson::array();
  for (double x : v) a.push_back(x);
  return a;
}

// JSON text, or a path to a JSON file.
std::pair<io::json, std::string> load_json(const std::string& arg, const char* what) {
  if (arg.empty()) throw Error(ErrorKind::InvalidInput, std::string("--") + what + " is required");
  const auto first = arg.find_first_not_of(" \t\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return {io::parse(arg), ""};
  const std::filesystem::path p(arg);
  return {io::parse(io::read_file(arg)), p.parent_path().string()};
}

SymbolSpec load_symbol(const JobConfig& cfg) {
  const auto [j, dir] = load_json(cfg.symbol, "symbol");
  return io::symbol_from_json(j, dir);
}

Mat load_matrix(const JobConfig& cfg) { return io::matrix_from_json(load_json(cfg.matrix, "matrix").first); }

std::vector<cplx> load_points(const JobConfig& cfg) {
  const io::json j = cfg.points.empty() ? io::json::array({0.3}) : io::parse(cfg.points);
  if (!j.is_array()) throw Error(ErrorKind::InvalidInput, "--points must be a JSON list");
  std::vector<cplx> pts;
  for (const auto& v : j) {
    const cplx z = io::complex_from_json(v);
    require_disk(z);
    pts.push_back(z);
  }
  return pts;
}

void require_config(const JobConfig& cfg) {
  if (cfg.N < 4) throw Error(ErrorKind::InvalidInput, "N must be at least 4");
  if (!is_power_of_two(cfg.M) || cfg.M < 2 * (cfg.N + 1))
    throw Error(ErrorKind::InvalidInput, "M must be a power of two with M >= 2(N+1)");
  if (!is_power_of_two(cfg.outer_grid)) throw Error(ErrorKind::InvalidInput, "outer grid must be a power of two");
}

ClassifyOptions options(const JobConfig& cfg) { return {cfg.M, cfg.N, cfg.outer_grid}; }

struct Outcome {
  ojson results = ojson::object();
  ojson tolerances = ojson::object();
  bool pass = true;
  int code = kOk;
};

void flag(Outcome& o, ojson& checks, const std::string& name, double value, double bound, bool upper = true) {
  const bool ok = upper ? value <= bound : value >= bound;
  checks[name] = ojson{{"value", value}, {upper ? "max" : "min", bound}, {"pass", ok}};
  if (!ok) o.pass = false;
}

Outcome cmd_classify(const JobConfig& cfg) {
  const SymbolSpec s = load_symbol(cfg);
  const Classification c = classify(s, options(cfg));
  Outcome o;
  o.results["verdict"] = to_string(c.verdict);
  o.results["inner"] = c.inner;
  o.results["inner_defect"] = c.inner_defect;
  o.results["szego_values"] = real_list(c.szego_values);
  if (c.a) {
    o.results["a0"] = c.a->c(0).real();
    o.results["a"] = cx_list(c.a->c);
    o.results["modulus_residual"] = c.modulus_residual;
  }
  o.tolerances = {{"inner", kInnerTolerance}, {"cauchy", kCauchyTolerance}, {"divergence", kDivergenceThreshold}};
  if (c.verdict == Verdict::Indeterminate) o.code = kIndeterminate;
  return o;
}

Outcome cmd_kernel(const JobConfig& cfg) {
  const SymbolSpec s = load_symbol(cfg);
  const auto pts = load_points(cfg);
  const HbSpace sp = build(s, cfg.N, options(cfg));
  Outcome o;
  o.results["verdict"] = to_string(sp.verdict);
  o.results["rank"] = sp.rank;
  ojson list = ojson::array();
  double worst = 0.0;
  for (const cplx l : pts) {
    const HardySeries k = kernel(sp, l);
    const double err = (k.c - kernel_closed_form(sp, l).c).norm();
    worst = std::max(worst, err);
    list.push_back({{"lambda", cx(l)}, {"value_at_lambda", cx(eval(k, l))}, {"two_route_error", err}, {"coeffs", cx_list(k.c)}});
  }
  o.results["kernels"] = list;
  double maxr = 0.0;
  for (const cplx l : pts) maxr = std::max(maxr, std::abs(l));
  const double tol = std::max(1e-8, 3.0 * std::pow(maxr, cfg.N + 1));
  ojson checks = ojson::object();
  flag(o, checks, "two_route", worst, tol);
  o.results["checks"] = checks;
  o.tolerances = {{"two_route", tol}};
  return o;
}

Outcome cmd_norm(const JobConfig& cfg) {
  const SymbolSpec s = load_symbol(cfg);
  const HbSpace sp = build(s, cfg.N, options(cfg));
  Outcome o;
  o.results["verdict"] = to_string(sp.verdict);
  ojson checks = ojson::object();
  const double resid = membership_residual(sp, sp.b);
  o.results["b_membership_residual"] = resid;
  if (sp.a) {
    const NormIdentity ni = norm_b_identity(sp);
    o.results["lhs"] = ni.lhs;
    o.results["rhs"] = ni.rhs;
    flag(o, checks, "identity", std::abs(ni.lhs - ni.rhs), 1e-5 * (1.0 + ni.rhs));
    o.tolerances = {{"identity_relative", 1e-5}};
  } else {
    o.results["sstar_b_norm_sq"] = sstar_b(sp).hb_norm_sq;
    o.tolerances = {{"membership", kMembershipTolerance}};
  }
  o.results["checks"] = checks;
  return o;
}

Outcome cmd_hplus(const JobConfig& cfg) {
  const SymbolSpec s = load_symbol(cfg);
  const HbSpace sp = build(s, cfg.N, options(cfg));
  HardySeries h = sp.b;
  if (!cfg.series.empty()) {
    const auto v = io::complex_list(io::json{{"series", io::parse(cfg.series)}}, "series");
    h = HardySeries(cfg.N);
    for (size_t i = 0; i < v.size() && static_cast<int>(i) <= cfg.N; ++i) h.c(static_cast<Eigen::Index>(i)) = v[i];
  }
  const HPlusPair p = h_plus(sp, h);
  Outcome o;
  o.results["h"] = cx_list(p.h.c);
  o.results["h_plus"] = cx_list(p.h_plus.c);
  o.results["padding_delta"] = p.padding_delta;
  ojson checks = ojson::object();
  flag(o, checks, "residual", p.residual, 1e-6 * std::max(1.0, h.norm()));
  o.results["checks"] = checks;
  o.tolerances = {{"residual_relative", 1e-6}};
  return o;
}

Outcome cmd_outer(const JobConfig& cfg) {
  const SymbolSpec s = load_symbol(cfg);
  const Classification c = classify(s, options(cfg));
  Outcome o;
  o.results["verdict"] = to_string(c.verdict);
  if (c.verdict == Verdict::Indeterminate) {
    o.code = kIndeterminate;
    return o;
  }
  if (!c.a) throw Error(ErrorKind::ClassifiedExtreme, std::string("no outer companion: ") + to_string(c.verdict));
  o.results["a0"] = c.a->c(0).real();
  o.results["a"] = cx_list(c.a->c);
  o.results["exp_szego"] = std::exp(c.szego_values.back());
  ojson checks = ojson::object();
  flag(o, checks, "modulus_residual", c.modulus_residual, 1e-6);
  o.results["checks"] = checks;
  o.tolerances = {{"modulus", 1e-6}};
  return o;
}

Outcome cmd_model(const JobConfig& cfg) {
  const Mat T = load_matrix(cfg);
  const int N = cfg.N;
  const ModelReport m = model_roundtrip(T, N);
  Outcome o;
  o.results["b"] = cx_list(m.b_coeffs.c);
  o.results["rank"] = m.rank;
  o.results["spectrum_T"] = cx_list(m.spectrum_T);
  o.results["spectrum_Xb"] = cx_list(m.spectrum_Xb);
  ojson checks = ojson::object();
  double zeros = 0.0;
  for (double v : m.zero_match_residuals) zeros = std::max(zeros, v);
  checks["rank_match"] = {{"value", m.rank_match}, {"pass", m.rank_match}};
  if (!m.rank_match) o.pass = false;
  flag(o, checks, "spectrum", m.spectrum_defect, 1e-6);
  flag(o, checks, "zeros", zeros, 1e-6);
  flag(o, checks, "inner", m.inner_defect, 1e-6);
  const int K = cfg.K > 0 ? cfg.K : N + 2;
  const double window = (characteristic_b(T, N, K).c - characteristic_b(T, N, K + 3).c).cwiseAbs().maxCoeff();
  flag(o, checks, "window_exactness", window, 1e-12);
  o.results["checks"] = checks;
  o.tolerances = {{"spectrum", 1e-6}, {"zeros", 1e-6}, {"inner", 1e-6}, {"window", 1e-12}};
  return o;
}

Outcome cmd_julia(const JobConfig& cfg) {
  const Mat T = load_matrix(cfg);
  const DefectPair d = defects(T);
  const Mat J = julia(T, d);
  const GeometricSplit g = geometric_split_check(T);
  Outcome o;
  o.results["rank_T"] = d.rank_T;
  o.results["rank_Tstar"] = d.rank_Tstar;
  o.results["julia"] = io::matrix_to_json(J);
  ojson checks = ojson::object();
  flag(o, checks, "julia_unitarity", unitarity_defect(J), 1e-10);
  flag(o, checks, "defect_intertwining", intertwine_check(T), 1e-10);
  flag(o, checks, "split_orthogonality", g.orthogonality, 1e-9);
  flag(o, checks, "split_m_norm", g.m_norm_defect, 1e-9);
  flag(o, checks, "split_c_norm", g.c_norm_defect, 1e-9);
  o.results["checks"] = checks;
  o.tolerances = {{"unitarity", 1e-10}, {"intertwining", 1e-10}, {"split", 1e-9}};
  return o;
}

std::uint64_t parse_seed(const std::string& s) {
  try {
    size_t used = 0;
    const std::uint64_t v = std::stoull(s, &used, 0);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::InvalidInput, "seed must be an integer (decimal or 0x-prefixed)");
  }
}

std::string hex(std::uint64_t v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(v));
  return buf;
}

Outcome cmd_verify(const JobConfig& cfg, ojson& timings) {
  const std::uint64_t seed = parse_seed(cfg.seed);
  if (cfg.jobs < 1) throw Error(ErrorKind::InvalidInput, "--jobs must be positive");
  const auto groups = verify::run_all(seed, cfg.jobs);
  Outcome o;
  ojson list = ojson::array();
  int total = 0, failed = 0;
  for (const auto& g : groups) {
    ojson checks = ojson::array();
    for (const auto& c : g.checks) {
      checks.push_back({{"name", c.name}, {"value", c.value}, {"relation", c.relation}, {"bound", c.bound}, {"pass", c.pass}});
      ++total;
      if (!c.pass) ++failed;
    }
    list.push_back({{"name", g.name}, {"pass", g.pass()}, {"checks", checks}});
    timings[g.name] = g.seconds;
  }
  o.results["seed"] = hex(seed);
  o.results["groups"] = list;
  o.results["checks"] = total;
  o.results["failed"] = failed;
  o.pass = failed == 0;
  o.tolerances = {{"rank_cutoff", kRankCutoff}, {"psd", kPsdTolerance}, {"membership", kMembershipTolerance},
                  {"unit_ball", kUnitBallTolerance}};
  return o;
}

int run(JobConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  ojson report;
  report["command"] = cfg.command;
  ojson inputs = ojson::object();
  if (cfg.command == "verify") {
    inputs = {{"seed", cfg.seed}, {"jobs", cfg.jobs}};
  } else {
    inputs["N"] = cfg.N;
    inputs["M"] = cfg.M;
    if (!cfg.symbol.empty()) inputs["symbol"] = cfg.symbol;
    if (!cfg.matrix.empty()) inputs["matrix"] = cfg.matrix;
    if (!cfg.points.empty()) inputs["points"] = cfg.points;
  }
  report["inputs"] = inputs;
  ojson timings = ojson::object();
  Outcome o;
  try {
    if (cfg.command != "verify" && cfg.command != "model" && cfg.command != "julia") require_config(cfg);
    if (cfg.command == "classify") o = cmd_classify(cfg);
    else if (cfg.command == "kernel") o = cmd_kernel(cfg);
    else if (cfg.command == "norm") o = cmd_norm(cfg);
    else if (cfg.command == "hplus") o = cmd_hplus(cfg);
    else if (cfg.command == "outer") o = cmd_outer(cfg);
    else if (cfg.command == "model") o = cmd_model(cfg);
    else if (cfg.command == "julia") o = cmd_julia(cfg);
    else o = cmd_verify(cfg, timings);
  } catch (const Error& e) {
    std::cerr << "dbr " << cfg.command << ": " << to_string(e.kind()) << ": " << e.what() << "\n";
    report["error"] = {{"kind", to_string(e.kind())}, {"message", e.what()}};
    report["pass"] = false;
    std::cout << report.dump(2) << "\n";
    return e.kind() == ErrorKind::NotInSpace ? kAssertion : kInvalid;
  }
  report["results"] = o.results;
  report["tolerances"] = o.tolerances;
  report["pass"] = o.pass;
  if (!cfg.no_timings) {
    timings["total_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report["timings"] = timings;
  }
  const std::string text = report.dump(2) + "\n";
  if (cfg.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(cfg.output);
    if (!out) {
      std::cerr << "dbr: cannot write " << cfg.output << "\n";
      return kInvalid;
    }
    out << text;
  }
  if (o.code != kOk) return o.code;
  if (!o.pass) {
    std::cerr << "dbr " << cfg.command << ": assertion failure\n";
    return kAssertion;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical toolkit for de Branges-Rovnyak spaces H(b)"};
  app.require_subcommand(1);
  JobConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("-N", cfg.N, "truncation degree (default 64, model 32)");
    sub->add_option("-M", cfg.M, "Szego grid size")->capture_default_str();
    sub->add_option("--outer-grid", cfg.outer_grid, "grid for the outer companion")->capture_default_str();
    sub->add_option("-o,--output", cfg.output, "write the report to a file");
    sub->add_flag("--no-timings", cfg.no_timings, "omit timings from the report");
  };
  auto with_symbol = [&](CLI::App* sub) {
    sub->add_option("--symbol", cfg.symbol, "symbol JSON or path to a JSON file")->required();
  };

  auto* classify_cmd = app.add_subcommand("classify", "extreme/nonextreme verdict and outer companion");
  auto* kernel_cmd = app.add_subcommand("kernel", "reproducing kernels of H(b) at points");
  auto* norm_cmd = app.add_subcommand("norm", "H(b) norm of b and the identity |a(0)|^-2 - 1");
  auto* hplus_cmd = app.add_subcommand("hplus", "h -> h+ for nonextreme b");
  auto* outer_cmd = app.add_subcommand("outer", "outer companion a with |a|^2 + |b|^2 = 1");
  auto* model_cmd = app.add_subcommand("model", "symbol b of a contraction and roundtrip checks");
  auto* julia_cmd = app.add_subcommand("julia", "defects, Julia operator and geometric split checks");
  auto* verify_cmd = app.add_subcommand("verify", "full property suite");

  for (auto* sub : {classify_cmd, kernel_cmd, norm_cmd, hplus_cmd, outer_cmd}) {
    common(sub);
    with_symbol(sub);
  }
  kernel_cmd->add_option("--points", cfg.points, "JSON list of disk points, [re, im] or numbers");
  hplus_cmd->add_option("--series", cfg.series, "JSON coefficient list of h (default b)");
  for (auto* sub : {model_cmd, julia_cmd}) {
    common(sub);
    sub->add_option("--matrix", cfg.matrix, "matrix JSON or path to a JSON file")->required();
  }
  model_cmd->add_option("-K", cfg.K, "dilation window (default N + 2)");
  verify_cmd->add_option("--seed", cfg.seed, "64-bit seed for all random draws")->capture_default_str();
  verify_cmd->add_option("--jobs", cfg.jobs, "parallel test groups")->capture_default_str();
  verify_cmd->add_flag("--no-timings", cfg.no_timings, "omit timings from the report");
  verify_cmd->add_option("-o,--output", cfg.output, "write the report to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  if (cfg.N < 0) cfg.N = cfg.command == "model" ? 32 : 64;
  return run(cfg);
}