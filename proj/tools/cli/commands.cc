// Copyright 2026 The schwarzball Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli/commands.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "cli/map_spec_file.h"
#include "cli/report.h"
#include "cli/suites.h"
#include "schwarzball/bergman.h"
#include "schwarzball/errors.h"
#include "schwarzball/family.h"
#include "schwarzball/schwarzian.h"
#include "schwarzball/variational.h"

namespace schwarzball::cli {
namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct VerifyArgs {
  std::string suite;
  int n = 2;
  std::uint64_t seed = 7;
  int count = 20;
  int points = 5;
  bool inject_failure = false;
  std::string out;
};

struct BoundsArgs {
  std::string n = "2";
  std::string alpha = "0:4";
  double step = 0.1;
  std::string format = "csv";
  std::string out;
};

struct AnalyzeArgs {
  std::string map_file;
  std::vector<std::string> ops;
  std::vector<double> point;
  std::vector<double> zeta;
  double r_max = 0.9;
  int degree = kDefaultJetDegree;
  std::uint64_t seed = 0x5eed;
  std::string out;
};

struct SearchArgs {
  std::string family = "moebius";
  int n = 2;
  double alpha = 0.0;
  int budget = 300;
  int restarts = 3;
  double half_width = 0.2;
  std::uint64_t seed = 0x5eed;
  std::string out;
};

std::string format_g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw UsageError("cannot write " + path);
  file << text;
}

// "a" or "a:b".
std::pair<double, double> parse_range(const std::string& text,
                                      const char* what) {
  const auto colon = text.find(':');
  try {
    std::size_t used = 0;
    const double lo = std::stod(text.substr(0, colon), &used);
    if (used != text.substr(0, colon).size()) throw std::invalid_argument(text);
    if (colon == std::string::npos) return {lo, lo};
    const std::string rest = text.substr(colon + 1);
    const double hi = std::stod(rest, &used);
    if (used != rest.size() || hi < lo) throw std::invalid_argument(text);
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw UsageError(std::string("bad ") + what + " range \"" + text +
                     "\"; expected a or a:b with a <= b");
  }
}

Point point_from_reals(const std::vector<double>& reals, int n,
                       const char* what) {
  if (reals.empty()) return CVector::Zero(n);
  if (static_cast<int>(reals.size()) != 2 * n) {
    throw UsageError(std::string(what) + " needs 2n = " +
                     std::to_string(2 * n) +
                     " reals (re, im interleaved), got " +
                     std::to_string(reals.size()));
  }
  Point z(n);
  for (int i = 0; i < n; ++i) z[i] = Complex(reals[2 * i], reals[2 * i + 1]);
  return z;
}

CheckResult measurement(std::string name, double value, double accuracy) {
  return {std::move(name), value, accuracy, std::isfinite(value)};
}

Json tensor_json(const SchwarzianTensor& t) {
  Json j;
  j["base"] = cvector_json(t.base);
  j["image"] = cvector_json(t.image);
  Json sk = Json::array();
  for (const auto& s : t.sk) sk.push_back(cmatrix_json(s));
  j["sk"] = std::move(sk);
  j["s0"] = cmatrix_json(t.s0);
  return j;
}

Json estimate_json(const NormEstimate& e) {
  Json j;
  j["value"] = e.value;
  j["arg_z"] = cvector_json(e.arg_z);
  j["arg_v"] = cvector_json(e.arg_v);
  j["starts"] = e.starts;
  j["converged"] = e.converged;
  j["r_max"] = e.r_max;
  j["evaluations"] = e.evaluations;
  return j;
}

std::string join_command(const std::vector<std::string>& args) {
  std::string s = "schwarzball";
  for (const auto& a : args) s += " " + a;
  return s;
}

int finish(Report& report, const std::string& out_path, std::ostream& out,
           std::chrono::steady_clock::time_point start) {
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  emit(report_to_json(report).dump(2) + "\n", out_path, out);
  return report.all_pass() ? kExitOk : kExitCheckFailure;
}

int cmd_verify(const VerifyArgs& a, const std::string& command,
               std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  if (a.n < kMinDimension) throw DimensionError("--n must be at least 2");
  if (a.count < 1 || a.points < 1) {
    throw UsageError("--count and --points must be positive");
  }
  Report report;
  report.command = command;
  report.seed = a.seed;
  const auto results =
      run_suite(a.suite, SuiteOptions{a.n, a.seed, a.count, a.points});
  if (!results) throw UsageError("unknown suite " + a.suite);
  report.results = *results;
  if (a.inject_failure) report.add({"injected_failure", 1.0, 0.0, false});
  report.data["suite"] = a.suite;
  report.data["n"] = a.n;
  return finish(report, a.out, out, start);
}

int cmd_bounds(const BoundsArgs& a, const std::string& command,
               std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const auto [n_lo, n_hi] = parse_range(a.n, "--n");
  const auto [a_lo, a_hi] = parse_range(a.alpha, "--alpha");
  if (n_lo != std::floor(n_lo) || n_hi != std::floor(n_hi)) {
    throw UsageError("--n must be an integer or integer range");
  }
  if (!(a.step > 0.0)) throw UsageError("--step must be positive");
  const int steps = static_cast<int>(std::floor((a_hi - a_lo) / a.step + 1e-9));

  std::vector<BoundReport> rows;
  for (int n = static_cast<int>(n_lo); n <= static_cast<int>(n_hi); ++n) {
    for (int k = 0; k <= steps; ++k) {
      // Snap to 12 significant digits so 0.1 steps print as typed.
      const double alpha = std::stod(format_g17(
          std::round((a_lo + k * a.step) * 1e12) / 1e12));
      rows.push_back(bounds_report(n, alpha));
    }
  }

  if (a.format == "csv") {
    std::ostringstream csv;
    csv << kBoundsCsvHeader << "\n";
    for (const auto& r : rows) {
      csv << r.n << "," << format_g17(r.alpha) << "," << format_g17(r.c_exact)
          << "," << format_g17(r.c_simple) << "," << format_g17(r.ord_bound)
          << "," << format_g17(r.norm_ord_bound) << ","
          << format_g17(r.lower_bound) << "\n";
    }
    emit(csv.str(), a.out, out);
    return kExitOk;
  }

  Report report;
  report.command = command;
  double worst_gap = -std::numeric_limits<double>::infinity();
  Json table = Json::array();
  for (const auto& r : rows) {
    worst_gap = std::max(worst_gap, r.c_exact - r.c_simple);
    Json row;
    row["n"] = r.n;
    row["alpha"] = r.alpha;
    row["C_exact"] = r.c_exact;
    row["C_simple"] = r.c_simple;
    row["ord_bound"] = r.ord_bound;
    row["norm_ord_bound"] = r.norm_ord_bound;
    row["lower_bound"] = r.lower_bound;
    table.push_back(std::move(row));
  }
  report.add(check_at_most("bounds.max_C_exact_minus_C_simple", worst_gap, 0.0));
  report.data["rows"] = std::move(table);
  return finish(report, a.out, out, start);
}

void analyze_schwarzian(const MapSpec& f, const Point& z, int degree,
                        Report& report) {
  const JetVector jf = map_jet_at(f, z, degree);
  const SchwarzianTensor t = schwarzian_at(jf, z);
  report.data["schwarzian"] = tensor_json(t);
  report.add(check_at_most("schwarzian.canonical_residual",
                           canonical_residual(t), 1e-10));
  report.add(check_at_most("schwarzian.pde_residual", pde_residual(jf), 1e-12));
}

void analyze_norm(const MapSpec& f, const Point& z, const AnalyzeArgs& a,
                  Report& report) {
  SphereSearchOptions sphere;
  sphere.seed = a.seed;
  const NormEstimate at = schwarzian_norm_at(f, z, sphere);
  SupOptions sup;
  sup.r_max = a.r_max;
  sup.seed = a.seed;
  sup.sphere.seed = a.seed;
  const NormEstimate best = schwarzian_norm_sup(f, sup);
  report.data["norm_at"] = estimate_json(at);
  report.data["norm_sup"] = estimate_json(best);
  report.add(measurement("norm.at_point", at.value, 1e-6));
  report.add(measurement("norm.sup_estimate", best.value, 1e-6));
}

void analyze_order(const MapSpec& f, int degree, Report& report) {
  const NormalizedJet g = normalized_jet(f, degree);
  const TraceOrder t = trace_order_functional(g);
  const SphereMaximum norm = norm_order_functional(g);
  Json j;
  j["trace_order"] = t.value;
  j["trace_order_from_gradient"] = t.from_gradient;
  j["grad_jf"] = cvector_json(t.grad_jf);
  j["norm_order"] = norm.value;
  j["norm_order_argmax"] = cvector_json(norm.arg);
  report.data["order"] = std::move(j);
  report.add(measurement("order.trace", t.value, 1e-10));
  report.add(measurement("order.norm", norm.value, 1e-6));
}

void analyze_koebe(const MapSpec& f, const Point& zeta, int degree,
                   Report& report) {
  const NormalizedJet g = koebe_transform(f, zeta, degree);
  const TraceOrder t = trace_order_functional(g);
  const SphereMaximum norm = norm_order_functional(g);
  Json j;
  j["zeta"] = cvector_json(zeta);
  j["grad_jg"] = cvector_json(t.grad_jf);
  j["trace_order"] = t.value;
  j["norm_order"] = norm.value;
  report.data["koebe"] = std::move(j);
  report.add(measurement("koebe.trace_order", t.value, 1e-10));
  report.add(measurement("koebe.norm_order", norm.value, 1e-6));
}

void analyze_extremal(const MapSpec& f, int degree, Report& report) {
  const VariationReport v = matrix_a(f, degree);
  const DecoupledResiduals d = decoupled_residuals(f, degree);
  Json j;
  j["lambda"] = cvector_json(v.lambda);
  j["B"] = cmatrix_json(v.b);
  j["B0"] = cmatrix_json(v.b0);
  j["A"] = cmatrix_json(v.a);
  j["extremal_residual"] = v.extremal_residual;
  j["conjugated_residual"] = v.conjugated_residual;
  j["decoupled_lambda"] = d.lambda;
  j["quadratic_residual"] = complex_to_json(d.quadratic);
  j["off_residuals"] = cvector_json(d.off);
  report.data["extremal"] = std::move(j);
  report.add(check_at_most("extremal.asymmetry", v.symmetry_residual, 1e-10));
  report.add(check_at_most("extremal.lemma31_residual", lemma31_check(f, degree),
                           1e-9));
  report.add(measurement("extremal.residual", v.extremal_residual, 1e-9));
  report.add(measurement("extremal.quadratic_residual", std::abs(d.quadratic),
                         1e-9));
}

int cmd_analyze(const AnalyzeArgs& a, const std::string& command,
                std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const MapSpecFile file = read_map_spec_file(a.map_file);
  const int n = file.n;
  const Point z = point_from_reals(a.point, n, "--point");
  Report report;
  report.command = command;
  report.seed = a.seed;
  report.data["map"] = map_spec_file_to_json(file);
  for (const auto& op : a.ops) {
    if (op == "schwarzian") {
      analyze_schwarzian(file.spec, z, a.degree, report);
    } else if (op == "norm") {
      analyze_norm(file.spec, z, a, report);
    } else if (op == "order") {
      analyze_order(file.spec, a.degree, report);
    } else if (op == "koebe") {
      if (a.zeta.empty()) throw UsageError("--op koebe needs --zeta");
      analyze_koebe(file.spec, point_from_reals(a.zeta, n, "--zeta"),
                    a.degree, report);
    } else if (op == "extremal") {
      analyze_extremal(file.spec, a.degree, report);
    }
  }
  return finish(report, a.out, out, start);
}

int cmd_search(const SearchArgs& a, const std::string& command,
               std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  std::unique_ptr<Subfamily> family;
  if (a.family == "moebius") {
    family = std::make_unique<MoebiusSubfamily>(a.n);
  } else {
    family = std::make_unique<CubicBoxSubfamily>(a.n, a.half_width);
  }
  SearchConfig config;
  config.alpha = a.alpha;
  config.budget = a.budget;
  config.restarts = a.restarts;
  config.seed = a.seed;
  config.sup.seed = a.seed;
  config.sup.sphere.seed = a.seed;
  const SearchResult r = extremal_search(*family, config);

  Report report;
  report.command = command;
  report.seed = a.seed;
  Json j;
  j["family"] = family->name();
  j["params"] = r.params;
  j["map"] = map_spec_to_json(r.best);
  j["achieved_order"] = r.achieved_order;
  j["norm_estimate"] = estimate_json(r.norm_estimate);
  j["extremal_residual"] = r.extremal_residual;
  j["ord_bound"] = r.ord_bound;
  j["margin"] = r.margin;
  j["evaluations"] = r.evaluations;
  j["budget_exhausted"] = r.budget_exhausted;
  report.data["search"] = std::move(j);
  report.add(check_at_most("search.order_minus_bound",
                           r.achieved_order - r.ord_bound, 1e-12));
  report.add({"search.feasible", r.norm_estimate.value,
              a.alpha + kMembershipMargin, r.feasible});
  return finish(report, a.out, out, start);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Schwarzian derivatives of maps of the complex unit ball",
               "schwarzball"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run a seeded property suite");
  verify->add_option("suite", va.suite, "suite name")
      ->required()
      ->check(CLI::IsMember(suite_names()));
  verify->add_option("--n", va.n, "dimension")->capture_default_str();
  verify->add_option("--seed", va.seed, "random seed")->capture_default_str();
  verify->add_option("--count", va.count, "random maps per suite")
      ->capture_default_str();
  verify->add_option("--points", va.points, "points per map")
      ->capture_default_str();
  verify->add_flag("--inject-failure", va.inject_failure,
                   "append a failing check (exercises exit code 1)");
  verify->add_option("--out", va.out, "write the JSON report here");

  BoundsArgs ba;
  auto* bounds = app.add_subcommand("bounds", "tabulate the order bounds");
  bounds->add_option("--n", ba.n, "n or n_lo:n_hi")->capture_default_str();
  bounds->add_option("--alpha", ba.alpha, "alpha or alpha_lo:alpha_hi")
      ->capture_default_str();
  bounds->add_option("--step", ba.step, "alpha step")->capture_default_str();
  bounds->add_option("--format", ba.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  bounds->add_option("--out", ba.out, "output path");

  AnalyzeArgs aa;
  auto* analyze = app.add_subcommand("analyze", "analyze a map file");
  analyze->add_option("map_file", aa.map_file, "JSON map file")->required();
  analyze->add_option("--op", aa.ops, "schwarzian, norm, order, koebe, extremal")
      ->required()
      ->check(CLI::IsMember({"schwarzian", "norm", "order", "koebe", "extremal"}));
  analyze->add_option("--point", aa.point, "evaluation point, re im pairs");
  analyze->add_option("--zeta", aa.zeta, "Koebe center, re im pairs");
  analyze->add_option("--r-max", aa.r_max, "sup radius")->capture_default_str();
  analyze->add_option("--degree", aa.degree, "jet degree")->capture_default_str();
  analyze->add_option("--seed", aa.seed, "random seed")->capture_default_str();
  analyze->add_option("--out", aa.out, "write the JSON report here");

  SearchArgs sa;
  auto* search = app.add_subcommand("search", "penalized extremal search");
  search->add_option("--family", sa.family, "moebius or cubic")
      ->check(CLI::IsMember({"moebius", "cubic"}))
      ->capture_default_str();
  search->add_option("--n", sa.n, "dimension")->capture_default_str();
  search->add_option("--alpha", sa.alpha, "Schwarzian norm bound")
      ->capture_default_str();
  search->add_option("--budget", sa.budget, "objective evaluations")
      ->capture_default_str();
  search->add_option("--restarts", sa.restarts, "restarts")
      ->capture_default_str();
  search->add_option("--half-width", sa.half_width, "cubic coefficient box")
      ->capture_default_str();
  search->add_option("--seed", sa.seed, "random seed")->capture_default_str();
  search->add_option("--out", sa.out, "write the JSON report here");

  std::vector<std::string> argv_store{"schwarzball"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const std::string command = join_command(args);
  try {
    if (*verify) return cmd_verify(va, command, out);
    if (*bounds) return cmd_bounds(ba, command, out);
    if (*analyze) return cmd_analyze(aa, command, out);
    if (*search) return cmd_search(sa, command, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SpecParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const MathError& e) {
    err << "math error: " << e.what() << "\n";
    return kExitCheckFailure;
  }
  return kExitUsage;
}

}  // namespace schwarzball::cli
