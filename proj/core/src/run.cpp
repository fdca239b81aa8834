// Copyright 2026 The qoreduce Authors
// SPDX-License-Identifier: Apache-2.0

#include "qoreduce/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"
#include "qoreduce/csv.hpp"
#include "qoreduce/errors.hpp"
#include "qoreduce/matrix_market.hpp"
#include "qoreduce/metrics.hpp"
#include "qoreduce/transfer.hpp"

namespace qoreduce {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr double kLagrangeTol = 1e-6;
constexpr double kHermiteTol = 1e-6;
constexpr double kBivariateTol = 1e-6;
constexpr double kMetricTol = 1e-8;

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

const std::vector<std::pair<Method, std::string>>& MethodNames() {
  static const std::vector<std::pair<Method, std::string>> names = {
      {Method::kIrka, "irka"},          {Method::kGreedyV, "greedy-v"}, {Method::kGreedyVW, "greedy-vw"},
      {Method::kAveragedV, "avg-v"}, {Method::kAveragedVW, "avg-vw"}};
  return names;
}

bool NeedsW(Method m) { return m == Method::kGreedyVW || m == Method::kAveragedVW; }

json GridJson(const GridSpec& g) { return {{"count", g.count}, {"first", g.first}, {"last", g.last}}; }

GridSpec GridFromJson(const json& j) {
  return {j.at("count").get<std::size_t>(), j.at("first").get<double>(), j.at("last").get<double>()};
}

json ComplexJson(Complex z) { return json::array({z.real(), z.imag()}); }

json SourceJson(const SystemSource& s) {
  json j;
  if (s.generator) {
    const BenchmarkSpec& b = *s.generator;
    json absorbers = json::array();
    for (const auto& a : b.absorbers) {
      absorbers.push_back({{"attachment", a.attachment},
                           {"mass", a.mass},
                           {"stiffness", a.stiffness},
                           {"damping", a.damping}});
    }
    j["generator"] = {{"chain_length", b.chain_length}, {"node_mass", b.node_mass},
                      {"spring_stiffness", b.spring_stiffness}, {"jitter", b.jitter},
                      {"seed", b.seed}, {"alpha", b.alpha}, {"beta", b.beta},
                      {"absorbers", absorbers}, {"load_index", b.load_index},
                      {"observed", b.observed}, {"weights", b.weights}};
  }
  for (const auto& [role, path] : s.first_order) j["first_order"][role] = path.string();
  for (const auto& [role, path] : s.second_order) j["second_order"][role] = path.string();
  return j;
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw ConfigError("write failed: " + path.string());
}

json ReadJson(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("missing " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

void WriteSystem(const fs::path& dir, const QuadraticOutputSystem& sys) {
  fs::create_directories(dir);
  WriteMatrixMarket(dir / "E.mtx", sys.E());
  WriteMatrixMarket(dir / "A.mtx", sys.A());
  WriteMatrixMarket(dir / "b.mtx", sys.b());
  WriteMatrixMarket(dir / "Q.mtx", sys.Q());
}

ReducedModel LoadReduced(const fs::path& dir, const std::string& method) {
  auto dense = [&](const char* name) { return DenseMatrix(ReadMatrixMarket(dir / name).matrix); };
  return {dense("E.mtx"), dense("A.mtx"), ReadMatrixMarketVector(dir / "b.mtx"), dense("Q.mtx"), method};
}

std::vector<double> OmegasAt(const SampleBasis& basis, const std::vector<Index>& idx) {
  std::vector<double> out;
  out.reserve(idx.size());
  for (Index j : idx) out.push_back(basis.omegas[static_cast<std::size_t>(j)]);
  return out;
}

// Relative to |H| itself; a vanishing |H| falls back to the absolute error.
double RelativeTo(Complex exact, Complex approx) {
  const double diff = std::abs(exact - approx);
  return std::abs(exact) > 0.0 ? diff / std::abs(exact) : diff;
}

CheckOutcome MakeCheck(std::string name, double measured, double threshold, std::string detail = {}) {
  return {std::move(name), std::isfinite(measured) && measured <= threshold, measured, threshold,
          std::move(detail)};
}

void AddInterpolationChecks(VerifyReport& report, const std::string& label,
                            const QuadraticOutputSystem& sys, const ReducedModel& rom,
                            const std::vector<double>& lagrange, const std::vector<double>& hermite) {
  if (!lagrange.empty()) {
    const InterpolationReport r = CheckInterpolation(sys, rom, lagrange);
    double worst = 0.0;
    double at = 0.0;
    for (const auto& p : r.points) {
      const double e = RelativeTo(p.value_full, p.value_reduced);
      if (!(e <= worst)) {
        worst = e;
        at = p.omega;
      }
    }
    std::ostringstream os;
    os << lagrange.size() << " points, worst at omega=" << at;
    report.checks.push_back(MakeCheck(label + ":lagrange", worst, kLagrangeTol, os.str()));
  }
  if (!hermite.empty()) {
    const InterpolationReport r = CheckInterpolation(sys, rom, hermite);
    double worst = 0.0;
    double at = 0.0;
    for (const auto& p : r.points) {
      const double e = RelativeTo(p.deriv_full, p.deriv_reduced);
      if (!(e <= worst)) {
        worst = e;
        at = p.omega;
      }
    }
    std::ostringstream os;
    os << hermite.size() << " points, worst at omega=" << at;
    report.checks.push_back(MakeCheck(label + ":hermite", worst, kHermiteTol, os.str()));
  }
}

}  // namespace

std::string MethodName(Method m) {
  for (const auto& [method, name] : MethodNames()) {
    if (method == m) return name;
  }
  throw ConfigError("unknown method");
}

Method ParseMethod(const std::string& name) {
  for (const auto& [method, n] : MethodNames()) {
    if (n == name) return method;
  }
  throw ConfigError("unknown method '" + name + "' (expected irka, greedy-v, greedy-vw, avg-v or avg-vw)");
}

std::vector<Method> AllMethods() {
  std::vector<Method> out;
  for (const auto& entry : MethodNames()) out.push_back(entry.first);
  return out;
}

SystemSource SystemSource::FromDirectory(const fs::path& dir) {
  auto has_all = [&](std::initializer_list<const char*> roles) {
    return std::all_of(roles.begin(), roles.end(),
                       [&](const char* r) { return fs::exists(dir / (std::string(r) + ".mtx")); });
  };
  SystemSource s;
  if (has_all({"E", "A", "b", "Q"})) {
    for (const char* r : {"E", "A", "b", "Q"}) s.first_order[r] = dir / (std::string(r) + ".mtx");
  } else if (has_all({"M", "D", "K", "g", "C"})) {
    for (const char* r : {"M", "D", "K", "g", "C"}) s.second_order[r] = dir / (std::string(r) + ".mtx");
  } else {
    throw ConfigError(dir.string() + " holds neither E/A/b/Q.mtx nor M/D/K/g/C.mtx");
  }
  return s;
}

std::vector<double> GridSpec::Points() const {
  if (count == 0) throw ConfigError("grid needs at least one point");
  if (count > 1 && !(last > first)) throw ConfigError("grid needs last > first");
  return LinearGrid(first, last, count);
}

void RunConfig::Validate() const {
  const int sources = (source.generator ? 1 : 0) + (source.first_order.empty() ? 0 : 1) +
                      (source.second_order.empty() ? 0 : 1);
  if (sources != 1) throw ConfigError("exactly one system source must be given");
  if (source.generator) source.generator->Validate();
  if (methods.empty()) throw ConfigError("no reduction method selected");
  if (orders.empty()) throw ConfigError("no reduced orders given");
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (orders[i] < 1) throw ConfigError("orders must be positive");
    if (i > 0 && orders[i] < orders[i - 1]) throw ConfigError("orders must be nondecreasing");
  }
  presample.Points();
  metric.Points();
  if (!(deflation_tol > 0.0 && deflation_tol < 1.0)) throw ConfigError("deflation tolerance must lie in (0, 1)");
  if (!(irka.tol > 0.0)) throw ConfigError("IRKA tolerance must be positive");
  if (irka.max_iter < 1) throw ConfigError("IRKA max_iter must be positive");
  if (output_dir.empty()) throw ConfigError("output directory is not set");
}

QuadraticOutputSystem LoadSystem(const SystemSource& source) {
  if (source.generator) return LiftSecondOrder(GenerateBenchmark(*source.generator));
  auto matrix = [](const std::map<std::string, fs::path>& roles, const std::string& role) {
    const auto it = roles.find(role);
    if (it == roles.end()) throw ConfigError("missing matrix for role " + role);
    return ReadMatrixMarket(it->second).matrix;
  };
  auto vector = [](const std::map<std::string, fs::path>& roles, const std::string& role) {
    const auto it = roles.find(role);
    if (it == roles.end()) throw ConfigError("missing vector for role " + role);
    return ReadMatrixMarketVector(it->second);
  };
  if (!source.first_order.empty()) {
    const auto& r = source.first_order;
    return {matrix(r, "E"), matrix(r, "A"), vector(r, "b"), matrix(r, "Q")};
  }
  if (!source.second_order.empty()) {
    const auto& r = source.second_order;
    return LiftSecondOrder({matrix(r, "M"), matrix(r, "D"), matrix(r, "K"), vector(r, "g"), matrix(r, "C")});
  }
  throw ConfigError("no system source given");
}

RunSummary Run(const RunConfig& config) {
  config.Validate();
  const QuadraticOutputSystem sys = LoadSystem(config.source);
  const fs::path& out = config.output_dir;
  fs::create_directories(out);
  WriteSystem(out / "system", sys);

  RunSummary summary;
  const std::vector<double> grid_hz = config.metric.Points();
  const SweepResult full = Sweep(sys, grid_hz);
  summary.full_sweep_seconds = full.seconds;
  if (!full.complete()) {
    throw NumericalError("full-order sweep failed: " + full.diagnostics.front());
  }
  WriteSweepCsv(out / "full_sweep.csv", full, nullptr);

  const bool need_basis = std::any_of(config.methods.begin(), config.methods.end(),
                                      [](Method m) { return m != Method::kIrka; });
  const bool need_w = std::any_of(config.methods.begin(), config.methods.end(), NeedsW);
  std::optional<SampleBasis> basis;
  if (need_basis) {
    const auto start = Clock::now();
    basis = Presample(sys, config.presample.Points(), need_w);
    summary.presample_seconds = SecondsSince(start);
  }

  const double omega_lo = kTwoPi * std::max(config.metric.first, 1.0);
  const double omega_hi = std::max(kTwoPi * config.metric.last, omega_lo);

  for (Method method : config.methods) {
    for (Index r : config.orders) {
      RunEntry entry;
      entry.method = method;
      entry.order = r;
      const std::string name = MethodName(method);
      const auto start = Clock::now();
      std::optional<ReducedModel> rom;
      try {
        switch (method) {
          case Method::kGreedyV:
          case Method::kGreedyVW: {
            const bool petrov = method == Method::kGreedyVW;
            GreedyResult g = GreedySelect(sys, *basis, r, petrov, config.deflation_tol);
            entry.lagrange_omegas = OmegasAt(*basis, g.trace.selected);
            if (petrov) entry.hermite_omegas = entry.lagrange_omegas;
            rom.emplace(std::move(g.rom));
            break;
          }
          case Method::kAveragedV:
          case Method::kAveragedVW: {
            const bool petrov = method == Method::kAveragedVW;
            AveragedResult a = AveragedBasis(sys, *basis, r, petrov, config.deflation_tol);
            if (a.rom.order() == r) {
              entry.lagrange_omegas = OmegasAt(*basis, a.v_pivots);
              if (petrov) {
                std::set<Index> wp(a.w_pivots.begin(), a.w_pivots.end());
                std::vector<Index> both;
                for (Index j : a.v_pivots) {
                  if (wp.count(j)) both.push_back(j);
                }
                std::sort(both.begin(), both.end());
                entry.hermite_omegas = OmegasAt(*basis, both);
              }
            }
            rom.emplace(std::move(a.rom));
            break;
          }
          case Method::kIrka: {
            IrkaOptions opts = config.irka;
            opts.deflation_tol = config.deflation_tol;
            IrkaResult res = LqoIrka(sys, r, DefaultIrkaPoles(r, omega_lo, omega_hi), opts);
            entry.converged = res.state.converged;
            entry.iterations = res.state.iterations;
            if (res.state.converged && res.state.real_basis) {
              entry.bivariate_points = res.state.MirroredShifts();
            }
            rom.emplace(std::move(res.rom));
            break;
          }
        }
      } catch (const ConfigError& e) {
        throw ConfigError(name + " r=" + std::to_string(r) + ": " + e.what());
      } catch (const NumericalError& e) {
        throw NumericalError(name + " r=" + std::to_string(r) + ": " + e.what());
      }
      entry.seconds = SecondsSince(start);
      entry.rank = rom->order();
      entry.warnings = rom->warnings();

      const SweepResult reduced = Sweep(*rom, grid_hz);
      if (!reduced.complete()) {
        throw NumericalError(name + " r=" + std::to_string(r) + ": reduced sweep failed: " +
                             reduced.diagnostics.front());
      }
      entry.errors = MakeErrorReport(full, reduced, name, r);
      entry.directory = name + "_r" + std::to_string(r);
      const fs::path dir = out / entry.directory;
      fs::create_directories(dir);
      WriteMatrixMarket(dir / "E.mtx", rom->E());
      WriteMatrixMarket(dir / "A.mtx", rom->A());
      WriteMatrixMarket(dir / "b.mtx", rom->b());
      WriteMatrixMarket(dir / "Q.mtx", rom->Q());
      WriteSweepCsv(dir / "sweep.csv", full, &reduced);
      WriteErrorReportCsv(dir / "errors.csv", {entry.errors});
      summary.entries.push_back(std::move(entry));
    }
  }

  std::vector<ErrorReport> reports;
  for (const auto& e : summary.entries) reports.push_back(e.errors);
  WriteErrorReportCsv(out / "summary.csv", reports);

  json manifest;
  manifest["format"] = "qoreduce-run/1";
  manifest["system"] = {{"dim", sys.dim()}, {"real", sys.is_real()}, {"source", SourceJson(config.source)}};
  manifest["config"] = {
      {"methods", json::array()},   {"orders", config.orders},
      {"presample", GridJson(config.presample)}, {"metric", GridJson(config.metric)},
      {"deflation_tol", config.deflation_tol},
      {"irka", {{"tol", config.irka.tol}, {"max_iter", config.irka.max_iter}}},
      {"seed", config.seed}};
  for (Method m : config.methods) manifest["config"]["methods"].push_back(MethodName(m));
  manifest["timings"] = {{"full_sweep_seconds", summary.full_sweep_seconds},
                         {"presample_seconds", summary.presample_seconds}};
  if (basis) manifest["presample_diagnostics"] = basis->diagnostics;
  json entries = json::array();
  for (const auto& e : summary.entries) {
    json biv = json::array();
    for (Complex z : e.bivariate_points) biv.push_back(ComplexJson(z));
    entries.push_back({{"method", MethodName(e.method)},
                       {"order", e.order},
                       {"rank", e.rank},
                       {"directory", e.directory},
                       {"h2_approx_relerr", e.errors.h2_relerr},
                       {"hinf_relerr", e.errors.hinf_relerr},
                       {"converged", e.converged},
                       {"iterations", e.iterations},
                       {"seconds", e.seconds},
                       {"lagrange_omegas", e.lagrange_omegas},
                       {"hermite_omegas", e.hermite_omegas},
                       {"bivariate_points", biv},
                       {"warnings", e.warnings}});
  }
  manifest["entries"] = entries;
  WriteText(out / "manifest.json", manifest.dump(2) + "\n");
  return summary;
}

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckOutcome& c) { return c.passed; });
}

VerifyReport VerifyRun(const fs::path& run_dir) {
  const json manifest = ReadJson(run_dir / "manifest.json");
  VerifyReport report;
  const QuadraticOutputSystem sys = LoadSystem(SystemSource::FromDirectory(run_dir / "system"));
  const GridSpec metric = GridFromJson(manifest.at("config").at("metric"));
  const std::vector<double> grid_hz = metric.Points();
  const SweepResult full = Sweep(sys, grid_hz);

  for (const auto& e : manifest.at("entries")) {
    const std::string dir = e.at("directory").get<std::string>();
    const std::string method = e.at("method").get<std::string>();
    const ReducedModel rom = LoadReduced(run_dir / dir, method);

    AddInterpolationChecks(report, dir, sys, rom, e.at("lagrange_omegas").get<std::vector<double>>(),
                           e.at("hermite_omegas").get<std::vector<double>>());

    std::vector<Complex> points;
    for (const auto& z : e.at("bivariate_points")) points.emplace_back(z.at(0).get<double>(), z.at(1).get<double>());
    if (!points.empty()) {
      report.checks.push_back(MakeCheck(dir + ":bivariate",
                                        BivariateMismatch(sys, rom, points, MismatchScale::kNormwise),
                                        kBivariateTol,
                                        std::to_string(points.size()) + " mirrored shifts, normwise"));
    }

    const SweepResult reduced = Sweep(rom, grid_hz);
    double drift = std::numeric_limits<double>::infinity();
    if (reduced.complete()) {
      const double recorded = e.at("h2_approx_relerr").get<double>();
      const double now = H2ApproxRelativeError(full, reduced);
      drift = std::abs(now - recorded) / std::max(std::abs(recorded), std::numeric_limits<double>::min());
    }
    report.checks.push_back(MakeCheck(dir + ":h2_metric", drift, kMetricTol, "recomputed vs recorded"));
  }
  return report;
}

VerifyReport VerifySystem(const QuadraticOutputSystem& sys, const std::vector<double>& omegas) {
  if (omegas.empty()) throw ConfigError("verify needs at least one frequency");
  VerifyReport report;

  double identity = 0.0;
  double fd = 0.0;
  for (double w : omegas) {
    const Complex direct = TransferFunction(sys, AxisPoint(w));
    const Complex adjoint = TransferOnAxis(sys, w);
    identity = std::max(identity, RelativeTo(direct, adjoint));

    const double h = 1e-5 * std::max(1.0, std::abs(w));
    const Complex deriv = TransferDerivativeOnAxis(sys, w);
    const Complex diff = (TransferOnAxis(sys, w + h) - TransferOnAxis(sys, w - h)) / (2.0 * h);
    // dH/dz with z = i*omega.
    fd = std::max(fd, std::abs(deriv - diff / Complex(0.0, 1.0)) / std::max(1.0, std::abs(deriv)));
  }
  report.checks.push_back(MakeCheck("output_identity", identity, 1e-10, "x^H Q x vs b^H w"));
  report.checks.push_back(MakeCheck("derivative_fd", fd, 1e-5, "closed form vs central difference"));

  const Index k = std::min<Index>(static_cast<Index>(omegas.size()), sys.dim());
  const std::vector<double> pts(omegas.begin(), omegas.begin() + k);
  const SampleBasis basis = Presample(sys, pts, true);
  BasisMatrix V = BasisMatrix::Normalize(basis.v_columns);
  BasisMatrix W = BasisMatrix::Normalize(*basis.w_columns);
  EqualizeRanks(V, W);
  const ReducedModel rom = Reduce(sys, V, W, "verify");
  const InterpolationReport r = CheckInterpolation(sys, rom, basis.omegas);
  report.checks.push_back(MakeCheck("lagrange", r.max_value_error(), 1e-8, "relative to max(1, |H|)"));
  report.checks.push_back(MakeCheck("hermite", r.max_deriv_error(), 1e-6, "relative to max(1, |H'|)"));
  return report;
}

std::string ToJson(const VerifyReport& report) {
  json j;
  j["passed"] = report.passed();
  j["checks"] = json::array();
  for (const auto& c : report.checks) {
    j["checks"].push_back({{"name", c.name},
                           {"passed", c.passed},
                           {"measured", c.measured},
                           {"threshold", c.threshold},
                           {"detail", c.detail}});
  }
  return j.dump(2);
}

}  // namespace qoreduce
