// Copyright 2026 The qoreduce Authors
// SPDX-License-Identifier: Apache-2.0

// qoreduce command-line tool: generate, reduce, sweep, metrics, verify.

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qoreduce/benchmark_model.hpp"
#include "qoreduce/csv.hpp"
#include "qoreduce/errors.hpp"
#include "qoreduce/matrix_market.hpp"
#include "qoreduce/metrics.hpp"
#include "qoreduce/projection.hpp"
#include "qoreduce/run.hpp"
#include "qoreduce/transfer.hpp"

namespace fs = std::filesystem;
using namespace qoreduce;

namespace {

constexpr const char* kOutputEnv = "QOREDUCE_OUTPUT_DIR";

struct SourceOptions {
  std::string system_dir;
  std::vector<std::string> roles;  // ROLE=PATH
  bool generate = false;
  BenchmarkSpec spec = BenchmarkSpec::Default();
  std::vector<std::string> absorbers;  // node,mass,freq_hz,zeta
  bool no_absorbers = false;

  void Register(CLI::App* app) {
    app->add_option("--system", system_dir, "Directory with E/A/b/Q.mtx or M/D/K/g/C.mtx");
    app->add_option("--matrix", roles, "Per-role matrix file, ROLE=PATH (E A b Q or M D K g C)");
    app->add_flag("--generate", generate, "Use the synthetic chain benchmark");
    RegisterGenerator(app);
  }

  void RegisterGenerator(CLI::App* app) {
    app->add_option("--chain-length", spec.chain_length, "Chain nodes")->capture_default_str();
    app->add_option("--node-mass", spec.node_mass, "Mass per node")->capture_default_str();
    app->add_option("--spring-stiffness", spec.spring_stiffness, "Spring stiffness")->capture_default_str();
    app->add_option("--alpha", spec.alpha, "Rayleigh mass coefficient")->capture_default_str();
    app->add_option("--beta", spec.beta, "Rayleigh stiffness coefficient")->capture_default_str();
    app->add_option("--jitter", spec.jitter, "Relative mass/spring jitter")->capture_default_str();
    app->add_option("--seed", spec.seed, "Jitter seed")->capture_default_str();
    app->add_option("--load-index", spec.load_index, "Loaded node (default N/3)");
    app->add_option("--absorber", absorbers, "Absorber node,mass,freq_hz,zeta (repeatable)");
    app->add_flag("--no-absorbers", no_absorbers, "Chain without absorbers");
  }

  // Re-derives the index defaults when the chain length changed.
  BenchmarkSpec Spec(CLI::App* app) const {
    BenchmarkSpec s = spec;
    const Index n = s.chain_length;
    if (app->count("--chain-length") > 0) {
      if (app->count("--load-index") == 0) s.load_index = n / 3;
      s.absorbers.clear();
      for (Index at : {n / 4, n / 2, 3 * n / 4}) s.absorbers.push_back(Absorber::Tuned(at, 0.1, 48.0, 0.05));
    }
    if (no_absorbers || !absorbers.empty()) s.absorbers.clear();
    for (const auto& text : absorbers) {
      std::istringstream in(text);
      std::string cell;
      std::vector<double> v;
      while (std::getline(in, cell, ',')) {
        try {
          v.push_back(std::stod(cell));
        } catch (const std::exception&) {
          throw ConfigError("bad absorber field '" + cell + "'");
        }
      }
      if (v.size() != 4) throw ConfigError("absorber expects node,mass,freq_hz,zeta");
      s.absorbers.push_back(Absorber::Tuned(static_cast<Index>(v[0]), v[1], v[2], v[3]));
    }
    return s;
  }

  SystemSource Source(CLI::App* app) const {
    const int given = (system_dir.empty() ? 0 : 1) + (roles.empty() ? 0 : 1) + (generate ? 1 : 0);
    if (given != 1) throw ConfigError("give exactly one of --system, --matrix or --generate");
    if (generate) {
      SystemSource s;
      s.generator = Spec(app);
      return s;
    }
    if (!system_dir.empty()) return SystemSource::FromDirectory(system_dir);
    SystemSource s;
    for (const auto& r : roles) {
      const auto eq = r.find('=');
      if (eq == std::string::npos) throw ConfigError("--matrix expects ROLE=PATH, got '" + r + "'");
      const std::string role = r.substr(0, eq);
      const fs::path path = r.substr(eq + 1);
      if (role == "E" || role == "A" || role == "b" || role == "Q") {
        s.first_order[role] = path;
      } else if (role == "M" || role == "D" || role == "K" || role == "g" || role == "C") {
        s.second_order[role] = path;
      } else {
        throw ConfigError("unknown matrix role '" + role + "'");
      }
    }
    if (!s.first_order.empty() && !s.second_order.empty()) {
      throw ConfigError("mixing first- and second-order roles");
    }
    return s;
  }
};

struct GridOptions {
  GridSpec grid;
  void Register(CLI::App* app, const std::string& prefix, const std::string& unit) {
    app->add_option("--" + prefix + "-count", grid.count, prefix + " grid points")->capture_default_str();
    app->add_option("--" + prefix + "-first", grid.first, prefix + " grid start [" + unit + "]")
        ->capture_default_str();
    app->add_option("--" + prefix + "-last", grid.last, prefix + " grid end [" + unit + "]")
        ->capture_default_str();
  }
};

fs::path OutputDir(const std::string& flag) {
  if (const char* env = std::getenv(kOutputEnv); env != nullptr && *env != '\0') return env;
  return flag;
}

void PrintSummary(const RunSummary& summary) {
  std::cout << std::left << std::setw(11) << "method" << std::setw(7) << "order" << std::setw(6) << "rank"
            << std::setw(14) << "h2_approx" << std::setw(14) << "hinf" << std::setw(10) << "seconds"
            << "notes\n";
  for (const auto& e : summary.entries) {
    std::ostringstream notes;
    if (e.method == Method::kIrka) notes << (e.converged ? "converged" : "not converged") << " it=" << e.iterations;
    std::cout << std::left << std::setw(11) << MethodName(e.method) << std::setw(7) << e.order << std::setw(6)
              << e.rank << std::setw(14) << std::setprecision(4) << std::scientific << e.errors.h2_relerr
              << std::setw(14) << e.errors.hinf_relerr << std::setw(10) << std::fixed << std::setprecision(2)
              << e.seconds << notes.str() << '\n';
    std::cout.unsetf(std::ios::floatfield);
  }
}

ReducedModel LoadRom(const fs::path& dir) {
  auto dense = [&](const char* name) { return DenseMatrix(ReadMatrixMarket(dir / name).matrix); };
  return {dense("E.mtx"), dense("A.mtx"), ReadMatrixMarketVector(dir / "b.mtx"), dense("Q.mtx"), "rom"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interpolatory model order reduction for quadratic-output systems"};
  app.require_subcommand(1);
  std::string out_flag = "qoreduce_out";

  // generate
  auto* gen = app.add_subcommand("generate", "Write the synthetic chain benchmark as Matrix Market files");
  SourceOptions gen_src;
  gen_src.RegisterGenerator(gen);
  bool gen_first_order = false;
  gen->add_flag("--first-order", gen_first_order, "Also write the lifted E/A/b/Q");
  gen->add_option("-o,--output-dir", out_flag, "Output directory")->capture_default_str();

  // reduce
  auto* red = app.add_subcommand("reduce", "Run reduction methods and write ROMs, sweeps and errors");
  SourceOptions red_src;
  red_src.Register(red);
  RunConfig cfg;
  std::vector<std::string> methods;
  red->add_option("--method", methods, "irka, greedy-v, greedy-vw, avg-v, avg-vw (default: all)");
  std::vector<Index> orders{40};
  red->add_option("--orders", orders, "Reduced orders, nondecreasing")->capture_default_str();
  GridOptions presample{cfg.presample};
  presample.Register(red, "presample", "rad/s");
  GridOptions metric{cfg.metric};
  metric.Register(red, "metric", "Hz");
  red->add_option("--deflation-tol", cfg.deflation_tol, "Relative deflation tolerance")->capture_default_str();
  red->add_option("--irka-tol", cfg.irka.tol, "IRKA pole tolerance")->capture_default_str();
  red->add_option("--irka-max-iter", cfg.irka.max_iter, "IRKA iteration limit")->capture_default_str();
  red->add_option("-o,--output-dir", out_flag, "Output directory")->capture_default_str();

  // sweep
  auto* sw = app.add_subcommand("sweep", "Evaluate H on a frequency grid, optionally against a ROM");
  SourceOptions sw_src;
  sw_src.Register(sw);
  std::string rom_dir;
  sw->add_option("--rom", rom_dir, "Directory with reduced E/A/b/Q.mtx");
  GridOptions sw_grid{GridSpec{500, 0.0, 250.0}};
  sw_grid.Register(sw, "metric", "Hz");
  sw->add_option("-o,--output-dir", out_flag, "Output directory")->capture_default_str();

  // metrics
  auto* met = app.add_subcommand("metrics", "Error measures from a sweep CSV with reduced columns");
  std::string sweep_csv;
  met->add_option("--sweep", sweep_csv, "Sweep CSV")->required();
  std::string label = "reduced";
  Index label_order = 0;
  met->add_option("--label", label, "Method label for the report")->capture_default_str();
  met->add_option("--order", label_order, "Order label for the report");
  bool met_write = false;
  met->add_flag("--write", met_write, "Write errors.csv to the output directory");
  met->add_option("-o,--output-dir", out_flag, "Output directory")->capture_default_str();

  // verify
  auto* ver = app.add_subcommand("verify", "Check interpolation conditions of a run or a system");
  std::string run_dir;
  ver->add_option("--run", run_dir, "Completed run directory");
  SourceOptions ver_src;
  ver_src.Register(ver);
  std::vector<double> ver_omegas{1.0, 10.0, 100.0};
  ver->add_option("--omega", ver_omegas, "Check frequencies [rad/s] for a system")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(ExitCode::kConfigError);
  }

  try {
    if (*gen) {
      const fs::path out = OutputDir(out_flag);
      fs::create_directories(out);
      const SecondOrderSystem so = GenerateBenchmark(gen_src.Spec(gen));
      WriteMatrixMarket(out / "M.mtx", so.M());
      WriteMatrixMarket(out / "D.mtx", so.D());
      WriteMatrixMarket(out / "K.mtx", so.K());
      WriteMatrixMarket(out / "g.mtx", so.g());
      WriteMatrixMarket(out / "C.mtx", so.C());
      if (gen_first_order) {
        const QuadraticOutputSystem fo = LiftSecondOrder(so);
        WriteMatrixMarket(out / "E.mtx", fo.E());
        WriteMatrixMarket(out / "A.mtx", fo.A());
        WriteMatrixMarket(out / "b.mtx", fo.b());
        WriteMatrixMarket(out / "Q.mtx", fo.Q());
      }
      std::cout << "wrote " << so.dim() << "-DOF benchmark to " << out.string() << '\n';
    } else if (*red) {
      cfg.source = red_src.Source(red);
      if (methods.empty()) {
        cfg.methods = AllMethods();
      } else {
        for (const auto& m : methods) cfg.methods.push_back(ParseMethod(m));
      }
      cfg.orders = orders;
      cfg.presample = presample.grid;
      cfg.metric = metric.grid;
      cfg.seed = red_src.spec.seed;
      cfg.output_dir = OutputDir(out_flag);
      const RunSummary summary = Run(cfg);
      PrintSummary(summary);
      std::cout << "run written to " << cfg.output_dir.string() << '\n';
    } else if (*sw) {
      const QuadraticOutputSystem sys = LoadSystem(sw_src.Source(sw));
      const std::vector<double> grid = sw_grid.grid.Points();
      const SweepResult full = Sweep(sys, grid);
      const fs::path out = OutputDir(out_flag);
      fs::create_directories(out);
      if (!rom_dir.empty()) {
        const SweepResult reduced = Sweep(LoadRom(rom_dir), grid);
        WriteSweepCsv(out / "sweep.csv", full, &reduced);
      } else {
        WriteSweepCsv(out / "sweep.csv", full, nullptr);
      }
      for (const auto& d : full.diagnostics) std::cerr << "warning: " << d << '\n';
      std::cout << "wrote " << (out / "sweep.csv").string() << '\n';
      if (!full.complete()) return static_cast<int>(ExitCode::kNumericalFailure);
    } else if (*met) {
      const SweepTable table = ReadSweepCsv(sweep_csv);
      if (!table.reduced) throw ConfigError(sweep_csv + " has no reduced columns");
      const ErrorReport report = MakeErrorReport(table.full, *table.reduced, label, label_order);
      std::cout << "h2_approx_relerr " << FormatDouble(report.h2_relerr) << '\n'
                << "hinf_relerr " << FormatDouble(report.hinf_relerr) << '\n';
      if (met_write) WriteErrorReportCsv(OutputDir(out_flag) / "errors.csv", {report});
    } else if (*ver) {
      VerifyReport report;
      if (!run_dir.empty()) {
        report = VerifyRun(run_dir);
      } else {
        report = VerifySystem(LoadSystem(ver_src.Source(ver)), ver_omegas);
      }
      std::cout << ToJson(report) << '\n';
      if (!report.passed()) return static_cast<int>(ExitCode::kVerificationFailure);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::kConfigError);
  } catch (const VerificationError& e) {
    std::cerr << "verification failed: " << e.what() << '\n';
    return static_cast<int>(ExitCode::kVerificationFailure);
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return static_cast<int>(ExitCode::kNumericalFailure);
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::kConfigError);
  }
  return static_cast<int>(ExitCode::kSuccess);
}
