// Command-line runner: solve one catalog problem or the whole catalog,
// in inexact or exact subproblem mode, and emit machine-readable traces,
// per-run summaries, and aggregate pivot statistics.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pslp/catalog.hpp"
#include "pslp/report_io.hpp"

namespace {

struct RunOptions {
  std::string problem = "all";
  std::string mode = "inexact";
  std::string out_dir = "out";
  std::string trace = "iter";  // none | iter | pivot
  double kkt_tol = 1e-4;
  double feas_tol = 1e-4;
  int max_iter = 1024;
  int max_pivots = 100;
  double delta0 = 1.0;
};

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << body;
}

int run(const RunOptions& opt) {
  std::vector<const pslp::CatalogEntry*> selected;
  if (opt.problem == "all") {
    for (const auto& entry : pslp::catalog()) selected.push_back(&entry);
  } else {
    const pslp::CatalogEntry* entry = pslp::find_entry(opt.problem);
    if (entry == nullptr) {
      std::cerr << "unknown problem '" << opt.problem << "'; available:";
      for (const auto& e : pslp::catalog()) std::cerr << ' ' << e.problem.name;
      std::cerr << "\n";
      return 2;
    }
    selected.push_back(entry);
  }

  pslp::SolverConfig config;
  config.kkt_tol = opt.kkt_tol;
  config.feas_tol = opt.feas_tol;
  config.iter_max = opt.max_iter;
  config.pivot_max = opt.max_pivots;
  config.delta0 = opt.delta0;
  config.mode = opt.mode == "exact" ? pslp::SolveMode::Exact
                                    : pslp::SolveMode::Inexact;

  std::filesystem::create_directories(opt.out_dir);
  const auto t0 = std::chrono::steady_clock::now();

  nlohmann::ordered_json aggregate = nlohmann::ordered_json::array();
  std::vector<double> pivot_averages;
  std::printf("%-14s %6s %8s %6s %14s %10s %10s %10s %5s\n", "problem", "iter",
              "pivot", "#f", "f", "v", "kkt", "rho", "exit");
  for (const pslp::CatalogEntry* entry : selected) {
    std::ofstream pivot_log;
    pslp::PivotObserver observer;
    if (opt.trace == "pivot") {
      pivot_log.open(std::filesystem::path(opt.out_dir) /
                     (entry->problem.name + ".pivots.jsonl"));
      observer = [&pivot_log](const pslp::PivotRecord& rec) {
        nlohmann::ordered_json j;
        j["iterate"] = rec.iterate;
        j["pivots"] = rec.pivots_so_far;
        j["rho"] = rec.rho;
        j["l_rho"] = rec.detail.l_rho;
        j["l_zero"] = rec.detail.l_zero;
        j["p_lambda_rho"] = rec.detail.p_lambda_rho;
        j["p_nu_zero"] = rec.detail.p_nu_zero;
        j["chi"] = rec.detail.chi;
        j["r_v"] = rec.detail.ratios.r_v;
        j["r_phi"] = rec.detail.ratios.r_phi;
        j["r_c"] = rec.detail.ratios.r_c;
        j["d"] = std::vector<double>(rec.d.data(), rec.d.data() + rec.d.size());
        pivot_log << j.dump() << "\n";
      };
    }

    const pslp::SolveReport report =
        pslp::solve(entry->problem, entry->x0, config, observer);

    if (opt.trace != "none") {
      write_file(std::filesystem::path(opt.out_dir) /
                     (entry->problem.name + ".trace.csv"),
                 pslp::trace_to_csv(report.trace));
    }
    const std::string summary =
        pslp::summary_to_json(entry->problem.name, report, opt.mode);
    write_file(std::filesystem::path(opt.out_dir) /
                   (entry->problem.name + ".summary.json"),
               summary + "\n");
    aggregate.push_back(nlohmann::ordered_json::parse(summary));
    pivot_averages.push_back(
        static_cast<double>(report.totals.pivots) /
        std::max(1, report.totals.iterations));

    std::printf("%-14s %6d %8ld %6ld %14.6e %10.3e %10.3e %10.3e %5d\n",
                entry->problem.name.c_str(), report.totals.iterations,
                report.totals.pivots, report.totals.fevals, report.f, report.v,
                report.eps_kkt, report.rho, pslp::exit_flag(report.status));
  }

  write_file(std::filesystem::path(opt.out_dir) / "aggregate.json",
             aggregate.dump(2) + "\n");
  write_file(std::filesystem::path(opt.out_dir) / "pivots_histogram.csv",
             pslp::pivot_histogram_csv(pivot_averages));

  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - t0);
  std::cerr << "total runtime: " << elapsed.count() << " ms\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"First-order penalty SLP solver for nonlinear programs"};
  RunOptions opt;
  app.set_config("--config", "", "key=value config file (flags take precedence)");
  app.add_option("--problem", opt.problem,
                 "catalog problem name, or 'all'")->capture_default_str();
  app.add_option("--mode", opt.mode, "subproblem accuracy mode")
      ->check(CLI::IsMember({"inexact", "exact"}))
      ->capture_default_str();
  app.add_option("--out-dir", opt.out_dir, "output directory")
      ->capture_default_str();
  app.add_option("--kkt-tol", opt.kkt_tol, "relative KKT tolerance")
      ->capture_default_str();
  app.add_option("--feas-tol", opt.feas_tol, "constraint violation tolerance")
      ->capture_default_str();
  app.add_option("--max-iter", opt.max_iter, "outer iteration limit")
      ->capture_default_str();
  app.add_option("--max-pivots", opt.max_pivots, "pivot limit per subproblem")
      ->capture_default_str();
  app.add_option("--delta0", opt.delta0, "initial trust-region radius")
      ->capture_default_str();
  app.add_option("--trace", opt.trace, "trace detail written to out-dir")
      ->check(CLI::IsMember({"none", "iter", "pivot"}))
      ->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  try {
    return run(opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
