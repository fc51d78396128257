#include "pslp/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

namespace pslp {

namespace {

const char* kColumns =
    "k,f,v,rho,gamma,delta,alpha,dl_opt,dl_fea,pivots,e_opt,e_fea,e_c,"
    "eps_kkt,step,sigma,phi_after,rho_entry,rho_tilde,grad_inf,"
    "dust_reductions,ls_trials,x";

std::string fmt(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, sep)) out.push_back(field);
  return out;
}

}  // namespace

std::string trace_to_csv(const std::vector<IterationRecord>& trace) {
  std::ostringstream os;
  os << kColumns << "\n";
  for (const IterationRecord& r : trace) {
    os << r.k << ',' << fmt(r.f) << ',' << fmt(r.v) << ',' << fmt(r.rho) << ','
       << fmt(r.gamma) << ',' << fmt(r.delta) << ',' << fmt(r.alpha) << ','
       << fmt(r.dl_opt) << ',' << fmt(r.dl_fea) << ',' << r.pivots << ','
       << fmt(r.e_opt) << ',' << fmt(r.e_fea) << ',' << fmt(r.e_c) << ','
       << fmt(r.eps_kkt) << ',' << to_string(r.step_type) << ','
       << fmt(r.sigma) << ',' << fmt(r.phi_after) << ',' << fmt(r.rho_entry)
       << ',' << fmt(r.rho_tilde) << ',' << fmt(r.grad_inf) << ','
       << r.dust_reductions << ',' << r.ls_trials << ',';
    for (Eigen::Index i = 0; i < r.x.size(); ++i) {
      if (i > 0) os << ';';
      os << fmt(r.x[i]);
    }
    os << "\n";
  }
  return os.str();
}

std::vector<IterationRecord> parse_trace_csv(const std::string& csv) {
  std::vector<IterationRecord> trace;
  std::istringstream is(csv);
  std::string line;
  if (!std::getline(is, line)) return trace;
  if (line != kColumns) {
    throw std::invalid_argument("unexpected trace header: " + line);
  }
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = split(line, ',');
    if (f.size() != 23) {
      throw std::invalid_argument("malformed trace row: " + line);
    }
    IterationRecord r;
    r.k = std::stoi(f[0]);
    r.f = std::stod(f[1]);
    r.v = std::stod(f[2]);
    r.rho = std::stod(f[3]);
    r.gamma = std::stod(f[4]);
    r.delta = std::stod(f[5]);
    r.alpha = std::stod(f[6]);
    r.dl_opt = std::stod(f[7]);
    r.dl_fea = std::stod(f[8]);
    r.pivots = std::stoi(f[9]);
    r.e_opt = std::stod(f[10]);
    r.e_fea = std::stod(f[11]);
    r.e_c = std::stod(f[12]);
    r.eps_kkt = std::stod(f[13]);
    r.step_type = f[14] == "Accepted" ? StepType::Accepted : StepType::NullStep;
    r.sigma = std::stod(f[15]);
    r.phi_after = std::stod(f[16]);
    r.rho_entry = std::stod(f[17]);
    r.rho_tilde = std::stod(f[18]);
    r.grad_inf = std::stod(f[19]);
    r.dust_reductions = std::stoi(f[20]);
    r.ls_trials = std::stoi(f[21]);
    const std::vector<std::string> xs = split(f[22], ';');
    r.x.resize(static_cast<Eigen::Index>(xs.size()));
    for (size_t i = 0; i < xs.size(); ++i) {
      r.x[static_cast<Eigen::Index>(i)] = std::stod(xs[i]);
    }
    trace.push_back(std::move(r));
  }
  return trace;
}

int exit_flag(SolveStatus status) {
  switch (status) {
    case SolveStatus::KKTSuccess: return 1;
    case SolveStatus::IterLimit: return -1;
    case SolveStatus::InfeasibleStationary:
    case SolveStatus::Stalled: return -2;
  }
  return -2;
}

std::string summary_to_json(const std::string& problem_name,
                            const SolveReport& report,
                            const std::string& mode) {
  nlohmann::ordered_json j;
  j["problem"] = problem_name;
  j["iter"] = report.totals.iterations;
  j["pivot"] = report.totals.pivots;
  j["f_evals"] = report.totals.fevals;
  j["f"] = report.f;
  j["v"] = report.v;
  j["kkt"] = report.eps_kkt;
  j["rho"] = report.rho;
  j["exit"] = exit_flag(report.status);
  j["status"] = to_string(report.status);
  j["mode"] = mode;
  if (!report.diagnostic.empty()) j["diagnostic"] = report.diagnostic;
  return j.dump();
}

std::string pivot_histogram_csv(const std::vector<double>& averages) {
  int max_bin = 0;
  for (double a : averages) {
    max_bin = std::max(max_bin, static_cast<int>(std::floor(a)));
  }
  std::vector<long> counts(static_cast<size_t>(max_bin) + 1, 0);
  for (double a : averages) {
    ++counts[static_cast<size_t>(std::floor(std::max(a, 0.0)))];
  }
  std::ostringstream os;
  os << "bin_lo,bin_hi,count\n";
  for (size_t b = 0; b < counts.size(); ++b) {
    os << b << ',' << b + 1 << ',' << counts[b] << "\n";
  }
  return os.str();
}

}  // namespace pslp
