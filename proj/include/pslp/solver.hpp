#pragma once

#include <string>

#include "pslp/penalty_update.hpp"
#include "pslp/problem.hpp"
#include "pslp/subproblem.hpp"

namespace pslp {

class LineSearchFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SolveMode { Inexact, Exact };

struct SolverConfig {
  ControlParams control;

  double rho0 = 1.0;
  double beta_alpha = 1e-4;   // Armijo slope fraction
  double theta_alpha = 0.5;   // backtracking factor
  double delta0 = 1.0;
  double delta_min = 1e-4;
  double delta_max = 64.0;
  double sigma_lo = 0.3;      // shrink the radius below this trust ratio
  double sigma_hi = 0.75;     // grow the radius above it; also skips backtracking
  int iter_max = 1024;
  int pivot_max = 100;        // per subproblem
  double kkt_tol = 1e-4;
  double feas_tol = 1e-4;
  int max_backtracks = 60;
  SolveMode mode = SolveMode::Inexact;

  void validate() const;
};

enum class SolveStatus { KKTSuccess, InfeasibleStationary, IterLimit, Stalled };

enum class StepType { Accepted, NullStep };

struct IterationRecord {
  int k = 0;
  Vector x;           // iterate the iteration started from
  double f = 0.0;
  double v = 0.0;
  double rho = 0.0;   // penalty parameter chosen this iteration
  double gamma = 0.0;
  double delta = 0.0;
  double alpha = 0.0;
  double dl_opt = 0.0;  // dl(d; rho)
  double dl_fea = 0.0;  // dl(d; 0)
  int pivots = 0;
  double e_opt = 0.0;
  double e_fea = 0.0;
  double e_c = 0.0;
  double eps_kkt = 0.0;
  StepType step_type = StepType::NullStep;

  // diagnostics beyond the core trace
  double sigma = 0.0;
  double phi_after = 0.0;  // phi(x_{k+1}; rho_k)
  double rho_entry = 0.0;  // penalty parameter the subproblem started from
  double rho_tilde = 0.0;
  double grad_inf = 0.0;   // ||grad f||_inf at x_k
  int dust_reductions = 0;
  int ls_trials = 0;
};

struct SolveTotals {
  int iterations = 0;
  long pivots = 0;
  long fevals = 0;
};

struct SolveReport {
  SolveStatus status = SolveStatus::Stalled;
  Vector x;
  double f = 0.0;
  double v = 0.0;
  double rho = 0.0;
  double eps_kkt = 0.0;
  double e_fea_rel = 0.0;  // final E_fea / max(1, E_fea at x0)
  double e_opt0 = 0.0;
  double e_c0 = 0.0;
  double e_fea0 = 0.0;
  std::vector<IterationRecord> trace;
  SolveTotals totals;
  std::string diagnostic;
};

struct LineSearchResult {
  double alpha = 1.0;
  Vector x_new;
  ValueSample values;  // (f, c) at x_new, reusable by the caller
  int trials = 0;
};

/// Backtracking Armijo search on phi(.; rho): largest alpha in
/// {theta^0, theta^1, ...} with phi(x) - phi(x + alpha d) >= beta * alpha * dl.
/// first_trial, when given, is the already-evaluated sample at alpha = 1.
LineSearchResult line_search(const Problem& problem, const Evaluation& eval,
                             const Vector& d, double rho, double delta_l,
                             const SolverConfig& config,
                             const ValueSample* first_trial = nullptr);

/// sigma = (phi_before - phi_after) / delta_l for the full step.
double trust_ratio(double phi_before, double phi_after, double delta_l);

/// Radius doubles above sigma_hi (capped), halves below sigma_lo (floored).
double trust_update(double delta, double sigma, const SolverConfig& config);

SolveReport solve(const Problem& problem, const Vector& x0,
                  const SolverConfig& config = {},
                  const PivotObserver& pivot_observer = nullptr);

std::string to_string(SolveStatus status);
std::string to_string(StepType step);

}  // namespace pslp
