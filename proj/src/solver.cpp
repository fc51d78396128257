#include "pslp/solver.hpp"

#include <cmath>
#include <limits>

namespace pslp {

void SolverConfig::validate() const {
  control.validate();
  auto fail = [](const char* msg) { throw std::invalid_argument(msg); };
  if (!(rho0 > 0.0)) fail("require rho0 > 0");
  if (!(0.0 < beta_alpha && beta_alpha < 1.0)) fail("require beta_alpha in (0,1)");
  if (!(0.0 < theta_alpha && theta_alpha < 1.0)) fail("require theta_alpha in (0,1)");
  if (!(0.0 < sigma_lo && sigma_lo < sigma_hi && sigma_hi < 1.0)) {
    fail("require 0 < sigma_lo < sigma_hi < 1");
  }
  if (!(0.0 < delta_min && delta_min < delta_max)) {
    fail("require 0 < delta_min < delta_max");
  }
  if (!(delta_min <= delta0 && delta0 <= delta_max)) {
    fail("require delta0 in [delta_min, delta_max]");
  }
  if (iter_max < 1) fail("require iter_max >= 1");
  if (pivot_max < 1) fail("require pivot_max >= 1");
  if (!(kkt_tol > 0.0 && feas_tol > 0.0)) fail("require positive tolerances");
}

LineSearchResult line_search(const Problem& problem, const Evaluation& eval,
                             const Vector& d, double rho, double delta_l,
                             const SolverConfig& config,
                             const ValueSample* first_trial) {
  if (!(delta_l >= 0.0)) {
    throw std::invalid_argument("line_search requires a nonnegative model reduction");
  }
  if (d.isZero(0.0)) {
    throw std::invalid_argument("line_search requires a nonzero step");
  }
  const double phi0 = penalty(eval.f, violation(eval), rho);
  LineSearchResult out;
  for (int t = 0; t <= config.max_backtracks; ++t) {
    const double alpha = std::pow(config.theta_alpha, t);
    Vector x_trial = eval.x + alpha * d;
    ValueSample sample = (t == 0 && first_trial != nullptr)
                             ? *first_trial
                             : evaluate_values(problem, x_trial);
    out.trials = t + 1;
    const double phi_trial =
        penalty(sample.f, violation(sample.b, eval.kinds), rho);
    if (phi0 - phi_trial >= config.beta_alpha * alpha * delta_l) {
      out.alpha = alpha;
      out.x_new = std::move(x_trial);
      out.values = std::move(sample);
      return out;
    }
  }
  throw LineSearchFailure(
      "no Armijo step within " + std::to_string(config.max_backtracks) +
      " backtracks; model and function disagree (check the gradients)");
}

double trust_ratio(double phi_before, double phi_after, double delta_l) {
  if (!(delta_l > 0.0)) {
    throw std::invalid_argument("trust_ratio requires delta_l > 0");
  }
  return (phi_before - phi_after) / delta_l;
}

double trust_update(double delta, double sigma, const SolverConfig& config) {
  if (sigma > config.sigma_hi) return std::min(2.0 * delta, config.delta_max);
  if (sigma < config.sigma_lo) return std::max(0.5 * delta, config.delta_min);
  return delta;
}

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::KKTSuccess: return "KKTSuccess";
    case SolveStatus::InfeasibleStationary: return "InfeasibleStationary";
    case SolveStatus::IterLimit: return "IterLimit";
    case SolveStatus::Stalled: return "Stalled";
  }
  return "?";
}

std::string to_string(StepType step) {
  return step == StepType::Accepted ? "Accepted" : "NullStep";
}

SolveReport solve(const Problem& problem, const Vector& x0,
                  const SolverConfig& config,
                  const PivotObserver& pivot_observer) {
  config.validate();
  SolveReport report;
  report.x = x0;

  SubproblemParams sub_params;
  sub_params.control = config.control;
  sub_params.pivot_limit = config.pivot_max;
  sub_params.exact_mode = config.mode == SolveMode::Exact;

  try {
    Evaluation eval = evaluate(problem, x0);
    report.totals.fevals = 1;

    // One feasibility LP at the start point seeds the multipliers behind the
    // relative-residual denominators and the infeasibility certificate.
    FeasibilityDuals seed =
        solve_feasibility_lp(eval, config.delta0, config.pivot_max);
    report.totals.pivots += seed.pivots;
    Vector lambda_cur = seed.lambda;
    Vector nu_cur = seed.lambda;

    report.e_opt0 = kkt_residual_opt(eval, lambda_cur, config.rho0);
    report.e_c0 = complementarity_residual(eval, lambda_cur);
    report.e_fea0 = kkt_residual_fea(eval, nu_cur);
    const KktPair initial{report.e_opt0, report.e_c0};

    double rho = config.rho0;
    double delta = config.delta0;

    auto finalize = [&](SolveStatus status, const std::string& diagnostic) {
      report.status = status;
      report.diagnostic = diagnostic;
      report.x = eval.x;
      report.f = eval.f;
      report.v = violation(eval);
      report.rho = rho;
      if (!report.trace.empty()) {
        report.eps_kkt = report.trace.back().eps_kkt;
        report.e_fea_rel =
            report.trace.back().e_fea / std::max(1.0, report.e_fea0);
      }
      report.totals.iterations = static_cast<int>(report.trace.size());
      return report;
    };

    for (int k = 0; k < config.iter_max; ++k) {
      const double gamma_k =
          next_gamma(k + 1, config.control.gamma0, config.control.theta_gamma);
      const double v = violation(eval);
      IterationRecord rec;
      rec.k = k;
      rec.x = eval.x;
      rec.f = eval.f;
      rec.v = v;
      rec.gamma = gamma_k;
      rec.delta = delta;
      rec.rho = rho;
      rec.rho_entry = rho;
      rec.rho_tilde = rho;
      rec.grad_inf = trust_norm(eval.g);
      rec.e_opt = kkt_residual_opt(eval, lambda_cur, rho);
      rec.e_c = complementarity_residual(eval, lambda_cur);
      rec.e_fea = kkt_residual_fea(eval, nu_cur);
      rec.eps_kkt = relative_kkt({rec.e_opt, rec.e_c}, initial);
      rec.phi_after = penalty(eval.f, v, rho);

      // Stationarity certificate, checked before solving the subproblem.
      if (rec.eps_kkt < config.kkt_tol && v < config.feas_tol) {
        report.trace.push_back(std::move(rec));
        return finalize(SolveStatus::KKTSuccess, "");
      }
      // Infeasible-stationary certificate: the violation is stationary
      // (feasibility residuals vanish) while the iterate is still infeasible,
      // and either the penalty has hit its floor or the iterate is also
      // stationary for the penalty function at the current parameter.
      if (v >= config.feas_tol &&
          (rho <= config.control.rho_min || rec.eps_kkt < config.kkt_tol) &&
          rec.e_fea / std::max(1.0, report.e_fea0) < config.kkt_tol &&
          complementarity_residual(eval, nu_cur) < config.kkt_tol) {
        report.trace.push_back(std::move(rec));
        return finalize(SolveStatus::InfeasibleStationary, "");
      }

      SubproblemResult sub;
      try {
        sub = solve_subproblem(eval, rho, gamma_k, delta, sub_params,
                               &lambda_cur, pivot_observer);
      } catch (const SubproblemStalled&) {
        // the failed attempt spent its whole pivot budget
        report.totals.pivots += config.pivot_max;
        delta = std::max(0.5 * delta, config.delta_min);
        rec.delta = delta;
        try {
          sub = solve_subproblem(eval, rho, gamma_k, delta, sub_params,
                                 &lambda_cur, pivot_observer);
        } catch (const SubproblemStalled& again) {
          report.trace.push_back(std::move(rec));
          return finalize(SolveStatus::Stalled, again.what());
        }
      }
      report.totals.pivots += sub.pivots;
      lambda_cur = sub.lambda;
      nu_cur = sub.nu;
      rec.pivots = sub.pivots;
      rec.dust_reductions = sub.dust_reductions;
      rec.rho_tilde = sub.rho_tilde;

      const double grad_dot_d = eval.g.dot(sub.d);
      const double dl_fea = model_reduction(eval, sub.d, 0.0);
      const double rho_k =
          psst(grad_dot_d, dl_fea, gamma_k, sub.rho_tilde, config.control.beta_l);
      const double dl_opt = dl_fea - rho_k * grad_dot_d;
      rec.rho = rho_k;
      rec.dl_fea = dl_fea;
      rec.dl_opt = dl_opt;
      rho = rho_k;

      const double phi0 = penalty(eval.f, v, rho_k);
      // Reductions at the rounding scale of phi cannot be confirmed by a
      // measured decrease; treat them like the zero step.
      const double noise = 8.0 * std::numeric_limits<double>::epsilon() *
                           std::max(1.0, std::abs(phi0));
      if (sub.null_step || dl_opt * config.beta_alpha <= noise) {
        rec.step_type = StepType::NullStep;
        rec.phi_after = phi0;
        report.trace.push_back(std::move(rec));
        continue;
      }
      Vector x_full = eval.x + sub.d;
      ValueSample full = evaluate_values(problem, x_full);
      ++report.totals.fevals;
      const double phi_full =
          penalty(full.f, violation(full.b, eval.kinds), rho_k);
      const double sigma = trust_ratio(phi0, phi_full, dl_opt);
      rec.sigma = sigma;

      double alpha = 1.0;
      Vector x_new;
      ValueSample accepted;
      int trials = 1;
      if (sigma > config.sigma_hi) {
        // The Armijo condition holds automatically; skip backtracking.
        x_new = std::move(x_full);
        accepted = std::move(full);
      } else {
        LineSearchResult ls =
            line_search(problem, eval, sub.d, rho_k, dl_opt, config, &full);
        report.totals.fevals += ls.trials - 1;
        alpha = ls.alpha;
        x_new = std::move(ls.x_new);
        accepted = std::move(ls.values);
        trials = ls.trials;
      }
      delta = trust_update(delta, sigma, config);

      rec.step_type = StepType::Accepted;
      rec.alpha = alpha;
      rec.ls_trials = trials;
      rec.phi_after =
          penalty(accepted.f, violation(accepted.b, eval.kinds), rho_k);
      report.trace.push_back(std::move(rec));

      eval = evaluate_with_values(problem, x_new, accepted);
    }
    return finalize(SolveStatus::IterLimit, "");
  } catch (const EvaluationError& e) {
    report.status = SolveStatus::Stalled;
    report.diagnostic = e.what();
  } catch (const LineSearchFailure& e) {
    report.status = SolveStatus::Stalled;
    report.diagnostic = e.what();
  } catch (const SingularPivot& e) {
    report.status = SolveStatus::Stalled;
    report.diagnostic = e.what();
  }
  report.totals.iterations = static_cast<int>(report.trace.size());
  if (!report.trace.empty()) {
    const IterationRecord& last = report.trace.back();
    report.x = last.x;
    report.f = last.f;
    report.v = last.v;
    report.rho = last.rho;
    report.eps_kkt = last.eps_kkt;
    report.e_fea_rel = last.e_fea / std::max(1.0, report.e_fea0);
  }
  return report;
}

}  // namespace pslp
