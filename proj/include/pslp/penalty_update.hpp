#pragma once

#include <stdexcept>

namespace pslp {

/// Parameters steering the two-phase penalty update (in-solve DUST and
/// post-solve PSST) plus the relaxation-error schedule.
struct ControlParams {
  double beta_v = 0.3;      // feasibility-ratio threshold, in (0, beta_phi)
  double beta_phi = 0.75;   // penalty-ratio threshold, in (beta_v, 1)
  double beta_l = 0.135;    // posterior reduction fraction, in (0, beta_phi*(1-beta_v)]
  double theta_rho = 0.5;   // penalty reduction factor, in (0, 1)
  double gamma0 = 0.01;     // initial relaxation error
  double theta_gamma = 0.7; // relaxation decay factor, in (0, 1)
  double rho_min = 1e-12;   // hard floor on the penalty parameter

  void validate() const;
};

struct Ratios {
  double r_v = 0.0;
  double r_phi = 0.0;
  double r_c = 0.0;
};

enum class DustAction {
  Terminate,              // all three ratio conditions hold
  Reduce,                 // penalty and complementarity hold, feasibility fails
  Continue,               // keep iterating at the current penalty
  InfeasibilitySuspected  // a Reduce would cross rho_min
};

struct DustDecision {
  DustAction action = DustAction::Continue;
  double rho = 0.0;  // penalty parameter after the decision
};

/// One application of the in-solve updating strategy at the current iterate.
DustDecision dust_step(const Ratios& ratios, double rho,
                       const ControlParams& params);

/// Posterior strategy: returns rho_k <= rho_tilde such that
/// dl(d; rho_k) + gamma >= beta_l * (dl(d; 0) + gamma), where
/// dl(d; rho) = delta_l_fea - rho * grad_dot_d.
/// Requires delta_l_fea + gamma > 0.
double psst(double grad_dot_d, double delta_l_fea, double gamma,
            double rho_tilde, double beta_l);

/// Relaxation error schedule gamma_k = gamma0 * theta_gamma^(k-1), k >= 1.
double next_gamma(int k, double gamma0, double theta_gamma);

}  // namespace pslp
