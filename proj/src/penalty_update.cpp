#include "pslp/penalty_update.hpp"

#include <cmath>
#include <string>

namespace pslp {

void ControlParams::validate() const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument(msg); };
  if (!(0.0 < beta_v && beta_v < beta_phi && beta_phi < 1.0)) {
    fail("require 0 < beta_v < beta_phi < 1");
  }
  if (!(0.0 < beta_l && beta_l <= beta_phi * (1.0 - beta_v))) {
    fail("require 0 < beta_l <= beta_phi*(1-beta_v)");
  }
  if (!(0.0 < theta_rho && theta_rho < 1.0)) fail("require theta_rho in (0,1)");
  if (!(0.0 < theta_gamma && theta_gamma < 1.0)) {
    fail("require theta_gamma in (0,1)");
  }
  if (!(gamma0 > 0.0)) fail("require gamma0 > 0");
  if (!(rho_min > 0.0)) fail("require rho_min > 0");
}

DustDecision dust_step(const Ratios& ratios, double rho,
                       const ControlParams& params) {
  if (!(rho > 0.0)) throw std::invalid_argument("dust_step: rho must be > 0");
  const bool phi_ok = ratios.r_phi >= params.beta_phi;
  const bool comp_ok = ratios.r_c >= params.beta_v;
  const bool fea_ok = ratios.r_v >= params.beta_v;
  if (phi_ok && comp_ok && fea_ok) return {DustAction::Terminate, rho};
  if (phi_ok && comp_ok) {
    const double reduced = params.theta_rho * rho;
    if (reduced >= params.rho_min) return {DustAction::Reduce, reduced};
    // Clamp the last reduction at the floor; once there, stop reducing and
    // let the caller run its infeasibility checks.
    if (rho > params.rho_min) return {DustAction::Reduce, params.rho_min};
    return {DustAction::InfeasibilitySuspected, rho};
  }
  return {DustAction::Continue, rho};
}

double psst(double grad_dot_d, double delta_l_fea, double gamma,
            double rho_tilde, double beta_l) {
  const double rhs = beta_l * (delta_l_fea + gamma);
  const double dl_at_tilde = delta_l_fea - rho_tilde * grad_dot_d;
  if (dl_at_tilde + gamma >= rhs) return rho_tilde;
  // Reaching here forces grad_dot_d > 0: with grad_dot_d <= 0 the model
  // reduction at rho_tilde is no smaller than at rho = 0 and the first branch
  // already holds whenever delta_l_fea + gamma > 0.
  return (1.0 - beta_l) * (delta_l_fea + gamma) / grad_dot_d;
}

double next_gamma(int k, double gamma0, double theta_gamma) {
  return gamma0 * std::pow(theta_gamma, k - 1);
}

}  // namespace pslp
