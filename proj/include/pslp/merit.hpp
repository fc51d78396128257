#pragma once

#include <limits>

#include "pslp/problem.hpp"

namespace pslp {

/// Thrown when multipliers violate the dual box (lambda_E in [-1,1],
/// lambda_I in [0,1]).
class DualInfeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Values with |z| below this are classified as "on the kink" when picking
/// subgradient intervals and complementarity cases.
inline constexpr double kZeroTol = 1e-12;

/// Scalar parameters of one penalty subproblem. The trust region is the
/// l-inf ball of radius delta; residuals and dual values use its dual norm
/// (l1) throughout, with norm-equivalence constant kappa0 = sqrt(n).
struct PenaltyParams {
  double rho = 1.0;    // penalty parameter, >= 0
  double gamma = 0.0;  // relaxation error, > 0
  double delta = 1.0;  // trust radius, > 0
  double kappa0 = 1.0; // norm equivalence ||.||_2 <= kappa0 ||.||_inf

  static PenaltyParams for_dimension(int n, double rho, double gamma,
                                     double delta);
  void validate(double delta_min = 0.0,
                double delta_max = std::numeric_limits<double>::infinity()) const;
};

inline double trust_norm(const Vector& v) { return v.lpNorm<Eigen::Infinity>(); }
inline double dual_norm(const Vector& v) { return v.lpNorm<1>(); }

/// Aggregate constraint violation v(x) = sum_E |c_i| + sum_I (c_i)+.
double violation(const Evaluation& eval);
double violation(const Vector& b, const std::vector<ConstraintKind>& kinds);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Clarke subdifferential of the per-constraint violation term at value b_i.
Interval violation_subgradient_interval(double b_i, ConstraintKind kind);

/// Exact l1 penalty phi(x; rho) = rho*f + v.
double penalty(double f, double v, double rho);

/// Linearized penalty model l(d; rho) = rho<g,d> + sum_i v_i(b_i + <a_i,d>).
double linear_model(const Evaluation& eval, const Vector& d, double rho);

/// Model reduction  dl = l(0; rho) - l(d; rho).
double model_reduction(const Evaluation& eval, const Vector& d, double rho);

bool is_dual_feasible(const Vector& lambda,
                      const std::vector<ConstraintKind>& kinds,
                      double tol = 1e-9);

/// Dual subproblem objective p(lambda; rho) = -delta*||rho*g + A^T lambda||_1
/// + <b, lambda>. Requires dual-feasible lambda.
double dual_value(const Evaluation& eval, const Vector& lambda, double rho,
                  double delta);

/// Complementarity measure chi(d, lambda) over the index sets of linearized
/// constraint values; zero at exact primal-dual subproblem optima.
double complementarity_measure(const Evaluation& eval, const Vector& d,
                               const Vector& lambda);

/// E_opt = ||rho*g + A^T lambda||_1.
double kkt_residual_opt(const Evaluation& eval, const Vector& lambda,
                        double rho);

/// E_fea = ||A^T nu||_1.
double kkt_residual_fea(const Evaluation& eval, const Vector& nu);

/// E_c, the complementarity residual; satisfies E_c = v(x) - <lambda, b>
/// for any dual-feasible lambda.
double complementarity_residual(const Evaluation& eval, const Vector& lambda);

struct KktPair {
  double opt = 0.0;
  double comp = 0.0;
};

/// Relative KKT error: max(current) / max(1, initial.opt, initial.comp).
double relative_kkt(const KktPair& current, const KktPair& initial);

}  // namespace pslp
