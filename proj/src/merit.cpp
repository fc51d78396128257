#include "pslp/merit.hpp"

#include <cmath>

namespace pslp {

namespace {

double violation_term(double z, ConstraintKind kind) {
  return kind == ConstraintKind::Equality ? std::abs(z) : std::max(z, 0.0);
}

void require_dual_feasible(const Vector& lambda,
                           const std::vector<ConstraintKind>& kinds,
                           const char* where) {
  if (!is_dual_feasible(lambda, kinds)) {
    throw DualInfeasible(std::string(where) +
                         ": multipliers outside the dual box");
  }
}

}  // namespace

PenaltyParams PenaltyParams::for_dimension(int n, double rho, double gamma,
                                           double delta) {
  PenaltyParams p;
  p.rho = rho;
  p.gamma = gamma;
  p.delta = delta;
  p.kappa0 = std::sqrt(static_cast<double>(std::max(n, 1)));
  return p;
}

void PenaltyParams::validate(double delta_min, double delta_max) const {
  if (!(rho >= 0.0)) throw std::invalid_argument("require rho >= 0");
  if (!(gamma > 0.0)) throw std::invalid_argument("require gamma > 0");
  if (!(delta_min <= delta && delta <= delta_max)) {
    throw std::invalid_argument("require delta in [delta_min, delta_max]");
  }
  if (!(kappa0 > 0.0)) throw std::invalid_argument("require kappa0 > 0");
}

double violation(const Vector& b, const std::vector<ConstraintKind>& kinds) {
  double v = 0.0;
  for (Eigen::Index i = 0; i < b.size(); ++i) {
    v += violation_term(b[i], kinds[static_cast<size_t>(i)]);
  }
  return v;
}

double violation(const Evaluation& eval) { return violation(eval.b, eval.kinds); }

Interval violation_subgradient_interval(double b_i, ConstraintKind kind) {
  if (b_i > kZeroTol) return {1.0, 1.0};
  if (kind == ConstraintKind::Equality) {
    if (b_i < -kZeroTol) return {-1.0, -1.0};
    return {-1.0, 1.0};
  }
  if (b_i < -kZeroTol) return {0.0, 0.0};
  return {0.0, 1.0};
}

double penalty(double f, double v, double rho) { return rho * f + v; }

double linear_model(const Evaluation& eval, const Vector& d, double rho) {
  double l = rho * eval.g.dot(d);
  const Vector lin = eval.b + eval.A * d;
  for (Eigen::Index i = 0; i < lin.size(); ++i) {
    l += violation_term(lin[i], eval.kinds[static_cast<size_t>(i)]);
  }
  return l;
}

double model_reduction(const Evaluation& eval, const Vector& d, double rho) {
  // l(0; rho) = v(x) for any rho.
  return violation(eval) - linear_model(eval, d, rho);
}

bool is_dual_feasible(const Vector& lambda,
                      const std::vector<ConstraintKind>& kinds, double tol) {
  if (static_cast<size_t>(lambda.size()) != kinds.size()) return false;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    const double lo =
        kinds[static_cast<size_t>(i)] == ConstraintKind::Equality ? -1.0 : 0.0;
    if (lambda[i] < lo - tol || lambda[i] > 1.0 + tol) return false;
  }
  return true;
}

double dual_value(const Evaluation& eval, const Vector& lambda, double rho,
                  double delta) {
  require_dual_feasible(lambda, eval.kinds, "dual_value");
  const Vector w = rho * eval.g + eval.A.transpose() * lambda;
  return -delta * dual_norm(w) + eval.b.dot(lambda);
}

double complementarity_measure(const Evaluation& eval, const Vector& d,
                               const Vector& lambda) {
  require_dual_feasible(lambda, eval.kinds, "complementarity_measure");
  const Vector lin = eval.b + eval.A * d;
  double chi = 0.0;
  for (Eigen::Index i = 0; i < lin.size(); ++i) {
    const ConstraintKind kind = eval.kinds[static_cast<size_t>(i)];
    if (lin[i] > kZeroTol) {
      chi += (1.0 - lambda[i]) * violation_term(lin[i], kind);
    } else if (lin[i] < -kZeroTol && kind == ConstraintKind::Equality) {
      chi += (1.0 + lambda[i]) * violation_term(lin[i], kind);
    }
  }
  return chi;
}

double kkt_residual_opt(const Evaluation& eval, const Vector& lambda,
                        double rho) {
  require_dual_feasible(lambda, eval.kinds, "kkt_residual_opt");
  return dual_norm(rho * eval.g + eval.A.transpose() * lambda);
}

double kkt_residual_fea(const Evaluation& eval, const Vector& nu) {
  require_dual_feasible(nu, eval.kinds, "kkt_residual_fea");
  return dual_norm(eval.A.transpose() * nu);
}

double complementarity_residual(const Evaluation& eval, const Vector& lambda) {
  require_dual_feasible(lambda, eval.kinds, "complementarity_residual");
  double e_c = 0.0;
  for (Eigen::Index i = 0; i < eval.b.size(); ++i) {
    const double bi = eval.b[i];
    const ConstraintKind kind = eval.kinds[static_cast<size_t>(i)];
    if (bi > kZeroTol) {
      e_c += (1.0 - lambda[i]) * violation_term(bi, kind);
    } else if (bi < -kZeroTol) {
      if (kind == ConstraintKind::Equality) {
        e_c += (1.0 + lambda[i]) * violation_term(bi, kind);
      } else {
        e_c += lambda[i] * std::abs(bi);
      }
    }
  }
  return e_c;
}

double relative_kkt(const KktPair& current, const KktPair& initial) {
  const double denom = std::max({1.0, initial.opt, initial.comp});
  return std::max(current.opt, current.comp) / denom;
}

}  // namespace pslp
