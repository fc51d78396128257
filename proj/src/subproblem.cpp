#include "pslp/subproblem.hpp"

#include <cmath>
#include <limits>

namespace pslp {

namespace {

// Recompute zrow and objective for the current basis from scratch:
// zrow = c_B' * body - c', objective = c_B' * rhs. body is rho-independent.
void recompute_objective_row(Tableau& tab, const StandardLP& lp) {
  const int rows = lp.num_rows();
  Vector c_basis(rows);
  for (int i = 0; i < rows; ++i) c_basis[i] = lp.cbar[tab.basis[i]];
  tab.zrow = c_basis.transpose() * tab.body - lp.cbar.transpose();
  for (int i = 0; i < rows; ++i) tab.zrow[tab.basis[i]] = 0.0;
  tab.objective = c_basis.dot(tab.rhs);
}

}  // namespace

StandardLP build_standard_form(const Evaluation& eval, double rho,
                               double delta) {
  if (!(rho >= 0.0)) throw std::invalid_argument("rho must be >= 0");
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be > 0");

  StandardLP lp;
  lp.n = eval.n();
  lp.rho = rho;
  lp.delta = delta;
  lp.obj_grad = eval.g;
  for (int i = 0; i < eval.m(); ++i) {
    if (eval.kinds[static_cast<size_t>(i)] == ConstraintKind::Equality) {
      lp.eq_original.push_back(i);
    } else {
      lp.ineq_original.push_back(i);
    }
  }
  lp.num_eq = static_cast<int>(lp.eq_original.size());
  lp.num_ineq = static_cast<int>(lp.ineq_original.size());

  const int rows = lp.num_rows();
  const int cols = lp.num_cols();
  lp.cbar = Vector::Zero(cols);
  lp.Abar = Matrix::Zero(rows, cols);
  lp.bbar = Vector::Zero(rows);
  lp.row_sign = Vector::Ones(rows);
  lp.init_basic.assign(static_cast<size_t>(rows), -1);

  const int n = lp.n;
  lp.cbar.segment(0, n) = rho * eval.g;
  lp.cbar.segment(n, n) = -rho * eval.g;
  for (int i = 0; i < lp.num_eq; ++i) {
    lp.cbar[lp.col_r(i)] = 1.0;
    lp.cbar[lp.col_s(i)] = 1.0;
  }
  for (int i = 0; i < lp.num_ineq; ++i) lp.cbar[lp.col_t(i)] = 1.0;

  // Equality rows: a'd - r + s = -b, scaled so the right-hand side is >= 0.
  for (int i = 0; i < lp.num_eq; ++i) {
    const int orig = lp.eq_original[static_cast<size_t>(i)];
    const double sign = eval.b[orig] > 0.0 ? -1.0 : 1.0;
    lp.row_sign[i] = sign;
    lp.Abar.block(i, 0, 1, n) = sign * eval.A.row(orig);
    lp.Abar.block(i, n, 1, n) = -sign * eval.A.row(orig);
    lp.Abar(i, lp.col_r(i)) = -sign;
    lp.Abar(i, lp.col_s(i)) = sign;
    lp.bbar[i] = -sign * eval.b[orig];
    lp.init_basic[static_cast<size_t>(i)] =
        sign < 0.0 ? lp.col_r(i) : lp.col_s(i);
  }
  // Inequality rows: a'd - t + z = -b, same scaling.
  for (int i = 0; i < lp.num_ineq; ++i) {
    const int row = lp.num_eq + i;
    const int orig = lp.ineq_original[static_cast<size_t>(i)];
    const double sign = eval.b[orig] > 0.0 ? -1.0 : 1.0;
    lp.row_sign[row] = sign;
    lp.Abar.block(row, 0, 1, n) = sign * eval.A.row(orig);
    lp.Abar.block(row, n, 1, n) = -sign * eval.A.row(orig);
    lp.Abar(row, lp.col_t(i)) = -sign;
    lp.Abar(row, lp.col_z(i)) = sign;
    lp.bbar[row] = -sign * eval.b[orig];
    lp.init_basic[static_cast<size_t>(row)] =
        sign < 0.0 ? lp.col_t(i) : lp.col_z(i);
  }
  // Trust region box: d+ - d- + u = delta*e and -d+ + d- + v = delta*e.
  for (int j = 0; j < n; ++j) {
    const int up = lp.num_eq + lp.num_ineq + j;
    const int lo = up + n;
    lp.Abar(up, lp.col_dplus(j)) = 1.0;
    lp.Abar(up, lp.col_dminus(j)) = -1.0;
    lp.Abar(up, lp.col_u(j)) = 1.0;
    lp.bbar[up] = delta;
    lp.init_basic[static_cast<size_t>(up)] = lp.col_u(j);
    lp.Abar(lo, lp.col_dplus(j)) = -1.0;
    lp.Abar(lo, lp.col_dminus(j)) = 1.0;
    lp.Abar(lo, lp.col_v(j)) = 1.0;
    lp.bbar[lo] = delta;
    lp.init_basic[static_cast<size_t>(lo)] = lp.col_v(j);
  }
  return lp;
}

Tableau initial_basis(const StandardLP& lp) {
  Tableau tab;
  tab.basis = lp.init_basic;
  tab.in_basis.assign(static_cast<size_t>(lp.num_cols()), 0);
  for (int col : tab.basis) tab.in_basis[static_cast<size_t>(col)] = 1;
  // The designated initial basic columns are unit vectors, so B = I.
  tab.body = lp.Abar;
  tab.rhs = lp.bbar;
  recompute_objective_row(tab, lp);
  return tab;
}

bool is_optimal(const Tableau& tab) {
  return tab.zrow.maxCoeff() <= kPivotTol;
}

PivotOutcome pivot(Tableau& tab, const StandardLP& lp) {
  const int rows = lp.num_rows();
  const int cols = lp.num_cols();

  int enter = -1;
  if (tab.bland) {
    for (int j = 0; j < cols; ++j) {
      if (!tab.in_basis[static_cast<size_t>(j)] && tab.zrow[j] > kPivotTol) {
        enter = j;
        break;
      }
    }
  } else {
    double best = kPivotTol;
    for (int j = 0; j < cols; ++j) {
      if (!tab.in_basis[static_cast<size_t>(j)] && tab.zrow[j] > best) {
        best = tab.zrow[j];
        enter = j;
      }
    }
  }
  if (enter < 0) return PivotOutcome::Optimal;

  // Min-ratio test; ties go to the row whose basic column has the smallest
  // index (keeps Bland's rule consistent when it is active).
  int leave = -1;
  double best_ratio = 0.0;
  for (int i = 0; i < rows; ++i) {
    const double a = tab.body(i, enter);
    if (a <= kPivotTol) continue;
    const double ratio = std::max(tab.rhs[i], 0.0) / a;
    if (leave < 0) {
      leave = i;
      best_ratio = ratio;
      continue;
    }
    const double tie = 1e-12 * (1.0 + best_ratio);
    if (ratio < best_ratio - tie) {
      best_ratio = ratio;
      leave = i;
    } else if (ratio <= best_ratio + tie &&
               tab.basis[static_cast<size_t>(i)] <
                   tab.basis[static_cast<size_t>(leave)]) {
      leave = i;
    }
  }
  if (leave < 0) {
    throw SingularPivot(
        "no admissible pivot element in entering column " +
        std::to_string(enter) + "; the trust-region LP should be bounded");
  }

  const bool degenerate = best_ratio <= 1e-11;

  const double piv = tab.body(leave, enter);
  tab.body.row(leave) /= piv;
  tab.rhs[leave] /= piv;
  for (int i = 0; i < rows; ++i) {
    if (i == leave) continue;
    const double factor = tab.body(i, enter);
    if (factor == 0.0) continue;
    tab.body.row(i) -= factor * tab.body.row(leave);
    tab.rhs[i] -= factor * tab.rhs[leave];
    if (std::abs(tab.rhs[i]) < 1e-14) tab.rhs[i] = 0.0;
  }
  const double zfac = tab.zrow[enter];
  tab.zrow -= zfac * tab.body.row(leave);
  tab.objective -= zfac * tab.rhs[leave];

  const int old_basic = tab.basis[static_cast<size_t>(leave)];
  tab.in_basis[static_cast<size_t>(old_basic)] = 0;
  tab.in_basis[static_cast<size_t>(enter)] = 1;
  tab.basis[static_cast<size_t>(leave)] = enter;
  // Force the exchanged columns to their exact values.
  tab.body.col(enter).setZero();
  tab.body(leave, enter) = 1.0;
  tab.zrow[enter] = 0.0;

  if (degenerate) {
    if (++tab.consecutive_degenerate >= 50) tab.bland = true;
  } else {
    tab.consecutive_degenerate = 0;
    tab.bland = false;
  }
  return degenerate ? PivotOutcome::Degenerate : PivotOutcome::Improved;
}

Vector extract_primal(const Tableau& tab, const StandardLP& lp) {
  Vector d = Vector::Zero(lp.n);
  for (int i = 0; i < lp.num_rows(); ++i) {
    const int col = tab.basis[static_cast<size_t>(i)];
    if (col < lp.n) {
      d[col] += tab.rhs[i];
    } else if (col < 2 * lp.n) {
      d[col - lp.n] -= tab.rhs[i];
    }
  }
  for (int j = 0; j < lp.n; ++j) {
    d[j] = std::clamp(d[j], -lp.delta, lp.delta);
    if (std::abs(d[j]) < 1e-14 * std::max(1.0, lp.delta)) d[j] = 0.0;
  }
  return d;
}

Vector extract_duals(const Tableau& tab, const StandardLP& lp) {
  // Row multiplier y_i = c_B' B^{-1} e_i, read off the updated column of the
  // initial basic variable of row i (whose cost is rho-independent).
  Vector lambda = Vector::Zero(lp.num_eq + lp.num_ineq);
  auto row_dual = [&](int row) {
    const int col = lp.init_basic[static_cast<size_t>(row)];
    return tab.zrow[col] + lp.cbar[col];
  };
  for (int i = 0; i < lp.num_eq; ++i) {
    lambda[lp.eq_original[static_cast<size_t>(i)]] =
        -lp.row_sign[i] * row_dual(i);
  }
  for (int i = 0; i < lp.num_ineq; ++i) {
    const int row = lp.num_eq + i;
    lambda[lp.ineq_original[static_cast<size_t>(i)]] =
        -lp.row_sign[row] * row_dual(row);
  }
  return lambda;
}

Vector project_duals(const Vector& raw,
                     const std::vector<ConstraintKind>& kinds) {
  Vector lambda = raw;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    const double lo =
        kinds[static_cast<size_t>(i)] == ConstraintKind::Equality ? -1.0 : 0.0;
    lambda[i] = std::clamp(lambda[i], lo, 1.0);
  }
  return lambda;
}

void update_objective_row(Tableau& tab, StandardLP& lp, double rho_new) {
  if (rho_new > lp.rho) {
    throw std::invalid_argument("objective-row swap requires rho_new <= rho");
  }
  if (rho_new == lp.rho) return;
  lp.rho = rho_new;
  lp.cbar.segment(0, lp.n) = rho_new * lp.obj_grad;
  lp.cbar.segment(lp.n, lp.n) = -rho_new * lp.obj_grad;
  recompute_objective_row(tab, lp);
}

RatioBreakdown ratio_breakdown(const Evaluation& eval, const Vector& d,
                               const Vector& lambda, const Vector& nu,
                               double rho, double gamma, double delta) {
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
  RatioBreakdown out;
  out.l0 = violation(eval);
  out.l0_gamma = out.l0 + gamma;
  out.l_rho = linear_model(eval, d, rho);
  out.l_zero = linear_model(eval, d, 0.0);
  out.p_lambda_rho = dual_value(eval, lambda, rho, delta);
  out.p_nu_zero = dual_value(eval, nu, 0.0, delta);
  out.chi = complementarity_measure(eval, d, lambda);
  // Weak duality keeps both denominators >= gamma.
  out.ratios.r_v = (out.l0_gamma - out.l_zero) /
                   (out.l0_gamma - std::max(out.p_nu_zero, 0.0));
  out.ratios.r_phi =
      (out.l0_gamma - out.l_rho) / (out.l0_gamma - out.p_lambda_rho);
  out.ratios.r_c = 1.0 - std::sqrt(std::max(out.chi, 0.0) / out.l0_gamma);
  return out;
}

Ratios ratios(const Evaluation& eval, const Vector& d, const Vector& lambda,
              const Vector& nu, double rho, double gamma, double delta) {
  return ratio_breakdown(eval, d, lambda, nu, rho, gamma, delta).ratios;
}

SubproblemResult solve_subproblem(const Evaluation& eval, double rho_in,
                                  double gamma, double delta,
                                  const SubproblemParams& params,
                                  const Vector* warm_lambda,
                                  const PivotObserver& observer) {
  if (!(rho_in > 0.0)) throw std::invalid_argument("rho_in must be > 0");
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be > 0");
  params.control.validate();

  StandardLP lp = build_standard_form(eval, rho_in, delta);
  Tableau tab = initial_basis(lp);

  const int m = eval.m();
  Vector lambda0 = Vector::Zero(m);
  if (warm_lambda != nullptr && warm_lambda->size() == m) {
    lambda0 = project_duals(*warm_lambda, eval.kinds);
  }
  const double p_lambda0 = dual_value(eval, lambda0, 0.0, delta);

  Vector nu = lambda0;
  double p_nu = p_lambda0;
  double rho_j = rho_in;
  const double l0 = violation(eval);
  int pivots = 0;
  int reductions = 0;
  bool suspected = false;

  auto finish = [&](SubproblemExit exit_kind, Vector d, Vector lambda,
                    const RatioBreakdown& detail) {
    SubproblemResult res;
    // Exits that bypass the feasibility-ratio condition can leave
    // dl(d;0) + gamma <= 0, outside the posterior strategy's domain;
    // fall back to the always-valid zero step.
    if (exit_kind != SubproblemExit::RatiosSatisfied &&
        violation(eval) - detail.l_zero + gamma <= 0.0) {
      d.setZero();
    }
    res.d = std::move(d);
    res.lambda = std::move(lambda);
    res.nu = nu;
    res.rho_tilde = rho_j;
    res.pivots = pivots;
    res.ratios = detail.ratios;
    res.dust_reductions = reductions;
    res.terminated_by = exit_kind;
    res.infeasibility_suspected = suspected;
    res.null_step = res.d.isZero(0.0);
    return res;
  };

  for (int j = 0;; ++j) {
    Vector d = extract_primal(tab, lp);
    // The basic solution left behind by a penalty swap can be worse than the
    // zero step under the new objective; the reported iterate never is.
    if (linear_model(eval, d, rho_j) > l0 + 1e-12 * std::max(1.0, l0)) {
      d.setZero();
    }
    const Vector lambda = project_duals(extract_duals(tab, lp), eval.kinds);
    const double p_lambda_zero = dual_value(eval, lambda, 0.0, delta);
    // nu is the best feasibility dual seen, seeded with the warm start.
    if (p_lambda_zero > p_nu) {
      nu = lambda;
      p_nu = p_lambda_zero;
    }

    const RatioBreakdown detail =
        ratio_breakdown(eval, d, lambda, nu, rho_j, gamma, delta);
    if (observer) {
      PivotRecord rec;
      rec.iterate = j;
      rec.pivots_so_far = pivots;
      rec.rho = rho_j;
      rec.detail = detail;
      rec.d = d;
      rec.lambda = lambda;
      rec.nu = nu;
      observer(rec);
    }

    const bool optimal = is_optimal(tab);
    const bool budget_spent = pivots >= params.pivot_limit;
    if (!params.exact_mode || optimal || budget_spent) {
      const DustDecision decision =
          dust_step(detail.ratios, rho_j, params.control);
      switch (decision.action) {
        case DustAction::Terminate:
          return finish(SubproblemExit::RatiosSatisfied, std::move(d), lambda,
                        detail);
        case DustAction::Reduce:
          rho_j = decision.rho;
          ++reductions;
          update_objective_row(tab, lp, rho_j);
          continue;  // refresh duals and ratios at the new penalty
        case DustAction::InfeasibilitySuspected:
          suspected = true;
          break;
        case DustAction::Continue:
          break;
      }
    }
    if (optimal) {
      return finish(SubproblemExit::LPOptimal, std::move(d), lambda, detail);
    }
    if (budget_spent) {
      if (detail.ratios.r_phi < params.control.beta_phi) {
        throw SubproblemStalled(
            "pivot limit reached with the penalty-ratio condition unmet");
      }
      return finish(SubproblemExit::PivotLimit, std::move(d), lambda, detail);
    }
    pivot(tab, lp);
    ++pivots;
  }
}

FeasibilityDuals solve_feasibility_lp(const Evaluation& eval, double delta,
                                      int pivot_limit) {
  StandardLP lp = build_standard_form(eval, 0.0, delta);
  Tableau tab = initial_basis(lp);
  FeasibilityDuals out;
  while (!is_optimal(tab) && out.pivots < pivot_limit) {
    pivot(tab, lp);
    ++out.pivots;
  }
  out.lambda = project_duals(extract_duals(tab, lp), eval.kinds);
  return out;
}

}  // namespace pslp
