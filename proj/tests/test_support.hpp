// Shared helpers for the test suites: independent oracles and randomized
// instance generators. Nothing here calls into the simplex path it checks.
#pragma once

#include <functional>
#include <random>

#include <Eigen/Dense>

#include "pslp/merit.hpp"
#include "pslp/problem.hpp"

namespace pslp::testing {

inline Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double value : values) v[i++] = value;
  return v;
}

/// Subproblem data assembled directly (no callables needed).
inline Evaluation make_eval(const Vector& g, const Matrix& A, const Vector& b,
                            const std::vector<ConstraintKind>& kinds) {
  Evaluation eval;
  eval.x = Vector::Zero(g.size());
  eval.f = 0.0;
  eval.g = g;
  eval.A = A;
  eval.b = b;
  eval.kinds = kinds;
  return eval;
}

inline Evaluation random_eval(std::mt19937_64& rng, int n, int m,
                              double range = 2.0) {
  std::uniform_real_distribution<double> coeff(-range, range);
  std::bernoulli_distribution is_eq(0.5);
  Vector g(n), b(m);
  Matrix A(m, n);
  std::vector<ConstraintKind> kinds(static_cast<size_t>(m));
  for (int j = 0; j < n; ++j) g[j] = coeff(rng);
  for (int i = 0; i < m; ++i) {
    b[i] = coeff(rng);
    for (int j = 0; j < n; ++j) A(i, j) = coeff(rng);
    kinds[static_cast<size_t>(i)] =
        is_eq(rng) ? ConstraintKind::Equality : ConstraintKind::Inequality;
  }
  return make_eval(g, A, b, kinds);
}

inline Vector random_dual_feasible(std::mt19937_64& rng,
                                   const std::vector<ConstraintKind>& kinds) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Vector lambda(static_cast<Eigen::Index>(kinds.size()));
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    const double u = unit(rng);
    lambda[i] = kinds[static_cast<size_t>(i)] == ConstraintKind::Equality
                    ? 2.0 * u - 1.0
                    : u;
  }
  return lambda;
}

inline Vector random_step_in_box(std::mt19937_64& rng, int n, double delta) {
  std::uniform_real_distribution<double> unit(-delta, delta);
  Vector d(n);
  for (int j = 0; j < n; ++j) d[j] = unit(rng);
  return d;
}

/// Brute-force minimum of the piecewise-linear model l(d; rho) over the
/// l-inf box of radius delta. The model is linear on each cell of the
/// hyperplane arrangement {a_i'd + b_i = 0} within the box, so its minimum is
/// attained where n independent hyperplanes from the arrangement or the box
/// faces meet; every n-subset is enumerated and solved.
inline double lp_vertex_oracle(const Evaluation& eval, double rho,
                               double delta) {
  const int n = eval.n();
  const int m = eval.m();
  const int num_planes = m + 2 * n;
  Matrix planes(num_planes, n);
  Vector offsets(num_planes);
  planes.topRows(m) = eval.A;
  offsets.head(m) = -eval.b;
  for (int j = 0; j < n; ++j) {
    planes.row(m + j).setZero();
    planes(m + j, j) = 1.0;
    offsets[m + j] = delta;
    planes.row(m + n + j).setZero();
    planes(m + n + j, j) = 1.0;
    offsets[m + n + j] = -delta;
  }

  double best = linear_model(eval, Vector::Zero(n), rho);  // d = 0 candidate
  std::vector<int> pick(static_cast<size_t>(n));
  std::function<void(int, int)> visit = [&](int start, int depth) {
    if (depth == n) {
      Matrix M(n, n);
      Vector rhs(n);
      for (int i = 0; i < n; ++i) {
        M.row(i) = planes.row(pick[static_cast<size_t>(i)]);
        rhs[i] = offsets[pick[static_cast<size_t>(i)]];
      }
      Eigen::FullPivLU<Matrix> lu(M);
      if (!lu.isInvertible()) return;
      const Vector d = lu.solve(rhs);
      if (d.lpNorm<Eigen::Infinity>() > delta + 1e-9) return;
      best = std::min(best, linear_model(eval, d, rho));
      return;
    }
    for (int p = start; p <= num_planes - (n - depth); ++p) {
      pick[static_cast<size_t>(depth)] = p;
      visit(p + 1, depth + 1);
    }
  };
  visit(0, 0);
  return best;
}

/// Least-squares multiplier fit at a reference point: minimizes
/// ||g + A_act' mu||_2 over the equality and active-inequality rows.
/// Returns the residual norm and the fitted multipliers (zeros elsewhere).
struct MultiplierFit {
  double residual = 0.0;
  Vector mu;
};

inline MultiplierFit fit_multipliers(const Evaluation& eval,
                                     double active_tol = 1e-6) {
  std::vector<int> active;
  for (int i = 0; i < eval.m(); ++i) {
    const bool is_eq =
        eval.kinds[static_cast<size_t>(i)] == ConstraintKind::Equality;
    if (is_eq || std::abs(eval.b[i]) <= active_tol) active.push_back(i);
  }
  MultiplierFit fit;
  fit.mu = Vector::Zero(eval.m());
  if (active.empty()) {
    fit.residual = eval.g.norm();
    return fit;
  }
  Matrix At(eval.n(), static_cast<Eigen::Index>(active.size()));
  for (size_t k = 0; k < active.size(); ++k) {
    At.col(static_cast<Eigen::Index>(k)) = eval.A.row(active[k]).transpose();
  }
  const Vector mu_active =
      At.completeOrthogonalDecomposition().solve(-eval.g);
  for (size_t k = 0; k < active.size(); ++k) {
    fit.mu[active[k]] = mu_active[static_cast<Eigen::Index>(k)];
  }
  fit.residual = (eval.g + At * mu_active).norm();
  return fit;
}

}  // namespace pslp::testing
