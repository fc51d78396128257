#include "pslp/problem.hpp"

#include <cmath>
#include <sstream>

namespace pslp {

namespace {

std::string format_point(const Vector& x) {
  std::ostringstream os;
  os << "[";
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (i > 0) os << ", ";
    os << x[i];
  }
  os << "]";
  return os.str();
}

void require_finite(double value, const std::string& what, const Vector& x) {
  if (!std::isfinite(value)) {
    throw EvaluationError(what + " returned non-finite value at x=" +
                          format_point(x));
  }
}

void require_finite(const Vector& value, const std::string& what,
                    const Vector& x) {
  if (!value.allFinite()) {
    throw EvaluationError(what + " returned non-finite value at x=" +
                          format_point(x));
  }
}

void check_dimension(const Problem& problem, const Vector& x) {
  if (static_cast<int>(x.size()) != problem.n) {
    throw std::invalid_argument("point dimension " +
                                std::to_string(x.size()) +
                                " does not match problem dimension " +
                                std::to_string(problem.n));
  }
}

}  // namespace

Evaluation evaluate(const Problem& problem, const Vector& x) {
  return evaluate_with_values(problem, x, evaluate_values(problem, x));
}

ValueSample evaluate_values(const Problem& problem, const Vector& x) {
  check_dimension(problem, x);
  ValueSample out;
  out.f = problem.objective(x);
  require_finite(out.f, "objective '" + problem.name + "'", x);
  out.b.resize(problem.num_constraints());
  for (int i = 0; i < problem.num_constraints(); ++i) {
    out.b[i] = problem.constraints[i].value(x);
    require_finite(out.b[i], "constraint " + std::to_string(i), x);
  }
  return out;
}

Evaluation evaluate_with_values(const Problem& problem, const Vector& x,
                                const ValueSample& values) {
  check_dimension(problem, x);
  Evaluation eval;
  eval.x = x;
  eval.f = values.f;
  eval.b = values.b;
  eval.g = problem.objective_gradient(x);
  require_finite(eval.g, "objective gradient", x);
  if (eval.g.size() != x.size()) {
    throw std::invalid_argument("objective gradient dimension mismatch");
  }
  const int m = problem.num_constraints();
  eval.A.resize(m, problem.n);
  eval.kinds.resize(m);
  for (int i = 0; i < m; ++i) {
    Vector a = problem.constraints[i].gradient(x);
    require_finite(a, "constraint " + std::to_string(i) + " gradient", x);
    if (a.size() != x.size()) {
      throw std::invalid_argument("constraint " + std::to_string(i) +
                                  " gradient dimension mismatch");
    }
    eval.A.row(i) = a.transpose();
    eval.kinds[i] = problem.constraints[i].kind;
  }
  return eval;
}

std::vector<double> check_gradients(const Problem& problem, const Vector& x,
                                    double h) {
  check_dimension(problem, x);
  if (!(h > 0.0)) throw std::invalid_argument("step size h must be positive");

  const int m = problem.num_constraints();
  std::vector<double> worst(1 + m, 0.0);

  // Central differences of every function along every coordinate.
  Vector xp = x, xm = x;
  Matrix fd(1 + m, problem.n);
  for (int j = 0; j < problem.n; ++j) {
    xp[j] = x[j] + h;
    xm[j] = x[j] - h;
    const double fp = problem.objective(xp);
    const double fm = problem.objective(xm);
    require_finite(fp, "objective", xp);
    require_finite(fm, "objective", xm);
    fd(0, j) = (fp - fm) / (2.0 * h);
    for (int i = 0; i < m; ++i) {
      const double cp = problem.constraints[i].value(xp);
      const double cm = problem.constraints[i].value(xm);
      require_finite(cp, "constraint " + std::to_string(i), xp);
      require_finite(cm, "constraint " + std::to_string(i), xm);
      fd(1 + i, j) = (cp - cm) / (2.0 * h);
    }
    xp[j] = x[j];
    xm[j] = x[j];
  }

  const Vector g = problem.objective_gradient(x);
  worst[0] = (fd.row(0).transpose() - g).lpNorm<Eigen::Infinity>() /
             std::max(1.0, fd.row(0).lpNorm<Eigen::Infinity>());
  for (int i = 0; i < m; ++i) {
    const Vector a = problem.constraints[i].gradient(x);
    worst[1 + i] = (fd.row(1 + i).transpose() - a).lpNorm<Eigen::Infinity>() /
                   std::max(1.0, fd.row(1 + i).lpNorm<Eigen::Infinity>());
  }
  return worst;
}

}  // namespace pslp
