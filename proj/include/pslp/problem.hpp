#pragma once

#include <Eigen/Core>

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pslp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Thrown when an objective/constraint callable returns a non-finite value.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ConstraintKind { Equality, Inequality };

struct Constraint {
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> gradient;
  ConstraintKind kind = ConstraintKind::Equality;
};

/// Reference objective value with a note on where it comes from
/// (analytic derivation, independent oracle, ...).
struct KnownOptimum {
  double f = 0.0;
  std::string provenance;
};

/// Nonlinear program  min f(x)  s.t.  c_i(x) = 0 (i in E),  c_i(x) <= 0 (i in I).
///
/// Gradients are caller-supplied; the solver is a first-order method and never
/// asks for second derivatives. A Problem is immutable after construction and
/// safe to share between concurrent solves. Constraint order is stable: index i
/// identifies constraint i everywhere (multipliers, Jacobian rows, reports).
struct Problem {
  int n = 0;
  std::string name;
  std::function<double(const Vector&)> objective;
  std::function<Vector(const Vector&)> objective_gradient;
  std::vector<Constraint> constraints;
  std::optional<KnownOptimum> known_optimum;

  int num_constraints() const { return static_cast<int>(constraints.size()); }
};

/// All first-order data of a Problem at a point x, each callable evaluated
/// exactly once. Immutable value type.
struct Evaluation {
  Vector x;
  double f = 0.0;
  Vector g;                           // objective gradient
  Vector b;                           // constraint values c_i(x)
  Matrix A;                           // Jacobian, row i = grad c_i(x)
  std::vector<ConstraintKind> kinds;  // per row of A

  int n() const { return static_cast<int>(x.size()); }
  int m() const { return static_cast<int>(b.size()); }
};

/// Objective and constraint values only (used by the line search, which does
/// not need gradients).
struct ValueSample {
  double f = 0.0;
  Vector b;
};

Evaluation evaluate(const Problem& problem, const Vector& x);

/// Like evaluate(), but reuses (f, c) already computed at x (e.g. by the last
/// accepted line-search trial) so only gradients are evaluated.
Evaluation evaluate_with_values(const Problem& problem, const Vector& x,
                                const ValueSample& values);

ValueSample evaluate_values(const Problem& problem, const Vector& x);

/// Central finite-difference check of all supplied gradients at x.
/// Returns one worst-case relative discrepancy per function:
/// index 0 is the objective, index 1+i is constraint i.
std::vector<double> check_gradients(const Problem& problem, const Vector& x,
                                    double h = 1e-6);

}  // namespace pslp
