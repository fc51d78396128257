#include "pslp/catalog.hpp"

#include <cmath>

namespace pslp {

namespace {

Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double value : values) v[i++] = value;
  return v;
}

Constraint ineq(std::function<double(const Vector&)> value,
                std::function<Vector(const Vector&)> gradient) {
  return {std::move(value), std::move(gradient), ConstraintKind::Inequality};
}

Constraint eq(std::function<double(const Vector&)> value,
              std::function<Vector(const Vector&)> gradient) {
  return {std::move(value), std::move(gradient), ConstraintKind::Equality};
}

CatalogEntry make_quad() {
  CatalogEntry e;
  e.problem.n = 2;
  e.problem.name = "quad";
  e.problem.objective = [](const Vector& x) { return x.squaredNorm(); };
  e.problem.objective_gradient = [](const Vector& x) -> Vector { return 2.0 * x; };
  e.problem.known_optimum = {0.0, "minimum of ||x||^2 at the origin"};
  e.x0 = vec({3.0, -2.0});
  e.reference_f = 0.0;
  e.reference_v = 0.0;
  e.reference_x = vec({0.0, 0.0});
  e.tags = {"feasible", "unconstrained"};
  return e;
}

CatalogEntry make_hs6() {
  CatalogEntry e;
  e.problem.n = 2;
  e.problem.name = "hs6";
  e.problem.objective = [](const Vector& x) {
    return (1.0 - x[0]) * (1.0 - x[0]);
  };
  e.problem.objective_gradient = [](const Vector& x) -> Vector {
    return vec({-2.0 * (1.0 - x[0]), 0.0});
  };
  e.problem.constraints.push_back(eq(
      [](const Vector& x) { return 10.0 * (x[1] - x[0] * x[0]); },
      [](const Vector& x) -> Vector { return vec({-20.0 * x[0], 10.0}); }));
  e.problem.known_optimum = {0.0, "f = (1-x1)^2 vanishes at (1, 1), feasible"};
  e.x0 = vec({-1.2, 1.0});
  e.reference_f = 0.0;
  e.reference_v = 0.0;
  e.reference_x = vec({1.0, 1.0});
  e.tags = {"feasible", "equality"};
  return e;
}

CatalogEntry make_circle_ineq() {
  CatalogEntry e;
  e.problem.n = 2;
  e.problem.name = "circle-ineq";
  e.problem.objective = [](const Vector& x) { return x[0] + x[1]; };
  e.problem.objective_gradient = [](const Vector&) -> Vector {
    return vec({1.0, 1.0});
  };
  e.problem.constraints.push_back(ineq(
      [](const Vector& x) { return x.squaredNorm() - 2.0; },
      [](const Vector& x) -> Vector { return 2.0 * x; }));
  e.problem.known_optimum = {
      -2.0, "Lagrange conditions on the disk boundary give (-1, -1)"};
  e.x0 = vec({0.5, -0.5});
  e.reference_f = -2.0;
  e.reference_v = 0.0;
  e.reference_x = vec({-1.0, -1.0});
  e.tags = {"feasible", "inequality-active"};
  return e;
}

CatalogEntry make_infeasible_1d() {
  CatalogEntry e;
  e.problem.n = 1;
  e.problem.name = "infeasible-1d";
  e.problem.objective = [](const Vector& x) { return x[0]; };
  e.problem.objective_gradient = [](const Vector&) -> Vector {
    return vec({1.0});
  };
  e.problem.constraints.push_back(ineq(
      [](const Vector& x) { return x[0] * x[0] + 1.0; },
      [](const Vector& x) -> Vector { return vec({2.0 * x[0]}); }));
  e.x0 = vec({3.0});
  e.expected_status = SolveStatus::InfeasibleStationary;
  // v(x) = x^2 + 1 has its minimum 1 at x = 0.
  e.reference_v = 1.0;
  e.reference_x = vec({0.0});
  e.tags = {"infeasible"};
  return e;
}

CatalogEntry make_circle_eq() {
  CatalogEntry e;
  e.problem.n = 2;
  e.problem.name = "circle-eq";
  e.problem.objective = [](const Vector& x) { return x[0] + x[1]; };
  e.problem.objective_gradient = [](const Vector&) -> Vector {
    return vec({1.0, 1.0});
  };
  e.problem.constraints.push_back(eq(
      [](const Vector& x) { return x.squaredNorm() - 2.0; },
      [](const Vector& x) -> Vector { return 2.0 * x; }));
  e.problem.known_optimum = {-2.0, "Lagrange conditions on the circle"};
  // Start on the circle: every constraint value is exactly zero, so the
  // initial subproblem basis is degenerate. (1, -1) is non-stationary there;
  // (1, 1) would itself satisfy the first-order conditions as the maximizer.
  e.x0 = vec({1.0, -1.0});
  e.reference_f = -2.0;
  e.reference_v = 0.0;
  e.reference_x = vec({-1.0, -1.0});
  e.tags = {"feasible", "degenerate"};
  return e;
}

CatalogEntry make_hs3() {
  CatalogEntry e;
  e.problem.n = 2;
  e.problem.name = "hs3";
  e.problem.objective = [](const Vector& x) {
    const double t = x[1] - x[0];
    return x[1] + 1e-5 * t * t;
  };
  e.problem.objective_gradient = [](const Vector& x) -> Vector {
    const double t = x[1] - x[0];
    return vec({-2e-5 * t, 1.0 + 2e-5 * t});
  };
  e.problem.constraints.push_back(
      ineq([](const Vector& x) { return -x[1]; },
           [](const Vector&) -> Vector { return vec({0.0, -1.0}); }));
  e.problem.known_optimum = {0.0, "both terms vanish at the origin"};
  e.x0 = vec({10.0, 1.0});
  e.reference_f = 0.0;
  e.reference_v = 0.0;
  e.reference_x = vec({0.0, 0.0});
  e.tags = {"feasible"};
  return e;
}

CatalogEntry make_hs4() {
  CatalogEntry e;
  e.problem.n = 2;
  e.problem.name = "hs4";
  e.problem.objective = [](const Vector& x) {
    const double t = x[0] + 1.0;
    return t * t * t / 3.0 + x[1];
  };
  e.problem.objective_gradient = [](const Vector& x) -> Vector {
    const double t = x[0] + 1.0;
    return vec({t * t, 1.0});
  };
  e.problem.constraints.push_back(
      ineq([](const Vector& x) { return 1.0 - x[0]; },
           [](const Vector&) -> Vector { return vec({-1.0, 0.0}); }));
  e.problem.constraints.push_back(
      ineq([](const Vector& x) { return -x[1]; },
           [](const Vector&) -> Vector { return vec({0.0, -1.0}); }));
  e.problem.known_optimum = {8.0 / 3.0,
                             "objective increasing in both bounds, opt (1, 0)"};
  e.x0 = vec({1.125, 0.125});
  e.reference_f = 8.0 / 3.0;
  e.reference_v = 0.0;
  e.reference_x = vec({1.0, 0.0});
  e.tags = {"feasible"};
  return e;
}

CatalogEntry make_hs5() {
  CatalogEntry e;
  e.problem.n = 2;
  e.problem.name = "hs5";
  e.problem.objective = [](const Vector& x) {
    const double s = x[0] + x[1];
    const double t = x[0] - x[1];
    return std::sin(s) + t * t - 1.5 * x[0] + 2.5 * x[1] + 1.0;
  };
  e.problem.objective_gradient = [](const Vector& x) -> Vector {
    const double c = std::cos(x[0] + x[1]);
    const double t = x[0] - x[1];
    return vec({c + 2.0 * t - 1.5, c - 2.0 * t + 2.5});
  };
  e.problem.constraints.push_back(
      ineq([](const Vector& x) { return -1.5 - x[0]; },
           [](const Vector&) -> Vector { return vec({-1.0, 0.0}); }));
  e.problem.constraints.push_back(
      ineq([](const Vector& x) { return x[0] - 4.0; },
           [](const Vector&) -> Vector { return vec({1.0, 0.0}); }));
  e.problem.constraints.push_back(
      ineq([](const Vector& x) { return -3.0 - x[1]; },
           [](const Vector&) -> Vector { return vec({0.0, -1.0}); }));
  e.problem.constraints.push_back(
      ineq([](const Vector& x) { return x[1] - 3.0; },
           [](const Vector&) -> Vector { return vec({0.0, 1.0}); }));
  const double pi = std::acos(-1.0);
  const double x1 = 0.5 - pi / 3.0;
  e.problem.known_optimum = {
      -std::sqrt(3.0) / 2.0 - pi / 3.0,
      "stationarity: cos(x1+x2) = -1/2, x1-x2 = 1, interior of the box"};
  e.x0 = vec({0.0, 0.0});
  e.reference_f = -std::sqrt(3.0) / 2.0 - pi / 3.0;
  e.reference_v = 0.0;
  e.reference_x = vec({x1, x1 - 1.0});
  e.tags = {"feasible"};
  return e;
}

CatalogEntry make_hs21() {
  CatalogEntry e;
  e.problem.n = 2;
  e.problem.name = "hs21";
  e.problem.objective = [](const Vector& x) {
    return 0.01 * x[0] * x[0] + x[1] * x[1] - 100.0;
  };
  e.problem.objective_gradient = [](const Vector& x) -> Vector {
    return vec({0.02 * x[0], 2.0 * x[1]});
  };
  e.problem.constraints.push_back(
      ineq([](const Vector& x) { return 10.0 - 10.0 * x[0] + x[1]; },
           [](const Vector&) -> Vector { return vec({-10.0, 1.0}); }));
  e.problem.constraints.push_back(
      ineq([](const Vector& x) { return 2.0 - x[0]; },
           [](const Vector&) -> Vector { return vec({-1.0, 0.0}); }));
  e.problem.constraints.push_back(
      ineq([](const Vector& x) { return x[0] - 50.0; },
           [](const Vector&) -> Vector { return vec({1.0, 0.0}); }));
  e.problem.constraints.push_back(
      ineq([](const Vector& x) { return -50.0 - x[1]; },
           [](const Vector&) -> Vector { return vec({0.0, -1.0}); }));
  e.problem.constraints.push_back(
      ineq([](const Vector& x) { return x[1] - 50.0; },
           [](const Vector&) -> Vector { return vec({0.0, 1.0}); }));
  e.problem.known_optimum = {-99.96, "separable objective, only x1 >= 2 active"};
  e.x0 = vec({-1.0, -1.0});
  e.reference_f = -99.96;
  e.reference_v = 0.0;
  e.reference_x = vec({2.0, 0.0});
  e.tags = {"feasible", "infeasible-start"};
  return e;
}

CatalogEntry make_hs28() {
  CatalogEntry e;
  e.problem.n = 3;
  e.problem.name = "hs28";
  e.problem.objective = [](const Vector& x) {
    const double a = x[0] + x[1];
    const double b = x[1] + x[2];
    return a * a + b * b;
  };
  e.problem.objective_gradient = [](const Vector& x) -> Vector {
    const double a = x[0] + x[1];
    const double b = x[1] + x[2];
    return vec({2.0 * a, 2.0 * a + 2.0 * b, 2.0 * b});
  };
  e.problem.constraints.push_back(eq(
      [](const Vector& x) { return x[0] + 2.0 * x[1] + 3.0 * x[2] - 1.0; },
      [](const Vector&) -> Vector { return vec({1.0, 2.0, 3.0}); }));
  e.problem.known_optimum = {0.0, "both squares vanish at (0.5, -0.5, 0.5)"};
  e.x0 = vec({-4.0, 1.0, 1.0});
  e.reference_f = 0.0;
  e.reference_v = 0.0;
  e.reference_x = vec({0.5, -0.5, 0.5});
  e.tags = {"feasible", "equality"};
  return e;
}

CatalogEntry make_hs35() {
  CatalogEntry e;
  e.problem.n = 3;
  e.problem.name = "hs35";
  e.problem.objective = [](const Vector& x) {
    return 9.0 - 8.0 * x[0] - 6.0 * x[1] - 4.0 * x[2] + 2.0 * x[0] * x[0] +
           2.0 * x[1] * x[1] + x[2] * x[2] + 2.0 * x[0] * x[1] +
           2.0 * x[0] * x[2];
  };
  e.problem.objective_gradient = [](const Vector& x) -> Vector {
    return vec({-8.0 + 4.0 * x[0] + 2.0 * x[1] + 2.0 * x[2],
                -6.0 + 4.0 * x[1] + 2.0 * x[0],
                -4.0 + 2.0 * x[2] + 2.0 * x[0]});
  };
  e.problem.constraints.push_back(ineq(
      [](const Vector& x) { return x[0] + x[1] + 2.0 * x[2] - 3.0; },
      [](const Vector&) -> Vector { return vec({1.0, 1.0, 2.0}); }));
  e.problem.constraints.push_back(
      ineq([](const Vector& x) { return -x[0]; },
           [](const Vector&) -> Vector { return vec({-1.0, 0.0, 0.0}); }));
  e.problem.constraints.push_back(
      ineq([](const Vector& x) { return -x[1]; },
           [](const Vector&) -> Vector { return vec({0.0, -1.0, 0.0}); }));
  e.problem.constraints.push_back(
      ineq([](const Vector& x) { return -x[2]; },
           [](const Vector&) -> Vector { return vec({0.0, 0.0, -1.0}); }));
  e.problem.known_optimum = {
      1.0 / 9.0, "KKT with multiplier 2/9 on the simplex face at (4/3,7/9,4/9)"};
  e.x0 = vec({0.5, 0.5, 0.5});
  e.reference_f = 1.0 / 9.0;
  e.reference_v = 0.0;
  e.reference_x = vec({4.0 / 3.0, 7.0 / 9.0, 4.0 / 9.0});
  e.tags = {"feasible"};
  return e;
}

CatalogEntry make_hs48() {
  CatalogEntry e;
  e.problem.n = 5;
  e.problem.name = "hs48";
  e.problem.objective = [](const Vector& x) {
    const double a = x[0] - 1.0;
    const double b = x[1] - x[2];
    const double c = x[3] - x[4];
    return a * a + b * b + c * c;
  };
  e.problem.objective_gradient = [](const Vector& x) -> Vector {
    const double b = x[1] - x[2];
    const double c = x[3] - x[4];
    return vec({2.0 * (x[0] - 1.0), 2.0 * b, -2.0 * b, 2.0 * c, -2.0 * c});
  };
  e.problem.constraints.push_back(
      eq([](const Vector& x) { return x.sum() - 5.0; },
         [](const Vector&) -> Vector { return vec({1.0, 1.0, 1.0, 1.0, 1.0}); }));
  e.problem.constraints.push_back(eq(
      [](const Vector& x) { return x[2] - 2.0 * (x[3] + x[4]) + 3.0; },
      [](const Vector&) -> Vector { return vec({0.0, 0.0, 1.0, -2.0, -2.0}); }));
  e.problem.known_optimum = {0.0, "all three squares vanish at e"};
  e.x0 = vec({3.0, 5.0, -3.0, 2.0, -2.0});
  e.reference_f = 0.0;
  e.reference_v = 0.0;
  e.reference_x = vec({1.0, 1.0, 1.0, 1.0, 1.0});
  e.tags = {"feasible", "equality"};
  return e;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = [] {
    std::vector<CatalogEntry> list;
    list.push_back(make_quad());
    list.push_back(make_hs6());
    list.push_back(make_circle_ineq());
    list.push_back(make_infeasible_1d());
    list.push_back(make_circle_eq());
    list.push_back(make_hs3());
    list.push_back(make_hs4());
    list.push_back(make_hs5());
    list.push_back(make_hs21());
    list.push_back(make_hs28());
    list.push_back(make_hs35());
    list.push_back(make_hs48());
    return list;
  }();
  return entries;
}

const CatalogEntry* find_entry(const std::string& name) {
  for (const CatalogEntry& entry : catalog()) {
    if (entry.problem.name == name) return &entry;
  }
  return nullptr;
}

}  // namespace pslp
