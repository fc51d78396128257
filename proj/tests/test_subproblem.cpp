#include <doctest.h>

#include <cmath>
#include <random>

#include "pslp/subproblem.hpp"
#include "test_support.hpp"

using namespace pslp;
using testing::lp_vertex_oracle;
using testing::make_eval;
using testing::random_eval;
using testing::vec;

namespace {

const std::vector<ConstraintKind> kEq{ConstraintKind::Equality};
const std::vector<ConstraintKind> kIneq{ConstraintKind::Inequality};

SubproblemParams default_params() {
  SubproblemParams p;
  return p;
}

int solve_to_optimality(Tableau& tab, const StandardLP& lp, int cap = 500) {
  int pivots = 0;
  while (!is_optimal(tab) && pivots < cap) {
    pivot(tab, lp);
    ++pivots;
  }
  REQUIRE(is_optimal(tab));
  return pivots;
}

// Reduced costs straight from the definition z_j - c_j = c_B' B^{-1} A_j - c_j,
// with B^{-1} obtained by a dense factorization of the basis columns.
Eigen::RowVectorXd reduced_costs_by_definition(const Tableau& tab,
                                               const StandardLP& lp) {
  const int rows = lp.num_rows();
  Matrix B(rows, rows);
  Vector c_basis(rows);
  for (int i = 0; i < rows; ++i) {
    B.col(i) = lp.Abar.col(tab.basis[static_cast<size_t>(i)]);
    c_basis[i] = lp.cbar[tab.basis[static_cast<size_t>(i)]];
  }
  const Vector y = B.transpose().fullPivLu().solve(c_basis);
  return y.transpose() * lp.Abar - lp.cbar.transpose();
}

}  // namespace

TEST_CASE("standard form of the worked single-equality instance") {
  const Evaluation e =
      make_eval(vec({1.0}), Matrix::Ones(1, 1), vec({1.0}), kEq);
  const StandardLP lp = build_standard_form(e, 1.0, 1.0);
  CHECK(lp.num_cols() == 6);  // d+, d-, r, s, u, v
  CHECK(lp.num_rows() == 3);
  // cost pattern (rho*g, -rho*g, e_r, e_s, 0, 0)
  CHECK(lp.cbar[lp.col_dplus(0)] == 1.0);
  CHECK(lp.cbar[lp.col_dminus(0)] == -1.0);
  CHECK(lp.cbar[lp.col_r(0)] == 1.0);
  CHECK(lp.cbar[lp.col_s(0)] == 1.0);
  CHECK(lp.cbar[lp.col_u(0)] == 0.0);
  CHECK(lp.cbar[lp.col_v(0)] == 0.0);
  // the raw right-hand side (-b_E, delta, delta) is stored sign-adjusted
  CHECK(lp.bbar == vec({1.0, 1.0, 1.0}));
  CHECK(lp.row_sign[0] == -1.0);
  CHECK(lp.row_sign[0] * lp.bbar[0] == -1.0);
  CHECK(lp.bbar.minCoeff() >= 0.0);
}

TEST_CASE("feasibility subproblem has zero step costs") {
  const Evaluation e =
      make_eval(vec({3.0, -2.0}), Matrix::Ones(2, 2), vec({1.0, -1.0}),
                {ConstraintKind::Equality, ConstraintKind::Inequality});
  const StandardLP lp = build_standard_form(e, 0.0, 1.0);
  CHECK(lp.cbar.head(2 * lp.n).isZero(0.0));
}

TEST_CASE("no constraints and zero gradient solves at d = 0 immediately") {
  const Evaluation e = make_eval(vec({0.0, 0.0}), Matrix(0, 2), Vector(0), {});
  const StandardLP lp = build_standard_form(e, 1.0, 1.0);
  Tableau tab = initial_basis(lp);
  CHECK(is_optimal(tab));
  CHECK(tab.objective == 0.0);
  CHECK(extract_primal(tab, lp) == vec({0.0, 0.0}));
}

TEST_CASE("initial basis absorbs the constraint values") {
  const Evaluation pos =
      make_eval(vec({0.0}), Matrix::Ones(1, 1), vec({1.0}), kEq);
  const StandardLP lp_pos = build_standard_form(pos, 1.0, 1.0);
  Tableau tab_pos = initial_basis(lp_pos);
  CHECK(tab_pos.basis[0] == lp_pos.col_r(0));
  CHECK(tab_pos.rhs[0] == 1.0);

  const Evaluation neg =
      make_eval(vec({0.0}), Matrix::Ones(1, 1), vec({-1.0}), kEq);
  const StandardLP lp_neg = build_standard_form(neg, 1.0, 1.0);
  Tableau tab_neg = initial_basis(lp_neg);
  CHECK(tab_neg.basis[0] == lp_neg.col_s(0));
  CHECK(tab_neg.rhs[0] == 1.0);
}

TEST_CASE("all-zero constraint values give a degenerate feasible start") {
  const Evaluation e = make_eval(
      vec({1.0, 1.0}), Matrix::Identity(2, 2), vec({0.0, 0.0}),
      {ConstraintKind::Equality, ConstraintKind::Inequality});
  const StandardLP lp = build_standard_form(e, 1.0, 0.5);
  Tableau tab = initial_basis(lp);
  CHECK(tab.rhs.head(2) == vec({0.0, 0.0}));
  CHECK(tab.rhs.tail(4) == vec({0.5, 0.5, 0.5, 0.5}));
  CHECK(extract_primal(tab, lp) == vec({0.0, 0.0}));
}

TEST_CASE("initial tableau objective equals the violation") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Evaluation e = random_eval(rng, 3, 4);
    const StandardLP lp = build_standard_form(e, 1.3, 0.7);
    const Tableau tab = initial_basis(lp);
    CHECK(tab.objective == doctest::Approx(violation(e)).epsilon(1e-12));
  }
}

TEST_CASE("pivot on an already-optimal tableau is a no-op") {
  const Evaluation e = make_eval(vec({-1.0}), Matrix(0, 1), Vector(0), {});
  const StandardLP lp = build_standard_form(e, 1.0, 1.0);
  Tableau tab = initial_basis(lp);
  solve_to_optimality(tab, lp);
  const Vector rhs_before = tab.rhs;
  const std::vector<int> basis_before = tab.basis;
  CHECK(pivot(tab, lp) == PivotOutcome::Optimal);
  CHECK(tab.rhs == rhs_before);
  CHECK(tab.basis == basis_before);
}

TEST_CASE("one pivot reaches the right box vertex on min -x") {
  const Evaluation e = make_eval(vec({-1.0}), Matrix(0, 1), Vector(0), {});
  const StandardLP lp = build_standard_form(e, 1.0, 1.0);
  Tableau tab = initial_basis(lp);
  CHECK(!is_optimal(tab));
  CHECK(pivot(tab, lp) == PivotOutcome::Improved);
  CHECK(is_optimal(tab));
  CHECK(extract_primal(tab, lp) == vec({1.0}));
  CHECK(tab.objective == doctest::Approx(-1.0));
}

TEST_CASE("simplex optimum matches the vertex-enumeration oracle") {
  std::mt19937_64 rng(2025);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const int m = 1 + static_cast<int>(rng() % 4);
    const Evaluation e = random_eval(rng, n, m);
    const double rho = static_cast<double>(rng() % 200) / 100.0;
    StandardLP lp = build_standard_form(e, rho, 1.0);
    Tableau tab = initial_basis(lp);
    solve_to_optimality(tab, lp);
    const double oracle = lp_vertex_oracle(e, rho, 1.0);
    CHECK(std::abs((tab.objective) - (oracle)) <= 1e-9);
  }
}

TEST_CASE("strong duality and dual extraction at LP optimality") {
  std::mt19937_64 rng(555);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 3);
    const int m = 1 + static_cast<int>(rng() % 4);
    const Evaluation e = random_eval(rng, n, m);
    const double rho = 0.1 + static_cast<double>(rng() % 150) / 100.0;
    const double delta = 0.5 + static_cast<double>(rng() % 100) / 100.0;
    StandardLP lp = build_standard_form(e, rho, delta);
    Tableau tab = initial_basis(lp);
    solve_to_optimality(tab, lp);
    const Vector d = extract_primal(tab, lp);
    const Vector lambda = project_duals(extract_duals(tab, lp), e.kinds);
    const double l_val = linear_model(e, d, rho);
    const double p_val = dual_value(e, lambda, rho, delta);
    const double scale = std::max(1.0, std::abs(violation(e)));
    CHECK(std::abs((l_val) - (tab.objective)) <= 1e-9);
    CHECK(l_val - p_val <= 1e-8 * scale);
    CHECK(p_val <= l_val + 1e-10);
    // exact complementarity at the optimum
    CHECK(complementarity_measure(e, d, lambda) <= 1e-8 * scale);
  }
}

TEST_CASE("dual projection clamps into the box") {
  CHECK(project_duals(vec({2.5}), kEq)[0] == 1.0);
  CHECK(project_duals(vec({-2.5}), kEq)[0] == -1.0);
  CHECK(project_duals(vec({-0.3}), kIneq)[0] == 0.0);
  CHECK(project_duals(vec({0.4}), kIneq)[0] == 0.4);
}

TEST_CASE("objective-row swap at a smaller penalty") {
  SUBCASE("zero gradient leaves the row unchanged") {
    const Evaluation e =
        make_eval(vec({0.0, 0.0}), Matrix::Ones(1, 2), vec({0.5}), kIneq);
    StandardLP lp = build_standard_form(e, 1.0, 1.0);
    Tableau tab = initial_basis(lp);
    const Eigen::RowVectorXd before = tab.zrow;
    update_objective_row(tab, lp, 0.5);
    CHECK(tab.zrow == before);
  }
  SUBCASE("swap matches the reduced costs computed from the basis inverse") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 25; ++trial) {
      const Evaluation e = random_eval(rng, 3, 3);
      StandardLP lp = build_standard_form(e, 1.0, 1.0);
      Tableau tab = initial_basis(lp);
      for (int p = 0; p < 4 && !is_optimal(tab); ++p) pivot(tab, lp);
      const Vector rhs_before = tab.rhs;
      const std::vector<int> basis_before = tab.basis;
      update_objective_row(tab, lp, 0.37);
      CHECK(tab.rhs == rhs_before);
      CHECK(tab.basis == basis_before);
      const Eigen::RowVectorXd expect = reduced_costs_by_definition(tab, lp);
      for (int j = 0; j < lp.num_cols(); ++j) {
        CHECK(std::abs((tab.zrow[j]) - (expect[j])) <= 1e-12);
      }
    }
  }
  SUBCASE("equal penalty is a no-op, larger is rejected") {
    const Evaluation e =
        make_eval(vec({1.0}), Matrix::Ones(1, 1), vec({1.0}), kEq);
    StandardLP lp = build_standard_form(e, 1.0, 1.0);
    Tableau tab = initial_basis(lp);
    const Eigen::RowVectorXd before = tab.zrow;
    update_objective_row(tab, lp, 1.0);
    CHECK(tab.zrow == before);
    CHECK_THROWS_AS(update_objective_row(tab, lp, 2.0), std::invalid_argument);
  }
}

TEST_CASE("ratios on the worked instance are exactly one") {
  const Evaluation e =
      make_eval(vec({1.0}), Matrix::Ones(1, 1), vec({1.0}), kEq);
  const Ratios r =
      ratios(e, vec({-1.0}), vec({-1.0}), vec({-1.0}), 1.0, 0.01, 1.0);
  CHECK(r.r_phi == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r.r_c == doctest::Approx(1.0).epsilon(1e-14));
  // l(d;0) = 0, p(nu;0) = -2 clamps to 0: r_v = (v+g-0)/(v+g) = 1
  CHECK(r.r_v == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("stationary feasibility gives unit ratios at d = 0") {
  const Evaluation e =
      make_eval(vec({0.0}), Matrix::Ones(1, 1), vec({0.0}), kEq);
  const Vector zero1 = Vector::Zero(1);
  const Ratios r = ratios(e, zero1, zero1, zero1, 1.0, 0.01, 1.0);
  CHECK(r.r_v == 1.0);
  CHECK(r.r_c == 1.0);
}

TEST_CASE("subproblem terminates immediately at a stationary feasible point") {
  const Evaluation e = make_eval(
      vec({0.0, 0.0}), Matrix::Identity(2, 2), vec({0.0, 0.0}),
      {ConstraintKind::Equality, ConstraintKind::Inequality});
  const SubproblemResult res =
      solve_subproblem(e, 1.0, 0.01, 1.0, default_params());
  CHECK(res.null_step);
  CHECK(res.d == vec({0.0, 0.0}));
  // at most a couple of degenerate pivots to certify the zero step
  CHECK(res.pivots <= 2);
  CHECK(res.dust_reductions == 0);  // zero gradient never triggers a reduction
  CHECK(res.rho_tilde == 1.0);
  CHECK(res.terminated_by == SubproblemExit::RatiosSatisfied);
}

TEST_CASE("tiny equality subproblem solves in a few pivots") {
  // min x s.t. x = 0, at x0 = 1: g = 1, a = 1, b = 1.
  const Evaluation e =
      make_eval(vec({1.0}), Matrix::Ones(1, 1), vec({1.0}), kEq);
  const SubproblemResult res =
      solve_subproblem(e, 1.0, 0.01, 1.0, default_params());
  CHECK(res.d == vec({-1.0}));
  CHECK(res.pivots <= 3);
  CHECK(res.ratios.r_v >= 0.3);
  CHECK(res.ratios.r_phi >= 0.75);
  CHECK(res.ratios.r_c >= 0.3);
  CHECK(res.terminated_by == SubproblemExit::RatiosSatisfied);
}

TEST_CASE("steep objective forces at least one penalty reduction") {
  // A large gradient against an active bound: the full penalty step increases
  // the linearized violation, so the feasibility ratio fails until rho drops.
  const Evaluation e =
      make_eval(vec({10.0}), -Matrix::Ones(1, 1), vec({0.0}), kIneq);
  const SubproblemResult res =
      solve_subproblem(e, 1.0, 0.01, 1.0, default_params());
  CHECK(res.dust_reductions >= 1);
  CHECK(res.rho_tilde < 1.0);
  // reduction count within the worst-case budget from the subproblem data
  const ControlParams p;
  const double arg = 0.01 * (1.0 - std::sqrt(p.beta_v / p.beta_phi)) /
                     (1.0 * 1.0 * 1.0 * 10.0);
  const int bound = static_cast<int>(
      std::ceil(std::log(arg) / std::log(p.theta_rho)));
  CHECK(res.dust_reductions <= std::max(bound, 0));
  // and the returned penalty respects its lower bound
  const double rho_lb = std::min(
      1.0, p.theta_rho * 0.01 * (1.0 - std::sqrt(p.beta_v / p.beta_phi)) / 10.0);
  CHECK(res.rho_tilde >= rho_lb * (1.0 - 1e-12));
}

TEST_CASE("per-pivot invariants: primal descent and the dual chain") {
  std::mt19937_64 rng(321);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 3);
    const int m = 1 + static_cast<int>(rng() % 4);
    const Evaluation e = random_eval(rng, n, m);
    std::vector<PivotRecord> records;
    const SubproblemResult res = solve_subproblem(
        e, 1.0, 0.01, 1.0, default_params(), nullptr,
        [&records](const PivotRecord& rec) { records.push_back(rec); });
    REQUIRE(!records.empty());
    double p_nu_prev = -1e300;
    for (size_t i = 0; i < records.size(); ++i) {
      const PivotRecord& rec = records[i];
      // primal iterates never do worse than the zero step
      CHECK(rec.detail.l_rho <= rec.detail.l0 + 1e-10);
      // dual chain: p(nu;0) >= p(lambda;0), nu monotone, never below the
      // cold-start dual p(0;0) = 0
      const double p_lambda_zero = dual_value(e, rec.lambda, 0.0, 1.0);
      CHECK(rec.detail.p_nu_zero >= p_lambda_zero - 1e-12);
      CHECK(rec.detail.p_nu_zero >= -1e-12);
      CHECK(rec.detail.p_nu_zero >= p_nu_prev - 1e-12);
      p_nu_prev = rec.detail.p_nu_zero;
      // simplex descent at fixed rho
      if (i > 0 && records[i - 1].rho == rec.rho) {
        const double l_prev = linear_model(e, records[i - 1].d, rec.rho);
        CHECK(rec.detail.l_rho <= l_prev + 1e-10);
      }
    }
    // the returned step stays in the trust region
    CHECK(res.d.lpNorm<Eigen::Infinity>() <= 1.0 + 1e-12);
    CHECK(is_dual_feasible(res.lambda, e.kinds));
    CHECK(is_dual_feasible(res.nu, e.kinds));
  }
}

TEST_CASE("exhausting the pivot budget without the penalty ratio stalls") {
  // cold duals leave r_phi far below its threshold at the start
  const Evaluation e =
      make_eval(vec({1.0}), Matrix::Ones(1, 1), vec({1.0}), kEq);
  SubproblemParams params;
  params.pivot_limit = 0;
  CHECK_THROWS_AS(solve_subproblem(e, 1.0, 0.01, 1.0, params),
                  SubproblemStalled);
}

TEST_CASE("exact mode emits ratio checks only at LP optima") {
  const Evaluation e =
      make_eval(vec({1.0, -2.0}),
                (Matrix(2, 2) << 1, 0.5, -0.3, 1).finished(),
                vec({0.8, -0.2}),
                {ConstraintKind::Equality, ConstraintKind::Inequality});
  SubproblemParams params;
  params.exact_mode = true;
  const SubproblemResult res = solve_subproblem(e, 1.0, 0.01, 1.0, params);
  // the exact solve must agree with the LP optimum at its final penalty
  StandardLP lp = build_standard_form(e, res.rho_tilde, 1.0);
  Tableau tab = initial_basis(lp);
  solve_to_optimality(tab, lp);
  CHECK(std::abs((linear_model(e, res.d, res.rho_tilde)) - (tab.objective)) <= 1e-9);
}
