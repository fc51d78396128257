#pragma once

#include <cstdint>
#include <functional>

#include "pslp/merit.hpp"
#include "pslp/penalty_update.hpp"
#include "pslp/problem.hpp"

namespace pslp {

class SingularPivot : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Pivot budget exhausted before the penalty-ratio condition was met.
class SubproblemStalled : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kPivotTol = 1e-10;

/// Standard-form LP  min cbar'x  s.t. Abar x = bbar, x >= 0  for the
/// trust-region subproblem min l(d; rho) over ||d||_inf <= delta.
///
/// Column blocks, in order: d+ (n), d- (n), r (|E|), t (|I|), s (|E|),
/// z (|I|), u (n), v (n). Rows: equality rows, inequality rows, upper-box
/// rows, lower-box rows. Constraint rows whose raw right-hand side -b_i is
/// negative are scaled by -1 (recorded in row_sign) so bbar >= 0 and the
/// designated initial basic columns form an identity.
struct StandardLP {
  int n = 0;
  int num_eq = 0;
  int num_ineq = 0;
  double rho = 0.0;
  double delta = 0.0;
  Vector obj_grad;  // g, kept for objective-row rebuilds at a new rho

  Vector cbar;
  Matrix Abar;
  Vector bbar;
  Vector row_sign;              // +-1 per row (+1 on box rows)
  std::vector<int> eq_original;    // original constraint index per equality row
  std::vector<int> ineq_original;  // original constraint index per inequality row
  std::vector<int> init_basic;     // designated initial basic column per row

  int num_cols() const { return 4 * n + 2 * num_eq + 2 * num_ineq; }
  int num_rows() const { return num_eq + num_ineq + 2 * n; }

  int col_dplus(int j) const { return j; }
  int col_dminus(int j) const { return n + j; }
  int col_r(int i) const { return 2 * n + i; }
  int col_t(int i) const { return 2 * n + num_eq + i; }
  int col_s(int i) const { return 2 * n + num_eq + num_ineq + i; }
  int col_z(int i) const { return 2 * n + 2 * num_eq + num_ineq + i; }
  int col_u(int j) const { return 2 * n + 2 * num_eq + 2 * num_ineq + j; }
  int col_v(int j) const { return 3 * n + 2 * num_eq + 2 * num_ineq + j; }
};

/// Dense simplex tableau. body holds the basis-inverse-applied columns,
/// zrow holds z_j - c_j (all <= tol at optimality), objective is the current
/// LP objective value c_B' B^{-1} bbar.
struct Tableau {
  std::vector<int> basis;          // basic column per row
  std::vector<std::uint8_t> in_basis;
  Matrix body;
  Vector rhs;
  Eigen::RowVectorXd zrow;
  double objective = 0.0;
  int consecutive_degenerate = 0;
  bool bland = false;
};

enum class PivotOutcome { Improved, Optimal, Degenerate };

StandardLP build_standard_form(const Evaluation& eval, double rho,
                               double delta);

/// Primal-feasible start with d = 0: the auxiliary variables absorb the
/// constraint values, so the initial objective equals l(0) = v(x).
Tableau initial_basis(const StandardLP& lp);

bool is_optimal(const Tableau& tab);

/// One simplex pivot: Dantzig entering, min-ratio leaving; switches to
/// Bland's rule after 50 consecutive degenerate pivots.
PivotOutcome pivot(Tableau& tab, const StandardLP& lp);

/// Step d = d+ - d-, clipped into the trust region box.
Vector extract_primal(const Tableau& tab, const StandardLP& lp);

/// Row multipliers mapped back to NLP constraint order and sign convention.
/// Not necessarily inside the dual box before projection.
Vector extract_duals(const Tableau& tab, const StandardLP& lp);

/// Clamp lambda_E into [-1,1] and lambda_I into [0,1].
Vector project_duals(const Vector& raw, const std::vector<ConstraintKind>& kinds);

/// Swap the objective row to the costs at rho_new (<= current rho); the basis
/// and rhs are untouched so primal feasibility is preserved.
void update_objective_row(Tableau& tab, StandardLP& lp, double rho_new);

struct RatioBreakdown {
  Ratios ratios;
  double l0 = 0.0;            // l(0) = v(x)
  double l0_gamma = 0.0;      // l(0) + gamma
  double l_rho = 0.0;         // l(d; rho)
  double l_zero = 0.0;        // l(d; 0)
  double p_lambda_rho = 0.0;  // p(lambda; rho)
  double p_nu_zero = 0.0;     // p(nu; 0)
  double chi = 0.0;
};

RatioBreakdown ratio_breakdown(const Evaluation& eval, const Vector& d,
                               const Vector& lambda, const Vector& nu,
                               double rho, double gamma, double delta);

Ratios ratios(const Evaluation& eval, const Vector& d, const Vector& lambda,
              const Vector& nu, double rho, double gamma, double delta);

enum class SubproblemExit { RatiosSatisfied, LPOptimal, PivotLimit };

struct SubproblemResult {
  Vector d;
  Vector lambda;  // dual-feasible penalty multipliers
  Vector nu;      // best-so-far feasibility multipliers
  double rho_tilde = 0.0;
  int pivots = 0;
  Ratios ratios;
  int dust_reductions = 0;
  SubproblemExit terminated_by = SubproblemExit::RatiosSatisfied;
  bool infeasibility_suspected = false;
  bool null_step = false;  // d == 0: caller should shrink gamma and re-solve
};

/// Per-iterate observation of the subproblem solver, one per generated
/// primal-dual iterate (the initial tableau, every pivot, every penalty swap).
struct PivotRecord {
  int iterate = 0;
  int pivots_so_far = 0;
  double rho = 0.0;
  RatioBreakdown detail;
  Vector d;
  Vector lambda;
  Vector nu;
};

using PivotObserver = std::function<void(const PivotRecord&)>;

struct SubproblemParams {
  ControlParams control;
  int pivot_limit = 100;
  bool exact_mode = false;  // evaluate ratio exits only at LP optimality
};

/// Inexact subproblem solve: pivots the tableau, applies the in-solve
/// penalty update after every generated iterate, and stops as soon as the
/// three ratio conditions hold (or earlier termination per SubproblemExit).
/// warm_lambda, when dimension-compatible, seeds the initial dual estimate.
SubproblemResult solve_subproblem(const Evaluation& eval, double rho_in,
                                  double gamma, double delta,
                                  const SubproblemParams& params,
                                  const Vector* warm_lambda = nullptr,
                                  const PivotObserver& observer = nullptr);

/// Feasibility LP (rho = 0) solved to optimality; used once at the start
/// point to seed multipliers for the residual denominators.
struct FeasibilityDuals {
  Vector lambda;
  int pivots = 0;
};

FeasibilityDuals solve_feasibility_lp(const Evaluation& eval, double delta,
                                      int pivot_limit);

}  // namespace pslp
