#pragma once

#include "pslp/solver.hpp"

namespace pslp {

/// Desk-scale benchmark problem with a provenance-tagged reference solution.
struct CatalogEntry {
  Problem problem;
  Vector x0;
  SolveStatus expected_status = SolveStatus::KKTSuccess;
  std::optional<double> reference_f;
  std::optional<double> reference_v;
  std::optional<Vector> reference_x;
  std::vector<std::string> tags;  // feasible / infeasible / degenerate / ...
};

/// Built-in problem catalog. Feasible entries carry analytically derived
/// optima; the infeasible entry's reference is the minimum of the violation.
const std::vector<CatalogEntry>& catalog();

const CatalogEntry* find_entry(const std::string& name);

}  // namespace pslp
