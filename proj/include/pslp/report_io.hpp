#pragma once

#include <string>
#include <vector>

#include "pslp/solver.hpp"

namespace pslp {

/// Per-iteration trace as CSV with a header row. Scalars are printed with 17
/// significant digits so parsing reproduces them exactly; the iterate x is the
/// last column, semicolon-joined.
std::string trace_to_csv(const std::vector<IterationRecord>& trace);

std::vector<IterationRecord> parse_trace_csv(const std::string& csv);

/// Exit flag of the summary: 1 success, -1 iteration limit,
/// -2 infeasible-stationary or stalled (diagnostic attached).
int exit_flag(SolveStatus status);

/// Per-run JSON summary (single line, deterministic key order).
std::string summary_to_json(const std::string& problem_name,
                            const SolveReport& report,
                            const std::string& mode);

/// Histogram of per-problem average pivots-per-iteration, unit-width bins
/// starting at zero, rendered as CSV (bin_lo,bin_hi,count).
std::string pivot_histogram_csv(const std::vector<double>& averages);

}  // namespace pslp
