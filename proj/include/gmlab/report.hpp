#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gmlab/verifiers.hpp"

namespace gmlab {

enum class ReportFormat { csv, json };

// Serializes reports sorted by (inequality_id, model, seed). CSV columns:
// inequality_id, model, p, q, b_or_gamma, trials, seed, lhs, rhs, ratio,
// pass. JSON mirrors the fields. Numbers carry 17 significant digits.
void emit_report(std::vector<VerificationReport> reports, ReportFormat format,
                 const std::string& path);

std::string render_report(std::vector<VerificationReport> reports, ReportFormat format);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;       // in log-log coordinates
  double max_residual = 0.0;
};

// Least-squares line through (log t, log value); all inputs must be positive.
SlopeFit fit_decay_slope(const std::vector<std::pair<double, double>>& series);

// Fixed-format float with 17 significant digits.
std::string format_g17(double x);

}  // namespace gmlab
