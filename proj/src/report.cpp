#include "gmlab/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "gmlab/errors.hpp"

namespace gmlab {

std::string format_g17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {

void sort_reports(std::vector<VerificationReport>& reports) {
  std::stable_sort(reports.begin(), reports.end(),
                   [](const VerificationReport& a, const VerificationReport& b) {
                     if (a.inequality_id != b.inequality_id)
                       return a.inequality_id < b.inequality_id;
                     if (a.params.model != b.params.model) return a.params.model < b.params.model;
                     return a.params.seed < b.params.seed;
                   });
}

std::string csv_body(const std::vector<VerificationReport>& reports) {
  std::string out = "inequality_id,model,p,q,b_or_gamma,trials,seed,lhs,rhs,ratio,pass\n";
  for (const auto& r : reports) {
    out += r.inequality_id + "," + r.params.model + "," + format_g17(r.params.p) + "," +
           format_g17(r.params.q) + "," + format_g17(r.params.b_or_gamma) + "," +
           std::to_string(r.params.trials) + "," + std::to_string(r.params.seed) + "," +
           format_g17(r.lhs) + "," + format_g17(r.rhs) + "," + format_g17(r.ratio) + "," +
           (r.pass ? "true" : "false") + "\n";
  }
  return out;
}

std::string json_body(const std::vector<VerificationReport>& reports) {
  std::string out = "[\n";
  for (size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    out += "  {\"inequality_id\":\"" + r.inequality_id + "\",";
    out += "\"model\":\"" + r.params.model + "\",";
    out += "\"p\":" + format_g17(r.params.p) + ",";
    out += "\"q\":" + format_g17(r.params.q) + ",";
    out += "\"b_or_gamma\":" + format_g17(r.params.b_or_gamma) + ",";
    out += "\"trials\":" + std::to_string(r.params.trials) + ",";
    out += "\"seed\":" + std::to_string(r.params.seed) + ",";
    out += "\"lhs\":" + format_g17(r.lhs) + ",";
    out += "\"rhs\":" + format_g17(r.rhs) + ",";
    out += "\"ratio\":" + format_g17(r.ratio) + ",";
    out += std::string("\"pass\":") + (r.pass ? "true" : "false") + "}";
    out += (i + 1 < reports.size()) ? ",\n" : "\n";
  }
  out += "]\n";
  return out;
}

}  // namespace

std::string render_report(std::vector<VerificationReport> reports, ReportFormat format) {
  sort_reports(reports);
  return format == ReportFormat::csv ? csv_body(reports) : json_body(reports);
}

void emit_report(std::vector<VerificationReport> reports, ReportFormat format,
                 const std::string& path) {
  const std::string body = render_report(std::move(reports), format);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit_report: cannot open " + path);
  out << body;
  if (!out) throw std::runtime_error("emit_report: write failed for " + path);
}

SlopeFit fit_decay_slope(const std::vector<std::pair<double, double>>& series) {
  if (series.size() < 3) throw invalid_input("fit_decay_slope: need at least 3 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [t, v] : series) {
    if (!(t > 0.0) || !(v > 0.0)) throw invalid_input("fit_decay_slope: points must be positive");
    const double x = std::log(t), y = std::log(v);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = double(series.size());
  SlopeFit fit;
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;
  for (const auto& [t, v] : series) {
    const double resid = std::log(v) - (fit.intercept + fit.slope * std::log(t));
    fit.max_residual = std::max(fit.max_residual, std::abs(resid));
  }
  return fit;
}

}  // namespace gmlab
