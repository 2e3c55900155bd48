#include "gmlab/step_rearrangement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gmlab/errors.hpp"
#include "gmlab/summation.hpp"

namespace gmlab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

StepRearrangement StepRearrangement::from_pool(std::vector<std::pair<double, double>> vm) {
  for (const auto& [v, m] : vm) {
    if (!std::isfinite(v) || !std::isfinite(m)) throw invalid_input("step: non-finite entry");
    if (m <= 0.0) throw invalid_input("step: masses must be positive");
  }
  std::stable_sort(vm.begin(), vm.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  StepRearrangement r;
  KahanSum mass;
  for (const auto& [v, m] : vm) {
    if (v <= 0.0) break;  // sorted, the rest contribute mu = 0
    if (!r.vals_.empty() && r.vals_.back() == v) {
      mass.add(m);
      r.cum_.back() = mass.value();
    } else {
      r.vals_.push_back(v);
      mass.add(m);
      r.cum_.push_back(mass.value());
    }
  }
  return r;
}

double mu_at(const StepRearrangement& r, double t) {
  if (t < 0.0) throw invalid_parameter("mu_at: t must be >= 0");
  // first block whose cumulative mass exceeds t
  const auto it = std::upper_bound(r.cumulative().begin(), r.cumulative().end(), t);
  if (it == r.cumulative().end()) return 0.0;
  return r.values()[it - r.cumulative().begin()];
}

double distribution_at(const StepRearrangement& r, double lambda) {
  if (lambda < 0.0) throw invalid_parameter("distribution_at: lambda must be >= 0");
  // last block with value strictly above lambda
  const auto& vals = r.values();
  int lo = 0, hi = static_cast<int>(vals.size());  // count of blocks with v > lambda
  while (lo < hi) {
    const int mid = (lo + hi) / 2;
    if (vals[mid] > lambda)
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo == 0 ? 0.0 : r.cumulative()[lo - 1];
}

double lorentz_norm(const StepRearrangement& r, double p, double q) {
  if (!(p >= 1.0)) throw invalid_parameter("lorentz_norm: p must be >= 1");
  if (std::isinf(q)) return weak_norm(r, p);
  if (!(q >= 1.0)) throw invalid_parameter("lorentz_norm: q must be >= 1");
  if (r.empty()) return 0.0;
  KahanSum s;
  double prev = 0.0;
  for (int i = 0; i < r.blocks(); ++i) {
    const double c = r.cumulative()[i];
    s.add(std::pow(r.values()[i], q) * (p / q) * (std::pow(c, q / p) - std::pow(prev, q / p)));
    prev = c;
  }
  return std::pow(s.value(), 1.0 / q);
}

double weak_norm(const StepRearrangement& r, double rr) {
  if (!(rr >= 1.0)) throw invalid_parameter("weak_norm: rr must be >= 1");
  double best = 0.0;
  for (int i = 0; i < r.blocks(); ++i)
    best = std::max(best, r.values()[i] * std::pow(r.cumulative()[i], 1.0 / rr));
  return best;
}

std::pair<double, double> sup_duality_check(const StepRearrangement& r, double alpha) {
  if (!(alpha > 0.0)) throw invalid_parameter("sup_duality_check: alpha must be positive");
  // sup_t t^alpha mu_t over block closures
  double sup_mu = 0.0;
  for (int i = 0; i < r.blocks(); ++i)
    sup_mu = std::max(sup_mu, std::pow(r.cumulative()[i], alpha) * r.values()[i]);
  // sup_s s d_s^alpha: on [v_{i+1}, v_i) the distribution equals c_i, so the
  // supremum is approached at s -> v_i from the left.
  double sup_d = 0.0;
  for (int i = 0; i < r.blocks(); ++i)
    sup_d = std::max(sup_d, r.values()[i] * std::pow(r.cumulative()[i], alpha));
  return {sup_mu, sup_d};
}

double trace_of_function(const StepRearrangement& r,
                         const std::function<double(double)>& phi) {
  if (phi(0.0) != 0.0) return kInf;  // the tail [total_mass, inf) diverges
  KahanSum s;
  for (int i = 0; i < r.blocks(); ++i) s.add(phi(r.values()[i]) * r.mass_of(i));
  return s.value();
}

}  // namespace gmlab
