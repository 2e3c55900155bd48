#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace gmlab {

// Exact non-increasing right-continuous step function t -> mu_t. Stored as
// strictly decreasing positive values v_0 > ... > v_{m-1} together with the
// cumulative masses c_0 < ... < c_{m-1}; mu_t = v_i on [c_{i-1}, c_i) with
// c_{-1} = 0, and mu_t = 0 for t >= c_{m-1}.
class StepRearrangement {
 public:
  StepRearrangement() = default;

  // Pools (value, mass) pairs: sorts descending, merges equal values, drops
  // values <= 0; masses must be positive and everything finite.
  static StepRearrangement from_pool(std::vector<std::pair<double, double>> value_mass);

  const std::vector<double>& values() const { return vals_; }
  const std::vector<double>& cumulative() const { return cum_; }
  bool empty() const { return vals_.empty(); }
  int blocks() const { return static_cast<int>(vals_.size()); }
  double total_mass() const { return cum_.empty() ? 0.0 : cum_.back(); }
  double sup_value() const { return vals_.empty() ? 0.0 : vals_.front(); }
  double mass_of(int i) const { return cum_[i] - (i == 0 ? 0.0 : cum_[i - 1]); }

 private:
  std::vector<double> vals_;
  std::vector<double> cum_;
};

// Right-continuous evaluation of mu_t.
double mu_at(const StepRearrangement& r, double t);

// d_lambda = mass of {mu > lambda}; strict exceedance, matching the open
// spectral interval (lambda, +inf).
double distribution_at(const StepRearrangement& r, double lambda);

// (int_0^inf (t^{1/p} mu_t)^q dt/t)^{1/q}, closed form per block; q = inf
// delegates to weak_norm; p = q gives the L^p norm (int mu^p dt)^{1/p}.
double lorentz_norm(const StepRearrangement& r, double p, double q);

// sup_{t>0} t^{1/rr} mu_t, attained in closures of the blocks.
double weak_norm(const StepRearrangement& r, double rr);

// Returns (sup_t t^alpha mu_t, sup_s s d_s^alpha); the two are equal.
std::pair<double, double> sup_duality_check(const StepRearrangement& r, double alpha);

// tau(phi(|A|)) = int_0^inf phi(mu_t) dt. phi(0) != 0 makes the infinite
// tail diverge; reported as +inf.
double trace_of_function(const StepRearrangement& r, const std::function<double(double)>& phi);

}  // namespace gmlab
