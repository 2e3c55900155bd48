#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gmlab/fourier.hpp"
#include "gmlab/group_model.hpp"
#include "gmlab/step_rearrangement.hpp"

namespace gmlab {

// Asserted growth law tau(E_(0,s)) ~ coeff * s^alpha beyond the truncation.
// An input assertion used only for closed-form bounds, never silently
// extrapolated in counting.
struct TailLaw {
  double alpha = 0.0;
  double coeff = 1.0;
};

// Nonnegative eigenvalues with positive masses, sorted ascending. Masses are
// the Plancherel weights of the diagonal entries (d_pi per listed eigenvalue
// on compact models, lambda-cell weight per Hermite index on the Heisenberg
// model).
class SpectralData {
 public:
  static SpectralData from_pairs(std::string label,
                                 std::vector<std::pair<double, double>> ev_mass,
                                 std::optional<TailLaw> tail = std::nullopt);
  // Diagonal of the Laplacian symbol: per dual point, dim copies of the
  // laplacian eigenvalue, each of mass plancherel_weight.
  static SpectralData laplacian_of(const GroupModel& m);
  // Same with the enumeration tags (the (I - L)-type operator).
  static SpectralData tag_operator_of(const GroupModel& m);
  // Heisenberg sub-Laplacian levels s_{k,lambda} with cell masses.
  static SpectralData heisenberg_of(const GroupModel& m);
  // Direct SU(2) Casimir enumeration l(l+1) with masses (2l+1)^2, dual-only
  // (no quadrature needed); serves the Weyl-law experiments.
  static SpectralData su2_casimir(double l_max, std::optional<TailLaw> tail = std::nullopt);

  const std::vector<double>& eigenvalues() const { return ev_; }
  const std::vector<double>& masses() const { return mass_; }
  const std::string& label() const { return label_; }
  const std::optional<TailLaw>& tail() const { return tail_; }
  double max_eigenvalue() const { return ev_.empty() ? 0.0 : ev_.back(); }
  SpectralData with_tail(TailLaw law) const;

 private:
  std::string label_;
  std::vector<double> ev_;
  std::vector<double> mass_;
  std::optional<TailLaw> tail_;
};

// tau(E_(0,u)): total mass of eigenvalues strictly inside (0, u). Zero modes
// never count.
double spectral_counting(const SpectralData& L, double u);

// Exact Heisenberg sub-Laplacian trace s^{n+1}/(n+1) * prod_j sum_k (2k+1)^{-(n+1)}.
double heisenberg_trace_exact(int n, double s);

// Diagonal-model Rockland count: integral over the lambda grid of
// #{m in {1..K}^n : |lambda|^j prod m_k^{2j} <= s}.
double rockland_count(int n, int j, const std::vector<std::pair<double, double>>& lambda_grid,
                      int K, double s);

// Diagonal field phi(eigenvalue) with the same masses.
std::vector<std::pair<double, double>> apply_spectral_function(
    const SpectralData& L, const std::function<double(double)>& phi);

StepRearrangement rearrangement_of_spectral(const SpectralData& L,
                                            const std::function<double(double)>& phi);

// Diagonal SymbolField phi(Laplacian) on a model (heat semigroup, Bessel
// potentials, band cutoffs).
SymbolField spectral_symbol(const GroupModel& m, const std::function<double(double)>& phi);

struct SpectralFunction {
  std::function<double(double)> f;
  bool monotone_decreasing = true;
};

enum class WeakNormRoute { counting, rearrangement };

// ||phi(|L|)||_{L^{rr,inf}} = sup_u tau(E_(0,u))^{1/rr} phi(u) for monotone
// decreasing continuous phi; falls back to the rearrangement route (the
// distribution-function form) for non-monotone phi.
double spectral_weak_norm(const SpectralData& L, const SpectralFunction& phi, double rr,
                          WeakNormRoute* route_used = nullptr);

// coeff^{1/r} (alpha/(t r))^{alpha/r} e^{-alpha/r}, 1/r = 1/p - 1/q; the
// closed-form heat bound. p = q degenerates to 1.
double heat_decay_bound(const TailLaw& law, double t, double p, double q);

// sup_u (1+u)^{-gamma} tau(E_(0,u))^{1/r}; +inf when the tail diverges
// (gamma < alpha/r).
double embedding_constant(const SpectralData& L, double gamma, double p, double q);

// Grid measure of {|a(xi)| <= s} for a radial symbol on R^n.
double homogeneous_symbol_trace(const std::function<double(double)>& a_radial, int n,
                                const std::vector<double>& radial_edges, double s);

}  // namespace gmlab
