#pragma once

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <vector>

#include "gmlab/group_model.hpp"
#include "gmlab/step_rearrangement.hpp"

namespace gmlab {

// Complex sample per quadrature node. The model must outlive the function.
struct GroupFunction {
  const GroupModel* model = nullptr;
  Eigen::VectorXcd values;
};

// Per dual point, a d_pi x d_pi matrix on compact models; a d x 1 column of
// diagonal entries on the dual-only models (heisenberg_spectral,
// euclidean_radial).
struct SymbolField {
  const GroupModel* model = nullptr;
  std::vector<Eigen::MatrixXcd> blocks;
};

SymbolField zero_symbol(const GroupModel& m);
SymbolField identity_symbol(const GroupModel& m);
// Diagonal symbol from a scalar function of the dual point.
SymbolField diagonal_symbol(const GroupModel& m,
                            const std::function<std::complex<double>(const DualPoint&)>& f);
SymbolField random_symbol(const GroupModel& m, std::mt19937_64& rng, bool diagonal = false);
GroupFunction random_band_function(const GroupModel& m, std::mt19937_64& rng);

// f_hat(pi) = sum_x w_x f(x) pi(x)^*; exact for band-limited f.
SymbolField forward_transform(const GroupFunction& f);

// f(x) = sum_pi d_pi Tr(sigma(pi) pi(x)).
GroupFunction inverse_transform(const SymbolField& sigma);

double lp_norm(const GroupFunction& f, double p);

// |  ||f||_2^2 - sum_pi d_pi ||f_hat(pi)||_HS^2 |  / max(||f||_2^2, eps)
double plancherel_defect(const GroupFunction& f);

// S_Q f for Q a list of dual indices.
GroupFunction partial_sum(const GroupFunction& f, const std::vector<int>& Q);

// sum_pi d_pi ||sigma(pi)||_HS^2 (the Plancherel-side L^2 mass).
double symbol_l2_mass(const SymbolField& s);

// Singular values of every block pooled with their Plancherel weights.
StepRearrangement rearrangement_of_symbol(const SymbolField& sigma);

// mu_t(M_phi) = phi^*(t) on a euclidean_radial model, shell-volume masses.
StepRearrangement classical_rearrangement(const SymbolField& phi);

// In-place power-of-two FFT, unnormalized; sign = -1 forward, +1 inverse.
void fft_pow2(std::vector<std::complex<double>>& a, int sign);

}  // namespace gmlab
