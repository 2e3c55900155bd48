#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "gmlab/fourier.hpp"
#include "gmlab/step_rearrangement.hpp"

namespace gmlab {

struct MultiplierSpec {
  SymbolField symbol;
  std::string name;
};

// Af = inverse transform of sigma_A(pi) f_hat(pi).
GroupFunction apply_multiplier(const MultiplierSpec& A, const GroupFunction& f);

// sigma_{A*}(pi) = sigma_A(pi)^*.
MultiplierSpec adjoint_symbol(const MultiplierSpec& A);

// sup_{s>0} s * measure{t : mu_t >= s}^{1/p - 1/q}, the closed-set form of
// the spectral multiplier bound; equals the L^{r', inf} weak norm with
// 1/r' = 1/p - 1/q when p != q, and sup mu when p = q = 2.
double hormander_rhs(const StepRearrangement& r, double p, double q);

// sup_{s>0} s * (sum over dual points with op-norm >= s of d^2)^{1/p-1/q}.
double symbol_rhs_compact(const MultiplierSpec& A, double p, double q);

enum class DifferenceMode {
  literal,          // last diagonal entry is the bare mu_{d}(sigma(pi^j))
  difference_last,  // alternative reading: difference in the last entry too
};

// Consecutive singular-value differences along the spectral enumeration,
// left-multiplied by the partial isometry of sigma(pi^j)'s polar
// decomposition. Past the model band sigma(pi^{j+1}) := 0.
MultiplierSpec difference_operator(const MultiplierSpec& A,
                                   DifferenceMode mode = DifferenceMode::literal);

// The diagonal entries of the difference operator before the isometry
// factor; the reported op-norm of each block is max |entry|.
std::vector<Eigen::VectorXd> difference_diagonals(const MultiplierSpec& A,
                                                  DifferenceMode mode = DifferenceMode::literal);

// sup_pi tag^{1/p-1/q} ||sigma||_op + regularity term: with m given, the sup
// form sup_pi tag^{1/p-1/q+m} ||d sigma||_op (requires 1-1/p <= m < 1);
// without m, the sum form sum_pi tag^{1/p-1/q} ||d sigma||_op.
double lizorkin_rhs_compact(const MultiplierSpec& A, double p, double q,
                            std::optional<double> m = std::nullopt,
                            DifferenceMode mode = DifferenceMode::literal);

// sup_t w(t)^{1/p-1/q} mu_t + sum over jumps of w(t_i)^{1/p-1/q} drop(t_i).
// The sup term is exact for monotone w (evaluated at block endpoints).
double lizorkin_rhs_lcg(const StepRearrangement& r, const std::function<double(double)>& w,
                        double p, double q);

enum class OpnormStrategy { random_band, power2, heat_family };

// Lower-bound probe for ||A||_{L^p -> L^q}: max over trials of
// ||Af||_q / ||f||_p. power2 (p = q = 2 only) runs power iteration on A*A
// and converges to sup_t mu_t. Deterministic given seed.
double empirical_opnorm(const MultiplierSpec& A, double p, double q,
                        OpnormStrategy strategy, int trials, std::uint64_t seed);

}  // namespace gmlab
