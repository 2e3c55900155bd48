#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gmlab/fourier.hpp"
#include "gmlab/multiplier.hpp"

namespace gmlab {

struct VerifyParams {
  std::string model;
  double p = 0.0;
  double q = 0.0;
  double b_or_gamma = 0.0;
  int trials = 1;
  std::uint64_t seed = 0;
  std::string note;
};

// One inequality check: both sides, their ratio, and the pass verdict under
// the declared constant policy. Reproducible given (seed, params, model).
struct VerificationReport {
  std::string inequality_id;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool pass = false;
  VerifyParams params;
};

// Positive weight on (0, inf): either 1/t or a compactly supported step
// weight (value vals[i] on [breaks[i], breaks[i+1]), zero past the end).
class WeightFn {
 public:
  static WeightFn reciprocal();
  // phi = 2^{-j} on [2^{j-1}, 2^j) for j = 1..levels, phi = 1 on [0, 1).
  static WeightFn dyadic(int levels);
  static WeightFn step(std::vector<double> edges, std::vector<double> values);

  double operator()(double t) const;
  // M_phi = sup_s s * |{t : phi(t) >= s}|; +inf when a positive level has
  // infinite measure.
  double weak_integrability() const;
  bool is_reciprocal() const { return reciprocal_; }
  const std::vector<double>& edges() const { return edges_; }
  const std::vector<double>& values() const { return vals_; }
  std::string id() const;

 private:
  bool reciprocal_ = false;
  std::vector<double> edges_;  // size k+1
  std::vector<double> vals_;   // size k
};

// Hausdorff-Young-Paley: lhs = (int (mu_t(R_f) phi(t)^{1/b-1/p'})^b dt)^{1/b},
// rhs = M_phi^{1/b-1/p'} ||f||_p. Reduces to Hausdorff-Young at b = p'
// (asserted with constant 1 + 1e-9) and to Paley at b = p (constant-stability
// policy; a single run only records the ratio).
VerificationReport verify_hyp(const GroupFunction& f, const WeightFn& phi, double p, double b);

// Nikolskii: ||f||_q <= tau(P_supp)^{1/p-1/q} ||f||_p with
// tau(P) = sum d_pi rank(f_hat(pi)); constant 1 + 1e-9. q may be inf
// (sup over quadrature nodes, a one-sided probe).
VerificationReport verify_nikolskii(const GroupFunction& f, double p, double q);

// tau(P_supp) of a symbol field: sum over blocks of d_pi * rank.
double support_projection_trace(const SymbolField& sigma);

struct HormanderResult {
  VerificationReport report;
  double symbol_rhs = 0.0;  // compact-symbol form, dominates report.rhs
};

// lhs: empirical opnorm probe (power iteration at p = q = 2, asserted equal
// to sup mu within 1e-8; random trials otherwise, constant-stability policy).
// rhs: hormander_rhs of the symbol rearrangement.
HormanderResult verify_hormander(const MultiplierSpec& A, double p, double q, int trials,
                                 std::uint64_t seed);

// ||A||_{L^beta -> L^inf} <= ||A||_{L^beta(VN)}; constant 1 + 1e-9.
VerificationReport verify_beta_infty(const MultiplierSpec& A, double beta, int trials,
                                     std::uint64_t seed);

// Empirical probe against the compact-group Lizorkin functional
// (sup + sup form when m is given, sup + sum form otherwise). The bound
// carries an unnamed constant, so a single run only records the ratio.
VerificationReport verify_lizorkin_cg(const MultiplierSpec& A, double p, double q,
                                      std::optional<double> m, int trials,
                                      std::uint64_t seed);

// Spectral-side Lizorkin functional with w(t) = t, probed on band-limited
// trial functions (every trial has finite support-projection trace, which is
// what the bound is stated for).
VerificationReport verify_lizorkin_lcg(const MultiplierSpec& A, double p, double q,
                                       int trials, std::uint64_t seed);

// Duality probe |A|_{p->q} vs |A*|_{q'->p'}: both sides estimated from
// random trials. Reported, never asserted; the exact identity holds for the
// true norms, the probes are lower bounds.
std::pair<double, double> adjoint_duality_probe(const MultiplierSpec& A, double p, double q,
                                                int trials, std::uint64_t seed);

}  // namespace gmlab
