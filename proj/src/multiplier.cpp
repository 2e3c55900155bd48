#include "gmlab/multiplier.hpp"

#include <algorithm>
#include <cmath>

#include "gmlab/errors.hpp"
#include "gmlab/rng.hpp"

namespace gmlab {

namespace {

void check_pq_hormander(double p, double q) {
  if (!(p > 1.0 && p <= 2.0 && q >= 2.0 && std::isfinite(q)))
    throw invalid_parameter("need 1 < p <= 2 <= q < inf");
}

std::vector<double> singular_values(const Eigen::MatrixXcd& b, bool diagonal_column) {
  std::vector<double> sv;
  if (diagonal_column) {
    sv.reserve(b.rows());
    for (int r = 0; r < b.rows(); ++r) sv.push_back(std::abs(b(r, 0)));
    std::sort(sv.rbegin(), sv.rend());
    return sv;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(b);
  sv.assign(svd.singularValues().data(),
            svd.singularValues().data() + svd.singularValues().size());
  return sv;  // Eigen returns them descending
}

}  // namespace

GroupFunction apply_multiplier(const MultiplierSpec& A, const GroupFunction& f) {
  const GroupModel& m = *f.model;
  if (A.symbol.model != &m) throw invalid_input("apply_multiplier: model mismatch");
  SymbolField fhat = forward_transform(f);
  for (size_t i = 0; i < fhat.blocks.size(); ++i) {
    if (A.symbol.blocks[i].rows() != fhat.blocks[i].rows())
      throw invalid_input("apply_multiplier: block shape mismatch");
    fhat.blocks[i] = A.symbol.blocks[i] * fhat.blocks[i];
  }
  return inverse_transform(fhat);
}

MultiplierSpec adjoint_symbol(const MultiplierSpec& A) {
  MultiplierSpec out;
  out.symbol.model = A.symbol.model;
  out.symbol.blocks.reserve(A.symbol.blocks.size());
  const bool dual_only = !A.symbol.model->has_rep_eval();
  for (const auto& b : A.symbol.blocks) {
    if (dual_only)
      out.symbol.blocks.push_back(b.conjugate());
    else
      out.symbol.blocks.push_back(b.adjoint());
  }
  out.name = A.name + "*";
  return out;
}

double hormander_rhs(const StepRearrangement& r, double p, double q) {
  if (!(p > 1.0 && p <= 2.0 && q >= 2.0 && std::isfinite(q)))
    throw invalid_parameter("hormander_rhs: need 1 < p <= 2 <= q < inf");
  const double expo = 1.0 / p - 1.0 / q;
  // measure{mu >= s} is constant on (v_{i+1}, v_i], so the sup over that
  // interval is attained at s = v_i with measure c_i.
  double best = 0.0;
  for (int i = 0; i < r.blocks(); ++i)
    best = std::max(best, r.values()[i] * std::pow(r.cumulative()[i], expo));
  return best;
}

double symbol_rhs_compact(const MultiplierSpec& A, double p, double q) {
  const GroupModel& m = *A.symbol.model;
  if (!m.has_rep_eval()) throw unsupported_model("symbol_rhs_compact: compact models only");
  check_pq_hormander(p, q);
  const double expo = 1.0 / p - 1.0 / q;
  std::vector<std::pair<double, double>> norm_d2;  // (op norm, d^2)
  norm_d2.reserve(m.dual.size());
  for (const DualPoint& pt : m.dual) {
    const double opn = A.symbol.blocks[pt.index].operatorNorm();
    if (opn > 0.0) norm_d2.emplace_back(opn, double(pt.dim) * pt.dim);
  }
  std::sort(norm_d2.rbegin(), norm_d2.rend());
  double best = 0.0, cum = 0.0;
  for (size_t i = 0; i < norm_d2.size(); ++i) {
    cum += norm_d2[i].second;
    if (i + 1 < norm_d2.size() && norm_d2[i + 1].first == norm_d2[i].first) continue;
    best = std::max(best, norm_d2[i].first * std::pow(cum, expo));
  }
  return best;
}

std::vector<Eigen::VectorXd> difference_diagonals(const MultiplierSpec& A,
                                                  DifferenceMode mode) {
  const GroupModel& m = *A.symbol.model;
  if (!m.has_rep_eval())
    throw unsupported_model("difference_operator: needs a compact spectral enumeration");
  const int n = m.dual_size();
  std::vector<std::vector<double>> sv(n);
  for (int j = 0; j < n; ++j) sv[j] = singular_values(A.symbol.blocks[j], false);

  std::vector<Eigen::VectorXd> out(n);
  for (int j = 0; j < n; ++j) {
    const int d = m.dual[j].dim;
    Eigen::VectorXd diag(d);
    const std::vector<double>* next = (j + 1 < n) ? &sv[j + 1] : nullptr;
    for (int k = 0; k < d; ++k) {
      const double here = sv[j][k];
      const double there =
          (next && k < static_cast<int>(next->size())) ? (*next)[k] : 0.0;
      if (k == d - 1 && mode == DifferenceMode::literal)
        diag[k] = here;  // bare last entry, as the display reads
      else
        diag[k] = here - there;
    }
    out[j] = std::move(diag);
  }
  return out;
}

MultiplierSpec difference_operator(const MultiplierSpec& A, DifferenceMode mode) {
  const GroupModel& m = *A.symbol.model;
  std::vector<Eigen::VectorXd> diags = difference_diagonals(A, mode);
  MultiplierSpec out;
  out.symbol = zero_symbol(m);
  out.name = "d(" + A.name + ")";
  for (int j = 0; j < m.dual_size(); ++j) {
    const Eigen::MatrixXcd& b = A.symbol.blocks[j];
    Eigen::MatrixXcd U;
    if (b.isZero(0.0)) {
      U = Eigen::MatrixXcd::Identity(b.rows(), b.cols());
    } else {
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
      U = svd.matrixU() * svd.matrixV().adjoint();
    }
    out.symbol.blocks[j] = U * diags[j].cast<std::complex<double>>().asDiagonal();
  }
  return out;
}

double lizorkin_rhs_compact(const MultiplierSpec& A, double p, double q,
                            std::optional<double> m_param, DifferenceMode mode) {
  const GroupModel& m = *A.symbol.model;
  if (!m.has_rep_eval()) throw unsupported_model("lizorkin_rhs_compact: compact models only");
  const double expo = 1.0 / p - 1.0 / q;
  if (m_param && !(*m_param >= 1.0 - 1.0 / p && *m_param < 1.0))
    throw invalid_parameter("lizorkin_rhs_compact: need 1 - 1/p <= m < 1");

  double first = 0.0;
  for (const DualPoint& pt : m.dual)
    first = std::max(first,
                     std::pow(pt.spectral_tag, expo) * A.symbol.blocks[pt.index].operatorNorm());

  std::vector<Eigen::VectorXd> diags = difference_diagonals(A, mode);
  double second = 0.0;
  if (m_param) {
    for (const DualPoint& pt : m.dual) {
      const double dn = diags[pt.index].cwiseAbs().maxCoeff();
      second = std::max(second, std::pow(pt.spectral_tag, expo + *m_param) * dn);
    }
  } else {
    for (const DualPoint& pt : m.dual) {
      const double dn = diags[pt.index].cwiseAbs().maxCoeff();
      second += std::pow(pt.spectral_tag, expo) * dn;
    }
  }
  return first + second;
}

double lizorkin_rhs_lcg(const StepRearrangement& r, const std::function<double(double)>& w,
                        double p, double q) {
  const double expo = 1.0 / p - 1.0 / q;
  double sup_term = 0.0;
  double jump_sum = 0.0;
  double prev_c = 0.0;
  for (int i = 0; i < r.blocks(); ++i) {
    const double v = r.values()[i];
    const double c = r.cumulative()[i];
    sup_term = std::max(sup_term,
                        v * std::pow(std::max(w(prev_c), w(c)), expo));
    const double vnext = (i + 1 < r.blocks()) ? r.values()[i + 1] : 0.0;
    jump_sum += std::pow(w(c), expo) * (v - vnext);
    prev_c = c;
  }
  return sup_term + jump_sum;
}

double empirical_opnorm(const MultiplierSpec& A, double p, double q,
                        OpnormStrategy strategy, int trials, std::uint64_t seed) {
  const GroupModel& m = *A.symbol.model;
  if (!m.has_quadrature()) throw unsupported_model("empirical_opnorm: compact models only");
  if (trials < 1) throw invalid_parameter("empirical_opnorm: trials must be >= 1");

  if (strategy == OpnormStrategy::power2) {
    if (p != 2.0 || q != 2.0)
      throw invalid_parameter("empirical_opnorm: power2 needs p = q = 2");
    // Power iteration on A*A over one column per dual block.
    std::mt19937_64 rng = trial_rng(seed, 0);
    std::vector<Eigen::VectorXcd> v(m.dual.size());
    double nrm2 = 0.0;
    for (int i = 0; i < m.dual_size(); ++i) {
      v[i] = Eigen::VectorXcd(m.dual[i].dim);
      for (int r = 0; r < v[i].size(); ++r) v[i][r] = standard_complex_gaussian(rng);
      nrm2 += v[i].squaredNorm();
    }
    const double inv = 1.0 / std::sqrt(nrm2);
    for (auto& x : v) x *= inv;

    double est = 0.0, prev = -1.0;
    int stable = 0;
    for (int it = 0; it < 1'000'000; ++it) {
      double ray = 0.0, wn2 = 0.0;
      std::vector<Eigen::VectorXcd> w(v.size());
      for (size_t i = 0; i < v.size(); ++i) {
        const Eigen::MatrixXcd& s = A.symbol.blocks[i];
        w[i] = s.adjoint() * (s * v[i]);
        ray += (v[i].adjoint() * w[i])(0, 0).real();
        wn2 += w[i].squaredNorm();
      }
      est = std::sqrt(std::max(ray, 0.0));
      if (wn2 == 0.0) return 0.0;  // A = 0
      const double winv = 1.0 / std::sqrt(wn2);
      for (auto& x : w) x *= winv;
      v = std::move(w);
      if (std::abs(est - prev) <= 1e-13 * std::max(1.0, est)) {
        if (++stable >= 4) break;
      } else {
        stable = 0;
      }
      prev = est;
    }
    return est;
  }

  double best = 0.0;
  if (strategy == OpnormStrategy::random_band) {
    for (int t = 0; t < trials; ++t) {
      std::mt19937_64 rng = trial_rng(seed, t);
      GroupFunction f = random_band_function(m, rng);
      const double den = lp_norm(f, p);
      if (den == 0.0) continue;
      best = std::max(best, lp_norm(apply_multiplier(A, f), q) / den);
    }
    return best;
  }

  // heat_family: heat kernels over a time ladder, plus polyhedral Dirichlet
  // kernels where the model supports them.
  for (int t = 0; t < trials; ++t) {
    GroupFunction f;
    if (t % 2 == 0 || (m.kind != ModelKind::su2 && m.kind != ModelKind::torus)) {
      const double tau = 1e-3 * std::pow(10.0, 4.0 * (t / 2) / std::max(1, trials - 1));
      SymbolField heat = diagonal_symbol(
          m, [&](const DualPoint& pt) { return std::exp(-tau * pt.laplacian); });
      f = inverse_transform(heat);
    } else {
      const int N = 1 + (t / 2) % 8;
      SymbolField dir = zero_symbol(m);
      for (int idx : enumerate_polyhedron(m, N))
        dir.blocks[idx] = Eigen::MatrixXcd::Identity(m.dual[idx].dim, m.dual[idx].dim);
      f = inverse_transform(dir);
    }
    const double den = lp_norm(f, p);
    if (den == 0.0) continue;
    best = std::max(best, lp_norm(apply_multiplier(A, f), q) / den);
  }
  return best;
}

}  // namespace gmlab
