#include "gmlab/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gmlab/errors.hpp"
#include "gmlab/rng.hpp"
#include "gmlab/summation.hpp"

namespace gmlab {

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

void require_transformable(const GroupModel& m, const char* who) {
  if (!m.has_quadrature() || !m.has_rep_eval())
    throw unsupported_model(std::string(who) + ": model is dual-only");
}

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

// su2 transforms share per-node phase tables e^{-i m angle} over the
// half-integer range m = -l_max..l_max; tab is indexed by 2m + twolmax.
struct PhaseTable {
  std::vector<cd> tab;   // e^{-i (t/2) angle}
  std::vector<cd> conj;  // e^{+i (t/2) angle}
  int shift = 0;
  void build(double angle, int twolmax) {
    shift = twolmax;
    tab.resize(2 * twolmax + 1);
    conj.resize(2 * twolmax + 1);
    const cd step = std::polar(1.0, -0.5 * angle);
    cd cur(1.0, 0.0);
    for (int t = 0; t <= twolmax; ++t) {
      tab[shift + t] = cur;
      tab[shift - t] = std::conj(cur);
      cur *= step;
    }
    for (int i = 0; i < 2 * twolmax + 1; ++i) conj[i] = std::conj(tab[i]);
  }
  cd at(int tm) const { return tab[shift + tm]; }
  cd at_conj(int tm) const { return conj[shift + tm]; }
};

}  // namespace

SymbolField zero_symbol(const GroupModel& m) {
  SymbolField s;
  s.model = &m;
  s.blocks.resize(m.dual.size());
  for (const DualPoint& p : m.dual) {
    if (m.has_rep_eval())
      s.blocks[p.index] = Eigen::MatrixXcd::Zero(p.dim, p.dim);
    else
      s.blocks[p.index] = Eigen::MatrixXcd::Zero(p.dim, 1);
  }
  return s;
}

SymbolField identity_symbol(const GroupModel& m) {
  SymbolField s = zero_symbol(m);
  for (const DualPoint& p : m.dual) {
    if (m.has_rep_eval())
      s.blocks[p.index] = Eigen::MatrixXcd::Identity(p.dim, p.dim);
    else
      s.blocks[p.index] = Eigen::MatrixXcd::Ones(p.dim, 1);
  }
  return s;
}

SymbolField diagonal_symbol(const GroupModel& m,
                            const std::function<cd(const DualPoint&)>& f) {
  SymbolField s = zero_symbol(m);
  for (const DualPoint& p : m.dual) {
    const cd v = f(p);
    if (m.has_rep_eval())
      s.blocks[p.index].diagonal().setConstant(v);
    else
      s.blocks[p.index].setConstant(v);
  }
  return s;
}

SymbolField random_symbol(const GroupModel& m, std::mt19937_64& rng, bool diagonal) {
  SymbolField s = zero_symbol(m);
  for (auto& b : s.blocks) {
    if (diagonal && b.cols() > 1) {
      for (int i = 0; i < b.rows(); ++i) b(i, i) = standard_complex_gaussian(rng);
    } else {
      for (int c = 0; c < b.cols(); ++c)
        for (int r = 0; r < b.rows(); ++r) b(r, c) = standard_complex_gaussian(rng);
    }
  }
  return s;
}

GroupFunction random_band_function(const GroupModel& m, std::mt19937_64& rng) {
  return inverse_transform(random_symbol(m, rng, false));
}

SymbolField forward_transform(const GroupFunction& f) {
  const GroupModel& m = *f.model;
  require_transformable(m, "forward_transform");
  if (f.values.size() != m.node_count())
    throw invalid_input("forward_transform: sample count mismatch");
  SymbolField out = zero_symbol(m);

  if (m.kind == ModelKind::cyclic && is_pow2(m.cyclic_N)) {
    const int N = m.cyclic_N;
    std::vector<cd> a(N);
    for (int j = 0; j < N; ++j) a[j] = f.values[j];
    fft_pow2(a, -1);
    for (int k = 0; k < N; ++k) out.blocks[m.cyclic_dual_of_k[k]](0, 0) = a[k] / double(N);
    return out;
  }

  if (m.kind == ModelKind::su2) {
    // Separable evaluation: fold the gamma sum, then the alpha sum, then the
    // beta quadrature against the cached little-d matrices.
    // (pi(x)^*)_{cr} = e^{+i m' alpha} d_{rc}(beta) e^{+i m gamma}.
    const int L = m.su2_twol.back();
    const int W = 2 * L + 1;
    const int na = m.su2_na, nb = m.su2_nb, ng = m.su2_ng;
    std::vector<PhaseTable> pa(na), pg(ng);
    for (int ia = 0; ia < na; ++ia) pa[ia].build(4.0 * kPi * ia / na, L);
    for (int ig = 0; ig < ng; ++ig) pg[ig].build(4.0 * kPi * ig / ng, L);

    // G[(ia*nb + ib)*W + tm] = sum_ig f(ia, ib, ig) e^{+i (tm-L)/2 gamma_ig}
    std::vector<cd> G(static_cast<size_t>(na) * nb * W, cd(0, 0));
    for (int ia = 0; ia < na; ++ia)
      for (int ib = 0; ib < nb; ++ib) {
        cd* g = &G[(static_cast<size_t>(ia) * nb + ib) * W];
        for (int ig = 0; ig < ng; ++ig) {
          const cd fx = f.values[(static_cast<size_t>(ia) * nb + ib) * ng + ig];
          const cd* ph = pg[ig].conj.data();
          for (int t = 0; t < W; ++t) g[t] += fx * ph[t];
        }
      }
    // H[(ib*W + tmp)*W + tm] = sum_ia e^{+i (tmp-L)/2 alpha_ia} G(ia, ib, tm)
    std::vector<cd> H(static_cast<size_t>(nb) * W * W, cd(0, 0));
    for (int ib = 0; ib < nb; ++ib)
      for (int ia = 0; ia < na; ++ia) {
        const cd* g = &G[(static_cast<size_t>(ia) * nb + ib) * W];
        const cd* ph = pa[ia].conj.data();
        for (int tp = 0; tp < W; ++tp) {
          cd* h = &H[(static_cast<size_t>(ib) * W + tp) * W];
          const cd a = ph[tp];
          for (int t = 0; t < W; ++t) h[t] += a * g[t];
        }
      }
    for (int i = 0; i < m.dual_size(); ++i) {
      const int twol = m.su2_twol[i];
      const int d = twol + 1;
      Eigen::MatrixXcd& blk = out.blocks[i];
      for (int ib = 0; ib < nb; ++ib) {
        const double w = m.su2_beta_w[ib] / (2.0 * na * ng);
        const Eigen::MatrixXd& dm = m.su2_dmat[ib][i];
        for (int r = 0; r < d; ++r) {
          const int tp = L + twol - 2 * r;
          const cd* h = &H[(static_cast<size_t>(ib) * W + tp) * W];
          for (int c = 0; c < d; ++c)
            blk(c, r) += w * h[L + twol - 2 * c] * dm(r, c);
        }
      }
    }
    return out;
  }

  for (int i = 0; i < m.dual_size(); ++i) {
    Eigen::MatrixXcd& blk = out.blocks[i];
    for (int x = 0; x < m.node_count(); ++x)
      blk += m.quadrature[x].weight * f.values[x] * m.rep(i, x).adjoint();
  }
  return out;
}

GroupFunction inverse_transform(const SymbolField& sigma) {
  const GroupModel& m = *sigma.model;
  require_transformable(m, "inverse_transform");
  GroupFunction f;
  f.model = &m;
  f.values = Eigen::VectorXcd::Zero(m.node_count());

  if (m.kind == ModelKind::cyclic && is_pow2(m.cyclic_N)) {
    const int N = m.cyclic_N;
    std::vector<cd> a(N);
    for (int i = 0; i < N; ++i) a[m.cyclic_k[i]] = sigma.blocks[i](0, 0);
    fft_pow2(a, +1);
    for (int j = 0; j < N; ++j) f.values[j] = a[j];
    return f;
  }

  if (m.kind == ModelKind::su2) {
    // Separable synthesis, the reverse of the analysis stages:
    // f(x) = sum_l d_l sum_{r,c} sigma_{cr} e^{-i m' alpha} d_{rc}(beta) e^{-i m gamma}.
    const int L = m.su2_twol.back();
    const int W = 2 * L + 1;
    const int na = m.su2_na, nb = m.su2_nb, ng = m.su2_ng;
    std::vector<PhaseTable> pa(na), pg(ng);
    for (int ia = 0; ia < na; ++ia) pa[ia].build(4.0 * kPi * ia / na, L);
    for (int ig = 0; ig < ng; ++ig) pg[ig].build(4.0 * kPi * ig / ng, L);

    // U[(ib*W + tmp)*W + tm] = sum_l d_l sum_{r,c} sigma_{cr} d_{rc}(beta_ib)
    std::vector<cd> U(static_cast<size_t>(nb) * W * W, cd(0, 0));
    for (int ib = 0; ib < nb; ++ib) {
      for (int i = 0; i < m.dual_size(); ++i) {
        const int twol = m.su2_twol[i];
        const int d = twol + 1;
        const Eigen::MatrixXd& dm = m.su2_dmat[ib][i];
        const Eigen::MatrixXcd& blk = sigma.blocks[i];
        for (int r = 0; r < d; ++r) {
          const int tp = L + twol - 2 * r;
          cd* u = &U[(static_cast<size_t>(ib) * W + tp) * W];
          for (int c = 0; c < d; ++c)
            u[L + twol - 2 * c] += double(d) * blk(c, r) * dm(r, c);
        }
      }
    }
    // V[(ia*nb + ib)*W + tm] = sum_tmp e^{-i (tmp-L)/2 alpha_ia} U(ib, tmp, tm)
    std::vector<cd> V(static_cast<size_t>(na) * nb * W, cd(0, 0));
    for (int ia = 0; ia < na; ++ia) {
      const cd* ph = pa[ia].tab.data();
      for (int ib = 0; ib < nb; ++ib) {
        cd* v = &V[(static_cast<size_t>(ia) * nb + ib) * W];
        for (int tp = 0; tp < W; ++tp) {
          const cd a = ph[tp];
          const cd* u = &U[(static_cast<size_t>(ib) * W + tp) * W];
          for (int t = 0; t < W; ++t) v[t] += a * u[t];
        }
      }
    }
    for (int ia = 0; ia < na; ++ia)
      for (int ib = 0; ib < nb; ++ib) {
        const cd* v = &V[(static_cast<size_t>(ia) * nb + ib) * W];
        for (int ig = 0; ig < ng; ++ig) {
          const cd* ph = pg[ig].tab.data();
          cd acc(0.0, 0.0);
          for (int t = 0; t < W; ++t) acc += v[t] * ph[t];
          f.values[(static_cast<size_t>(ia) * nb + ib) * ng + ig] = acc;
        }
      }
    return f;
  }

  for (int x = 0; x < m.node_count(); ++x) {
    cd acc(0.0, 0.0);
    for (int i = 0; i < m.dual_size(); ++i)
      acc += double(m.dual[i].dim) * (sigma.blocks[i] * m.rep(i, x)).trace();
    f.values[x] = acc;
  }
  return f;
}

double lp_norm(const GroupFunction& f, double p) {
  if (!(p >= 1.0)) throw invalid_parameter("lp_norm: p must be >= 1");
  const GroupModel& m = *f.model;
  if (std::isinf(p)) {
    double best = 0.0;
    for (int x = 0; x < f.values.size(); ++x) best = std::max(best, std::abs(f.values[x]));
    return best;
  }
  KahanSum s;
  for (int x = 0; x < f.values.size(); ++x)
    s.add(m.quadrature[x].weight * std::pow(std::abs(f.values[x]), p));
  return std::pow(s.value(), 1.0 / p);
}

double symbol_l2_mass(const SymbolField& s) {
  KahanSum acc;
  for (size_t i = 0; i < s.blocks.size(); ++i)
    acc.add(s.model->dual[i].plancherel_weight * s.blocks[i].squaredNorm());
  return acc.value();
}

double plancherel_defect(const GroupFunction& f) {
  const GroupModel& m = *f.model;
  require_transformable(m, "plancherel_defect");
  const double l2 = lp_norm(f, 2.0);
  const double lhs = l2 * l2;
  const double rhs = symbol_l2_mass(forward_transform(f));
  return std::abs(lhs - rhs) / std::max(lhs, 1e-300);
}

GroupFunction partial_sum(const GroupFunction& f, const std::vector<int>& Q) {
  const GroupModel& m = *f.model;
  require_transformable(m, "partial_sum");
  SymbolField sigma = forward_transform(f);
  SymbolField cut = zero_symbol(m);
  std::vector<char> keep(m.dual.size(), 0);
  for (int idx : Q) {
    if (idx < 0 || idx >= m.dual_size())
      throw invalid_parameter("partial_sum: dual point foreign to the model");
    keep[idx] = 1;
  }
  for (int i = 0; i < m.dual_size(); ++i)
    if (keep[i]) cut.blocks[i] = sigma.blocks[i];
  return inverse_transform(cut);
}

StepRearrangement rearrangement_of_symbol(const SymbolField& sigma) {
  const GroupModel& m = *sigma.model;
  std::vector<std::pair<double, double>> pool;
  for (size_t i = 0; i < sigma.blocks.size(); ++i) {
    const Eigen::MatrixXcd& b = sigma.blocks[i];
    if (!b.allFinite()) throw invalid_input("rearrangement_of_symbol: non-finite entries");
    const double w = m.dual[i].plancherel_weight;
    if (b.cols() == 1 && !m.has_rep_eval()) {
      for (int r = 0; r < b.rows(); ++r) pool.emplace_back(std::abs(b(r, 0)), w);
    } else if (b.rows() == 1 && b.cols() == 1) {
      pool.emplace_back(std::abs(b(0, 0)), w);
    } else {
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(b);
      for (int k = 0; k < svd.singularValues().size(); ++k)
        pool.emplace_back(svd.singularValues()[k], w);
    }
  }
  return StepRearrangement::from_pool(std::move(pool));
}

StepRearrangement classical_rearrangement(const SymbolField& phi) {
  if (phi.model->kind != ModelKind::euclidean_radial)
    throw unsupported_model("classical_rearrangement: needs a euclidean_radial model");
  return rearrangement_of_symbol(phi);
}

void fft_pow2(std::vector<cd>& a, int sign) {
  const int n = static_cast<int>(a.size());
  if (n <= 1) return;
  for (int i = 1, j = 0; i < n; ++i) {
    int bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (int len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * kPi / len;
    const cd wl = std::polar(1.0, ang);
    for (int i = 0; i < n; i += len) {
      cd w(1.0, 0.0);
      for (int k = 0; k < len / 2; ++k) {
        const cd u = a[i + k];
        const cd v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

}  // namespace gmlab
