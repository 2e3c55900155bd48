#include "gmlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gmlab/errors.hpp"
#include "gmlab/fourier.hpp"
#include "gmlab/summation.hpp"

namespace gmlab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double odd_zeta_sum(int m) {
  // sum_{k>=0} (2k+1)^{-m} = (1 - 2^{-m}) zeta(m)
  return (1.0 - std::pow(2.0, -m)) * std::riemann_zeta(double(m));
}
}  // namespace

SpectralData SpectralData::from_pairs(std::string label,
                                      std::vector<std::pair<double, double>> ev_mass,
                                      std::optional<TailLaw> tail) {
  for (const auto& [e, m] : ev_mass) {
    if (!std::isfinite(e) || e < 0.0) throw invalid_input("spectral data: bad eigenvalue");
    if (!(m > 0.0)) throw invalid_input("spectral data: masses must be positive");
  }
  std::stable_sort(ev_mass.begin(), ev_mass.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  SpectralData d;
  d.label_ = std::move(label);
  d.tail_ = tail;
  d.ev_.reserve(ev_mass.size());
  d.mass_.reserve(ev_mass.size());
  for (const auto& [e, m] : ev_mass) {
    if (!d.ev_.empty() && d.ev_.back() == e) {
      d.mass_.back() += m;
    } else {
      d.ev_.push_back(e);
      d.mass_.push_back(m);
    }
  }
  return d;
}

SpectralData SpectralData::with_tail(TailLaw law) const {
  SpectralData d = *this;
  d.tail_ = law;
  return d;
}

SpectralData SpectralData::laplacian_of(const GroupModel& m) {
  std::vector<std::pair<double, double>> pairs;
  for (const DualPoint& p : m.dual)
    pairs.emplace_back(p.laplacian, double(p.dim) * p.plancherel_weight);
  return from_pairs("laplacian_" + m.describe(), std::move(pairs));
}

SpectralData SpectralData::tag_operator_of(const GroupModel& m) {
  std::vector<std::pair<double, double>> pairs;
  for (const DualPoint& p : m.dual)
    pairs.emplace_back(p.spectral_tag, double(p.dim) * p.plancherel_weight);
  return from_pairs("tag_" + m.describe(), std::move(pairs));
}

SpectralData SpectralData::heisenberg_of(const GroupModel& m) {
  if (m.kind != ModelKind::heisenberg_spectral)
    throw unsupported_model("heisenberg_of: wrong model kind");
  std::vector<std::pair<double, double>> pairs;
  for (size_t c = 0; c < m.heis.size(); ++c)
    for (double s : m.heis[c].svals)
      pairs.emplace_back(s, m.dual[c].plancherel_weight);
  return from_pairs("heis_" + m.describe(), std::move(pairs),
                    TailLaw{0.5 * m.homogeneous_dim,
                            heisenberg_trace_exact(m.heis_n, 1.0)});
}

SpectralData SpectralData::su2_casimir(double l_max, std::optional<TailLaw> tail) {
  const int twolmax = static_cast<int>(std::lround(2.0 * l_max));
  if (twolmax < 0) throw invalid_parameter("su2_casimir: l_max must be >= 0");
  std::vector<std::pair<double, double>> pairs;
  for (int twol = 0; twol <= twolmax; ++twol) {
    const double l = 0.5 * twol;
    pairs.emplace_back(l * (l + 1.0), double(twol + 1) * (twol + 1));
  }
  return from_pairs("su2_casimir", std::move(pairs), tail);
}

double spectral_counting(const SpectralData& L, double u) {
  if (!(u > 0.0)) throw invalid_parameter("spectral_counting: u must be positive");
  KahanSum s;
  const auto& ev = L.eigenvalues();
  for (size_t i = 0; i < ev.size() && ev[i] < u; ++i)
    if (ev[i] > 0.0) s.add(L.masses()[i]);
  return s.value();
}

double heisenberg_trace_exact(int n, double s) {
  if (n < 1) throw invalid_parameter("heisenberg_trace_exact: n must be >= 1");
  if (!(s > 0.0)) throw invalid_parameter("heisenberg_trace_exact: s must be positive");
  return std::pow(s, n + 1) / (n + 1) * std::pow(odd_zeta_sum(n + 1), n);
}

double rockland_count(int n, int j, const std::vector<std::pair<double, double>>& lambda_grid,
                      int K, double s) {
  if (n < 1 || j < 1 || K < 1) throw invalid_parameter("rockland_count: bad parameters");
  std::vector<double> prods(1, 1.0);
  for (int i = 0; i < n; ++i) {
    std::vector<double> next;
    next.reserve(prods.size() * K);
    for (double p : prods)
      for (int mk = 1; mk <= K; ++mk) next.push_back(p * std::pow(double(mk), 2 * j));
    prods = std::move(next);
  }
  std::sort(prods.begin(), prods.end());
  KahanSum total;
  for (const auto& [lambda, dl] : lambda_grid) {
    const double cap = s / std::pow(std::abs(lambda), j);
    const auto it = std::upper_bound(prods.begin(), prods.end(), cap);
    const double cnt = double(it - prods.begin());
    total.add(std::pow(std::abs(lambda), n) * dl * cnt);
  }
  return total.value();
}

std::vector<std::pair<double, double>> apply_spectral_function(
    const SpectralData& L, const std::function<double(double)>& phi) {
  std::vector<std::pair<double, double>> out;
  out.reserve(L.eigenvalues().size());
  for (size_t i = 0; i < L.eigenvalues().size(); ++i) {
    const double v = phi(L.eigenvalues()[i]);
    if (!std::isfinite(v)) throw invalid_input("apply_spectral_function: non-finite value");
    out.emplace_back(v, L.masses()[i]);
  }
  return out;
}

StepRearrangement rearrangement_of_spectral(const SpectralData& L,
                                            const std::function<double(double)>& phi) {
  auto vm = apply_spectral_function(L, phi);
  for (auto& [v, m] : vm) v = std::abs(v);
  return StepRearrangement::from_pool(std::move(vm));
}

SymbolField spectral_symbol(const GroupModel& m, const std::function<double(double)>& phi) {
  if (m.kind == ModelKind::heisenberg_spectral) {
    SymbolField s = zero_symbol(m);
    for (size_t c = 0; c < m.heis.size(); ++c)
      for (size_t k = 0; k < m.heis[c].svals.size(); ++k)
        s.blocks[c](k, 0) = phi(m.heis[c].svals[k]);
    return s;
  }
  return diagonal_symbol(
      m, [&](const DualPoint& p) { return std::complex<double>(phi(p.laplacian), 0.0); });
}

double spectral_weak_norm(const SpectralData& L, const SpectralFunction& phi, double rr,
                          WeakNormRoute* route_used) {
  if (!(rr >= 1.0)) throw invalid_parameter("spectral_weak_norm: rr must be >= 1");
  if (!phi.monotone_decreasing) {
    if (route_used) *route_used = WeakNormRoute::rearrangement;
    return weak_norm(rearrangement_of_spectral(L, phi.f), rr);
  }
  if (route_used) *route_used = WeakNormRoute::counting;
  // tau(E_(0,u)) is constant on (e_i, e_{i+1}] and phi decreases, so the sup
  // over that interval is approached at u -> e_i from the right; the value
  // there is the cumulative mass through e_i.
  double best = 0.0;
  KahanSum cum;
  const auto& ev = L.eigenvalues();
  for (size_t i = 0; i < ev.size(); ++i) {
    if (ev[i] > 0.0) {
      cum.add(L.masses()[i]);
      best = std::max(best, phi.f(ev[i]) * std::pow(cum.value(), 1.0 / rr));
    } else {
      // zero modes never enter tau(E_(0,u))
    }
  }
  return best;
}

double heat_decay_bound(const TailLaw& law, double t, double p, double q) {
  if (!(t > 0.0)) throw invalid_parameter("heat_decay_bound: t must be positive");
  if (!(p > 1.0 && p <= 2.0 && q >= 2.0 && std::isfinite(q)))
    throw invalid_parameter("heat_decay_bound: need 1 < p <= 2 <= q < inf");
  const double inv_r = 1.0 / p - 1.0 / q;
  if (inv_r == 0.0) return 1.0;  // sup_s s^0 e^{-ts} = 1
  const double ar = law.alpha * inv_r;  // alpha / r
  return std::pow(law.coeff, inv_r) * std::pow(ar / t, ar) * std::exp(-ar);
}

double embedding_constant(const SpectralData& L, double gamma, double p, double q) {
  if (gamma < 0.0) throw invalid_parameter("embedding_constant: gamma must be >= 0");
  if (!(p > 1.0 && p <= 2.0 && q >= 2.0 && std::isfinite(q)))
    throw invalid_parameter("embedding_constant: need 1 < p <= 2 <= q < inf");
  const double inv_r = 1.0 / p - 1.0 / q;
  if (inv_r == 0.0) return 1.0;

  double best = 0.0;
  KahanSum cum;
  const auto& ev = L.eigenvalues();
  for (size_t i = 0; i < ev.size(); ++i) {
    if (!(ev[i] > 0.0)) continue;
    cum.add(L.masses()[i]);
    best = std::max(best, std::pow(1.0 + ev[i], -gamma) * std::pow(cum.value(), inv_r));
  }

  if (L.tail()) {
    const double ar = L.tail()->alpha * inv_r;
    const double cr = std::pow(L.tail()->coeff, inv_r);
    if (gamma < ar) return kInf;
    const double u0 = std::max(L.max_eigenvalue(), 1e-12);
    auto h = [&](double u) { return cr * std::pow(u, ar) * std::pow(1.0 + u, -gamma); };
    if (gamma == ar) {
      best = std::max(best, cr);  // supremum is the limit u -> inf
    } else {
      const double ustar = ar / (gamma - ar);
      best = std::max(best, h(std::max(ustar, u0)));
      best = std::max(best, h(u0));
    }
  }
  return best;
}

double homogeneous_symbol_trace(const std::function<double(double)>& a_radial, int n,
                                const std::vector<double>& radial_edges, double s) {
  GroupModel m = build_euclidean_radial(n, radial_edges);
  KahanSum vol;
  for (const RadialShell& sh : m.shells)
    if (std::abs(a_radial(sh.r_mid)) <= s) vol.add(sh.volume);
  return vol.value();
}

}  // namespace gmlab
