#include "gmlab/group_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gmlab/errors.hpp"
#include "gmlab/wigner.hpp"

namespace gmlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr long kDualCap = 4'000'000;
constexpr long kSpectralCap = 32'000'000;  // (lambda, k) levels for dual-only models

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double dp = n * (t * p1 - p0) / (t * t - 1.0);
      const double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    double p0 = 1.0, p1 = t;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    const double dp = n * (t * p1 - p0) / (t * t - 1.0);
    x[i] = t;
    w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
}

void sort_dual(std::vector<DualPoint>& dual) {
  std::stable_sort(dual.begin(), dual.end(), [](const DualPoint& a, const DualPoint& b) {
    if (a.spectral_tag != b.spectral_tag) return a.spectral_tag < b.spectral_tag;
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.weight_key < b.weight_key;
  });
  for (int i = 0; i < static_cast<int>(dual.size()); ++i) dual[i].index = i;
}

double ball_volume(int n, double r) {
  // pi^{n/2} / Gamma(n/2+1) * r^n
  return std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n + 1.0) * std::pow(r, n);
}

}  // namespace

std::string to_string(ModelKind k) {
  switch (k) {
    case ModelKind::cyclic: return "cyclic";
    case ModelKind::torus: return "torus";
    case ModelKind::su2: return "su2";
    case ModelKind::heisenberg_spectral: return "heisenberg";
    case ModelKind::euclidean_radial: return "euclidean";
  }
  return "?";
}

std::string GroupModel::describe() const {
  std::ostringstream os;
  os << to_string(kind);
  switch (kind) {
    case ModelKind::cyclic: os << "_" << cyclic_N; break;
    case ModelKind::torus: os << "_d" << topo_dim << "_b" << torus_band; break;
    case ModelKind::su2: os << "_l" << (dual.empty() ? 0 : su2_twol.back()) << "half"; break;
    case ModelKind::heisenberg_spectral: os << "_n" << heis_n << "_K" << heis_cutoff; break;
    case ModelKind::euclidean_radial: os << "_n" << topo_dim << "_m" << shells.size(); break;
  }
  return os.str();
}

Eigen::MatrixXcd GroupModel::rep(int dual_index, int node_index) const {
  using cd = std::complex<double>;
  const DualPoint& pi = dual.at(dual_index);
  const QuadratureNode& x = quadrature.at(node_index);
  switch (kind) {
    case ModelKind::cyclic: {
      const int k = cyclic_k[dual_index];
      const int j = static_cast<int>(x.coord[0]);
      Eigen::MatrixXcd m(1, 1);
      m(0, 0) = std::polar(1.0, 2.0 * kPi * k * j / cyclic_N);
      return m;
    }
    case ModelKind::torus: {
      double phase = 0.0;
      const auto& k = torus_k[dual_index];
      for (int i = 0; i < topo_dim; ++i) phase += k[i] * x.coord[i];
      Eigen::MatrixXcd m(1, 1);
      m(0, 0) = std::polar(1.0, phase);
      return m;
    }
    case ModelKind::su2: {
      const int twol = su2_twol[dual_index];
      const int d = twol + 1;
      const Eigen::MatrixXd& dm = su2_dmat[x.beta_index][dual_index];
      const double alpha = x.coord[0];
      const double gamma = x.coord[2];
      Eigen::MatrixXcd m(d, d);
      for (int r = 0; r < d; ++r) {
        const double mp = 0.5 * (twol - 2 * r);
        const cd pa = std::polar(1.0, -mp * alpha);
        for (int c = 0; c < d; ++c) {
          const double mm = 0.5 * (twol - 2 * c);
          m(r, c) = pa * dm(r, c) * std::polar(1.0, -mm * gamma);
        }
      }
      return m;
    }
    default:
      throw unsupported_model("rep_eval: model " + to_string(kind) + " is dual-only");
  }
  (void)pi;
}

GroupModel build_cyclic(int N) {
  if (N < 1) throw invalid_parameter("build_cyclic: N must be >= 1");
  GroupModel m;
  m.kind = ModelKind::cyclic;
  m.topo_dim = 1;
  m.homogeneous_dim = 1;
  m.rank = 1;
  m.cyclic_N = N;
  m.dual.resize(N);
  for (int k = 0; k < N; ++k) {
    DualPoint& p = m.dual[k];
    p.dim = 1;
    p.plancherel_weight = 1.0;
    const int kk = std::min(k, N - k);
    p.laplacian = double(kk) * kk;
    p.spectral_tag = 1.0 + p.laplacian;
    p.weight_key = {k};
  }
  sort_dual(m.dual);
  m.cyclic_k.resize(N);
  m.cyclic_dual_of_k.resize(N);
  for (int i = 0; i < N; ++i) {
    m.cyclic_k[i] = m.dual[i].weight_key[0];
    m.cyclic_dual_of_k[m.cyclic_k[i]] = i;
  }
  m.quadrature.resize(N);
  for (int j = 0; j < N; ++j) {
    m.quadrature[j].coord = {double(j)};
    m.quadrature[j].weight = 1.0 / N;
  }
  return m;
}

GroupModel build_torus(int d, int band) {
  if (d < 1 || band < 1) throw invalid_parameter("build_torus: need d >= 1 and band >= 1");
  long dual_size = 1;
  for (int i = 0; i < d; ++i) {
    dual_size *= 2L * band + 1;
    if (dual_size > kDualCap) throw capacity_error("build_torus: dual size beyond cap");
  }
  GroupModel m;
  m.kind = ModelKind::torus;
  m.topo_dim = d;
  m.homogeneous_dim = d;
  m.rank = d;
  m.rho.assign(d, 1.0);
  m.torus_band = band;

  std::vector<int> k(d, -band);
  m.dual.reserve(dual_size);
  while (true) {
    DualPoint p;
    p.dim = 1;
    p.plancherel_weight = 1.0;
    double norm2 = 0.0;
    for (int i = 0; i < d; ++i) norm2 += double(k[i]) * k[i];
    p.laplacian = norm2;
    p.spectral_tag = 1.0 + norm2;
    p.weight_key = k;
    m.dual.push_back(std::move(p));
    int i = d - 1;
    while (i >= 0 && k[i] == band) k[i--] = -band;
    if (i < 0) break;
    ++k[i];
  }
  sort_dual(m.dual);
  m.torus_k.resize(m.dual.size());
  for (size_t i = 0; i < m.dual.size(); ++i) m.torus_k[i] = m.dual[i].weight_key;

  const int M = 2 * band + 2;  // exact for products of retained characters
  long nodes = 1;
  for (int i = 0; i < d; ++i) nodes *= M;
  m.quadrature.resize(nodes);
  std::vector<int> j(d, 0);
  for (long idx = 0; idx < nodes; ++idx) {
    QuadratureNode& node = m.quadrature[idx];
    node.coord.resize(d);
    for (int i = 0; i < d; ++i) node.coord[i] = 2.0 * kPi * j[i] / M;
    node.weight = 1.0 / double(nodes);
    int i = d - 1;
    while (i >= 0 && j[i] == M - 1) j[i--] = 0;
    if (i >= 0) ++j[i];
  }
  return m;
}

GroupModel build_su2(double l_max, int quad_order) {
  const int twolmax = static_cast<int>(std::lround(2.0 * l_max));
  if (twolmax < 0 || std::abs(2.0 * l_max - twolmax) > 1e-12)
    throw invalid_parameter("build_su2: l_max must be a nonnegative half-integer");
  if (quad_order < 2 * twolmax + 1)
    throw under_resolved_quadrature("build_su2: quad_order must be >= 2*(2*l_max)+1");

  GroupModel m;
  m.kind = ModelKind::su2;
  m.topo_dim = 3;
  m.homogeneous_dim = 4;  // one-step bracket-generating sub-Riemannian reading
  m.rank = 1;
  m.rho = {1.0};

  m.dual.resize(twolmax + 1);
  for (int twol = 0; twol <= twolmax; ++twol) {
    DualPoint& p = m.dual[twol];
    const double l = 0.5 * twol;
    p.dim = twol + 1;
    p.plancherel_weight = p.dim;
    p.laplacian = l * (l + 1.0);
    p.spectral_tag = std::pow(1.0 + p.laplacian, 1.5);  // (I - L)^{n/2}, n = 3
    p.weight_key = {twol};
  }
  sort_dual(m.dual);
  m.su2_twol.resize(m.dual.size());
  for (size_t i = 0; i < m.dual.size(); ++i) m.su2_twol[i] = m.dual[i].weight_key[0];

  // Product rule: uniform in the two periodic angles over [0, 4pi) (the
  // doubled range covers SU(2) exactly twice, uniformly), Gauss-Legendre in
  // cos(beta). Exact for matrix coefficients up to band 2*l_max.
  const int na = quad_order;
  const int ng = quad_order;
  const int nb = (quad_order + 1) / 2;
  std::vector<double> xb, wb;
  gauss_legendre(nb, xb, wb);
  m.su2_na = na;
  m.su2_nb = nb;
  m.su2_ng = ng;
  m.su2_beta_w = wb;

  m.su2_dmat.resize(nb);
  for (int ib = 0; ib < nb; ++ib) {
    const double beta = std::acos(xb[ib]);
    m.su2_dmat[ib].resize(m.dual.size());
    for (size_t i = 0; i < m.dual.size(); ++i)
      m.su2_dmat[ib][i] = wigner_d(m.su2_twol[i], beta);
  }

  m.quadrature.reserve(static_cast<size_t>(na) * nb * ng);
  for (int ia = 0; ia < na; ++ia) {
    const double alpha = 4.0 * kPi * ia / na;
    for (int ib = 0; ib < nb; ++ib) {
      const double beta = std::acos(xb[ib]);
      for (int ig = 0; ig < ng; ++ig) {
        QuadratureNode node;
        node.coord = {alpha, beta, 4.0 * kPi * ig / ng};
        node.weight = wb[ib] / (2.0 * na * ng);
        node.beta_index = ib;
        m.quadrature.push_back(std::move(node));
      }
    }
  }
  return m;
}

std::vector<std::pair<double, double>> geometric_lambda_grid(double lambda_min,
                                                             double lambda_max, int cells,
                                                             bool mirrored) {
  if (!(lambda_min > 0.0) || !(lambda_max > lambda_min) || cells < 1)
    throw invalid_parameter("geometric_lambda_grid: need 0 < lambda_min < lambda_max, cells >= 1");
  std::vector<std::pair<double, double>> grid;
  grid.reserve(mirrored ? 2 * cells : cells);
  const double ratio = std::pow(lambda_max / lambda_min, 1.0 / cells);
  double lo = lambda_min;
  for (int i = 0; i < cells; ++i) {
    const double hi = (i + 1 == cells) ? lambda_max : lo * ratio;
    const double mid = 0.5 * (lo + hi);
    const double dl = hi - lo;
    if (mirrored) {
      grid.emplace_back(-mid, 0.5 * dl);
      grid.emplace_back(mid, 0.5 * dl);
    } else {
      grid.emplace_back(mid, dl);
    }
    lo = hi;
  }
  return grid;
}

GroupModel build_heisenberg_spectral(int n,
                                     const std::vector<std::pair<double, double>>& lambda_grid,
                                     int hermite_cutoff) {
  if (n < 1) throw invalid_parameter("build_heisenberg_spectral: n must be >= 1");
  if (hermite_cutoff < 1) throw invalid_parameter("build_heisenberg_spectral: K must be >= 1");
  if (lambda_grid.empty()) throw invalid_parameter("build_heisenberg_spectral: empty grid");
  long levels = 1;
  for (int i = 0; i < n; ++i) {
    levels *= hermite_cutoff;
    if (levels * static_cast<long>(lambda_grid.size()) > kSpectralCap)
      throw capacity_error("build_heisenberg_spectral: spectral data beyond cap");
  }

  GroupModel m;
  m.kind = ModelKind::heisenberg_spectral;
  m.topo_dim = 2 * n + 1;
  m.homogeneous_dim = 2 * n + 2;
  m.rank = n;
  m.heis_n = n;
  m.heis_cutoff = hermite_cutoff;

  m.dual.resize(lambda_grid.size());
  m.heis.resize(lambda_grid.size());
  for (size_t c = 0; c < lambda_grid.size(); ++c) {
    const double lambda = lambda_grid[c].first;
    const double dl = lambda_grid[c].second;
    if (lambda == 0.0)
      throw invalid_parameter("build_heisenberg_spectral: lambda = 0 has vanishing Plancherel density");
    if (!(dl > 0.0)) throw invalid_parameter("build_heisenberg_spectral: cell weights must be positive");

    HeisenbergCell& cell = m.heis[c];
    cell.lambda = lambda;
    cell.dlambda = dl;
    cell.svals.resize(levels);
    std::vector<int> k(n, 0);
    for (long idx = 0; idx < levels; ++idx) {
      double prod = 1.0;
      for (int i = 0; i < n; ++i) prod *= 2.0 * k[i] + 1.0;
      cell.svals[idx] = std::abs(lambda) * prod;
      int i = n - 1;
      while (i >= 0 && k[i] == hermite_cutoff - 1) k[i--] = 0;
      if (i >= 0) ++k[i];
    }

    DualPoint& p = m.dual[c];
    p.dim = static_cast<int>(levels);
    p.plancherel_weight = std::pow(std::abs(lambda), n) * dl;
    p.laplacian = std::abs(lambda);
    p.spectral_tag = std::abs(lambda);
    p.weight_key = {2 * static_cast<int>(c) + (lambda > 0 ? 1 : 0)};
  }
  // sort cells alongside the dual ordering
  std::vector<int> order(m.dual.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (m.dual[a].spectral_tag != m.dual[b].spectral_tag)
      return m.dual[a].spectral_tag < m.dual[b].spectral_tag;
    return m.heis[a].lambda < m.heis[b].lambda;
  });
  std::vector<DualPoint> dual2(m.dual.size());
  std::vector<HeisenbergCell> heis2(m.heis.size());
  for (size_t i = 0; i < order.size(); ++i) {
    dual2[i] = m.dual[order[i]];
    dual2[i].index = static_cast<int>(i);
    heis2[i] = m.heis[order[i]];
  }
  m.dual = std::move(dual2);
  m.heis = std::move(heis2);
  return m;
}

std::vector<double> uniform_radial_edges(double r_max, int shells) {
  if (!(r_max > 0.0) || shells < 1)
    throw invalid_parameter("uniform_radial_edges: need r_max > 0 and shells >= 1");
  std::vector<double> edges(shells + 1);
  for (int i = 0; i <= shells; ++i) edges[i] = r_max * i / shells;
  return edges;
}

GroupModel build_euclidean_radial(int n, const std::vector<double>& radial_edges,
                                  bool half_line) {
  if (n < 1) throw invalid_parameter("build_euclidean_radial: n must be >= 1");
  if (radial_edges.size() < 2) throw invalid_parameter("build_euclidean_radial: empty grid");
  if (half_line && n != 1)
    throw invalid_parameter("build_euclidean_radial: half_line only makes sense for n = 1");
  for (size_t i = 0; i + 1 < radial_edges.size(); ++i)
    if (!(radial_edges[i + 1] > radial_edges[i]))
      throw invalid_parameter("build_euclidean_radial: edges must increase");
  if (radial_edges.front() < 0.0)
    throw invalid_parameter("build_euclidean_radial: edges must be nonnegative");

  GroupModel m;
  m.kind = ModelKind::euclidean_radial;
  m.topo_dim = n;
  m.homogeneous_dim = n;
  m.rank = n;

  const size_t shells = radial_edges.size() - 1;
  m.dual.resize(shells);
  m.shells.resize(shells);
  for (size_t i = 0; i < shells; ++i) {
    RadialShell& sh = m.shells[i];
    sh.r_lo = radial_edges[i];
    sh.r_hi = radial_edges[i + 1];
    sh.r_mid = 0.5 * (sh.r_lo + sh.r_hi);
    sh.volume = ball_volume(n, sh.r_hi) - ball_volume(n, sh.r_lo);
    if (half_line) sh.volume *= 0.5;
    DualPoint& p = m.dual[i];
    p.index = static_cast<int>(i);
    p.dim = 1;
    p.plancherel_weight = sh.volume;
    p.laplacian = sh.r_mid * sh.r_mid;
    p.spectral_tag = sh.r_mid;
    p.weight_key = {static_cast<int>(i)};
  }
  return m;
}

std::vector<int> enumerate_polyhedron(const GroupModel& m, int N) {
  if (N < 0) throw invalid_parameter("enumerate_polyhedron: N must be >= 0");
  std::vector<int> out;
  switch (m.kind) {
    case ModelKind::su2:
      for (const DualPoint& p : m.dual)
        if (p.weight_key[0] <= N * m.rho[0]) out.push_back(p.index);
      return out;
    case ModelKind::torus:
      for (const DualPoint& p : m.dual) {
        bool in = true;
        for (int i = 0; i < m.rank; ++i)
          if (std::abs(p.weight_key[i]) > N * m.rho[i]) in = false;
        if (in) out.push_back(p.index);
      }
      return out;
    default:
      throw unsupported_model("enumerate_polyhedron: model lacks highest-weight data");
  }
}

std::vector<std::pair<double, double>> laplacian_spectrum(const GroupModel& m) {
  std::vector<std::pair<double, double>> out;
  if (m.kind == ModelKind::heisenberg_spectral) {
    for (size_t c = 0; c < m.heis.size(); ++c) {
      const double w = m.dual[c].plancherel_weight;
      for (double s : m.heis[c].svals) out.emplace_back(s, w);
    }
  } else {
    for (const DualPoint& p : m.dual)
      out.emplace_back(p.laplacian, double(p.dim) * p.dim);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

}  // namespace gmlab
