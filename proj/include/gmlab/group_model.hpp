#pragma once

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace gmlab {

enum class ModelKind { cyclic, torus, su2, heisenberg_spectral, euclidean_radial };

std::string to_string(ModelKind k);

// One irreducible-representation class (or dual cell, for the dual-only
// models). spectral_tag is the enumeration key and is non-decreasing along
// the dual; ties are broken by (dim, lexicographic weight_key).
struct DualPoint {
  int index = 0;
  int dim = 1;
  double plancherel_weight = 1.0;
  double spectral_tag = 0.0;
  double laplacian = 0.0;  // eigenvalue of the positive Laplacian behind the tag
  std::vector<int> weight_key;  // highest weight (su2, torus) / deterministic tie key
};

struct QuadratureNode {
  std::vector<double> coord;
  double weight = 0.0;
  int beta_index = -1;  // su2: Gauss-Legendre node id into the d-matrix cache
};

struct HeisenbergCell {
  double lambda = 0.0;   // signed
  double dlambda = 0.0;  // cell weight in the lambda integral
  std::vector<double> svals;  // |lambda| * prod(2 k_j + 1), k in {0..K-1}^n, lex order
};

struct RadialShell {
  double r_lo = 0.0;
  double r_hi = 0.0;
  double r_mid = 0.0;
  double volume = 0.0;
};

// Finite computable model of a unimodular group. Immutable after
// construction; rep() is pure, so the model can be shared across workers.
class GroupModel {
 public:
  ModelKind kind = ModelKind::cyclic;
  int topo_dim = 0;
  double homogeneous_dim = 0.0;
  int rank = 0;
  std::vector<double> rho;  // half-sum of positive roots (su2) / box convention (torus)
  double haar_mass = 1.0;
  std::vector<DualPoint> dual;
  std::vector<QuadratureNode> quadrature;  // empty for dual-only models

  // kind-specific payloads
  int cyclic_N = 0;
  std::vector<int> cyclic_k;                  // character index per dual point
  std::vector<int> cyclic_dual_of_k;          // inverse map
  int torus_band = 0;
  std::vector<std::vector<int>> torus_k;      // lattice point per dual point
  std::vector<int> su2_twol;                  // 2l per dual point
  std::vector<std::vector<Eigen::MatrixXd>> su2_dmat;  // [beta_index][dual]
  int su2_na = 0, su2_nb = 0, su2_ng = 0;     // node grid shape (alpha, beta, gamma)
  std::vector<double> su2_beta_w;             // Gauss-Legendre weights per beta node
  int heis_n = 0;
  int heis_cutoff = 0;
  std::vector<HeisenbergCell> heis;           // per dual point
  std::vector<RadialShell> shells;            // per dual point (euclidean_radial)

  bool has_quadrature() const { return !quadrature.empty(); }
  bool has_rep_eval() const {
    return kind == ModelKind::cyclic || kind == ModelKind::torus || kind == ModelKind::su2;
  }
  int dual_size() const { return static_cast<int>(dual.size()); }
  int node_count() const { return static_cast<int>(quadrature.size()); }

  // Unitary d_pi x d_pi representation matrix at a quadrature node.
  Eigen::MatrixXcd rep(int dual_index, int node_index) const;

  std::string describe() const;
};

GroupModel build_cyclic(int N);
GroupModel build_torus(int d, int band);

// l_max is a half-integer (0, 0.5, 1, ...); quad_order is the number of
// points per periodic Euler angle and must be >= 2*(2*l_max)+1.
GroupModel build_su2(double l_max, int quad_order);

// Dual-only Heisenberg model. The grid entries are (lambda, cell weight);
// plancherel weights are |lambda|^n * weight.
GroupModel build_heisenberg_spectral(int n,
                                     const std::vector<std::pair<double, double>>& lambda_grid,
                                     int hermite_cutoff);

// Geometric grid on [lambda_min, lambda_max] mirrored to negative lambda.
// Mirroring splits each cell's weight in half so the total dual mass equals
// the one-sided integral int_0^inf |lambda|^n dlambda restricted to the grid,
// which is the normalization the closed-form trace laws use.
std::vector<std::pair<double, double>> geometric_lambda_grid(double lambda_min,
                                                             double lambda_max, int cells,
                                                             bool mirrored = true);

// Abelian rearrangement model for R^n: dual points are radial shells with
// Lebesgue volume weights. half_line restricts n=1 to (0, inf).
GroupModel build_euclidean_radial(int n, const std::vector<double>& radial_edges,
                                  bool half_line = false);
std::vector<double> uniform_radial_edges(double r_max, int shells);

// Dual points with weight_key coordinatewise below N*rho (box |.| for the
// torus). Returned as indices into model.dual, in enumeration order.
std::vector<int> enumerate_polyhedron(const GroupModel& m, int N);

// (laplacian eigenvalue, multiplicity) per dual point, ascending. Compact
// models carry multiplicity d_pi^2; the Heisenberg model lists every
// (lambda, k) level with its cell weight.
std::vector<std::pair<double, double>> laplacian_spectrum(const GroupModel& m);

}  // namespace gmlab
