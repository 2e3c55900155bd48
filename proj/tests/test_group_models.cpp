#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "gmlab/errors.hpp"
#include "gmlab/group_model.hpp"
#include "gmlab/wigner.hpp"

using namespace gmlab;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("wigner d spin 1/2 and 1 closed forms") {
  for (double beta : {0.3, 1.1, 2.7}) {
    const double c = std::cos(0.5 * beta), s = std::sin(0.5 * beta);
    Eigen::MatrixXd d1 = wigner_d(1, beta);
    CHECK(d1(0, 0) == doctest::Approx(c).epsilon(1e-14));
    CHECK(d1(0, 1) == doctest::Approx(s).epsilon(1e-14));
    CHECK(d1(1, 0) == doctest::Approx(-s).epsilon(1e-14));
    CHECK(d1(1, 1) == doctest::Approx(c).epsilon(1e-14));

    Eigen::MatrixXd d2 = wigner_d(2, beta);
    CHECK(d2(0, 0) == doctest::Approx(c * c).epsilon(1e-13));
    CHECK(d2(1, 1) == doctest::Approx(std::cos(beta)).epsilon(1e-13));
    CHECK(d2(0, 2) == doctest::Approx(s * s).epsilon(1e-13));
    CHECK(std::abs(d2(0, 1)) == doctest::Approx(std::sin(beta) / std::sqrt(2.0)).epsilon(1e-13));
  }
}

TEST_CASE("wigner d matrices are orthogonal") {
  for (int twol : {0, 1, 2, 3, 5, 8, 12}) {
    for (double beta : {0.1, 0.9, 1.6, 2.9}) {
      Eigen::MatrixXd d = wigner_d(twol, beta);
      Eigen::MatrixXd err = d * d.transpose() - Eigen::MatrixXd::Identity(twol + 1, twol + 1);
      CHECK(err.cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("build_cyclic basics") {
  CHECK_THROWS_AS(build_cyclic(0), invalid_parameter);

  GroupModel z1 = build_cyclic(1);
  CHECK(z1.dual.size() == 1);
  CHECK(z1.dual[0].dim == 1);

  GroupModel z3 = build_cyclic(3);
  double mass = 0.0;
  for (const auto& n : z3.quadrature) {
    CHECK(n.weight == doctest::Approx(1.0 / 3.0));
    mass += n.weight;
  }
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("cyclic spectral tags match the brute-force law") {
  GroupModel z8 = build_cyclic(8);
  // oracle: 1 + min(k, 8-k)^2 for each character, sorted ascending
  std::vector<double> oracle;
  for (int k = 0; k < 8; ++k) {
    const int kk = std::min(k, 8 - k);
    oracle.push_back(1.0 + kk * kk);
  }
  std::sort(oracle.begin(), oracle.end());
  REQUIRE(z8.dual.size() == 8);
  for (int i = 0; i < 8; ++i) CHECK(z8.dual[i].spectral_tag == oracle[i]);
  const std::vector<double> expected{1, 2, 2, 5, 5, 10, 10, 17};
  for (int i = 0; i < 8; ++i) CHECK(z8.dual[i].spectral_tag == expected[i]);
}

TEST_CASE("dual ordering is total and deterministic") {
  for (const GroupModel& m : {build_cyclic(12), build_torus(2, 2), build_su2(2.0, 9)}) {
    for (size_t i = 0; i + 1 < m.dual.size(); ++i) {
      const DualPoint& a = m.dual[i];
      const DualPoint& b = m.dual[i + 1];
      const bool lt = a.spectral_tag < b.spectral_tag ||
                      (a.spectral_tag == b.spectral_tag &&
                       (a.dim < b.dim || (a.dim == b.dim && a.weight_key < b.weight_key)));
      CHECK(lt);
    }
  }
}

TEST_CASE("build_torus basics") {
  GroupModel t1 = build_torus(1, 1);
  REQUIRE(t1.dual.size() == 3);
  CHECK(t1.torus_k[0] == std::vector<int>{0});
  CHECK(t1.torus_k[1] == std::vector<int>{-1});
  CHECK(t1.torus_k[2] == std::vector<int>{1});
  CHECK(t1.quadrature.size() == 4);  // (2*band+2)^d

  GroupModel t22 = build_torus(2, 2);
  CHECK(t22.dual.size() == 25);
  double mass = 0.0;
  for (const auto& n : t22.quadrature) mass += n.weight;
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-13));

  CHECK_THROWS_AS(build_torus(8, 100), capacity_error);
}

TEST_CASE("su2 construction and unitarity") {
  CHECK_THROWS_AS(build_su2(2.0, 5), under_resolved_quadrature);
  CHECK_THROWS_AS(build_su2(0.3, 9), invalid_parameter);

  GroupModel m = build_su2(1.5, 7);
  REQUIRE(m.dual.size() == 4);
  for (const auto& p : m.dual) {
    CHECK(p.dim == p.weight_key[0] + 1);
    CHECK(p.plancherel_weight == p.dim);
  }
  double mass = 0.0;
  for (const auto& n : m.quadrature) mass += n.weight;
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));

  double worst = 0.0;
  for (int i = 0; i < m.dual_size(); ++i) {
    for (int x = 0; x < m.node_count(); x += 37) {
      Eigen::MatrixXcd U = m.rep(i, x);
      Eigen::MatrixXcd err =
          U.adjoint() * U - Eigen::MatrixXcd::Identity(U.rows(), U.cols());
      worst = std::max(worst, err.cwiseAbs().maxCoeff());
    }
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("su2 Schur orthogonality under quadrature") {
  GroupModel m = build_su2(2.0, 9);
  // int pi_{ij} conj(pi'_{kl}) = delta delta delta / d_pi for all retained pairs
  double worst = 0.0;
  for (int a = 0; a < m.dual_size(); ++a) {
    for (int b = a; b < m.dual_size(); ++b) {
      const int da = m.dual[a].dim, db = m.dual[b].dim;
      Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(da * da, db * db);
      for (int x = 0; x < m.node_count(); ++x) {
        Eigen::MatrixXcd A = m.rep(a, x);
        Eigen::MatrixXcd B = m.rep(b, x);
        const double w = m.quadrature[x].weight;
        for (int i = 0; i < da; ++i)
          for (int j = 0; j < da; ++j)
            for (int k = 0; k < db; ++k)
              for (int l = 0; l < db; ++l)
                acc(i * da + j, k * db + l) += w * A(i, j) * std::conj(B(k, l));
      }
      for (int i = 0; i < da; ++i)
        for (int j = 0; j < da; ++j)
          for (int k = 0; k < db; ++k)
            for (int l = 0; l < db; ++l) {
              const double expected =
                  (a == b && i == k && j == l) ? 1.0 / da : 0.0;
              worst = std::max(worst,
                               std::abs(acc(i * da + j, k * db + l) -
                                        std::complex<double>(expected, 0.0)));
            }
    }
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("heisenberg spectral model") {
  CHECK_THROWS_AS(build_heisenberg_spectral(1, {{0.0, 0.1}}, 3), invalid_parameter);
  CHECK_THROWS_AS(build_heisenberg_spectral(1, {}, 3), invalid_parameter);

  GroupModel m = build_heisenberg_spectral(1, {{1.0, 0.5}}, 3);
  REQUIRE(m.heis.size() == 1);
  CHECK(m.heis[0].svals == std::vector<double>{1.0, 3.0, 5.0});
  CHECK(m.dual[0].plancherel_weight == doctest::Approx(0.5));
  CHECK(!m.has_quadrature());
  CHECK(!m.has_rep_eval());

  GroupModel m2 = build_heisenberg_spectral(2, {{2.0, 0.1}}, 2);
  // lex order over k in {0,1}^2: (0,0),(0,1),(1,0),(1,1)
  CHECK(m2.heis[0].svals[2] == doctest::Approx(6.0));  // k=(1,0): 2*3*1

  GroupModel neg = build_heisenberg_spectral(1, {{-1.0, 0.5}}, 3);
  CHECK(neg.heis[0].svals == m.heis[0].svals);
}

TEST_CASE("heisenberg spectral data is monotone and 1-homogeneous in |lambda|") {
  GroupModel a = build_heisenberg_spectral(2, {{1.5, 0.2}}, 4);
  GroupModel b = build_heisenberg_spectral(2, {{3.0, 0.2}}, 4);
  const auto& sa = a.heis[0].svals;
  const auto& sb = b.heis[0].svals;
  for (size_t i = 0; i < sa.size(); ++i) CHECK(sb[i] == 2.0 * sa[i]);
  // strictly increasing in each k_j: k=(k1,k2) lex, stride K=4
  for (int k1 = 0; k1 < 4; ++k1)
    for (int k2 = 0; k2 + 1 < 4; ++k2)
      CHECK(sa[k1 * 4 + k2 + 1] > sa[k1 * 4 + k2]);
  for (int k1 = 0; k1 + 1 < 4; ++k1)
    for (int k2 = 0; k2 < 4; ++k2)
      CHECK(sa[(k1 + 1) * 4 + k2] > sa[k1 * 4 + k2]);
}

TEST_CASE("euclidean radial model volumes") {
  CHECK_THROWS_AS(build_euclidean_radial(2, {0.0}), invalid_parameter);
  GroupModel m = build_euclidean_radial(2, uniform_radial_edges(1.0, 400));
  double vol = 0.0;
  for (const auto& sh : m.shells) vol += sh.volume;
  CHECK(vol == doctest::Approx(kPi).epsilon(1e-12));

  GroupModel line = build_euclidean_radial(1, uniform_radial_edges(1.0, 10));
  double len = 0.0;
  for (const auto& sh : line.shells) len += sh.volume;
  CHECK(len == doctest::Approx(2.0).epsilon(1e-12));  // two-sided line

  GroupModel half = build_euclidean_radial(1, uniform_radial_edges(1.0, 10), true);
  len = 0.0;
  for (const auto& sh : half.shells) len += sh.volume;
  CHECK(len == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("polyhedron enumeration") {
  GroupModel su2 = build_su2(2.0, 9);
  const auto q2 = enumerate_polyhedron(su2, 2);
  REQUIRE(q2.size() == 3);  // l = 0, 1/2, 1
  int sumd2 = 0;
  for (int idx : q2) sumd2 += su2.dual[idx].dim * su2.dual[idx].dim;
  CHECK(sumd2 == 14);

  const auto q0 = enumerate_polyhedron(su2, 0);
  REQUIRE(q0.size() == 1);
  CHECK(su2.dual[q0[0]].dim == 1);

  // monotone: Q_N subset of Q_{N+1}
  for (int N = 0; N < 4; ++N) {
    const auto qa = enumerate_polyhedron(su2, N);
    const auto qb = enumerate_polyhedron(su2, N + 1);
    for (int idx : qa) CHECK(std::count(qb.begin(), qb.end(), idx) == 1);
  }

  GroupModel t = build_torus(1, 4);
  const auto q3 = enumerate_polyhedron(t, 3);
  CHECK(q3.size() == 7);  // |k| <= 3

  CHECK_THROWS_AS(enumerate_polyhedron(build_cyclic(4), 1), unsupported_model);
}

TEST_CASE("laplacian spectrum") {
  GroupModel su2 = build_su2(1.0, 5);
  const auto spec = laplacian_spectrum(su2);
  REQUIRE(spec.size() == 3);
  CHECK(spec[0].first == 0.0);
  CHECK(spec[0].second == 1.0);
  CHECK(spec[1].first == doctest::Approx(0.75));
  CHECK(spec[1].second == 4.0);
  CHECK(spec[2].first == doctest::Approx(2.0));
  CHECK(spec[2].second == 9.0);

  const auto zspec = laplacian_spectrum(build_cyclic(8));
  for (const auto& [tag, mult] : zspec) CHECK(mult == 1.0);

  // torus d=2: tag ||k||^2 with lattice multiplicities all 1 per dual point
  const auto tspec = laplacian_spectrum(build_torus(2, 2));
  CHECK(tspec.size() == 25);
  CHECK(tspec[0].first == 0.0);
}

TEST_CASE("geometric lambda grid mirrors with split mass") {
  const auto grid = geometric_lambda_grid(0.5, 8.0, 16, true);
  CHECK(grid.size() == 32);
  double onesided = 0.0;
  for (const auto& [lam, dl] : grid) onesided += dl;
  CHECK(onesided == doctest::Approx(7.5).epsilon(1e-12));  // total length of [0.5, 8]
}
