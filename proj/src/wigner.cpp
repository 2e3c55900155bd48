#include "gmlab/wigner.hpp"

#include <cmath>

#include "gmlab/errors.hpp"

namespace gmlab {

double jacobi_poly(int s, int a, int b, double x) {
  if (s == 0) return 1.0;
  double pm1 = 1.0;
  double p = 0.5 * (a - b) + (1.0 + 0.5 * (a + b)) * x;
  for (int k = 2; k <= s; ++k) {
    const double ab = a + b;
    const double c1 = 2.0 * k * (k + ab) * (2.0 * k + ab - 2.0);
    const double c2 = (2.0 * k + ab - 1.0) * (double(a) * a - double(b) * b);
    const double c3 = (2.0 * k + ab - 2.0) * (2.0 * k + ab - 1.0) * (2.0 * k + ab);
    const double c4 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * (2.0 * k + ab);
    const double pnext = ((c2 + c3 * x) * p - c4 * pm1) / c1;
    pm1 = p;
    p = pnext;
  }
  return p;
}

namespace {

// Core formula, valid for tmp >= |tm| (arguments are 2*m' and 2*m).
double d_core(int twol, int tmp, int tm, double beta) {
  const int a = (tmp - tm) / 2;  // m' - m, integer >= 0
  const int b = (tmp + tm) / 2;  // m' + m, integer >= 0
  const int s = (twol - tmp) / 2;
  const double logc = 0.5 * (std::lgamma(s + 1.0) + std::lgamma(s + a + b + 1.0) -
                             std::lgamma(s + a + 1.0) - std::lgamma(s + b + 1.0));
  const double sh = std::sin(0.5 * beta);
  const double ch = std::cos(0.5 * beta);
  return std::exp(logc) * std::pow(sh, a) * std::pow(ch, b) *
         jacobi_poly(s, a, b, std::cos(beta));
}

int parity_sign(int e) { return (e % 2 == 0) ? 1 : ((e % 2 == 1 || e % 2 == -1) ? -1 : 1); }

}  // namespace

Eigen::MatrixXd wigner_d(int twol, double beta) {
  if (twol < 0) throw invalid_parameter("wigner_d: negative spin");
  const int dim = twol + 1;
  Eigen::MatrixXd d(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const int tmp = twol - 2 * r;  // 2*m'
    for (int c = 0; c < dim; ++c) {
      const int tm = twol - 2 * c;  // 2*m
      double v;
      if (tmp >= std::abs(tm)) {
        v = d_core(twol, tmp, tm, beta);
      } else if (tm >= std::abs(tmp)) {
        // d_{m'm} = (-1)^{m-m'} d_{mm'}
        v = parity_sign((tm - tmp) / 2) * d_core(twol, tm, tmp, beta);
      } else if (-tm >= std::abs(tmp)) {
        // d_{m'm} = d_{-m,-m'}
        v = d_core(twol, -tm, -tmp, beta);
      } else {
        // d_{m'm} = (-1)^{m-m'} d_{-m',-m}
        v = parity_sign((tm - tmp) / 2) * d_core(twol, -tmp, -tm, beta);
      }
      d(r, c) = v;
    }
  }
  return d;
}

}  // namespace gmlab
