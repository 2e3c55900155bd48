#pragma once

#include <Eigen/Dense>

namespace gmlab {

// Wigner little-d matrix for spin l = twol/2 at middle Euler angle beta.
// Rows and columns run over m = l, l-1, ..., -l (row 0 is m = l).
// Entries are computed from the symmetric-top closed form
//   d_{m'm} = N (sin b/2)^{m'-m} (cos b/2)^{m'+m} P_{l-m'}^{(m'-m, m'+m)}(cos b)
// in the region m' >= |m|, with the Jacobi polynomial evaluated by its
// three-term recurrence, and extended elsewhere by the index symmetries.
Eigen::MatrixXd wigner_d(int twol, double beta);

// P_s^{(a,b)}(x) by the standard three-term recurrence.
double jacobi_poly(int s, int a, int b, double x);

}  // namespace gmlab
