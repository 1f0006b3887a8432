#pragma once

// Independent dense-array reference for the invariant geometry. It works
// straight from structure constants, J and g with explicit index loops and
// shares no code with the library beyond Eigen's matrix inverse.

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace akgeo::testing {

struct DenseStructure {
  int n = 0;
  std::vector<double> c;  // c[(i*n + j)*n + k] = c^k_{ij}
  Eigen::MatrixXd j;      // column i = J E_i
  Eigen::MatrixXd g;

  double constant(int i, int jj, int k) const { return c[static_cast<std::size_t>((i * n + jj) * n + k)]; }
};

/// gamma[(i*n + j)*n + k] = e^k(nabla_{E_i} E_j)
using Christoffel = std::vector<double>;

Christoffel oracle_levi_civita(const DenseStructure& s);
/// (Gamma - J Gamma J) / 2 applied to each nabla_{E_i}.
Christoffel oracle_canonical(const DenseStructure& s, const Christoffel& lc);

/// R[((i*n + j)*n + k)*n + l] = e^i(R(E_k, E_l) E_j) with
/// R(X, Y) = nabla_X nabla_Y - nabla_Y nabla_X - nabla_[X,Y].
std::vector<double> oracle_curvature(const DenseStructure& s, const Christoffel& gamma);

/// R_ij = sum_k R^k_{ikj}
Eigen::MatrixXd oracle_ricci(const DenseStructure& s, const std::vector<double>& r);
/// Metric trace of the Ricci form above.
double oracle_scal(const DenseStructure& s, const Eigen::MatrixXd& ricci);

/// R_{k lbar} = tr over T^{1,0} of R(z_k, conj z_l), for a unitary frame z
/// given as 2n x n column vectors.
Eigen::MatrixXcd oracle_complex_ricci(const DenseStructure& s, const Christoffel& gamma,
                                      const Eigen::MatrixXcd& z);

/// N(E_i, E_j)^k as a dense array [k][i][j].
std::vector<double> oracle_nijenhuis(const DenseStructure& s);

}  // namespace akgeo::testing
