#include "dense_oracle.hpp"

namespace akgeo::testing {

namespace {

std::size_t at(int n, int a, int b, int c) { return static_cast<std::size_t>((a * n + b) * n + c); }

/// Matrix of nabla_{E_i}: (k, j) entry e^k(nabla_{E_i} E_j).
Eigen::MatrixXd along(const DenseStructure& s, const Christoffel& gamma, int i) {
  Eigen::MatrixXd a(s.n, s.n);
  for (int j = 0; j < s.n; ++j) {
    for (int k = 0; k < s.n; ++k) a(k, j) = gamma[at(s.n, i, j, k)];
  }
  return a;
}

Eigen::MatrixXcd along(const DenseStructure& s, const Christoffel& gamma, const Eigen::VectorXcd& x) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(s.n, s.n);
  for (int i = 0; i < s.n; ++i) a += x(i) * along(s, gamma, i).cast<std::complex<double>>();
  return a;
}

Eigen::VectorXcd bracket(const DenseStructure& s, const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(s.n);
  for (int i = 0; i < s.n; ++i) {
    for (int j = 0; j < s.n; ++j) {
      for (int k = 0; k < s.n; ++k) out(k) += x(i) * y(j) * s.constant(i, j, k);
    }
  }
  return out;
}

}  // namespace

Christoffel oracle_levi_civita(const DenseStructure& s) {
  const int n = s.n;
  // lower[i][j][z] = g(nabla_i E_j, E_z) by Koszul
  std::vector<double> lower(static_cast<std::size_t>(n * n * n), 0.0);
  auto gb = [&](int a, int b, int z) {
    double v = 0.0;
    for (int k = 0; k < n; ++k) v += s.constant(a, b, k) * s.g(k, z);
    return v;
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int z = 0; z < n; ++z) lower[at(n, i, j, z)] = 0.5 * (gb(i, j, z) - gb(j, z, i) + gb(z, i, j));
  const Eigen::MatrixXd ginv = s.g.inverse();
  Christoffel gamma(lower.size(), 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double v = 0.0;
        for (int z = 0; z < n; ++z) v += ginv(k, z) * lower[at(n, i, j, z)];
        gamma[at(n, i, j, k)] = v;
      }
  return gamma;
}

Christoffel oracle_canonical(const DenseStructure& s, const Christoffel& lc) {
  Christoffel out(lc.size(), 0.0);
  for (int i = 0; i < s.n; ++i) {
    const Eigen::MatrixXd a = along(s, lc, i);
    const Eigen::MatrixXd c = 0.5 * (a - s.j * a * s.j);
    for (int j = 0; j < s.n; ++j)
      for (int k = 0; k < s.n; ++k) out[at(s.n, i, j, k)] = c(k, j);
  }
  return out;
}

std::vector<double> oracle_curvature(const DenseStructure& s, const Christoffel& gamma) {
  const int n = s.n;
  std::vector<double> r(static_cast<std::size_t>(n * n * n * n), 0.0);
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      Eigen::MatrixXd m = along(s, gamma, k) * along(s, gamma, l) - along(s, gamma, l) * along(s, gamma, k);
      for (int q = 0; q < n; ++q) m -= s.constant(k, l, q) * along(s, gamma, q);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r[static_cast<std::size_t>(((i * n + j) * n + k) * n + l)] = m(i, j);
    }
  }
  return r;
}

Eigen::MatrixXd oracle_ricci(const DenseStructure& s, const std::vector<double>& r) {
  const int n = s.n;
  Eigen::MatrixXd ric = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) ric(i, j) += r[static_cast<std::size_t>(((k * n + i) * n + k) * n + j)];
  return ric;
}

double oracle_scal(const DenseStructure& s, const Eigen::MatrixXd& ricci) {
  return (s.g.inverse() * ricci).trace();
}

Eigen::MatrixXcd oracle_complex_ricci(const DenseStructure& s, const Christoffel& gamma,
                                      const Eigen::MatrixXcd& z) {
  const int m = static_cast<int>(z.cols());
  Eigen::MatrixXcd full(s.n, 2 * m);
  full << z, z.conjugate();
  const Eigen::MatrixXcd dual = full.inverse().topRows(m);
  Eigen::MatrixXcd ric(m, m);
  for (int k = 0; k < m; ++k) {
    for (int l = 0; l < m; ++l) {
      const Eigen::VectorXcd x = z.col(k);
      const Eigen::VectorXcd y = z.col(l).conjugate();
      const Eigen::MatrixXcd curv = along(s, gamma, x) * along(s, gamma, y) -
                                    along(s, gamma, y) * along(s, gamma, x) -
                                    along(s, gamma, bracket(s, x, y));
      ric(k, l) = (dual * curv * z).trace();
    }
  }
  return ric;
}

std::vector<double> oracle_nijenhuis(const DenseStructure& s) {
  const int n = s.n;
  std::vector<double> out(static_cast<std::size_t>(n * n * n), 0.0);
  auto br = [&](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int k = 0; k < n; ++k) v(k) += x(a) * y(b) * s.constant(a, b, k);
    return v;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Eigen::VectorXd x = Eigen::VectorXd::Unit(n, i);
      const Eigen::VectorXd y = Eigen::VectorXd::Unit(n, j);
      const Eigen::VectorXd jx = s.j * x;
      const Eigen::VectorXd jy = s.j * y;
      const Eigen::VectorXd v = br(jx, jy) - s.j * br(jx, y) - s.j * br(x, jy) - br(x, y);
      for (int k = 0; k < n; ++k) out[at(n, k, i, j)] = v(k);
    }
  }
  return out;
}

}  // namespace akgeo::testing
