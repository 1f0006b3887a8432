#include "akgeo/plurigenus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

namespace akgeo {

namespace {

constexpr double kModeTolerance = 1e-9;

/// Rows Phi^1_t..Phi^3_t and their conjugates; the inverse's columns are the dual
/// vectors V_1..V_3, conj V_1..conj V_3.
ComplexMatrix nakamura_dual_frame(const DeformationCoefficients& c) {
  const auto phi = nakamura_coframe(c, FrameTag("E"));
  ComplexMatrix rows = ComplexMatrix::Zero(6, 6);
  for (int b = 0; b < 3; ++b) {
    for (const auto& [mask, v] : phi[static_cast<std::size_t>(b)].terms()) {
      const int k = mask_indices(mask).front();
      rows(b, k) = v;
      rows(b + 3, k) = std::conj(v);
    }
  }
  Eigen::FullPivLU<ComplexMatrix> lu(rows);
  if (!lu.isInvertible()) throw InternalInconsistency("Nakamura coframe is degenerate");
  return lu.inverse();
}

std::string describe(const std::vector<Mode>& modes) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < modes.size(); ++i) {
    os << (i ? ", " : "") << "(" << modes[i].first << ", " << modes[i].second << ")";
  }
  os << "}";
  return os.str();
}

}  // namespace

double ModeEquation::residual(long long n, long long k) const {
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  return quad_s * kd * kd + cross * nd * kd + quad_x * nd * nd - rhs;
}

double ModeEquation::scale() const {
  return std::max({std::abs(quad_s), std::abs(cross), std::abs(quad_x), std::abs(rhs)});
}

InvariantForm dbar_canonical_coefficient(const AlmostHermitianSpec& spec, int m) {
  if (spec.family != FamilyKind::nakamura || !spec.nakamura || !spec.orthonormal) {
    throw DomainError("dbar_canonical_coefficient expects a Nakamura spec on its frame E");
  }
  if (m < 1) throw DomainError("tensor power m must be positive");
  const DeformationCoefficients& c = spec.nakamura->c;
  const FrameTag& frame = spec.algebra.frame();
  const auto phi = nakamura_coframe(c, frame);
  const InvariantForm sigma = wedge(wedge(phi[0], phi[1]), phi[2]);
  const InvariantForm dbar_sigma = dbar(sigma, 3, spec.j, spec.algebra);

  const ComplexMatrix dual = nakamura_dual_frame(c);
  const ComplexVector v1 = dual.col(0), v2 = dual.col(1), v3 = dual.col(2);
  const ComplexVector top[] = {v1, v2, v3};
  const Complex s0 = sigma.evaluate(top);

  InvariantForm eta(spec.algebra.dim(), 1, frame);
  for (int b = 0; b < 3; ++b) {
    const ComplexVector args[] = {dual.col(3 + b), v1, v2, v3};
    eta += (dbar_sigma.evaluate(args) / s0) * phi[static_cast<std::size_t>(b)].conj();
  }
  eta = eta.normalized();
  const double r = (dbar_sigma - wedge(eta, sigma)).max_abs();
  if (r >= tol::kConnection) {
    throw InternalInconsistency("dbar of the canonical section is not of the form eta ^ section");
  }
  // Leibniz rule on the m-th tensor power.
  return (static_cast<double>(m) * eta).normalized();
}

ModeEquation mode_equation(const DeformationParameter& t, int m, double zeta) {
  if (m < 1) throw DomainError("tensor power m must be positive");
  if (!std::isfinite(zeta) || zeta <= 0.0) throw DomainError("zeta must be positive");
  const DeformationCoefficients c = deformation_coefficients(t);
  ModeEquation eq;
  eq.m_power = m;
  eq.alpha = c.alpha;
  eq.beta = c.beta;
  eq.gamma = c.gamma;
  eq.delta = std::abs(c.delta) < kDeltaZero ? 0.0 : c.delta;
  eq.zeta = zeta;
  const double md = m * eq.delta;
  eq.quad_s = c.beta / (zeta * zeta);
  eq.cross = -2.0 * c.alpha / zeta;
  eq.quad_x = -c.gamma;
  eq.rhs = -c.beta * md * md / (std::numbers::pi * std::numbers::pi);
  return eq;
}

double discriminant(const ModeEquation& eq, long long n) {
  const double nd = static_cast<double>(n);
  return eq.cross * eq.cross * nd * nd - 4.0 * eq.quad_s * (eq.quad_x * nd * nd - eq.rhs);
}

std::vector<Mode> analytic_modes(const ModeEquation& eq, long long bound) {
  if (bound < 1) throw DomainError("mode bound must be at least 1");
  if (eq.quad_s == 0.0) throw DomainError("mode equation degenerates: beta = 0");
  const double tol = kModeTolerance * eq.scale();
  // D(n) = lead n^2 + D(0)
  const double lead = eq.cross * eq.cross - 4.0 * eq.quad_s * eq.quad_x;
  const double d0 = discriminant(eq, 0);
  long long n_max = bound;
  if (lead < 0.0) {
    if (d0 < -tol * tol) return {};
    const double reach = std::sqrt(std::max(d0, 0.0) / -lead);
    n_max = std::min<long long>(bound, static_cast<long long>(std::floor(reach)) + 1);
  }
  std::set<Mode> found;
  for (long long n = -n_max; n <= n_max; ++n) {
    const double d = discriminant(eq, n);
    if (d < -tol * tol) continue;
    const double sq = std::sqrt(std::max(d, 0.0));
    const double nd = static_cast<double>(n);
    for (double root : {(-eq.cross * nd + sq) / (2.0 * eq.quad_s),
                        (-eq.cross * nd - sq) / (2.0 * eq.quad_s)}) {
      const long long k = std::llround(root);
      if (std::llabs(k) > bound) continue;
      if (std::abs(eq.residual(n, k)) <= tol) found.insert({n, k});
    }
  }
  return {found.begin(), found.end()};
}

std::vector<Mode> brute_force_modes(const ModeEquation& eq, long long bound) {
  if (bound < 1) throw DomainError("mode bound must be at least 1");
  const double tol = kModeTolerance * eq.scale();
  const double qs = eq.quad_s;
  const Eigen::ArrayXd ks = Eigen::ArrayXd::LinSpaced(2 * bound + 1, static_cast<double>(-bound),
                                                      static_cast<double>(bound));
  std::vector<Mode> out;
  for (long long n = -bound; n <= bound; ++n) {
    const double nd = static_cast<double>(n);
    const double lin = eq.cross * nd;
    const double base = eq.quad_x * nd * nd - eq.rhs;
    // Vectorized row minimum first; only rows with a hit are walked.
    if (((qs * ks + lin) * ks + base).abs().minCoeff() > tol) continue;
    for (long long k = -bound; k <= bound; ++k) {
      const double kd = static_cast<double>(k);
      if (std::abs((qs * kd + lin) * kd + base) <= tol) out.emplace_back(n, k);
    }
  }
  return out;
}

int plurigenus_from_modes(const ModeEquation& eq, const std::vector<Mode>& modes) {
  const int p = eq.delta == 0.0 ? 1 : 0;
  const std::vector<Mode> constant_only{{0, 0}};
  if ((p == 1 && modes != constant_only) || (p == 0 && !modes.empty())) {
    throw InternalInconsistency("mode solutions " + describe(modes) + " contradict delta = " +
                                std::to_string(eq.delta));
  }
  return p;
}

int plurigenus(const DeformationParameter& t, int m, long long bound, double zeta,
               ModeEvidence* evidence) {
  const ModeEquation eq = mode_equation(t, m, zeta);
  const auto analytic = analytic_modes(eq, bound);
  const auto brute = brute_force_modes(eq, bound);
  if (analytic != brute) {
    throw InternalInconsistency("mode search disagrees with discriminant analysis at m = " +
                                std::to_string(m) + ": analytic " + describe(analytic) +
                                ", brute force " + describe(brute));
  }
  const int p = plurigenus_from_modes(eq, analytic);
  if (evidence) {
    evidence->m = m;
    evidence->discriminant_at_zero = discriminant(eq, 0);
    evidence->analytic = analytic;
    evidence->brute_force = brute;
    evidence->bound = bound;
  }
  return p;
}

PlurigenusResult kodaira_dimension(const DeformationParameter& t, int m_max, long long bound,
                                   double zeta) {
  if (m_max < 1) throw DomainError("m_max must be at least 1");
  check_nakamura_domain(t);
  PlurigenusResult result;
  bool any = false;
  for (int m = 1; m <= m_max; ++m) {
    ModeEvidence ev;
    const int p = plurigenus(t, m, bound, zeta, &ev);
    result.per_m[m] = p;
    result.evidence.push_back(std::move(ev));
    any = any || p > 0;
  }
  result.kappa = any ? KodairaDimension::zero : KodairaDimension::minus_infinity;
  return result;
}

RealMatrix principal_symbol(const DeformationParameter& t, double s) {
  const ComplexMatrix dual = nakamura_dual_frame(deformation_coefficients(t));
  // E3 = e^{-s} d/dy1, E4 = e^{s} d/dy2, E5 = e^{-s} d/dy3, E6 = e^{s} d/dy4
  const double em = std::exp(-s);
  const double ep = std::exp(s);
  RealMatrix sym = RealMatrix::Zero(4, 4);
  for (int b : {1, 2}) {
    ComplexVector y(4);
    y << em * dual(2, b), ep * dual(3, b), em * dual(4, b), ep * dual(5, b);
    const RealVector p = y.real();
    const RealVector q = y.imag();
    sym += 4.0 * (p * p.transpose() + q * q.transpose());
  }
  return sym;
}

EllipticityVerdict ellipticity_check(const DeformationParameter& t, int sample_count,
                                     double zeta) {
  if (sample_count < 2) throw DomainError("ellipticity check needs at least 2 samples");
  if (!std::isfinite(zeta) || zeta <= 0.0) throw DomainError("zeta must be positive");
  const DeformationCoefficients c = deformation_coefficients(t);
  EllipticityVerdict v;
  v.samples = sample_count;
  v.min_eigenvalue = std::numeric_limits<double>::infinity();
  const double expected_det = 1.0 / (c.lambda * c.lambda);
  for (int i = 0; i < sample_count; ++i) {
    const double s = zeta * i / (sample_count - 1);
    const RealMatrix sym = principal_symbol(t, s);
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(sym);
    v.min_eigenvalue = std::min(v.min_eigenvalue, es.eigenvalues().minCoeff());
    const double det = sym.block(2, 2, 2, 2).determinant();
    v.block_determinant_residual =
        std::max(v.block_determinant_residual, std::abs(det - expected_det));
  }
  v.elliptic = v.min_eigenvalue > tol::kPositiveDefinite;
  if (!v.elliptic) {
    throw InternalInconsistency("principal symbol is not positive definite (min eigenvalue " +
                                std::to_string(v.min_eigenvalue) + ")");
  }
  if (v.block_determinant_residual >= tol::kComposite * std::max(1.0, expected_det)) {
    throw InternalInconsistency("(y3, y4) symbol block determinant differs from 1 / lambda^2");
  }
  return v;
}

}  // namespace akgeo
