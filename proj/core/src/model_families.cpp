#include "akgeo/model_families.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace akgeo {

namespace {

constexpr double kDomainMargin = 1e-9;

std::vector<std::string> numbered(const std::string& stem, int n, const std::string& suffix = "") {
  std::vector<std::string> out;
  for (int i = 1; i <= n; ++i) out.push_back(stem + std::to_string(i) + suffix);
  return out;
}

/// Antisymmetric entry pair in the last two slots.
void set_pair(ValueTable& t, std::initializer_list<int> prefix, int k, int l, Complex v) {
  std::vector<int> a(prefix), b(prefix);
  a.push_back(k);
  a.push_back(l);
  b.push_back(l);
  b.push_back(k);
  t.set_flat(t.offset(std::span<const int>(a)), v);
  t.set_flat(t.offset(std::span<const int>(b)), -v);
}

/// Index of the conjugate basis vector in (z_1..z_n, conj z_1..conj z_n).
int conj_index(int a, int n) { return a < n ? a + n : a - n; }

/// theta^j_i = -conj(theta^i_j) for every known (i, j) entry.
void mirror_skew_hermitian_1forms(ValueTable& t, int n) {
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int a = 0; a < 2 * n; ++a) {
        const std::size_t src = t.offset({i, j, conj_index(a, n)});
        if (!t.known(src)) continue;
        t.set({j, i, a}, -std::conj(t.flat(src)));
      }
    }
  }
}

void mirror_skew_hermitian_2forms(ValueTable& t, int n) {
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int a = 0; a < 2 * n; ++a) {
        for (int b = 0; b < 2 * n; ++b) {
          const std::size_t src = t.offset({i, j, conj_index(a, n), conj_index(b, n)});
          if (!t.known(src)) continue;
          t.set({j, i, a, b}, -std::conj(t.flat(src)));
        }
      }
    }
  }
}

}  // namespace

std::string to_string(KodairaDimension k) {
  return k == KodairaDimension::zero ? "0" : "-inf";
}

void validate_spec(const AlmostHermitianSpec& spec) {
  const FrameTag& f = spec.algebra.frame();
  if (spec.j.frame() != f || spec.metric.frame() != f) {
    throw FrameMismatch("spec '" + spec.name + "': algebra, J and metric use different frames");
  }
  const auto jac = validate_algebra(spec.algebra);
  if (!jac.passed) throw ValidationError("Jacobi identity fails", jac.max_residual);
  if (spec.orthonormal) {
    const FrameChange& fc = *spec.orthonormal;
    if (fc.from() != f) throw FrameMismatch("orthonormal frame change does not start at '" + f.name + "'");
    const int n = spec.algebra.dim();
    const RealMatrix g = change_frame_bilinear(spec.metric.g(), fc);
    const double rg = (g - RealMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
    if (rg >= tol::kFrame) throw ValidationError("orthonormal frame change does not give g = I", rg);
    const RealMatrix j = change_frame_endomorphism(spec.j.matrix(), fc);
    const double rj = (j - standard_complex_structure(n)).cwiseAbs().maxCoeff();
    if (rj >= tol::kFrame) {
      throw ValidationError("orthonormal frame change does not put J in standard form", rj);
    }
  }
}

AlmostHermitianSpec to_orthonormal(const AlmostHermitianSpec& spec) {
  std::optional<FrameChange> fc = spec.orthonormal;
  std::vector<std::string> labels = spec.orthonormal_labels;
  if (!fc) {
    if (spec.metric.is_orthonormal() && spec.j.is_standard()) return spec;
    fc = adapted_orthonormal_frame(spec.metric, spec.j, FrameTag(spec.algebra.frame().name + "'"));
    labels.clear();
    for (const auto& l : spec.algebra.labels()) labels.push_back(l + "'");
  }
  InvariantAlgebra alg = change_frame(spec.algebra, *fc, labels);
  AlmostComplexStructure j = spec.j.in_frame(*fc);
  MetricData metric = spec.metric.in_frame(*fc, j);
  AlmostHermitianSpec out{spec.name,   std::move(alg), std::move(j),   std::move(metric),
                          std::nullopt, {},             spec.family,    spec.a,
                          spec.nakamura};
  return out;
}

AlmostHermitianSpec kodaira_thurston(double a) {
  if (!std::isfinite(a) || a <= 0.0) {
    throw DomainError("Kodaira-Thurston metric needs a > 0");
  }
  const FrameTag frame("E");
  const StructureConstant c[] = {{1, 2, 3, a}};
  InvariantAlgebra alg(4, c, frame, numbered("E", 4));
  AlmostComplexStructure j(standard_complex_structure(4), frame);
  MetricData metric = MetricData::from_metric(RealMatrix::Identity(4, 4), j);
  std::ostringstream name;
  name << "kodaira_thurston(a=" << a << ")";
  AlmostHermitianSpec spec{name.str(), std::move(alg), std::move(j), std::move(metric),
                           std::nullopt, {}, FamilyKind::kodaira_thurston, a, std::nullopt};
  validate_spec(spec);
  return spec;
}

AlmostHermitianSpec kodaira_thurston_coordinate(double a) {
  if (!std::isfinite(a) || a <= 0.0) {
    throw DomainError("Kodaira-Thurston metric needs a > 0");
  }
  const FrameTag frame("e");
  const StructureConstant c[] = {{1, 2, 3, 1.0}};
  InvariantAlgebra alg(4, c, frame, numbered("e", 4));
  RealMatrix jm = RealMatrix::Zero(4, 4);
  jm(1, 0) = 1.0;
  jm(0, 1) = -1.0;
  jm(3, 2) = 1.0 / a;
  jm(2, 3) = -a;
  AlmostComplexStructure j(jm, frame);
  const InvariantForm omega = InvariantForm::monomial(4, {0, 1}, frame) +
                              InvariantForm::monomial(4, {2, 3}, frame);
  MetricData metric = MetricData::from_symplectic(omega, j);
  RealMatrix p = RealMatrix::Identity(4, 4);
  p(2, 2) = std::sqrt(a);
  p(3, 3) = 1.0 / std::sqrt(a);
  std::ostringstream name;
  name << "kodaira_thurston_coordinate(a=" << a << ")";
  AlmostHermitianSpec spec{name.str(),
                           std::move(alg),
                           std::move(j),
                           std::move(metric),
                           FrameChange(p, frame, FrameTag("E")),
                           numbered("E", 4),
                           FamilyKind::kodaira_thurston,
                           a,
                           std::nullopt};
  validate_spec(spec);
  return spec;
}

double default_zeta() { return std::log((3.0 + std::sqrt(5.0)) / 2.0); }

void check_nakamura_domain(const DeformationParameter& t) {
  for (double x : t) {
    if (!std::isfinite(x)) throw DomainError("deformation parameter is not finite");
  }
  const double r1 = t[0] * t[0] + t[1] * t[1];
  const double r2 = t[2] * t[2] + t[3] * t[3];
  if (r1 >= 1.0 - kDomainMargin || r2 >= 1.0 - kDomainMargin) {
    std::ostringstream os;
    os << "deformation parameter outside the domain: t1^2+t2^2 = " << r1
       << ", t3^2+t4^2 = " << r2 << " (both must be < 1)";
    throw DomainError(os.str());
  }
}

double coefficient_identity_residual(const DeformationCoefficients& c) {
  return std::max(std::abs(-c.alpha * c.alpha - c.beta * c.gamma - 1.0),
                  std::abs(-c.delta * c.delta - c.lambda * c.mu - 1.0));
}

DeformationCoefficients deformation_coefficients(const DeformationParameter& t) {
  check_nakamura_domain(t);
  const auto [t1, t2, t3, t4] = t;
  const double d1 = t1 * t1 + t2 * t2 - 1.0;
  const double d2 = t3 * t3 + t4 * t4 - 1.0;
  if (std::abs(d1) < 1e-12 || std::abs(d2) < 1e-12) throw DomainError("vanishing denominator");
  DeformationCoefficients c;
  c.alpha = 2.0 * t2 / d1;
  c.beta = ((1.0 - t1) * (1.0 - t1) + t2 * t2) / d1;
  c.gamma = -((1.0 + t1) * (1.0 + t1) + t2 * t2) / d1;
  c.delta = 2.0 * t4 / d2;
  c.lambda = ((1.0 - t3) * (1.0 - t3) + t4 * t4) / d2;
  c.mu = -((1.0 + t3) * (1.0 + t3) + t4 * t4) / d2;
  const double r = coefficient_identity_residual(c);
  if (r >= tol::kFrame) {
    throw InternalInconsistency("-alpha^2 - beta gamma = -delta^2 - lambda mu = 1 fails");
  }
  return c;
}

InvariantAlgebra nakamura_algebra(const FrameTag& frame) {
  const StructureConstant c[] = {
      {0, 2, 2, -1.0}, {0, 3, 3, 1.0}, {0, 4, 4, -1.0}, {0, 5, 5, 1.0}};
  return InvariantAlgebra(6, c, frame, numbered("E", 6));
}

RealMatrix nakamura_deformation_endomorphism(const DeformationParameter& t) {
  const auto [t1, t2, t3, t4] = t;
  RealMatrix l = RealMatrix::Zero(6, 6);
  l(0, 0) = -t1;
  l(1, 0) = -t2;
  l(0, 1) = -t2;
  l(1, 1) = t1;
  l(2, 2) = 1.0;
  l(3, 3) = 1.0;
  l(4, 4) = -t3;
  l(5, 4) = -t4;
  l(4, 5) = -t4;
  l(5, 5) = t3;
  return l;
}

RealMatrix nakamura_j_conjugated(const DeformationParameter& t) {
  const RealMatrix m = RealMatrix::Identity(6, 6) + nakamura_deformation_endomorphism(t);
  Eigen::FullPivLU<RealMatrix> lu(m);
  if (!lu.isInvertible()) throw DomainError("I + L_t is singular");
  return m * standard_complex_structure(6) * lu.inverse();
}

RealMatrix nakamura_j_closed_form(const DeformationCoefficients& c) {
  RealMatrix j = RealMatrix::Zero(6, 6);
  j(0, 0) = c.alpha;
  j(0, 1) = c.beta;
  j(1, 0) = c.gamma;
  j(1, 1) = -c.alpha;
  j(2, 3) = -1.0;
  j(3, 2) = 1.0;
  j(4, 4) = c.delta;
  j(4, 5) = c.lambda;
  j(5, 4) = c.mu;
  j(5, 5) = -c.delta;
  return j;
}

FrameChange nakamura_orthonormal_frame(const DeformationCoefficients& c, const FrameTag& from,
                                       const FrameTag& to) {
  const double sg = std::sqrt(c.gamma);
  const double sm = std::sqrt(c.mu);
  RealMatrix p = RealMatrix::Zero(6, 6);
  p(0, 0) = 1.0 / sg;
  p(0, 1) = c.alpha / sg;
  p(1, 1) = sg;
  p(2, 2) = 1.0;
  p(3, 3) = 1.0;
  p(4, 4) = 1.0 / sm;
  p(4, 5) = c.delta / sm;
  p(5, 5) = sm;
  return FrameChange(p, from, to);
}

std::array<InvariantForm, 3> nakamura_coframe(const DeformationCoefficients& c,
                                              const FrameTag& frame) {
  ComplexVector p1 = ComplexVector::Zero(6);
  ComplexVector p2 = ComplexVector::Zero(6);
  ComplexVector p3 = ComplexVector::Zero(6);
  p1(0) = Complex(1.0, -c.alpha);
  p1(1) = Complex(0.0, -c.beta);
  p2(2) = 1.0;
  p2(3) = kI;
  p3(4) = Complex(1.0, -c.delta);
  p3(5) = Complex(0.0, -c.lambda);
  return {InvariantForm::covector(p1, frame), InvariantForm::covector(p2, frame),
          InvariantForm::covector(p3, frame)};
}

AlmostHermitianSpec nakamura(const DeformationParameter& t, double zeta) {
  if (!std::isfinite(zeta) || zeta <= 0.0) throw DomainError("zeta must be positive");
  const DeformationCoefficients c = deformation_coefficients(t);
  const FrameTag frame("E");
  const RealMatrix closed = nakamura_j_closed_form(c);
  const RealMatrix conjugated = nakamura_j_conjugated(t);
  const double r = (closed - conjugated).cwiseAbs().maxCoeff();
  if (r >= tol::kFrame) {
    throw InternalInconsistency("closed-form J_t and (I + L_t) J (I + L_t)^{-1} disagree");
  }
  InvariantAlgebra alg = nakamura_algebra(frame);
  AlmostComplexStructure j(closed, frame);
  const InvariantForm omega = InvariantForm::monomial(6, {0, 1}, frame) +
                              InvariantForm::monomial(6, {2, 3}, frame) +
                              InvariantForm::monomial(6, {4, 5}, frame);
  MetricData metric = MetricData::from_symplectic(omega, j);
  std::ostringstream name;
  name << "nakamura(t=" << t[0] << "," << t[1] << "," << t[2] << "," << t[3] << ")";
  AlmostHermitianSpec spec{name.str(),
                           std::move(alg),
                           std::move(j),
                           std::move(metric),
                           nakamura_orthonormal_frame(c, frame, FrameTag("E'")),
                           numbered("E", 6, "'"),
                           FamilyKind::nakamura,
                           std::nullopt,
                           NakamuraData{t, zeta, c}};
  validate_spec(spec);
  return spec;
}

ExpectedResults expected_kodaira(double a) {
  if (!std::isfinite(a) || a <= 0.0) throw DomainError("Kodaira-Thurston metric needs a > 0");
  ExpectedResults ex;
  const double q = a / 4.0;
  const double h = a / 2.0;
  const double a2 = a * a;

  ValueTable nij = ValueTable::zeros({4, 4, 4});
  set_pair(nij, {2}, 0, 2, a);
  set_pair(nij, {3}, 0, 3, -a);
  set_pair(nij, {3}, 1, 2, -a);
  set_pair(nij, {2}, 1, 3, -a);
  ex.tables["nijenhuis"] = nij;

  // [i][j][k] = e^k(nabla_{E_i} E_j)
  ValueTable lc = ValueTable::zeros({4, 4, 4});
  lc.set({1, 2, 3}, h);
  lc.set({1, 3, 2}, -h);
  lc.set({3, 1, 2}, -h);
  lc.set({3, 2, 1}, h);
  lc.set({2, 3, 1}, h);
  lc.set({2, 1, 3}, -h);
  ex.tables["levi_civita"] = lc;

  ValueTable can = ValueTable::zeros({4, 4, 4});
  can.set({1, 2, 3}, h);
  can.set({1, 3, 2}, -h);
  can.set({2, 0, 2}, -q);
  can.set({2, 1, 3}, -q);
  can.set({2, 2, 0}, q);
  can.set({2, 3, 1}, q);
  can.set({3, 0, 3}, q);
  can.set({3, 1, 2}, -q);
  can.set({3, 2, 1}, q);
  can.set({3, 3, 0}, -q);
  ex.tables["canonical"] = can;

  // [i][j][k] = omega^i_j(E_k)
  ValueTable w = ValueTable::zeros({4, 4, 4});
  w.set({0, 2, 2}, q);
  w.set({0, 3, 3}, -q);
  w.set({1, 2, 3}, q);
  w.set({1, 3, 2}, q);
  w.set({2, 0, 2}, -q);
  w.set({2, 1, 3}, -q);
  w.set({2, 3, 1}, -2.0 * q);
  w.set({3, 0, 3}, q);
  w.set({3, 1, 2}, -q);
  w.set({3, 2, 1}, 2.0 * q);
  ex.tables["real_connection"] = w;

  ValueTable tor = ValueTable::zeros({4, 4, 4});
  set_pair(tor, {2}, 0, 2, q);
  set_pair(tor, {2}, 1, 3, -q);
  set_pair(tor, {3}, 1, 2, -q);
  set_pair(tor, {3}, 0, 3, -q);
  ex.tables["real_torsion"] = tor;

  const double e = a2 / 8.0;
  ValueTable om = ValueTable::zeros({4, 4, 4, 4});
  set_pair(om, {0, 1}, 2, 3, -e);
  set_pair(om, {0, 2}, 1, 3, e);
  set_pair(om, {0, 3}, 1, 2, 3.0 * e);
  set_pair(om, {1, 0}, 2, 3, e);
  set_pair(om, {1, 2}, 1, 2, -3.0 * e);
  set_pair(om, {1, 3}, 1, 3, e);
  set_pair(om, {2, 0}, 1, 3, -e);
  set_pair(om, {2, 1}, 1, 2, 3.0 * e);
  set_pair(om, {2, 3}, 2, 3, e);
  set_pair(om, {3, 0}, 1, 2, -3.0 * e);
  set_pair(om, {3, 1}, 1, 3, -e);
  set_pair(om, {3, 2}, 2, 3, -e);
  ex.tables["real_curvature"] = om;

  ValueTable ric = ValueTable::zeros({4, 4});
  ric.set({2, 2}, -3.0 * a2 / 8.0);
  ric.set({3, 3}, a2 / 4.0);
  ex.tables["ricci_real"] = ric;
  ex.tables["scal_real"] = ValueTable::scalar(-a2 / 8.0);

  // Complex basis order: z_1, z_2, conj z_1, conj z_2.
  const double c = std::numbers::sqrt2 * a / 4.0;
  ValueTable th = ValueTable::zeros({2, 2, 4});
  th.set({0, 1, 1}, c);
  th.set({1, 0, 3}, -c);
  th.set({1, 1, 0}, c);
  th.set({1, 1, 2}, -c);
  ex.tables["complex_connection"] = th;

  ValueTable psi = ValueTable::zeros({2, 2, 4, 4});
  set_pair(psi, {0, 0}, 1, 3, -e);
  set_pair(psi, {0, 1}, 0, 1, -2.0 * e);
  set_pair(psi, {0, 1}, 0, 3, -e);
  set_pair(psi, {0, 1}, 1, 2, -2.0 * e);
  set_pair(psi, {0, 1}, 2, 3, e);
  set_pair(psi, {1, 0}, 0, 1, -e);
  set_pair(psi, {1, 0}, 0, 3, -2.0 * e);
  set_pair(psi, {1, 0}, 1, 2, -e);
  set_pair(psi, {1, 0}, 2, 3, 2.0 * e);
  set_pair(psi, {1, 1}, 1, 3, e);
  ex.tables["psi"] = psi;

  // R^i_{j k lbar}, read off the (1,1) parts of the curvature matrix above.
  ValueTable r = ValueTable::zeros({2, 2, 2, 2});
  r.set({0, 0, 1, 1}, -e);
  r.set({0, 1, 0, 1}, -e);
  r.set({0, 1, 1, 0}, -2.0 * e);
  r.set({1, 0, 0, 1}, -2.0 * e);
  r.set({1, 0, 1, 0}, -e);
  r.set({1, 1, 1, 1}, e);
  ex.tables["curvature_coefficients"] = r;

  ex.tables["ricci_complex"] = ValueTable::zeros({2, 2});
  ex.tables["scal_complex"] = ValueTable::scalar(0.0);
  return ex;
}

ExpectedResults expected_nakamura(const DeformationParameter& t) {
  const DeformationCoefficients k = deformation_coefficients(t);
  const double al = k.alpha;
  const double de = k.delta;
  ExpectedResults ex;

  const double e = 1.0 / (2.0 * std::sqrt(k.gamma));
  ValueTable tor = ValueTable::zeros({6, 6, 6});
  set_pair(tor, {2}, 0, 2, e);
  set_pair(tor, {2}, 0, 3, e * al);
  set_pair(tor, {2}, 1, 2, e * al);
  set_pair(tor, {2}, 1, 3, -e);
  set_pair(tor, {3}, 0, 2, e * al);
  set_pair(tor, {3}, 0, 3, -e);
  set_pair(tor, {3}, 1, 2, -e);
  set_pair(tor, {3}, 1, 3, -e * al);
  const double u = e * (1.0 - al * de);
  const double v = e * (al + de);
  set_pair(tor, {4}, 0, 4, u);
  set_pair(tor, {4}, 0, 5, v);
  set_pair(tor, {4}, 1, 4, v);
  set_pair(tor, {4}, 1, 5, -u);
  set_pair(tor, {5}, 0, 4, v);
  set_pair(tor, {5}, 0, 5, -u);
  set_pair(tor, {5}, 1, 4, -u);
  set_pair(tor, {5}, 1, 5, -v);
  ex.tables["real_torsion"] = tor;

  // Complex basis order: z_1, z_2, z_3, conj z_1, conj z_2, conj z_3.
  const double c = std::numbers::sqrt2 / (2.0 * std::sqrt(k.gamma));
  const Complex one_ia(1.0, al);
  ValueTable ct = ValueTable::zeros({3, 6, 6});
  set_pair(ct, {1}, 3, 4, c * one_ia);
  set_pair(ct, {2}, 3, 5, c * one_ia * Complex(1.0, de));
  ex.tables["complex_torsion"] = ct;

  ValueTable th = ValueTable::unknown({3, 3, 6});
  for (int a = 0; a < 6; ++a) {
    th.set({0, 0, a}, 0.0);
    th.set({1, 1, a}, 0.0);
    th.set({1, 2, a}, 0.0);
    th.set({0, 1, a}, 0.0);
    th.set({0, 2, a}, 0.0);
    th.set({2, 2, a}, 0.0);
  }
  th.set({0, 1, 1}, -c * one_ia);
  th.set({0, 2, 2}, -c * one_ia * Complex(1.0, -de));
  th.set({2, 2, 0}, c * de * Complex(al, 1.0));
  th.set({2, 2, 3}, -c * de * Complex(al, -1.0));
  mirror_skew_hermitian_1forms(th, 3);
  ex.tables["complex_connection"] = th;

  // Psi^1_3 (and so Psi^3_1) is left open.
  const double kk = 1.0 / (2.0 * k.gamma);
  const double aa = 1.0 + al * al;
  ValueTable psi = ValueTable::unknown({3, 3, 6, 6});
  for (auto [i, j] : {std::pair{0, 0}, {0, 1}, {1, 1}, {1, 2}, {2, 2}}) {
    for (int a = 0; a < 6; ++a) {
      for (int b = 0; b < 6; ++b) psi.set({i, j, a, b}, 0.0);
    }
  }
  set_pair(psi, {0, 0}, 1, 4, -kk * aa);
  set_pair(psi, {0, 0}, 2, 5, -kk * aa * (1.0 + de * de));
  set_pair(psi, {0, 1}, 0, 4, -kk * aa);
  set_pair(psi, {0, 1}, 3, 4, -kk * one_ia * one_ia);
  set_pair(psi, {1, 1}, 1, 4, kk * aa);
  set_pair(psi, {1, 2}, 2, 4, kk * aa * Complex(1.0, -de));
  set_pair(psi, {2, 2}, 2, 5, kk * aa * (1.0 + de * de));
  mirror_skew_hermitian_2forms(psi, 3);
  ex.tables["psi"] = psi;

  ex.tables["ricci_complex"] = ValueTable::zeros({3, 3});
  ex.tables["scal_complex"] = ValueTable::scalar(0.0);
  ex.kappa = t[3] == 0.0 ? KodairaDimension::zero : KodairaDimension::minus_infinity;
  return ex;
}

KodairaDimension kodaira_surface_dimension(PiMultipleClass a_class) {
  return a_class == PiMultipleClass::rational_multiple_of_pi ? KodairaDimension::zero
                                                             : KodairaDimension::minus_infinity;
}

}  // namespace akgeo
