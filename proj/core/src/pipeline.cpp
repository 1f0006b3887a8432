#include <cmath>
#include <cstdlib>
#include <functional>

#include "akgeo/report.hpp"

namespace akgeo {

namespace {

template <class F>
auto stage(const char* name, F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const PipelineError&) {
    throw;
  } catch (const Error& e) {
    throw PipelineError(name, e.what());
  }
}

/// (z_1..z_n, conj z_1..conj z_n) over the real frame.
std::vector<ComplexVector> complex_basis_vectors(const ComplexFrameData& cf) {
  std::vector<ComplexVector> out;
  for (int j = 0; j < cf.complex_dim(); ++j) out.push_back(cf.vector(j));
  for (int j = 0; j < cf.complex_dim(); ++j) out.push_back(cf.conj_vector(j));
  return out;
}

std::vector<ComplexVector> real_basis_vectors(int dim) {
  std::vector<ComplexVector> out;
  for (int i = 0; i < dim; ++i) out.push_back(ComplexVector::Unit(dim, i));
  return out;
}

/// table[prefix..][a] = form(basis_a) for 1-forms, [a][b] for 2-forms.
void fill_form(ValueTable& t, std::vector<int> prefix, const InvariantForm& form,
               const std::vector<ComplexVector>& basis) {
  const int m = static_cast<int>(basis.size());
  if (form.degree() == 1) {
    for (int a = 0; a < m; ++a) {
      auto idx = prefix;
      idx.push_back(a);
      const ComplexVector args[] = {basis[static_cast<std::size_t>(a)]};
      t.set_flat(t.offset(std::span<const int>(idx)), form.evaluate(args));
    }
    return;
  }
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      auto idx = prefix;
      idx.push_back(a);
      idx.push_back(b);
      t.set_flat(t.offset(std::span<const int>(idx)),
                 form.evaluate(basis[static_cast<std::size_t>(a)],
                               basis[static_cast<std::size_t>(b)]));
    }
  }
}

ValueTable christoffel_table(const RealConnection& conn) {
  const int n = conn.dim();
  ValueTable t = ValueTable::zeros({n, n, n});
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) t.set({i, j, k}, conn.christoffel(i, j, k));
    }
  }
  return t;
}

ValueTable vector_form_table(const VectorValuedForm& f, const std::vector<ComplexVector>& basis) {
  const int n = f.dim();
  const int m = static_cast<int>(basis.size());
  ValueTable t = ValueTable::zeros({n, m, m});
  for (int k = 0; k < n; ++k) fill_form(t, {k}, f.component(k), basis);
  return t;
}

ValueTable matrix_table(const ComplexMatrix& m) {
  ValueTable t = ValueTable::zeros({static_cast<int>(m.rows()), static_cast<int>(m.cols())});
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) t.set({i, j}, m(i, j));
  }
  return t;
}

}  // namespace

bool VerificationResult::passed() const {
  for (const auto& it : items) {
    if (!it.passed) return false;
  }
  return true;
}

double VerificationResult::max_residual() const {
  double r = 0.0;
  for (const auto& it : items) {
    if (std::isnan(it.residual)) return it.residual;
    r = std::max(r, it.residual);
  }
  return r;
}

const ValueTable& Report::table(const std::string& key) const {
  const auto it = tables.find(key);
  if (it == tables.end()) throw Error("report has no table '" + key + "'");
  return it->second;
}

Report run_pipeline(const AlmostHermitianSpec& input, const PipelineOptions& options) {
  const AlmostHermitianSpec spec = stage("orthonormal_frame", [&] { return to_orthonormal(input); });
  const InvariantAlgebra& alg = spec.algebra;
  const int dim = alg.dim();
  const int n = dim / 2;

  Report r;
  r.name = spec.name;
  r.frame = alg.frame().name;
  r.labels = alg.labels();
  r.dim = dim;
  const auto real_basis = real_basis_vectors(dim);

  r.flags = stage("classify", [&] { return classify(spec.j, spec.metric, alg); });
  const VectorValuedForm nij = stage("classify", [&] { return nijenhuis(spec.j, alg); });
  r.tables["nijenhuis"] = vector_form_table(nij, real_basis);

  const RealConnection lc = stage("levi_civita", [&] { return levi_civita(spec.metric, alg); });
  r.tables["levi_civita"] = christoffel_table(lc);
  r.checks["levi_civita_metric"] = metric_residual(lc, spec.metric);
  r.checks["levi_civita_torsion_free"] = torsion_free_residual(lc, alg);

  const RealConnection can =
      stage("canonical", [&] { return canonical_connection(lc, spec.j); });
  r.tables["canonical"] = christoffel_table(can);
  r.checks["canonical_metric"] = metric_residual(can, spec.metric);
  r.checks["canonical_parallel_j"] = complex_structure_residual(can, spec.j);

  {
    ValueTable w = ValueTable::zeros({dim, dim, dim});
    const auto forms = real_connection_forms(can);
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) {
        fill_form(w, {i, j}, forms[static_cast<std::size_t>(i * dim + j)], real_basis);
      }
    }
    r.tables["real_connection"] = w;
  }
  r.tables["real_torsion"] = vector_form_table(
      stage("torsion_forms", [&] { return real_torsion(can, alg); }), real_basis);

  const ComplexFrameData cf =
      stage("unitary_frame", [&] { return unitary_frame(spec.metric, spec.j, alg); });
  r.checks["unitary_frame"] = cf.unitarity_residual(spec.metric);
  const auto basis = complex_basis_vectors(cf);

  const ConnectionMatrix theta = stage("connection_forms", [&] { return connection_forms(can, cf); });
  r.checks["theta_skew_hermitian"] = skew_hermitian_residual(theta.forms, n);
  {
    ValueTable t = ValueTable::zeros({n, n, dim});
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) fill_form(t, {i, j}, theta(i, j), basis);
    }
    r.tables["complex_connection"] = t;
  }

  const auto big_theta = stage("torsion_forms", [&] { return torsion_forms(theta, cf, alg); });
  {
    ValueTable t = ValueTable::zeros({n, dim, dim});
    for (int i = 0; i < n; ++i) fill_form(t, {i}, big_theta[static_cast<std::size_t>(i)], basis);
    r.tables["complex_torsion"] = t;
  }

  const ComplexCurvature cc = stage("curvature", [&] { return curvature(theta, alg, cf); });
  r.checks["psi_skew_hermitian"] = skew_hermitian_residual(cc.psi, n);
  {
    ValueTable t = ValueTable::zeros({n, n, dim, dim});
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) fill_form(t, {i, j}, cc.form(i, j), basis);
    }
    r.tables["psi"] = t;
    ValueTable c = ValueTable::zeros({n, n, n, n});
    for (std::size_t q = 0; q < cc.coefficients.size(); ++q) c.set_flat(q, cc.coefficients[q]);
    r.tables["curvature_coefficients"] = c;
  }
  const RealCurvature rc =
      stage("curvature", [&] { return real_curvature(can, alg, spec.metric); });
  {
    ValueTable t = ValueTable::zeros({dim, dim, dim, dim});
    for (std::size_t q = 0; q < rc.components.size(); ++q) t.set_flat(q, rc.components[q]);
    r.tables["real_curvature"] = t;
  }

  stage("ricci", [&] {
    r.tables["ricci_real"] = matrix_table(rc.ricci.cast<Complex>());
    r.tables["scal_real"] = ValueTable::scalar(rc.scal);
    r.tables["ricci_complex"] = matrix_table(cc.ricci);
    r.tables["scal_complex"] = ValueTable::scalar(cc.scal);
    r.checks["scal_trace"] = std::abs(cc.scal - cc.scal_direct);
    return 0;
  });

  if (options.plurigenus && input.nakamura) {
    const NakamuraData& nd = *input.nakamura;
    r.plurigenus = stage("plurigenus", [&] {
      PlurigenusBlock b;
      b.t = nd.t;
      b.zeta = nd.zeta;
      b.m_max = options.m_max;
      b.mode_bound = options.mode_bound;
      const PlurigenusResult pr = kodaira_dimension(nd.t, options.m_max, options.mode_bound, nd.zeta);
      b.per_m = pr.per_m;
      b.kappa = pr.kappa;
      const EllipticityVerdict ev = ellipticity_check(nd.t, options.ellipticity_samples, nd.zeta);
      b.elliptic = ev.elliptic;
      b.min_symbol_eigenvalue = ev.min_eigenvalue;
      return b;
    });
  }
  return r;
}

std::optional<ExpectedResults> expected_for(const AlmostHermitianSpec& spec) {
  if (spec.family == FamilyKind::kodaira_thurston && spec.a) return expected_kodaira(*spec.a);
  if (spec.family == FamilyKind::nakamura && spec.nakamura) {
    return expected_nakamura(spec.nakamura->t);
  }
  return std::nullopt;
}

VerificationResult verify(const Report& report, const ExpectedResults& expected, double tol) {
  VerificationResult out;
  for (const auto& [name, table] : expected.tables) {
    VerificationItem it;
    it.name = name;
    it.tolerance = tol;
    it.residual = max_abs_difference(report.table(name), table);
    it.passed = it.residual < tol;
    out.items.push_back(std::move(it));
  }
  if (expected.kappa && report.plurigenus) {
    VerificationItem it;
    it.name = "kappa";
    it.tolerance = tol;
    it.residual = report.plurigenus->kappa == *expected.kappa ? 0.0 : 1.0;
    it.passed = it.residual < tol;
    out.items.push_back(std::move(it));
  }
  return out;
}

double default_tolerance() {
  const char* env = std::getenv("AKGEO_TOL");
  if (!env || !*env) return tol::kComposite;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == env || *end != '\0' || !std::isfinite(v) || v <= 0.0) {
    throw Error(std::string("AKGEO_TOL is not a positive number: '") + env + "'");
  }
  return v;
}

}  // namespace akgeo
