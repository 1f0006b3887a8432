#pragma once

// The Kodaira-Thurston family X_a and the almost Kahler deformations Y_t of
// the completely solvable Nakamura manifold, with closed-form expected values.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "akgeo/hermitian_geometry.hpp"
#include "akgeo/value_table.hpp"

namespace akgeo {

enum class FamilyKind { generic, kodaira_thurston, nakamura };

enum class KodairaDimension { zero, minus_infinity };

std::string to_string(KodairaDimension k);

/// Nakamura deformation parameter t = (t1, t2, t3, t4).
using DeformationParameter = std::array<double, 4>;

struct DeformationCoefficients {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;
  double lambda = 0.0;
  double mu = 0.0;
};

struct NakamuraData {
  DeformationParameter t{};
  double zeta = 0.0;
  DeformationCoefficients c;
};

/// An invariant almost-Hermitian structure: algebra, J and compatible metric,
/// all on one frame, optionally with a change to an orthonormal J-adapted frame.
struct AlmostHermitianSpec {
  std::string name;
  InvariantAlgebra algebra;
  AlmostComplexStructure j;
  MetricData metric;
  std::optional<FrameChange> orthonormal;
  std::vector<std::string> orthonormal_labels;
  FamilyKind family = FamilyKind::generic;
  std::optional<double> a;
  std::optional<NakamuraData> nakamura;
};

/// Checks frames agree, Jacobi holds, and that the orthonormal change (if any)
/// really gives g = I and block-standard J. Throws ValidationError otherwise.
void validate_spec(const AlmostHermitianSpec& spec);

/// The same structure expressed in its orthonormal J-adapted frame. Uses the
/// attached change when present, the current frame when already adapted, and
/// the Gram-Schmidt fallback otherwise.
AlmostHermitianSpec to_orthonormal(const AlmostHermitianSpec& spec);

/// X_a in the orthonormal frame E: [E2, E3] = a E4, J E1 = E2, J E3 = E4, g = I.
AlmostHermitianSpec kodaira_thurston(double a);
/// X_a in the coordinate frame e: [e2, e3] = e4, J e3 = e4 / a, omega = e^12 + e^34,
/// with the change to E attached.
AlmostHermitianSpec kodaira_thurston_coordinate(double a);

/// log((3 + sqrt 5) / 2)
double default_zeta();

/// Throws DomainError unless t1^2 + t2^2 and t3^2 + t4^2 are below 1 - 1e-9.
void check_nakamura_domain(const DeformationParameter& t);

/// alpha..mu as functions of t; asserts -alpha^2 - beta gamma = -delta^2 - lambda mu = 1.
DeformationCoefficients deformation_coefficients(const DeformationParameter& t);
/// max(|-alpha^2 - beta gamma - 1|, |-delta^2 - lambda mu - 1|)
double coefficient_identity_residual(const DeformationCoefficients& c);

/// [E1, E3] = -E3, [E1, E4] = E4, [E1, E5] = -E5, [E1, E6] = E6.
InvariantAlgebra nakamura_algebra(const FrameTag& frame);
/// L_t as a matrix on the frame E (columns are images).
RealMatrix nakamura_deformation_endomorphism(const DeformationParameter& t);
/// (I + L_t) J (I + L_t)^{-1}
RealMatrix nakamura_j_conjugated(const DeformationParameter& t);
/// The closed-form matrix in alpha..mu.
RealMatrix nakamura_j_closed_form(const DeformationCoefficients& c);
/// E -> E' orthonormal frame of g_t.
FrameChange nakamura_orthonormal_frame(const DeformationCoefficients& c, const FrameTag& from,
                                       const FrameTag& to);
/// Phi^1_t, Phi^2_t, Phi^3_t on the frame E.
std::array<InvariantForm, 3> nakamura_coframe(const DeformationCoefficients& c,
                                              const FrameTag& frame);

/// Y_t on the frame E with omega = E^12 + E^34 + E^56 and g_t = omega(-, J_t -).
/// Builds J_t both ways and throws InternalInconsistency if they differ.
AlmostHermitianSpec nakamura(const DeformationParameter& t, double zeta = default_zeta());

/// Expected tables, keyed by the names the report uses. Real tables refer to
/// the orthonormal frame, complex ones to the unitary frame and its conjugate.
struct ExpectedResults {
  std::map<std::string, ValueTable> tables;
  std::optional<KodairaDimension> kappa;
};

ExpectedResults expected_kodaira(double a);
ExpectedResults expected_nakamura(const DeformationParameter& t);

enum class PiMultipleClass { rational_multiple_of_pi, irrational_multiple_of_pi };
/// Kodaira dimension of (M, J_a) given whether a lies in pi Q.
KodairaDimension kodaira_surface_dimension(PiMultipleClass a_class);

}  // namespace akgeo
