#pragma once

// Plurigenera and Kodaira dimension of the Nakamura deformations Y_t through
// the Fourier-mode reduction of dbar f = (m i delta / 2) f-type equations.

#include <map>
#include <utility>
#include <vector>

#include "akgeo/model_families.hpp"

namespace akgeo {

/// quad_s k^2 + cross n k + quad_x n^2 = rhs over integer modes (n, k), where
/// u = sum A_{nk} exp(2 pi i (n x + k s / zeta)).
struct ModeEquation {
  int m_power = 1;
  double quad_s = 0.0;  // beta / zeta^2
  double cross = 0.0;   // -2 alpha / zeta
  double quad_x = 0.0;  // -gamma
  double rhs = 0.0;     // -beta (m delta)^2 / pi^2
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;  // snapped to 0 when |delta| < 1e-12
  double zeta = 0.0;

  double residual(long long n, long long k) const;
  double scale() const;
};

using Mode = std::pair<long long, long long>;  // (n, k)

/// |delta| below this counts as the t4 = 0 locus.
inline constexpr double kDeltaZero = 1e-12;

/// eta with dbar((Phi^123_t)^{(x) m}) = eta (x) (Phi^123_t)^{(x) m}, on the spec's frame.
/// Computed from d and the type split of the top (3,0)-form.
InvariantForm dbar_canonical_coefficient(const AlmostHermitianSpec& spec, int m);

ModeEquation mode_equation(const DeformationParameter& t, int m, double zeta = default_zeta());

/// Discriminant in k of the mode equation at fixed n.
double discriminant(const ModeEquation& eq, long long n);

/// Solutions found from the discriminant sign and exact integer roots, |n|, |k| <= bound.
std::vector<Mode> analytic_modes(const ModeEquation& eq, long long bound);

/// Exhaustive search over |n|, |k| <= bound with tolerance 1e-9 * eq.scale().
std::vector<Mode> brute_force_modes(const ModeEquation& eq, long long bound);

struct ModeEvidence {
  int m = 0;
  double discriminant_at_zero = 0.0;
  std::vector<Mode> analytic;
  std::vector<Mode> brute_force;
  long long bound = 0;
};

struct PlurigenusResult {
  std::map<int, int> per_m;
  KodairaDimension kappa = KodairaDimension::minus_infinity;
  std::vector<ModeEvidence> evidence;
};

/// P_m read off a mode set: 1 for exactly {(0, 0)} with delta = 0, 0 for no
/// modes with delta != 0. Anything else throws InternalInconsistency.
int plurigenus_from_modes(const ModeEquation& eq, const std::vector<Mode>& modes);

/// P_m in {0, 1}. Throws InternalInconsistency when the analytic decision and
/// the brute-force search disagree.
int plurigenus(const DeformationParameter& t, int m, long long bound = 1000,
               double zeta = default_zeta(), ModeEvidence* evidence = nullptr);

PlurigenusResult kodaira_dimension(const DeformationParameter& t, int m_max,
                                   long long bound = 1000, double zeta = default_zeta());

struct EllipticityVerdict {
  bool elliptic = false;
  int samples = 0;
  double min_eigenvalue = 0.0;
  /// max over samples of |det(y3, y4 block) - 1 / lambda^2|
  double block_determinant_residual = 0.0;
};

/// Principal symbol of 4 (V_2 conj V_2 + V_3 conj V_3) on (y1..y4) at
/// sample_count points s in [0, zeta].
EllipticityVerdict ellipticity_check(const DeformationParameter& t, int sample_count,
                                     double zeta = default_zeta());

/// The symbol matrix at one s, in the coordinates (y1, y2, y3, y4).
RealMatrix principal_symbol(const DeformationParameter& t, double s);

}  // namespace akgeo
