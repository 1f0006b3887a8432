#pragma once

// Spec files, the end-to-end pipeline, verification against expected tables,
// and text/JSON report emission.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "akgeo/plurigenus.hpp"

namespace akgeo {

/// Spec file could not be read, parsed or validated.
class LoadError : public Error {
 public:
  LoadError(const std::string& what, std::optional<double> residual = std::nullopt)
      : Error(what), residual_(residual) {}
  std::optional<double> residual() const noexcept { return residual_; }

 private:
  std::optional<double> residual_;
};

/// A module error raised inside run_pipeline, tagged with the stage name.
class PipelineError : public Error {
 public:
  PipelineError(std::string stage, const std::string& what)
      : Error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

/// Parses a spec document. `source` names it in diagnostics.
AlmostHermitianSpec parse_spec(std::string_view text, const std::string& source = "<input>");
AlmostHermitianSpec load_spec(const std::filesystem::path& path);

struct PipelineOptions {
  bool plurigenus = true;
  int m_max = 10;
  long long mode_bound = 1000;
  int ellipticity_samples = 16;
};

struct PlurigenusBlock {
  DeformationParameter t{};
  double zeta = 0.0;
  int m_max = 0;
  long long mode_bound = 0;
  std::map<int, int> per_m;
  KodairaDimension kappa = KodairaDimension::minus_infinity;
  bool elliptic = false;
  double min_symbol_eigenvalue = 0.0;
};

struct VerificationItem {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct VerificationResult {
  std::vector<VerificationItem> items;
  bool passed() const;
  double max_residual() const;
};

/// Tables use the names and index conventions of ExpectedResults: real ones on
/// the orthonormal frame, complex ones evaluated on (z_1..z_n, conj z_1..conj z_n).
struct Report {
  std::string name;
  std::string frame;
  std::vector<std::string> labels;
  int dim = 0;
  ClassificationFlags flags;
  std::map<std::string, ValueTable> tables;
  std::map<std::string, double> checks;  // structural residuals
  std::optional<PlurigenusBlock> plurigenus;
  std::optional<VerificationResult> verification;

  const ValueTable& table(const std::string& key) const;
};

Report run_pipeline(const AlmostHermitianSpec& spec, const PipelineOptions& options = {});

/// Expected values for the built-in families, if the spec is one of them.
std::optional<ExpectedResults> expected_for(const AlmostHermitianSpec& spec);

/// One item per expected table (plus kappa when both sides have it). Throws
/// DimensionError on shape mismatch and Error on a table missing from the report.
VerificationResult verify(const Report& report, const ExpectedResults& expected, double tol);

enum class ReportFormat { text, json };

std::string format_text(const Report& report);
/// Numbers are printed with 12 significant digits; values below 1e-13 print as 0.
std::string format_json(const Report& report);
std::string format_report(const Report& report, ReportFormat format);

/// AKGEO_TOL when set to a positive number, else 1e-9. Throws Error on garbage.
double default_tolerance();

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitError = 2;

}  // namespace akgeo
