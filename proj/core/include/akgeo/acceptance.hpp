#pragma once

// Acceptance criteria 1-9 as library calls, shared by the acceptance test
// binary and `akgeo paper-check`.

#include <cstdint>
#include <string>
#include <vector>

#include "akgeo/report.hpp"

namespace akgeo {

struct Measurement {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<Measurement> measurements;
  std::string note;
  std::string error;  // non-empty when the run threw

  bool passed() const;
};

struct AcceptanceOptions {
  std::uint64_t seed = 20240917;
  int random_points = 20;
  int m_max = 10;
  long long mode_bound = 1000;
  int ellipticity_samples = 16;
};

/// a values used for the Kodaira-Thurston criteria.
std::vector<double> kodaira_thurston_values();
/// {-0.3, 0, 0.3}^4 (all inside the domain).
std::vector<DeformationParameter> nakamura_grid();
/// Seeded points in the domain, every other one with t4 = 0.
std::vector<DeformationParameter> nakamura_random_points(std::uint64_t seed, int count);

/// Runs criteria 1..9 in order. Criteria 6 and 7 share one plurigenus sweep.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});
/// A single criterion (1..9).
CriterionResult run_criterion(int id, const AcceptanceOptions& options = {});

/// "criterion N: PASS|FAIL  title  [name value < tol, ...]"
std::string format_criterion(const CriterionResult& result);

}  // namespace akgeo
