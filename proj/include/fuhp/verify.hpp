#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fuhp/field.hpp"
#include "fuhp/spherical.hpp"
#include "fuhp/uhp_graph.hpp"

namespace fuhp {

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double tolerance = 0.0;
};

/// Reported, never counted as a failure.
struct Finding {
  std::string name;
  std::string detail;
};

struct VerifyOptions {
  std::vector<std::int64_t> q_list{3, 5, 7};
  std::optional<Residue> delta;  // nullopt: smallest non-square per q
  bool include_lift = false;
  /// Largest q for which the GL(2) lift is built when include_lift is set.
  std::int64_t max_lift_q = 5;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  std::vector<Finding> findings;

  bool passed() const;
  std::vector<const CheckResult*> failures() const;
};

inline constexpr double kOracleTolerance = 1e-9;
inline constexpr double kMassTolerance = 1e-10;
inline constexpr double kPositivityFloor = -1e-12;
inline constexpr double kOrthogonalityTolerance = 1e-10;
inline constexpr double kReconstructionTolerance = 1e-9;
inline constexpr double kThetaTolerance = 1e-12;

struct SphericalInvariants {
  double base_value_residual = 0.0;    // max |omega_i(0) - 1|
  long long multiplicity_sum = 0;      // sum d_i
  double orthogonality_residual = 0.0; // sum_r |S_r| omega_i omega_j - [i=j] q(q-1)/d_i
  double reconstruction_residual = 0.0; // sum_i d_i omega_i(r) - q(q-1)[r=0]
};

SphericalInvariants spherical_invariants(const SphericalTable& table);

struct HeatComparison {
  double max_oracle_deviation = 0.0;  // spectral vs matrix exponential
  double max_mass_residual = 0.0;     // |mean_x E(t; x) - 1|
  double min_value = 0.0;
};

HeatComparison compare_heat(const UhpGraph& g, const SphericalTable& table, const std::vector<double>& t_grid);

/// Time grid shared by the oracle comparisons.
std::vector<double> standard_time_grid();

/// Every invariant suite for every q and every regular generating radius.
VerifyReport run_verification(const VerifyOptions& opts);

}  // namespace fuhp
