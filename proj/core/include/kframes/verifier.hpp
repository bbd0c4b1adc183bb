#pragma once

#include "kframes/random_instances.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kframes {

/// Tolerances for each numerical replay. Values are used verbatim and echoed
/// into the report.
struct SuiteTolerances {
  double toeplitz_covariance = 1e-6;
  double loewner_chain = 1e-8;
  double norm_sandwich = 1e-6;
  double st_roundtrip = 1e-6;
  double st_norm = 1e-8;
  double diag_sandwich = 1e-10;
  double weighted_hardy = 1e-8;
};

struct SuiteConfig {
  std::uint64_t seed = 42;
  int trials = 50;
  int order = 256;
  int buffer = 64;
  std::vector<PointFamily> point_families{PointFamily::uniform_disk, PointFamily::radial_geometric,
                                          PointFamily::carleson_separated, PointFamily::clustered};
  SuiteTolerances tolerances;

  /// Throws ConfigInvalid.
  void validate() const;
};

/// Outcome of one replayed identity. A trial fails when some measured defect
/// exceeds its tolerance; worst_violation is the largest signed excess
/// (defect - tolerance) over all trials and conditions, negative on a clean
/// pass.
struct CheckResult {
  std::string check_id;
  int trials = 0;
  int failures = 0;
  double worst_violation = 0.0;
  std::map<std::string, double> tolerances;
  /// Full instance of the first failing trial.
  std::optional<nlohmann::json> witness;

  bool passed() const noexcept { return failures == 0; }
};

struct SuiteReport {
  SuiteConfig config;
  std::vector<CheckResult> results;

  bool passed() const noexcept;
};

/// Gram of {P_phi k~_{z_i}} against diag(phi(z_i)) G diag(phi(z_i))*.
CheckResult check_toeplitz_covariance(const SuiteConfig& cfg);

/// G_phi <= G_P <= G for the monomial-span, C + phi H^2 and
/// inner-kernel projections, plus |phi(z_i)| ||k_i|| <= ||P k_i|| <= ||k_i||.
CheckResult check_loewner_chain(const SuiteConfig& cfg);

/// Roundtrip of the positive-operator construction from a target Grammian Q.
CheckResult check_st_roundtrip(const SuiteConfig& cfg);

/// alpha ||D^{1/2} x||^2 <= ||P^{1/2} x||^2 <= beta ||D^{1/2} x||^2 and the
/// induced spectral bounds between the {P^{1/2} k~} and {D^{1/2} k~}
/// Grammians.
CheckResult check_diag_sandwich(const SuiteConfig& cfg);

/// range_space_gram for p_n = s^n against the closed-form kernel
/// 1 / (1 - s z conj(w)).
CheckResult check_weighted_hardy(const SuiteConfig& cfg);

SuiteReport run_suite(const SuiteConfig& cfg);

}  // namespace kframes
