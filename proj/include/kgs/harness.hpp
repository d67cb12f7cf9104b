#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kgs/integrators.hpp"
#include "kgs/oracle.hpp"

namespace kgs {

struct RunConfig {
  SchemeId scheme = SchemeId::UA1;
  std::vector<double> c_list{1.0};
  std::vector<double> tau_list;  // filled from tau_dyadic when empty
  std::pair<int, int> tau_dyadic{4, 10};
  int n = 256;
  int dim = 1;
  double T = 1.0;
  double theta_psi = 6.0;
  double theta_z = 6.0;
  std::uint64_t seed = 42;
  double norm_r = 1.0;
  bool dealias = false;
  std::filesystem::path out_dir = "out";

  /// Fills tau_list from tau_dyadic and T if it is empty.
  void resolve_taus();
  /// Checks lists, grid and that T/tau is an integer for every tau.
  void validate() const;
  std::size_t steps_for(double tau) const;
  GridPtr grid() const;
};

/// tau_j = T / 2^j for j = jmin..jmax, largest first.
std::vector<double> dyadic_taus(double T, int jmin, int jmax);

struct ErrorRow {
  std::string scheme;
  double c = 0.0;
  double tau = 0.0;
  double err_u = 0.0;
  double err_psi = 0.0;
  double runtime_ms = 0.0;
  bool diverged = false;

  double err_sum() const { return err_u + err_psi; }
};

struct SlopeFit {
  double c = 0.0;
  double slope = 0.0;
  double intercept = 0.0;
  int points = 0;  // rows that passed the floor guard
  bool valid() const { return points >= 2; }
};

/// Least squares of log2(err) on log2(tau). Rows that diverged or have
/// err <= min_err are skipped.
SlopeFit fit_slope(const std::vector<double>& tau, const std::vector<double>& err, double min_err = 0.0);

struct ReferenceInfo {
  double c = 0.0;
  double tau_ref = 0.0;
  double floor = 0.0;          // estimated error of the reference
  std::optional<double> certification;  // distance to the resolved reference
};

struct ConvergenceReport {
  RunConfig config;
  std::vector<ErrorRow> rows;
  std::vector<SlopeFit> fits;  // on err_u + err_psi
  std::vector<ReferenceInfo> references;
  std::string reference_description;
  std::string build_id;
};

/// Reference solutions: ua2 at min(tau)/16 for every c; for c <= 16 the
/// reference is also compared against resolved_reference.
ConvergenceReport run_convergence(const RunConfig& cfg, bool certify = true);

struct ConsistencyRow {
  std::string scheme;
  double c = 0.0;
  double tau = 0.0;
  double dev_u = 0.0;
  double dev_psi = 0.0;
};

struct ConsistencyReport {
  RunConfig config;
  std::vector<ConsistencyRow> rows;
  // slope of log D against log c, per scheme and component
  struct Fit {
    std::string scheme;
    std::string component;
    double slope;
  };
  std::vector<Fit> fits;
  /// max over modes and c of |c sqrt(c^2+k^2) - c^2 - k^2/2| / (c^-2 (1+k^2)^2)
  double h4_ratio = 0.0;
  std::string build_id;
};

/// One step from the initial state with ua1 and ua2 against the limit free
/// flow, at tau = tau_list[0].
ConsistencyReport run_consistency(const RunConfig& cfg);

struct GateResult {
  std::string gate;
  double c = 0.0;
  double slope = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  std::vector<double> errors;
  bool pass() const { return slope >= lo && slope <= hi; }
};

struct OracleReport {
  RunConfig config;
  std::vector<GateResult> gates;
  std::string build_id;
  bool all_pass() const;
};

/// Every closed-form term against its quadrature, and the ua1 / ua2
/// one-step defects against duhamel_reference. Requires c <= 32.
OracleReport run_oracle_check(const RunConfig& cfg, const OracleConfig& ocfg = {});

std::string build_id();

}  // namespace kgs
