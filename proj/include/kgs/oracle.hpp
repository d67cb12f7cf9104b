#pragma once

#include <cstddef>
#include <map>

#include "kgs/initial_data.hpp"
#include "kgs/integrators.hpp"

namespace kgs {

/// Brute-force references. Not production integrators: cost grows with
/// c^2 tau and with the largest wavenumber.
struct OracleConfig {
  int quad_points = 12;    // Gauss-Legendre points per panel
  int panels = 0;          // 0 picks the smallest count meeting max_phase
  double max_phase = 0.5;  // bound on (c^2 + 1.5 max|k|^2) * panel width
  int picard_iters = 60;
  double tol = 1e-13;      // Picard stopping threshold, H^1

  void validate() const;
};

class OracleError : public Error {
 public:
  using Error::Error;
};

/// Panel count for an integral over [0, tau]. Throws when an explicit panel
/// count leaves c^2 tau / panels above 0.5.
int oracle_panels(const Grid& grid, CParam c, double tau, const OracleConfig& cfg);

/// One step of the exact coupled Duhamel system, by Picard iteration on the
/// composite Gauss-Legendre nodes in the interaction picture
///   U = e^{-itL} u,  Phi = e^{-it Delta/2} psi.
KgsState duhamel_reference(const KgsState& state, const StepParams& p, const OracleConfig& cfg = {});

/// Direct quadrature of one oscillatory integral (v = psi, w = u). The
/// leading-term entries return the same integral as I1 and J1.
Field quad_integral(IntegralTerm term, const Field& u, const Field& psi, const StepParams& p,
                    const OracleConfig& cfg = {});

/// All terms from a single sweep over the nodes.
std::map<IntegralTerm, Field> quad_integrals(const Field& u, const Field& psi, const StepParams& p,
                                             const OracleConfig& cfg = {});

/// Classical RK4 on the interaction-picture ODE, n_fine equal steps over
/// [0, T]. Requires c <= 32 and c^2 T / n_fine <= 0.1.
KgsState resolved_reference(const KgsState& state, CParam c, double T, std::size_t n_fine,
                            bool dealias = false);

}  // namespace kgs
