#include "kgs/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#ifndef KGS_BUILD_ID
#define KGS_BUILD_ID "unknown"
#endif

namespace kgs {

std::string build_id() { return KGS_BUILD_ID; }

void RunConfig::resolve_taus() {
  if (tau_list.empty()) tau_list = dyadic_taus(T, tau_dyadic.first, tau_dyadic.second);
}

void RunConfig::validate() const {
  if (c_list.empty()) throw Error("c list is empty");
  if (tau_list.empty()) throw Error("tau list is empty");
  for (double c : c_list) CParam{c};
  if (!(T > 0.0) || !std::isfinite(T)) throw Error("final time T must be positive");
  if (!(norm_r >= 0.0)) throw Error("norm_r must be non-negative");
  if (!(theta_psi >= 0.0) || !(theta_z >= 0.0)) throw Error("regularity exponents must be non-negative");
  if (n < 4 || (n & (n - 1)) != 0) throw Error("n must be a power of two, at least 4");
  if (dim < 1 || dim > 3) throw Error("dim must be 1, 2 or 3");
  for (double tau : tau_list) steps_for(tau);
}

std::size_t RunConfig::steps_for(double tau) const {
  if (!(tau > 0.0)) throw Error("time steps must be positive");
  const double ratio = T / tau;
  const double rounded = std::round(ratio);
  if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio)) {
    std::ostringstream msg;
    msg << "T/tau must be an integer (T = " << T << ", tau = " << tau << ")";
    throw Error(msg.str());
  }
  return static_cast<std::size_t>(rounded);
}

GridPtr RunConfig::grid() const { return Grid::create(dim, n); }

std::vector<double> dyadic_taus(double T, int jmin, int jmax) {
  if (jmin > jmax) throw Error("dyadic range needs jmin <= jmax");
  std::vector<double> out;
  for (int j = jmin; j <= jmax; ++j) out.push_back(std::ldexp(T, -j));
  return out;
}

SlopeFit fit_slope(const std::vector<double>& tau, const std::vector<double>& err, double min_err) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (std::size_t i = 0; i < tau.size() && i < err.size(); ++i) {
    if (!std::isfinite(err[i]) || !(err[i] > min_err) || !(err[i] > 0.0)) continue;
    const double x = std::log2(tau[i]);
    const double y = std::log2(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  SlopeFit fit;
  fit.points = m;
  if (m < 2) {
    fit.slope = std::numeric_limits<double>::quiet_NaN();
    fit.intercept = std::numeric_limits<double>::quiet_NaN();
    return fit;
  }
  const double den = m * sxx - sx * sx;
  fit.slope = (m * sxy - sx * sy) / den;
  fit.intercept = (sy - fit.slope * sx) / m;
  return fit;
}

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

StepParams params(const RunConfig& cfg, double c, double tau) {
  StepParams p(CParam(c), tau);
  p.dealias = cfg.dealias;
  return p;
}

double distance(const KgsState& a, const KgsState& b, double r) {
  return sobolev_norm(a.u - b.u, r) + sobolev_norm(a.psi - b.psi, r);
}

// Smallest power of two n_fine with c^2 T / n_fine <= 0.1, at least 2^14.
std::size_t resolved_steps(double c, double T) {
  std::size_t n = std::size_t{1} << 14;
  while (c * c * T / static_cast<double>(n) > 0.1) n <<= 1;
  return n;
}

}  // namespace

ConvergenceReport run_convergence(const RunConfig& cfg, bool certify) {
  cfg.validate();
  ConvergenceReport report;
  report.config = cfg;
  report.build_id = build_id();
  const GridPtr grid = cfg.grid();
  const double tau_min = *std::min_element(cfg.tau_list.begin(), cfg.tau_list.end());
  const double tau_ref = tau_min / 16.0;
  report.reference_description =
      "ua2 at tau_ref = min(tau)/16; floor from ua2 at 2 tau_ref; resolved RK4 comparison for c <= 16";

  for (double c : cfg.c_list) {
    const KgsState init = make_state(grid, CParam(c), cfg.theta_psi, cfg.theta_z, cfg.seed);
    const std::size_t n_ref = cfg.steps_for(tau_ref);
    ReferenceInfo info;
    info.c = c;
    info.tau_ref = tau_ref;
    KgsState ref = init;
    try {
      ref = evolve(SchemeId::UA2, init, params(cfg, c, tau_ref), n_ref);
      const KgsState coarse = evolve(SchemeId::UA2, init, params(cfg, c, 2.0 * tau_ref), n_ref / 2);
      const double roundoff = 1e-15 * static_cast<double>(n_ref) *
                              (sobolev_norm(init.u, cfg.norm_r) + sobolev_norm(init.psi, cfg.norm_r));
      info.floor = std::max(distance(ref, coarse, cfg.norm_r) / 3.0, roundoff);
    } catch (const BlowUpError& e) {
      throw Error("reference solution diverged at c = " + std::to_string(c) + ": " + e.what());
    }
    if (certify && c <= 16.0) {
      const KgsState resolved = resolved_reference(init, CParam(c), cfg.T, resolved_steps(c, cfg.T), cfg.dealias);
      info.certification = distance(ref, resolved, cfg.norm_r);
    }
    report.references.push_back(info);

    std::vector<double> taus, errs;
    for (double tau : cfg.tau_list) {
      ErrorRow row;
      row.scheme = to_string(cfg.scheme);
      row.c = c;
      row.tau = tau;
      const auto start = std::chrono::steady_clock::now();
      try {
        const KgsState out = evolve(cfg.scheme, init, params(cfg, c, tau), cfg.steps_for(tau));
        row.err_u = sobolev_norm(out.u - ref.u, cfg.norm_r);
        row.err_psi = sobolev_norm(out.psi - ref.psi, cfg.norm_r);
      } catch (const BlowUpError&) {
        row.diverged = true;
        row.err_u = row.err_psi = std::numeric_limits<double>::quiet_NaN();
      }
      row.runtime_ms = elapsed_ms(start);
      if (!row.diverged) {
        taus.push_back(tau);
        errs.push_back(row.err_sum());
      }
      report.rows.push_back(row);
    }
    SlopeFit fit = fit_slope(taus, errs, 1e3 * info.floor);
    fit.c = c;
    report.fits.push_back(fit);
  }
  return report;
}

ConsistencyReport run_consistency(const RunConfig& cfg) {
  cfg.validate();
  ConsistencyReport report;
  report.config = cfg;
  report.build_id = build_id();
  const GridPtr grid = cfg.grid();
  const double tau = cfg.tau_list.front();

  for (SchemeId scheme : {SchemeId::UA1, SchemeId::UA2}) {
    std::vector<double> cs, du, dpsi;
    for (double c : cfg.c_list) {
      const KgsState init = make_state(grid, CParam(c), cfg.theta_psi, cfg.theta_z, cfg.seed);
      const StepParams p = params(cfg, c, tau);
      const KgsState a = step(scheme, init, p);
      const KgsState b = limit_free_step(init, p);
      ConsistencyRow row{to_string(scheme), c, tau, sobolev_norm(a.u - b.u, cfg.norm_r),
                         sobolev_norm(a.psi - b.psi, cfg.norm_r)};
      report.rows.push_back(row);
      cs.push_back(c);
      du.push_back(row.dev_u);
      dpsi.push_back(row.dev_psi);
    }
    report.fits.push_back({to_string(scheme), "u", fit_slope(cs, du).slope});
    report.fits.push_back({to_string(scheme), "psi", fit_slope(cs, dpsi).slope});
  }

  auto k2 = grid->k_squared();
  for (double c : cfg.c_list) {
    for (double q : k2) {
      const double bound = (1.0 + q) * (1.0 + q) / (c * c);
      report.h4_ratio = std::max(report.h4_ratio, std::abs(residual_value(q, c)) / bound);
    }
  }
  return report;
}

bool OracleReport::all_pass() const {
  return std::all_of(gates.begin(), gates.end(), [](const GateResult& g) { return g.pass(); });
}

OracleReport run_oracle_check(const RunConfig& cfg, const OracleConfig& ocfg) {
  cfg.validate();
  for (double c : cfg.c_list)
    if (c > 32.0) throw Error("oracle check is limited to c <= 32");
  OracleReport report;
  report.config = cfg;
  report.build_id = build_id();
  const GridPtr grid = cfg.grid();

  for (double c : cfg.c_list) {
    const KgsState s = make_state(grid, CParam(c), cfg.theta_psi, cfg.theta_z, cfg.seed);
    const auto terms = all_integral_terms();
    std::vector<std::vector<double>> term_err(terms.size());
    std::vector<double> d1, d2;
    for (double tau : cfg.tau_list) {
      const StepParams p = params(cfg, c, tau);
      const auto quad = quad_integrals(s.u, s.psi, p, ocfg);
      for (std::size_t i = 0; i < terms.size(); ++i)
        term_err[i].push_back(
            sobolev_norm(quad.at(terms[i]) - closed_form(terms[i], s.u, s.psi, p), cfg.norm_r));
      const KgsState ref = duhamel_reference(s, p, ocfg);
      d1.push_back(distance(ua1_step(s, p), ref, cfg.norm_r));
      d2.push_back(distance(ua2_step(s, p), ref, cfg.norm_r));
    }
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const bool lead = terms[i] == IntegralTerm::IuLead || terms[i] == IntegralTerm::JpsiLead;
      GateResult g{to_string(terms[i]), c, fit_slope(cfg.tau_list, term_err[i]).slope,
                   lead ? 1.8 : 2.7, lead ? 2.2 : 3.3, term_err[i]};
      report.gates.push_back(g);
    }
    report.gates.push_back({"ua1_defect", c, fit_slope(cfg.tau_list, d1).slope, 1.8, 2.2, d1});
    report.gates.push_back({"ua2_defect", c, fit_slope(cfg.tau_list, d2).slope, 2.7, 3.3, d2});
  }
  return report;
}

}  // namespace kgs
