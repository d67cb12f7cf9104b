#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kgs/field.hpp"
#include "kgs/initial_data.hpp"
#include "kgs/symbols.hpp"

namespace kgs {

enum class SchemeId { UA1, UA2, LimitFree, LieSplitting };

std::string to_string(SchemeId scheme);
/// Accepts "ua1", "ua2", "limit", "splitting".
SchemeId parse_scheme(const std::string& name);

struct StepParams {
  CParam c;
  double tau;
  bool dealias = false;
  // Debug variants of the second-order assembly. Off by default.
  bool i2_printed_signs = false;      // I2 with the shifts +c^2, +2c^2
  bool i1_correction_alt = false;     // Psi2(i tau (Delta - c^2)) in the tau^2 term

  StepParams(CParam c_, double tau_);
  ProductOptions products() const { return {dealias}; }
};

/// NaN or Inf in a computed state.
class BlowUpError : public Error {
 public:
  BlowUpError(std::size_t step, const std::string& what);
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

KgsState ua1_step(const KgsState& state, const StepParams& p);
KgsState ua2_step(const KgsState& state, const StepParams& p);
/// u <- e^{i tau c^2} e^{-i tau Delta/2} u,  psi <- e^{i tau Delta/2} psi.
KgsState limit_free_step(const KgsState& state, const StepParams& p);
/// Lie splitting, sub-flows in this order:
///   1. u <- e^{i tau L} u,  psi <- e^{i tau Delta/2} psi
///   2. u <- u - i tau B |psi|^2
///   3. psi <- e^{i tau z} psi pointwise, z = (u + conj u)/2
/// Step 2 does not change z because B|psi|^2 is real.
KgsState splitting_step(const KgsState& state, const StepParams& p);

KgsState step(SchemeId scheme, const KgsState& state, const StepParams& p);

struct TraceEntry {
  std::size_t step;
  double h1_u;
  double h1_psi;
  double mass;  // L2 norm of psi
};

/// n_steps-fold composition of one scheme. Entry 0 of the trace is the
/// initial state.
KgsState evolve(SchemeId scheme, const KgsState& state, const StepParams& p, std::size_t n_steps,
                std::vector<TraceEntry>* trace = nullptr);

// Integral approximations of the second-order scheme. v = psi, w = u.

enum class IntegralTerm {
  IuLead,    // tau conj(v) phi1(i tau (Delta - c^2)) v
  JpsiLead,  // tau v (phi1(i tau (L - Delta/2)) w + phi1(-i tau (L + Delta/2)) conj(w))
  I1, I2, I3,
  J1, J21, J22, J23, J24, J31, J32,
  IuFull,    // I1 + I2 + I3
  JpsiFull,  // J1 + J21 + ... + J32
};

std::string to_string(IntegralTerm term);
std::vector<IntegralTerm> all_integral_terms();

Field closed_form(IntegralTerm term, const Field& u, const Field& psi, const StepParams& p);

Field assemble_Iu_tilde(const Field& u, const Field& psi, const StepParams& p);
Field assemble_Ipsi_tilde(const Field& u, const Field& psi, const StepParams& p);

/// Drop all cached step symbols.
void clear_symbol_cache();

}  // namespace kgs
