#include "kgs/integrators.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

namespace kgs {

std::string to_string(SchemeId scheme) {
  switch (scheme) {
    case SchemeId::UA1: return "ua1";
    case SchemeId::UA2: return "ua2";
    case SchemeId::LimitFree: return "limit";
    case SchemeId::LieSplitting: return "splitting";
  }
  return "?";
}

SchemeId parse_scheme(const std::string& name) {
  if (name == "ua1") return SchemeId::UA1;
  if (name == "ua2") return SchemeId::UA2;
  if (name == "limit") return SchemeId::LimitFree;
  if (name == "splitting") return SchemeId::LieSplitting;
  throw Error("unknown scheme '" + name + "' (expected ua1, ua2, limit or splitting)");
}

StepParams::StepParams(CParam c_, double tau_) : c(c_), tau(tau_) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw Error("time step must be positive and finite");
}

BlowUpError::BlowUpError(std::size_t step, const std::string& what)
    : Error("non-finite state at step " + std::to_string(step) + ": " + what), step_(step) {}

namespace {

// Every multiplier one step needs, for one (grid, c, tau).
//
// Arguments are formed from c^2, |k|^2 and the residual R separately, so that
// nothing of size c^2 is subtracted from something of size c^2:
//   L - Delta/2 = c^2 + k^2 + R      L + Delta/2 = c^2 + R
//   c^2 - L - Delta/2 = -R           L - c^2 - Delta/2 = k^2 + R
struct StepSymbols {
  Symbol exp_L;         // e^{i tau L}
  Symbol inv_cnabla;    // B = c <nabla>_c^{-1}
  Symbol half_free;     // e^{i tau Delta/2}
  Symbol half_back;     // e^{-i tau Delta/2}
  Symbol limit_u;       // e^{i tau c^2} e^{-i tau Delta/2}

  Symbol phi_dmc2;      // phi1(i tau (Delta - c^2))
  Symbol phi_a;         // phi1(i tau (L - Delta/2))
  Symbol phi_mb;        // phi1(-i tau (L + Delta/2))

  Symbol psi_dmc2;      // Psi2(i tau (Delta - c^2))
  Symbol corr_r;        // phi1(i tau R) R
  Symbol psi_r;         // Psi2(i tau R)
  Symbol diff_i_w;      // phi1(i tau Delta) - phi1(i tau (Delta - c^2))
  Symbol diff_i_wbar;   // phi1(i tau (Delta - 2c^2)) - phi1(i tau (Delta - c^2))
  Symbol printed_i_w;   // phi1(i tau (Delta + 2c^2)) - phi1(i tau (Delta + c^2))
  Symbol printed_i_wbar;// phi1(i tau Delta) - phi1(i tau (Delta + c^2))

  Symbol psi_a;         // Psi2(i tau (L - Delta/2))
  Symbol psi_mb;        // Psi2(-i tau (L + Delta/2))
  Symbol diff_j21;      // phi1(i tau (c^2 + L - Delta/2)) - phi1(i tau (L - Delta/2))
  Symbol diff_j22;      // phi1(i tau (c^2 - L - Delta/2)) - phi1(-i tau (L + Delta/2))
  Symbol diff_j23;      // phi1(i tau (-c^2 + L - Delta/2)) - phi1(i tau (L - Delta/2))
  Symbol diff_j24;      // phi1(-i tau (c^2 + L + Delta/2)) - phi1(-i tau (L + Delta/2))
};

Complex expi(double x) { return {std::cos(x), std::sin(x)}; }
Complex ii(double x) { return {0.0, x}; }

std::shared_ptr<const StepSymbols> build_symbols(const GridPtr& grid, CParam c, double t) {
  const std::size_t n = grid->size();
  auto k2 = grid->k_squared();
  const double cv = c.value();
  const double c2 = c.squared();
  const Complex phase_c2 = expi(t * c2);

  std::vector<std::vector<Complex>> v(20, std::vector<Complex>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const double q = k2[i];
    const double r = residual_value(q, cv);
    const double a = c2 + q + r;
    const double b = c2 + r;
    v[0][i] = phase_c2 * expi(t * (0.5 * q + r));
    v[1][i] = cv / std::sqrt(c2 + q);
    v[2][i] = expi(-0.5 * t * q);
    v[3][i] = expi(0.5 * t * q);
    v[4][i] = phase_c2 * v[3][i];

    const Complex phi_dmc2 = phi1(ii(-t * (q + c2)));
    v[5][i] = phi_dmc2;
    v[6][i] = phi1(ii(t * a));
    v[7][i] = phi1(ii(-t * b));

    v[8][i] = psi2(ii(-t * (q + c2)));
    v[9][i] = phi1(ii(t * r)) * r;
    v[10][i] = psi2(ii(t * r));
    v[11][i] = phi1(ii(-t * q)) - phi_dmc2;
    v[12][i] = phi1(ii(-t * (q + 2.0 * c2))) - phi_dmc2;
    const Complex phi_dpc2 = phi1(ii(t * (c2 - q)));
    v[13][i] = phi1(ii(t * (2.0 * c2 - q))) - phi_dpc2;
    v[14][i] = phi1(ii(-t * q)) - phi_dpc2;

    v[15][i] = psi2(ii(t * a));
    v[16][i] = psi2(ii(-t * b));
    v[17][i] = phi1(ii(t * (c2 + a))) - v[6][i];
    v[18][i] = phi1(ii(-t * r)) - v[7][i];
    v[19][i] = phi1(ii(t * (q + r))) - v[6][i];
  }
  std::vector<Complex> j24(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = residual_value(k2[i], cv);
    j24[i] = phi1(ii(-t * (2.0 * c2 + r))) - v[7][i];
  }
  auto s = [&](int idx) { return Symbol(grid, std::move(v[idx])); };
  return std::make_shared<const StepSymbols>(StepSymbols{
      s(0), s(1), s(2), s(3), s(4), s(5), s(6), s(7), s(8), s(9), s(10), s(11), s(12), s(13),
      s(14), s(15), s(16), s(17), s(18), s(19), Symbol(grid, std::move(j24))});
}

// Keyed by the exact bit patterns of the grid length, c and tau.
using CacheKey = std::tuple<int, int, std::uint64_t, std::uint64_t, std::uint64_t>;

std::mutex cache_mutex;
std::map<CacheKey, std::shared_ptr<const StepSymbols>> cache;
constexpr std::size_t kCacheLimit = 256;

std::shared_ptr<const StepSymbols> symbols_for(const GridPtr& grid, const StepParams& p) {
  const CacheKey key{grid->dim(), grid->n(), std::bit_cast<std::uint64_t>(grid->length()),
                     std::bit_cast<std::uint64_t>(p.c.value()), std::bit_cast<std::uint64_t>(p.tau)};
  {
    std::lock_guard lock(cache_mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto built = build_symbols(grid, p.c, p.tau);
  std::lock_guard lock(cache_mutex);
  if (cache.size() >= kCacheLimit) cache.clear();
  return cache.emplace(key, std::move(built)).first->second;
}

// Physical samples, with conjugation done pointwise.
using Samples = std::vector<Complex>;

Samples conj_samples(const Samples& a) {
  Samples out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::conj(a[i]);
  return out;
}

// Shared inputs of the closed forms: fields, their samples and the symbols.
struct Context {
  const Field& w;  // u
  const Field& v;  // psi
  const StepParams& p;
  std::shared_ptr<const StepSymbols> sym;
  GridPtr grid;
  Field wbar;
  Field vbar;
  Samples vs, vbs, ws, wbs;

  Context(const Field& u, const Field& psi, const StepParams& params)
      : w(u), v(psi), p(params), sym(symbols_for(psi.grid_ptr(), params)), grid(psi.grid_ptr()),
        wbar(conj_field(u)), vbar(conj_field(psi)), vs(to_physical(psi)), vbs(conj_samples(vs)),
        ws(to_physical(u)), wbs(conj_samples(ws)) {
    require_same_grid(u.grid(), psi.grid());
  }

  Field mul(const Samples& a, const Samples& b) const {
    return product_of_samples(grid, a, b, p.products());
  }
  Field mul(const Samples& a, const Field& b) const { return mul(a, to_physical(b)); }
  Field mul(const Field& a, const Field& b) const { return mul(to_physical(a), to_physical(b)); }

  double tau() const { return p.tau; }
  double small() const { return p.tau / (2.0 * p.c.squared()); }
};

Field term_i1(const Context& x) {
  const auto& s = *x.sym;
  const double t = x.tau();
  // tau [ vbar phi1(..)v + e^{i tau D/2}((e^{-i tau D/2} Psi2(..) v)(e^{-i tau D/2} vbar)) - vbar Psi2(..) v ]
  const Field pv = apply_symbol(s.psi_dmc2, x.v);
  Field bracket = x.mul(x.vbs, apply_symbol(s.phi_dmc2, x.v)) +
                  apply_symbol(s.half_free, x.mul(apply_symbol(s.half_back, pv),
                                                  apply_symbol(s.half_back, x.vbar))) -
                  x.mul(x.vbs, pv);
  // - i tau^2 phi1(i tau R) R (vbar Psi2(i tau R) v)
  const Symbol& corr_psi = x.p.i1_correction_alt ? s.psi_dmc2 : s.psi_r;
  const Field corr = apply_symbol(s.corr_r, x.mul(x.vbs, apply_symbol(corr_psi, x.v)));
  return Complex(t) * bracket - Complex(0.0, t * t) * corr;
}

Field term_i2(const Context& x) {
  const auto& s = *x.sym;
  const Field vw = x.mul(x.vs, x.ws);
  const Field vwbar = x.mul(x.vs, x.wbs);
  const Symbol& dw = x.p.i2_printed_signs ? s.printed_i_w : s.diff_i_w;
  const Symbol& dwbar = x.p.i2_printed_signs ? s.printed_i_wbar : s.diff_i_wbar;
  // tau/(2c^2) vbar [ dw (v w) - dwbar (v wbar) ]
  return Complex(x.small()) * x.mul(x.vbs, apply_symbol(dw, vw) - apply_symbol(dwbar, vwbar));
}

Field term_i3(const Context& x) {
  const auto& s = *x.sym;
  // tau/(2c^2) [ -(vbar w)(dw v) + (vbar wbar)(dwbar v) ]
  const Field a = x.mul(x.mul(x.vbs, x.ws), apply_symbol(s.diff_i_w, x.v));
  const Field b = x.mul(x.mul(x.vbs, x.wbs), apply_symbol(s.diff_i_wbar, x.v));
  return Complex(x.small()) * (b - a);
}

Field term_j1(const Context& x) {
  const auto& s = *x.sym;
  const Field pa = apply_symbol(s.psi_a, x.w);
  const Field pb = apply_symbol(s.psi_mb, x.wbar);
  const Field first = apply_symbol(s.phi_a, x.w) + apply_symbol(s.phi_mb, x.wbar) - pa - pb;
  // e^{-i tau D/2}((e^{i tau D/2} v)(e^{i tau D/2} Psi2(..) w + e^{i tau D/2} Psi2(..) wbar))
  const Field sandwich =
      apply_symbol(s.half_back, x.mul(apply_symbol(s.half_free, x.v), apply_symbol(s.half_free, pa + pb)));
  return Complex(x.tau()) * (x.mul(x.vs, first) + sandwich);
}

Field term_j2(const Context& x, IntegralTerm term) {
  const auto& s = *x.sym;
  const double f = x.small();
  switch (term) {
    case IntegralTerm::J21:
      return Complex(f) * x.mul(x.mul(x.vs, x.ws), apply_symbol(s.diff_j21, x.w));
    case IntegralTerm::J22:
      return Complex(f) * x.mul(x.mul(x.vs, x.ws), apply_symbol(s.diff_j22, x.wbar));
    case IntegralTerm::J23:
      return Complex(-f) * x.mul(x.mul(x.vs, x.wbs), apply_symbol(s.diff_j23, x.w));
    default:
      return Complex(-f) * x.mul(x.mul(x.vs, x.wbs), apply_symbol(s.diff_j24, x.wbar));
  }
}

// tau/c^2 v [ diff B|v|^2 ]; the J31 difference coincides with J23's, J32's with J22's.
Field term_j3(const Context& x, const Field& b_mass, IntegralTerm term) {
  const auto& s = *x.sym;
  const Symbol& d = term == IntegralTerm::J31 ? s.diff_j23 : s.diff_j22;
  return Complex(x.tau() / x.p.c.squared()) * x.mul(x.vs, apply_symbol(d, b_mass));
}

Field b_mass(const Context& x) { return apply_symbol(x.sym->inv_cnabla, x.mul(x.vs, x.vbs)); }

Field lead_iu(const Context& x) {
  return Complex(x.tau()) * x.mul(x.vbs, apply_symbol(x.sym->phi_dmc2, x.v));
}

Field lead_jpsi(const Context& x) {
  const auto& s = *x.sym;
  return Complex(x.tau()) * x.mul(x.vs, apply_symbol(s.phi_a, x.w) + apply_symbol(s.phi_mb, x.wbar));
}

Field iu_full(const Context& x) { return term_i1(x) + term_i2(x) + term_i3(x); }

Field jpsi_full(const Context& x) {
  const Field bm = b_mass(x);
  return term_j1(x) + term_j2(x, IntegralTerm::J21) + term_j2(x, IntegralTerm::J22) +
         term_j2(x, IntegralTerm::J23) + term_j2(x, IntegralTerm::J24) +
         term_j3(x, bm, IntegralTerm::J31) + term_j3(x, bm, IntegralTerm::J32);
}

void check_finite(const KgsState& s, const char* scheme) {
  if (!all_finite(s.u) || !all_finite(s.psi)) throw BlowUpError(0, scheme);
}

}  // namespace

std::string to_string(IntegralTerm term) {
  switch (term) {
    case IntegralTerm::IuLead: return "I_lead";
    case IntegralTerm::JpsiLead: return "J_lead";
    case IntegralTerm::I1: return "I1";
    case IntegralTerm::I2: return "I2";
    case IntegralTerm::I3: return "I3";
    case IntegralTerm::J1: return "J1";
    case IntegralTerm::J21: return "J21";
    case IntegralTerm::J22: return "J22";
    case IntegralTerm::J23: return "J23";
    case IntegralTerm::J24: return "J24";
    case IntegralTerm::J31: return "J31";
    case IntegralTerm::J32: return "J32";
    case IntegralTerm::IuFull: return "I_full";
    case IntegralTerm::JpsiFull: return "J_full";
  }
  return "?";
}

std::vector<IntegralTerm> all_integral_terms() {
  using T = IntegralTerm;
  return {T::IuLead, T::JpsiLead, T::I1,  T::I2,  T::I3,  T::J1,     T::J21,
          T::J22,    T::J23,      T::J24, T::J31, T::J32, T::IuFull, T::JpsiFull};
}

Field closed_form(IntegralTerm term, const Field& u, const Field& psi, const StepParams& p) {
  const Context x(u, psi, p);
  switch (term) {
    case IntegralTerm::IuLead: return lead_iu(x);
    case IntegralTerm::JpsiLead: return lead_jpsi(x);
    case IntegralTerm::I1: return term_i1(x);
    case IntegralTerm::I2: return term_i2(x);
    case IntegralTerm::I3: return term_i3(x);
    case IntegralTerm::J1: return term_j1(x);
    case IntegralTerm::J21:
    case IntegralTerm::J22:
    case IntegralTerm::J23:
    case IntegralTerm::J24: return term_j2(x, term);
    case IntegralTerm::J31:
    case IntegralTerm::J32: return term_j3(x, b_mass(x), term);
    case IntegralTerm::IuFull: return iu_full(x);
    case IntegralTerm::JpsiFull: return jpsi_full(x);
  }
  throw Error("unknown integral term");
}

Field assemble_Iu_tilde(const Field& u, const Field& psi, const StepParams& p) {
  return iu_full(Context(u, psi, p));
}

Field assemble_Ipsi_tilde(const Field& u, const Field& psi, const StepParams& p) {
  return jpsi_full(Context(u, psi, p));
}

KgsState ua1_step(const KgsState& state, const StepParams& p) {
  const Context x(state.u, state.psi, p);
  const auto& s = *x.sym;
  const Field u_free = apply_symbol(s.exp_L, state.u);
  const Field u_new =
      u_free - Complex(0.0, p.tau) * apply_symbol(s.inv_cnabla, apply_symbol(s.exp_L, x.mul(x.vbs, apply_symbol(s.phi_dmc2, x.v))));
  const Field coupling = x.mul(x.vs, apply_symbol(s.phi_a, x.w) + apply_symbol(s.phi_mb, x.wbar));
  const Field psi_new = apply_symbol(s.half_free, state.psi + Complex(0.0, 0.5 * p.tau) * coupling);
  KgsState out(u_new, psi_new);
  check_finite(out, "ua1");
  return out;
}

KgsState ua2_step(const KgsState& state, const StepParams& p) {
  const Context x(state.u, state.psi, p);
  const auto& s = *x.sym;
  const Field iu = iu_full(x);
  const Field jpsi = jpsi_full(x);
  const Field u_new = apply_symbol(s.exp_L, state.u - Complex(0.0, 1.0) * apply_symbol(s.inv_cnabla, iu));
  const Field psi_new = apply_symbol(s.half_free, state.psi + Complex(0.0, 0.5) * jpsi);
  KgsState out(u_new, psi_new);
  check_finite(out, "ua2");
  return out;
}

KgsState limit_free_step(const KgsState& state, const StepParams& p) {
  const auto sym = symbols_for(state.grid_ptr(), p);
  return KgsState(apply_symbol(sym->limit_u, state.u), apply_symbol(sym->half_free, state.psi));
}

KgsState splitting_step(const KgsState& state, const StepParams& p) {
  const auto sym = symbols_for(state.grid_ptr(), p);
  const Field u1 = apply_symbol(sym->exp_L, state.u);
  const Field psi1 = apply_symbol(sym->half_free, state.psi);
  const Samples ps = to_physical(psi1);
  const Field mass = product_of_samples(state.grid_ptr(), ps, conj_samples(ps), p.products());
  const Field u2 = u1 - Complex(0.0, p.tau) * apply_symbol(sym->inv_cnabla, mass);
  const Samples zs = to_physical(untwist(u2));
  Samples rot(zs.size());
  for (std::size_t i = 0; i < zs.size(); ++i) rot[i] = std::exp(Complex(0.0, p.tau * zs[i].real()));
  const Field psi2_ = product_of_samples(state.grid_ptr(), rot, ps, p.products());
  KgsState out(u2, psi2_);
  check_finite(out, "splitting");
  return out;
}

KgsState step(SchemeId scheme, const KgsState& state, const StepParams& p) {
  switch (scheme) {
    case SchemeId::UA1: return ua1_step(state, p);
    case SchemeId::UA2: return ua2_step(state, p);
    case SchemeId::LimitFree: return limit_free_step(state, p);
    case SchemeId::LieSplitting: return splitting_step(state, p);
  }
  throw Error("unknown scheme");
}

KgsState evolve(SchemeId scheme, const KgsState& state, const StepParams& p, std::size_t n_steps,
                std::vector<TraceEntry>* trace) {
  auto record = [&](std::size_t i, const KgsState& s) {
    if (trace) trace->push_back({i, sobolev_norm(s.u, 1.0), sobolev_norm(s.psi, 1.0), sobolev_norm(s.psi, 0.0)});
  };
  KgsState cur = state;
  record(0, cur);
  for (std::size_t i = 0; i < n_steps; ++i) {
    try {
      cur = step(scheme, cur, p);
    } catch (const BlowUpError&) {
      throw BlowUpError(i + 1, to_string(scheme));
    }
    record(i + 1, cur);
  }
  return cur;
}

void clear_symbol_cache() {
  std::lock_guard lock(cache_mutex);
  cache.clear();
}

}  // namespace kgs
