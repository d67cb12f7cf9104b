#include "kgs/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "kgs/quadrature.hpp"

namespace kgs {

void OracleConfig::validate() const {
  if (quad_points < 4) throw OracleError("oracle needs at least 4 quadrature points per panel");
  if (panels < 0) throw OracleError("panel count must be non-negative");
  if (!(max_phase > 0.0)) throw OracleError("max_phase must be positive");
  if (picard_iters < 3) throw OracleError("oracle needs at least 3 Picard iterations");
  if (!(tol > 0.0)) throw OracleError("Picard tolerance must be positive");
}

int oracle_panels(const Grid& grid, CParam c, double tau, const OracleConfig& cfg) {
  cfg.validate();
  const double c2 = c.squared();
  if (cfg.panels > 0) {
    if (c2 * tau / cfg.panels > 0.5)
      throw OracleError("phase resolution violated: c^2 tau / panels = " +
                        std::to_string(c2 * tau / cfg.panels) + " > 0.5");
    return cfg.panels;
  }
  const double omega = c2 + 1.5 * grid.max_k_squared();
  const double needed = std::ceil(omega * tau / cfg.max_phase);
  const double floor_c2 = std::ceil(c2 * tau / 0.5);
  const double panels = std::max({1.0, needed, floor_c2});
  if (panels > 1e7) throw OracleError("oracle quadrature too large for this (c, tau, grid)");
  return static_cast<int>(panels);
}

namespace {

// Free propagators at an arbitrary time.
class Frame {
 public:
  Frame(GridPtr grid, CParam c) : grid_(std::move(grid)), c_(c) {
    auto k2 = grid_->k_squared();
    k2_.assign(k2.begin(), k2.end());
    for (double q : k2_) {
      slow_.push_back(0.5 * q + residual_value(q, c.value()));
      inv_.emplace_back(c.value() / std::sqrt(c.squared() + q));
    }
  }

  // e^{itL} = e^{itc^2} e^{it(k^2/2 + R)}
  Symbol exp_l(double t) const {
    const Complex base = std::polar(1.0, t * c_.squared());
    std::vector<Complex> v(k2_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = base * std::polar(1.0, t * slow_[i]);
    return Symbol(grid_, std::move(v));
  }
  // e^{it Delta/2}
  Symbol exp_half(double t) const {
    std::vector<Complex> v(k2_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::polar(1.0, -0.5 * t * k2_[i]);
    return Symbol(grid_, std::move(v));
  }
  Symbol inv_cnabla() const { return Symbol(grid_, inv_); }
  const GridPtr& grid() const { return grid_; }

 private:
  GridPtr grid_;
  CParam c_;
  std::vector<double> k2_;
  std::vector<double> slow_;
  std::vector<Complex> inv_;
};

Field zero_like(const Field& f) { return Field(f.grid_ptr()); }

// Running sum of a panel's integrands from the panel start to each node.
std::vector<Field> panel_cumulative(const CompositeRule& rule, const Field& base,
                                    const std::vector<Field>& values) {
  const int q = rule.points_per_panel();
  std::vector<Field> out;
  out.reserve(q);
  for (int j = 0; j < q; ++j) {
    std::vector<Complex> acc(base.coeffs().begin(), base.coeffs().end());
    for (int m = 0; m < q; ++m) {
      const double wjm = rule.local(j, m);
      auto c = values[m].coeffs();
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += wjm * c[i];
    }
    out.emplace_back(base.grid_ptr(), std::move(acc));
  }
  return out;
}

void accumulate(std::vector<Complex>& acc, double weight, const Field& f) {
  auto c = f.coeffs();
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += weight * c[i];
}

}  // namespace

std::map<IntegralTerm, Field> quad_integrals(const Field& u, const Field& psi, const StepParams& p,
                                             const OracleConfig& cfg) {
  require_same_grid(u.grid(), psi.grid());
  const GridPtr grid = psi.grid_ptr();
  const ProductOptions po = p.products();
  const Frame frame(grid, p.c);
  const Symbol inv = frame.inv_cnabla();
  const CompositeRule rule(0.0, p.tau, oracle_panels(*grid, p.c, p.tau, cfg), cfg.quad_points);
  const int q = rule.points_per_panel();
  const Field& v = psi;
  const Field& w = u;
  const Field wbar = conj_field(w);

  enum Slot { kI1, kI2, kI3, kJ1, kJ21, kJ22, kJ23, kJ24, kJ31, kJ32, kSlots };
  std::vector<std::vector<Complex>> acc(kSlots, std::vector<Complex>(grid->size()));

  // inner running integrals at the current panel start
  Field g1_base = zero_like(v), g2_base = zero_like(v), h_base = zero_like(v);

  for (int panel = 0; panel < rule.panels(); ++panel) {
    struct Node {
      double s;
      Symbol el, el_back, half, half_back;
      Field ev, lw, lwbar;
    };
    std::vector<Node> nodes;
    std::vector<Field> g1, g2, h;
    for (int j = 0; j < q; ++j) {
      const double s = rule.node(static_cast<std::size_t>(panel * q + j));
      Node nd{s, frame.exp_l(s), frame.exp_l(-s), frame.exp_half(s), frame.exp_half(-s),
              Field(grid), Field(grid), Field(grid)};
      nd.ev = apply_symbol(nd.half, v);
      nd.lw = apply_symbol(nd.el, w);
      nd.lwbar = apply_symbol(nd.el_back, wbar);
      g1.push_back(apply_symbol(nd.half_back, pointwise_product(nd.ev, nd.lw, po)));
      g2.push_back(apply_symbol(nd.half_back, pointwise_product(nd.ev, nd.lwbar, po)));
      h.push_back(apply_symbol(nd.el_back, pointwise_product(nd.ev, conj_field(nd.ev), po)));
      nodes.push_back(std::move(nd));
    }
    const auto big_g1 = panel_cumulative(rule, g1_base, g1);
    const auto big_g2 = panel_cumulative(rule, g2_base, g2);
    const auto big_h = panel_cumulative(rule, h_base, h);

    for (int j = 0; j < q; ++j) {
      const Node& nd = nodes[j];
      const double wt = rule.weight(static_cast<std::size_t>(panel * q + j));
      // psi correction split by the w / wbar parts of the inner integrand
      const Field ipsi1 = Complex(0.0, 0.5) * apply_symbol(nd.half, big_g1[j]);
      const Field ipsi2 = Complex(0.0, 0.5) * apply_symbol(nd.half, big_g2[j]);
      const Field ipsi = ipsi1 + ipsi2;
      const Field big_u = Complex(0.0, -1.0) * apply_symbol(inv, apply_symbol(nd.el, big_h[j]));
      const Field evbar = conj_field(nd.ev);

      accumulate(acc[kI1], wt, h[j]);
      accumulate(acc[kI2], wt, apply_symbol(nd.el_back, pointwise_product(evbar, ipsi, po)));
      accumulate(acc[kI3], wt, apply_symbol(nd.el_back, pointwise_product(nd.ev, conj_field(ipsi), po)));
      accumulate(acc[kJ1], wt, g1[j] + g2[j]);
      accumulate(acc[kJ21], wt, apply_symbol(nd.half_back, pointwise_product(ipsi1, nd.lw, po)));
      accumulate(acc[kJ22], wt, apply_symbol(nd.half_back, pointwise_product(ipsi1, nd.lwbar, po)));
      accumulate(acc[kJ23], wt, apply_symbol(nd.half_back, pointwise_product(ipsi2, nd.lw, po)));
      accumulate(acc[kJ24], wt, apply_symbol(nd.half_back, pointwise_product(ipsi2, nd.lwbar, po)));
      accumulate(acc[kJ31], wt, apply_symbol(nd.half_back, pointwise_product(nd.ev, big_u, po)));
      accumulate(acc[kJ32], wt, apply_symbol(nd.half_back, pointwise_product(nd.ev, conj_field(big_u), po)));
    }

    std::vector<Complex> b1(g1_base.coeffs().begin(), g1_base.coeffs().end());
    std::vector<Complex> b2(g2_base.coeffs().begin(), g2_base.coeffs().end());
    std::vector<Complex> bh(h_base.coeffs().begin(), h_base.coeffs().end());
    for (int j = 0; j < q; ++j) {
      const double wt = rule.weight(static_cast<std::size_t>(panel * q + j));
      accumulate(b1, wt, g1[j]);
      accumulate(b2, wt, g2[j]);
      accumulate(bh, wt, h[j]);
    }
    g1_base = Field(grid, std::move(b1));
    g2_base = Field(grid, std::move(b2));
    h_base = Field(grid, std::move(bh));
  }

  auto f = [&](Slot s) { return Field(grid, acc[s]); };
  std::map<IntegralTerm, Field> out;
  using T = IntegralTerm;
  out.emplace(T::I1, f(kI1));
  out.emplace(T::IuLead, f(kI1));
  out.emplace(T::I2, f(kI2));
  out.emplace(T::I3, f(kI3));
  out.emplace(T::J1, f(kJ1));
  out.emplace(T::JpsiLead, f(kJ1));
  out.emplace(T::J21, f(kJ21));
  out.emplace(T::J22, f(kJ22));
  out.emplace(T::J23, f(kJ23));
  out.emplace(T::J24, f(kJ24));
  out.emplace(T::J31, f(kJ31));
  out.emplace(T::J32, f(kJ32));
  out.emplace(T::IuFull, f(kI1) + f(kI2) + f(kI3));
  out.emplace(T::JpsiFull,
              f(kJ1) + f(kJ21) + f(kJ22) + f(kJ23) + f(kJ24) + f(kJ31) + f(kJ32));
  return out;
}

Field quad_integral(IntegralTerm term, const Field& u, const Field& psi, const StepParams& p,
                    const OracleConfig& cfg) {
  return quad_integrals(u, psi, p, cfg).at(term);
}

namespace {

struct Pair {
  Field a;  // U
  Field b;  // Phi
};

// Interaction-picture right-hand side at time t.
Pair rhs(const Frame& frame, const Symbol& inv, double t, const Field& big_u, const Field& phi,
         ProductOptions po) {
  const GridPtr& grid = frame.grid();
  const auto us = to_physical(apply_symbol(frame.exp_l(t), big_u));
  const auto ps = to_physical(apply_symbol(frame.exp_half(t), phi));
  std::vector<Complex> conj_ps(ps.size()), coupling(ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i) {
    conj_ps[i] = std::conj(ps[i]);
    coupling[i] = 2.0 * us[i].real();
  }
  const Field mass = product_of_samples(grid, ps, conj_ps, po);
  const Field du = Complex(0.0, -1.0) * apply_symbol(inv, apply_symbol(frame.exp_l(-t), mass));
  const Field dphi = Complex(0.0, 0.5) * apply_symbol(frame.exp_half(-t), product_of_samples(grid, ps, coupling, po));
  return {du, dphi};
}

}  // namespace

KgsState duhamel_reference(const KgsState& state, const StepParams& p, const OracleConfig& cfg) {
  const GridPtr grid = state.grid_ptr();
  const Frame frame(grid, p.c);
  const Symbol inv = frame.inv_cnabla();
  const ProductOptions po = p.products();
  const CompositeRule rule(0.0, p.tau, oracle_panels(*grid, p.c, p.tau, cfg), cfg.quad_points);
  const int q = rule.points_per_panel();
  const std::size_t m_nodes = rule.size();

  std::vector<Field> big_u(m_nodes, state.u), phi(m_nodes, state.psi);
  Field end_u = state.u, end_phi = state.psi;

  for (int it = 0; it < cfg.picard_iters; ++it) {
    std::vector<Pair> f;
    f.reserve(m_nodes);
    for (std::size_t m = 0; m < m_nodes; ++m) f.push_back(rhs(frame, inv, rule.node(m), big_u[m], phi[m], po));

    double change = 0.0;
    Field base_u = state.u, base_phi = state.psi;
    for (int panel = 0; panel < rule.panels(); ++panel) {
      std::vector<Field> fu, fphi;
      for (int j = 0; j < q; ++j) {
        fu.push_back(f[static_cast<std::size_t>(panel * q + j)].a);
        fphi.push_back(f[static_cast<std::size_t>(panel * q + j)].b);
      }
      auto nu = panel_cumulative(rule, base_u, fu);
      auto nphi = panel_cumulative(rule, base_phi, fphi);
      for (int j = 0; j < q; ++j) {
        const std::size_t m = static_cast<std::size_t>(panel * q + j);
        change = std::max(change, sobolev_norm(nu[j] - big_u[m], 1.0) + sobolev_norm(nphi[j] - phi[m], 1.0));
        big_u[m] = std::move(nu[j]);
        phi[m] = std::move(nphi[j]);
      }
      std::vector<Complex> bu(base_u.coeffs().begin(), base_u.coeffs().end());
      std::vector<Complex> bp(base_phi.coeffs().begin(), base_phi.coeffs().end());
      for (int j = 0; j < q; ++j) {
        const double wt = rule.weight(static_cast<std::size_t>(panel * q + j));
        accumulate(bu, wt, fu[j]);
        accumulate(bp, wt, fphi[j]);
      }
      base_u = Field(grid, std::move(bu));
      base_phi = Field(grid, std::move(bp));
    }
    change = std::max(change, sobolev_norm(base_u - end_u, 1.0) + sobolev_norm(base_phi - end_phi, 1.0));
    end_u = base_u;
    end_phi = base_phi;
    if (!all_finite(end_u) || !all_finite(end_phi)) throw OracleError("Picard iteration diverged");
    if (change < cfg.tol) {
      return KgsState(apply_symbol(frame.exp_l(p.tau), end_u), apply_symbol(frame.exp_half(p.tau), end_phi));
    }
  }
  throw OracleError("Picard iteration did not converge in " + std::to_string(cfg.picard_iters) +
                    " iterations; reduce tau");
}

KgsState resolved_reference(const KgsState& state, CParam c, double T, std::size_t n_fine, bool dealias) {
  if (c.value() > 32.0) throw OracleError("resolved reference is limited to c <= 32");
  if (!(T >= 0.0)) throw OracleError("final time must be non-negative");
  if (n_fine == 0) throw OracleError("resolved reference needs at least one step");
  const double h = T / static_cast<double>(n_fine);
  if (c.squared() * h > 0.1) throw OracleError("step resolution violated: c^2 T / n_fine > 0.1");
  const GridPtr grid = state.grid_ptr();
  const Frame frame(grid, c);
  const Symbol inv = frame.inv_cnabla();
  const ProductOptions po{dealias};

  Field big_u = state.u, phi = state.psi;
  for (std::size_t i = 0; i < n_fine; ++i) {
    const double t = h * static_cast<double>(i);
    const Pair k1 = rhs(frame, inv, t, big_u, phi, po);
    const Pair k2 = rhs(frame, inv, t + 0.5 * h, big_u + Complex(0.5 * h) * k1.a, phi + Complex(0.5 * h) * k1.b, po);
    const Pair k3 = rhs(frame, inv, t + 0.5 * h, big_u + Complex(0.5 * h) * k2.a, phi + Complex(0.5 * h) * k2.b, po);
    const Pair k4 = rhs(frame, inv, t + h, big_u + Complex(h) * k3.a, phi + Complex(h) * k3.b, po);
    big_u = big_u + Complex(h / 6.0) * (k1.a + Complex(2.0) * k2.a + Complex(2.0) * k3.a + k4.a);
    phi = phi + Complex(h / 6.0) * (k1.b + Complex(2.0) * k2.b + Complex(2.0) * k3.b + k4.b);
  }
  if (!all_finite(big_u) || !all_finite(phi)) throw OracleError("resolved reference produced non-finite values");
  return KgsState(apply_symbol(frame.exp_l(T), big_u), apply_symbol(frame.exp_half(T), phi));
}

}  // namespace kgs
