#include "kgs/initial_data.hpp"

#include <cmath>

namespace kgs {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform_pm1() {
  const double unit = static_cast<double>(next() >> 11) * 0x1.0p-53;
  return 2.0 * unit - 1.0;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  SplitMix64 g(seed ^ (stream * 0xd1b54a32d192ed03ULL));
  return g.next();
}

KgsState::KgsState(Field u_, Field psi_) : u(std::move(u_)), psi(std::move(psi_)) {
  require_same_grid(u.grid(), psi.grid());
}

Field random_sobolev(const GridPtr& grid, const RegularitySpec& spec) {
  if (!(spec.theta >= 0.0)) throw Error("regularity exponent must be non-negative");
  SplitMix64 rng(spec.seed);
  auto k2 = grid->k_squared();
  const double decay = -(spec.theta + 0.5 * grid->dim() + 0.01) / 2.0;
  std::vector<Complex> c(grid->size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const std::size_t j = grid->negated(i);
    if (spec.real_valued && j < i) continue;
    const double eta = rng.uniform_pm1();
    const double eta_im = rng.uniform_pm1();
    const double weight = std::pow(1.0 + k2[i], decay);
    if (!spec.real_valued) {
      c[i] = Complex(eta, eta_im) * weight;
    } else if (j == i) {
      c[i] = eta * weight;
    } else {
      c[i] = Complex(eta, eta_im) * weight;
      c[j] = std::conj(c[i]);
    }
  }
  Field f(grid, std::move(c));
  const double norm = sobolev_norm(f, spec.theta);
  return Complex(1.0 / norm) * f;
}

Field twist(const Field& z0, const Field& zt0, CParam c) {
  require_same_grid(z0.grid(), zt0.grid());
  if (!is_conjugate_symmetric(z0, 1e-10) || !is_conjugate_symmetric(zt0, 1e-10))
    throw Error("twist expects real-valued z(0) and dz/dt(0)");
  auto k2 = z0.grid().k_squared();
  const double cv = c.value();
  std::vector<Complex> u(z0.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double m = 1.0 / (cv * std::sqrt(cv * cv + k2[i]));
    u[i] = z0[i] - Complex(0.0, m) * zt0[i];
  }
  return Field(z0.grid_ptr(), std::move(u));
}

Field untwist(const Field& u) { return Complex(0.5) * (u + conj_field(u)); }

KgsState make_state(const GridPtr& grid, CParam c, double theta_psi, double theta_z,
                    std::uint64_t seed) {
  Field psi = random_sobolev(grid, {theta_psi, derive_seed(seed, 1), false});
  Field z0 = random_sobolev(grid, {theta_z, derive_seed(seed, 2), true});
  Field zt0 = random_sobolev(grid, {std::max(theta_z - 1.0, 0.0), derive_seed(seed, 3), true});
  return KgsState(twist(z0, zt0, c), std::move(psi));
}

}  // namespace kgs
