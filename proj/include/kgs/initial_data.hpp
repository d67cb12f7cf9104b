#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "kgs/field.hpp"
#include "kgs/symbols.hpp"

namespace kgs {

/// SplitMix64: state += 0x9e3779b97f4a7c15, then the standard
/// xor-shift-multiply finalizer (constants 0xbf58476d1ce4e5b9,
/// 0x94d049bb133111eb, shifts 30/27/31). Fully specified, so seeds
/// reproduce in any language.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform on [-1, 1): (next() >> 11) * 2^-53 mapped affinely.
  double uniform_pm1();

 private:
  std::uint64_t state_;
};

/// Derive an independent sub-seed (one SplitMix64 step of seed ^ stream).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

struct RegularitySpec {
  double theta = 0.0;  ///< target Sobolev exponent
  std::uint64_t seed = 0;
  bool real_valued = false;
};

/// (u, psi): twisted Klein-Gordon variable and Schrodinger wavefunction.
struct KgsState {
  Field u;
  Field psi;

  KgsState(Field u_, Field psi_);
  const Grid& grid() const { return u.grid(); }
  const GridPtr& grid_ptr() const { return u.grid_ptr(); }
};

/// Random field with coefficients (eta + i eta') (1+|k|^2)^{-(theta+0.51)/2},
/// normalized to unit H^theta norm.
Field random_sobolev(const GridPtr& grid, const RegularitySpec& spec);

/// u0 = z0 - i c^{-1} <nabla>_c^{-1} zt0. Both inputs must be real-valued.
Field twist(const Field& z0, const Field& zt0, CParam c);

/// z = (u + conj(u)) / 2.
Field untwist(const Field& u);

/// psi ~ H^theta_psi (complex); z0 ~ H^theta_z, zt0 ~ H^{max(theta_z-1,0)}
/// (real); u = twist(z0, zt0, c).
KgsState make_state(const GridPtr& grid, CParam c, double theta_psi, double theta_z,
                    std::uint64_t seed);

// Spectral dump, JSON:
//   {"format": "kgs-state", "version": 1,
//    "grid": {"dim": d, "n": n, "length": L},
//    "u":   [[m0, (m1, m2,) re, im], ...],
//    "psi": [[...], ...]}
// one entry per mode, mode indices as signed integer frequencies.
std::string state_to_json(const KgsState& state);
KgsState state_from_json(const std::string& text);
void save_state(const KgsState& state, const std::filesystem::path& path);
KgsState load_state(const std::filesystem::path& path);

}  // namespace kgs
