#pragma once

#include <complex>
#include <span>
#include <vector>

#include "kgs/grid.hpp"

namespace kgs {

using Complex = std::complex<double>;

/// A complex function on the torus, stored as Fourier coefficients.
///
/// Coefficients are analysis-normalized: coeff(k) is the amplitude of
/// e^{ik.x}. Fields are immutable; every operation returns a new Field.
class Field {
 public:
  explicit Field(GridPtr grid);
  Field(GridPtr grid, std::vector<Complex> coeffs);

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::size_t size() const { return coeffs_.size(); }

  std::span<const Complex> coeffs() const { return coeffs_; }
  Complex operator[](std::size_t index) const { return coeffs_[index]; }
  Complex coeff(const ModeIndex& mode) const { return coeffs_[grid_->index_of(mode)]; }

  /// Field with a single nonzero coefficient.
  static Field mode(GridPtr grid, const ModeIndex& k, Complex value = 1.0);
  static Field constant(GridPtr grid, Complex value);

 private:
  GridPtr grid_;
  std::vector<Complex> coeffs_;
};

Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator-(const Field& a);
Field operator*(Complex s, const Field& a);
inline Field operator*(const Field& a, Complex s) { return s * a; }

/// A diagonal Fourier multiplier: one complex value per mode.
class Symbol {
 public:
  Symbol(GridPtr grid, std::vector<Complex> values);
  /// Constant symbol.
  Symbol(GridPtr grid, Complex value);

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::span<const Complex> values() const { return values_; }
  Complex operator[](std::size_t index) const { return values_[index]; }

 private:
  GridPtr grid_;
  std::vector<Complex> values_;
};

/// Non-negative Sobolev exponent r of the H^r norm.
class SobolevIndex {
 public:
  SobolevIndex(double r);  // NOLINT(google-explicit-constructor)
  double value() const { return r_; }

 private:
  double r_;
};

// Spectral kernels -----------------------------------------------------------

/// Physical samples on the grid: a unit coefficient at mode k maps to
/// e^{ik.x_j}.
std::vector<Complex> to_physical(const Field& f);
Field from_physical(GridPtr grid, std::span<const Complex> samples);

Field apply_symbol(const Symbol& s, const Field& f);

struct ProductOptions {
  /// Zero all modes with |m| > n/3 along any axis after the product.
  bool dealias = false;
};

/// Pseudospectral product: multiply physical samples, transform back.
Field pointwise_product(const Field& f, const Field& g, ProductOptions options = {});

/// Product of two sample arrays already in physical space (same rules as
/// pointwise_product).
Field product_of_samples(GridPtr grid, std::span<const Complex> a, std::span<const Complex> b,
                         ProductOptions options = {});

/// The complex conjugate function: coeff(k) -> conj(coeff(-k)).
Field conj_field(const Field& f);

/// sqrt( sum_k (1+|k|^2)^r |coeff(k)|^2 ).
double sobolev_norm(const Field& f, SobolevIndex r);

/// -Delta(vw) + w Delta v + v Delta w, evaluated spectrally.
Field commutator_quad(const Field& v, const Field& w, ProductOptions options = {});

/// Laplacian applied spectrally.
Field laplacian(const Field& f);

bool is_conjugate_symmetric(const Field& f, double rel_tol = 1e-12);
bool all_finite(const Field& f);

}  // namespace kgs
