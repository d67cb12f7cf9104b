#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "kgs/field.hpp"

namespace kgs {

/// The parameter c (proportional to the speed of light); strictly positive.
class CParam {
 public:
  explicit CParam(double c);
  double value() const { return c_; }
  double squared() const { return c_ * c_; }

 private:
  double c_;
};

/// phi1(xi) = (e^xi - 1)/xi, with phi1(0) = 1.
Complex phi1(Complex xi);

/// Psi2(xi) = (e^xi - phi1(xi))/xi, with Psi2(0) = 1/2.
Complex psi2(Complex xi);

/// |xi| below which phi1 and psi2 switch to their Taylor series.
inline constexpr double kSeriesThreshold = 1e-2;

enum class BaseKind {
  Laplacian,  ///< -|k|^2
  CNabla,     ///< c sqrt(c^2 + |k|^2)
  InvCNabla,  ///< c / sqrt(c^2 + |k|^2)
  Residual,   ///< c sqrt(c^2 + |k|^2) - c^2 - |k|^2/2, cancellation-free
};

Symbol build_base(BaseKind kind, const GridPtr& grid, CParam c);

/// Per-mode value of the residual c sqrt(c^2+k2) - c^2 - k2/2, evaluated as
/// -k2^2 / (2 c^2 (1 + sqrt(1 + k2/c^2))^2).
double residual_value(double k2, double c);

/// c sqrt(c^2+|k|^2) - c^2 without cancellation (residual + |k|^2/2).
Symbol cnabla_minus_c2(const GridPtr& grid, CParam c);

/// Identity symbol.
inline Symbol identity_symbol(const GridPtr& grid) { return Symbol(grid, Complex(1.0)); }

/// values_out(k) = f(values_in(k)).
template <class F>
Symbol lift(F&& f, const Symbol& s) {
  std::vector<Complex> out(s.values().size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(s[i]);
  return Symbol(s.grid_ptr(), std::move(out));
}

Symbol operator+(const Symbol& a, const Symbol& b);
Symbol operator-(const Symbol& a, const Symbol& b);
Symbol operator*(const Symbol& a, const Symbol& b);
Symbol operator*(Complex alpha, const Symbol& s);
Symbol operator+(const Symbol& s, Complex gamma);
inline Symbol operator-(const Symbol& s, Complex gamma) { return s + (-gamma); }

}  // namespace kgs
