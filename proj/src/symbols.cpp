#include "kgs/symbols.hpp"

#include <cmath>

namespace kgs {

CParam::CParam(double c) : c_(c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw Error("parameter c must be positive and finite");
}

namespace {

// e^xi - 1 without cancellation for small real part.
Complex expm1_complex(Complex xi) {
  const double a = xi.real();
  const double b = xi.imag();
  const double s = std::sin(0.5 * b);
  const double co = std::cos(0.5 * b);
  const double cos_b = (co - s) * (co + s);
  const double re = std::expm1(a) * cos_b - 2.0 * s * s;
  const double im = std::exp(a) * 2.0 * s * co;
  return {re, im};
}

}  // namespace

Complex phi1(Complex xi) {
  if (std::abs(xi) < kSeriesThreshold) {
    // sum_{n=0}^{7} xi^n / (n+1)!, Horner form.
    Complex acc = 1.0 / 40320.0;
    for (int n = 6; n >= 0; --n) {
      double inv_fact = 1.0;
      for (int j = 2; j <= n + 1; ++j) inv_fact /= j;
      acc = acc * xi + inv_fact;
    }
    return acc;
  }
  return expm1_complex(xi) / xi;
}

Complex psi2(Complex xi) {
  if (std::abs(xi) < kSeriesThreshold) {
    // sum_{n=1}^{8} n xi^{n-1} / (n+1)!
    Complex acc = 8.0 / 362880.0;
    for (int n = 7; n >= 1; --n) {
      double fact = 1.0;
      for (int j = 2; j <= n + 1; ++j) fact *= j;
      acc = acc * xi + static_cast<double>(n) / fact;
    }
    return acc;
  }
  return (std::exp(xi) - phi1(xi)) / xi;
}

double residual_value(double k2, double c) {
  const double c2 = c * c;
  const double root = 1.0 + std::sqrt(1.0 + k2 / c2);
  return -(k2 * k2) / (2.0 * c2 * root * root);
}

Symbol build_base(BaseKind kind, const GridPtr& grid, CParam c) {
  auto k2 = grid->k_squared();
  const double cv = c.value();
  const double c2 = c.squared();
  std::vector<Complex> v(grid->size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    switch (kind) {
      case BaseKind::Laplacian:
        v[i] = -k2[i];
        break;
      case BaseKind::CNabla:
        v[i] = cv * std::sqrt(c2 + k2[i]);
        break;
      case BaseKind::InvCNabla:
        v[i] = cv / std::sqrt(c2 + k2[i]);
        break;
      case BaseKind::Residual:
        v[i] = residual_value(k2[i], cv);
        break;
    }
  }
  return Symbol(grid, std::move(v));
}

Symbol cnabla_minus_c2(const GridPtr& grid, CParam c) {
  auto k2 = grid->k_squared();
  std::vector<Complex> v(grid->size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = residual_value(k2[i], c.value()) + 0.5 * k2[i];
  return Symbol(grid, std::move(v));
}

namespace {

template <class Op>
Symbol combine(const Symbol& a, const Symbol& b, Op op) {
  require_same_grid(a.grid(), b.grid());
  std::vector<Complex> out(a.values().size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = op(a[i], b[i]);
  return Symbol(a.grid_ptr(), std::move(out));
}

}  // namespace

Symbol operator+(const Symbol& a, const Symbol& b) {
  return combine(a, b, [](Complex x, Complex y) { return x + y; });
}
Symbol operator-(const Symbol& a, const Symbol& b) {
  return combine(a, b, [](Complex x, Complex y) { return x - y; });
}
Symbol operator*(const Symbol& a, const Symbol& b) {
  return combine(a, b, [](Complex x, Complex y) { return x * y; });
}
Symbol operator*(Complex alpha, const Symbol& s) {
  return lift([alpha](Complex x) { return alpha * x; }, s);
}
Symbol operator+(const Symbol& s, Complex gamma) {
  return lift([gamma](Complex x) { return x + gamma; }, s);
}

}  // namespace kgs
