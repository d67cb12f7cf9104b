#include "kgs/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "kgs/grid.hpp"

namespace kgs {

GaussLegendre gauss_legendre(int q) {
  if (q < 1) throw Error("Gauss-Legendre rule needs at least one point");
  GaussLegendre rule;
  rule.nodes.resize(q);
  rule.weights.resize(q);
  for (int i = 0; i < q; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (q + 0.5));
    double dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= q; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = q * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute the derivative at the converged node
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= q; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = q * (x * p1 - p0) / (x * x - 1.0);
    rule.nodes[q - 1 - i] = x;
    rule.weights[q - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

namespace {

double lagrange(const std::vector<double>& xs, int m, double x) {
  double v = 1.0;
  for (std::size_t j = 0; j < xs.size(); ++j)
    if (static_cast<int>(j) != m) v *= (x - xs[j]) / (xs[m] - xs[j]);
  return v;
}

}  // namespace

CompositeRule::CompositeRule(double a, double b, int panels, int q) : panels_(panels), q_(q) {
  if (panels < 1) throw Error("composite rule needs at least one panel");
  if (!(b > a)) throw Error("composite rule needs a < b");
  const GaussLegendre g = gauss_legendre(q);
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double left = a + p * h;
    for (int j = 0; j < q; ++j) {
      nodes_.push_back(left + 0.5 * (g.nodes[j] + 1.0) * h);
      weights_.push_back(0.5 * h * g.weights[j]);
    }
  }
  local_.resize(static_cast<std::size_t>(q * q));
  for (int j = 0; j < q; ++j) {
    // integral over [-1, x_j] with the same rule, mapped
    const double hi = g.nodes[j];
    const double half = 0.5 * (hi + 1.0);
    for (int m = 0; m < q; ++m) {
      double acc = 0.0;
      for (int l = 0; l < q; ++l) acc += g.weights[l] * lagrange(g.nodes, m, -1.0 + half * (g.nodes[l] + 1.0));
      local_[static_cast<std::size_t>(j * q + m)] = acc * half * 0.5 * h;
    }
  }
}

}  // namespace kgs
