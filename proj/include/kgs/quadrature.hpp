#pragma once

#include <cstddef>
#include <vector>

namespace kgs {

struct GaussLegendre {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

/// q-point Gauss-Legendre rule (Newton iteration on P_q).
GaussLegendre gauss_legendre(int q);

/// Composite Gauss-Legendre rule on [a, b] with equal panels, plus the
/// per-panel integration matrix: for node j of a panel,
///   local[j][m] = integral from the panel start to node j of the Lagrange
///   basis polynomial of node m (scaled to the panel).
/// With it, integrals from a to any node are exact for piecewise polynomials
/// of degree < q.
class CompositeRule {
 public:
  CompositeRule(double a, double b, int panels, int q);

  std::size_t size() const { return nodes_.size(); }
  int panels() const { return panels_; }
  int points_per_panel() const { return q_; }
  double node(std::size_t i) const { return nodes_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  /// local(j, m) for j, m in 0..q-1 (same for every panel).
  double local(int j, int m) const { return local_[static_cast<std::size_t>(j * q_ + m)]; }

 private:
  int panels_;
  int q_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::vector<double> local_;
};

}  // namespace kgs
