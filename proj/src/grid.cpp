#include "kgs/grid.hpp"

#include <cmath>
#include <sstream>

namespace kgs {

Grid::Grid(int dim, int n, double length) : dim_(dim), n_(n), length_(length) {
  if (dim < 1 || dim > 3) throw Error("grid dimension must be 1, 2 or 3");
  if (n < 4 || n % 2 != 0) throw Error("grid needs an even number of points per axis, at least 4");
  if (!(length > 0.0) || !std::isfinite(length)) throw Error("grid length must be positive");

  wavenumber_scale_ = 2.0 * std::numbers::pi / length;
  freqs_.resize(n);
  for (int j = 0; j < n; ++j) freqs_[j] = j < n / 2 ? j : j - n;

  size_ = 1;
  for (int d = 0; d < dim; ++d) size_ *= static_cast<std::size_t>(n);

  k_squared_.resize(size_);
  negated_.resize(size_);
  for (std::size_t i = 0; i < size_; ++i) {
    ModeIndex m = mode(i);
    double k2 = 0.0;
    ModeIndex neg{0, 0, 0};
    for (int d = 0; d < dim; ++d) {
      double k = wavenumber(m[d]);
      k2 += k * k;
      neg[d] = -m[d];
    }
    k_squared_[i] = k2;
    max_k_squared_ = std::max(max_k_squared_, k2);
    negated_[i] = index_of(neg);
  }
}

std::array<int, 3> Grid::shape() const {
  std::array<int, 3> s{1, 1, 1};
  for (int d = 0; d < dim_; ++d) s[d] = n_;
  return s;
}

ModeIndex Grid::mode(std::size_t index) const {
  ModeIndex m{0, 0, 0};
  for (int d = dim_ - 1; d >= 0; --d) {
    m[d] = freqs_[index % n_];
    index /= n_;
  }
  return m;
}

std::size_t Grid::index_of(const ModeIndex& mode) const {
  std::size_t index = 0;
  for (int d = 0; d < dim_; ++d) {
    int j = ((mode[d] % n_) + n_) % n_;
    index = index * n_ + static_cast<std::size_t>(j);
  }
  return index;
}

std::vector<double> Grid::points() const {
  std::vector<double> x(n_);
  for (int j = 0; j < n_; ++j) x[j] = length_ * j / n_;
  return x;
}

std::string Grid::describe() const {
  std::ostringstream os;
  os << "torus dim=" << dim_ << " n=" << n_ << " length=" << length_;
  return os.str();
}

}  // namespace kgs
