#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace kgs {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when two operands live on different grids.
class GridMismatch : public Error {
 public:
  GridMismatch() : Error("operands are defined on different grids") {}
};

using ModeIndex = std::array<int, 3>;

/// Uniform periodic grid on the torus [0, length)^dim.
///
/// Modes are stored in FFT order (row-major over axes); along each axis the
/// integer frequencies are 0, 1, ..., n/2-1, -n/2, ..., -1.
class Grid {
 public:
  Grid(int dim, int n, double length = 2.0 * std::numbers::pi);

  static std::shared_ptr<const Grid> create(int dim, int n,
                                            double length = 2.0 * std::numbers::pi) {
    return std::make_shared<const Grid>(dim, n, length);
  }

  int dim() const { return dim_; }
  int n() const { return n_; }
  double length() const { return length_; }
  /// Total number of modes (and of physical grid points).
  std::size_t size() const { return size_; }
  std::array<int, 3> shape() const;

  /// Integer frequency of each index along one axis.
  std::span<const int> frequencies() const { return freqs_; }
  /// Physical wavenumber for an integer frequency: 2*pi*m/length.
  double wavenumber(int frequency) const { return wavenumber_scale_ * frequency; }

  /// |k|^2 per mode in physical wavenumbers.
  std::span<const double> k_squared() const { return k_squared_; }
  double max_k_squared() const { return max_k_squared_; }

  ModeIndex mode(std::size_t index) const;
  std::size_t index_of(const ModeIndex& mode) const;
  /// Flat index of the mode -k (mod n along each axis).
  std::size_t negated(std::size_t index) const { return negated_[index]; }

  /// Coordinates x_j = j*length/n along one axis.
  std::vector<double> points() const;

  bool same_as(const Grid& other) const {
    return dim_ == other.dim_ && n_ == other.n_ && length_ == other.length_;
  }
  std::string describe() const;

 private:
  int dim_;
  int n_;
  double length_;
  std::size_t size_;
  double wavenumber_scale_;
  std::vector<int> freqs_;
  std::vector<double> k_squared_;
  std::vector<std::size_t> negated_;
  double max_k_squared_ = 0.0;
};

using GridPtr = std::shared_ptr<const Grid>;

inline void require_same_grid(const Grid& a, const Grid& b) {
  if (&a != &b && !a.same_as(b)) throw GridMismatch();
}

}  // namespace kgs
