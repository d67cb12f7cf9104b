#include "kgs/field.hpp"

#include <algorithm>
#include <cmath>

#include "fft.hpp"

namespace kgs {

Field::Field(GridPtr grid) : grid_(std::move(grid)) {
  if (!grid_) throw Error("field requires a grid");
  coeffs_.assign(grid_->size(), Complex{});
}

Field::Field(GridPtr grid, std::vector<Complex> coeffs)
    : grid_(std::move(grid)), coeffs_(std::move(coeffs)) {
  if (!grid_) throw Error("field requires a grid");
  if (coeffs_.size() != grid_->size()) throw Error("coefficient count does not match grid");
}

Field Field::mode(GridPtr grid, const ModeIndex& k, Complex value) {
  std::vector<Complex> c(grid->size());
  c[grid->index_of(k)] = value;
  return Field(std::move(grid), std::move(c));
}

Field Field::constant(GridPtr grid, Complex value) { return mode(std::move(grid), {0, 0, 0}, value); }

namespace {

template <class Op>
Field combine(const Field& a, const Field& b, Op op) {
  require_same_grid(a.grid(), b.grid());
  std::vector<Complex> out(a.size());
  auto ca = a.coeffs();
  auto cb = b.coeffs();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = op(ca[i], cb[i]);
  return Field(a.grid_ptr(), std::move(out));
}

}  // namespace

Field operator+(const Field& a, const Field& b) {
  return combine(a, b, [](Complex x, Complex y) { return x + y; });
}

Field operator-(const Field& a, const Field& b) {
  return combine(a, b, [](Complex x, Complex y) { return x - y; });
}

Field operator-(const Field& a) { return Complex(-1.0) * a; }

Field operator*(Complex s, const Field& a) {
  std::vector<Complex> out(a.coeffs().begin(), a.coeffs().end());
  for (auto& c : out) c *= s;
  return Field(a.grid_ptr(), std::move(out));
}

Symbol::Symbol(GridPtr grid, std::vector<Complex> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw Error("symbol requires a grid");
  if (values_.size() != grid_->size()) throw Error("symbol size does not match grid");
}

Symbol::Symbol(GridPtr grid, Complex value) : grid_(std::move(grid)) {
  if (!grid_) throw Error("symbol requires a grid");
  values_.assign(grid_->size(), value);
}

SobolevIndex::SobolevIndex(double r) : r_(r) {
  if (!(r >= 0.0)) throw Error("Sobolev exponent must be non-negative");
}

std::vector<Complex> to_physical(const Field& f) {
  std::vector<Complex> samples(f.size());
  detail::inverse_transform(f.grid(), f.coeffs(), samples);
  return samples;
}

Field from_physical(GridPtr grid, std::span<const Complex> samples) {
  if (!grid) throw Error("from_physical requires a grid");
  if (samples.size() != grid->size()) throw Error("sample count does not match grid");
  std::vector<Complex> coeffs(grid->size());
  detail::forward_transform(*grid, samples, coeffs);
  return Field(std::move(grid), std::move(coeffs));
}

Field apply_symbol(const Symbol& s, const Field& f) {
  require_same_grid(s.grid(), f.grid());
  std::vector<Complex> out(f.size());
  auto c = f.coeffs();
  auto v = s.values();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = v[i] * c[i];
  return Field(f.grid_ptr(), std::move(out));
}

namespace {

void apply_two_thirds_rule(const Grid& grid, std::vector<Complex>& coeffs) {
  const int cutoff = grid.n() / 3;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    ModeIndex m = grid.mode(i);
    for (int d = 0; d < grid.dim(); ++d) {
      if (std::abs(m[d]) > cutoff) {
        coeffs[i] = 0.0;
        break;
      }
    }
  }
}

}  // namespace

Field pointwise_product(const Field& f, const Field& g, ProductOptions options) {
  require_same_grid(f.grid(), g.grid());
  const Grid& grid = f.grid();
  std::vector<Complex> fs(grid.size()), gs(grid.size());
  detail::inverse_transform(grid, f.coeffs(), fs);
  detail::inverse_transform(grid, g.coeffs(), gs);
  for (std::size_t i = 0; i < fs.size(); ++i) fs[i] *= gs[i];
  std::vector<Complex> out(grid.size());
  detail::forward_transform(grid, fs, out);
  if (options.dealias) apply_two_thirds_rule(grid, out);
  return Field(f.grid_ptr(), std::move(out));
}

Field product_of_samples(GridPtr grid, std::span<const Complex> a, std::span<const Complex> b,
                         ProductOptions options) {
  if (a.size() != grid->size() || b.size() != grid->size())
    throw Error("sample count does not match grid");
  std::vector<Complex> prod(a.size());
  for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = a[i] * b[i];
  std::vector<Complex> out(grid->size());
  detail::forward_transform(*grid, prod, out);
  if (options.dealias) apply_two_thirds_rule(*grid, out);
  return Field(std::move(grid), std::move(out));
}

Field conj_field(const Field& f) {
  const Grid& grid = f.grid();
  std::vector<Complex> out(f.size());
  auto c = f.coeffs();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::conj(c[grid.negated(i)]);
  return Field(f.grid_ptr(), std::move(out));
}

double sobolev_norm(const Field& f, SobolevIndex r) {
  auto k2 = f.grid().k_squared();
  auto c = f.coeffs();
  double sum = 0.0;
  if (r.value() == 0.0) {
    for (const auto& x : c) sum += std::norm(x);
  } else {
    for (std::size_t i = 0; i < c.size(); ++i)
      sum += std::pow(1.0 + k2[i], r.value()) * std::norm(c[i]);
  }
  return std::sqrt(sum);
}

Field laplacian(const Field& f) {
  auto k2 = f.grid().k_squared();
  std::vector<Complex> out(f.coeffs().begin(), f.coeffs().end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= -k2[i];
  return Field(f.grid_ptr(), std::move(out));
}

Field commutator_quad(const Field& v, const Field& w, ProductOptions options) {
  require_same_grid(v.grid(), w.grid());
  return -laplacian(pointwise_product(v, w, options)) +
         pointwise_product(w, laplacian(v), options) + pointwise_product(v, laplacian(w), options);
}

bool is_conjugate_symmetric(const Field& f, double rel_tol) {
  const Grid& grid = f.grid();
  auto c = f.coeffs();
  double scale = 0.0;
  for (const auto& x : c) scale = std::max(scale, std::abs(x));
  const double tol = rel_tol * std::max(scale, 1e-300);
  for (std::size_t i = 0; i < c.size(); ++i)
    if (std::abs(c[grid.negated(i)] - std::conj(c[i])) > tol) return false;
  return true;
}

bool all_finite(const Field& f) {
  return std::ranges::all_of(f.coeffs(), [](const Complex& x) {
    return std::isfinite(x.real()) && std::isfinite(x.imag());
  });
}

}  // namespace kgs
