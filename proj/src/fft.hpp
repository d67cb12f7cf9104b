#pragma once

#include <complex>
#include <span>

#include "kgs/grid.hpp"

namespace kgs::detail {

using Complex = std::complex<double>;

// samples_j = sum_k coeffs_k e^{i k.x_j}
void inverse_transform(const Grid& grid, std::span<const Complex> coeffs,
                       std::span<Complex> samples);

// coeffs_k = (1/N) sum_j samples_j e^{-i k.x_j}
void forward_transform(const Grid& grid, std::span<const Complex> samples,
                       std::span<Complex> coeffs);

}  // namespace kgs::detail
