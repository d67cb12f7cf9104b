#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace kgs::detail {
namespace {

// FFTW planning is not thread-safe; execution of an existing plan on new
// arrays is. Plans are created once per (dim, n, sign) under a lock and
// never destroyed.
fftw_plan plan_for(const Grid& grid, int sign) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, int>, fftw_plan> plans;

  std::lock_guard lock(mutex);
  auto key = std::make_tuple(grid.dim(), grid.n(), sign);
  if (auto it = plans.find(key); it != plans.end()) return it->second;

  std::vector<Complex> in(grid.size()), out(grid.size());
  int dims[3] = {grid.n(), grid.n(), grid.n()};
  fftw_plan plan = fftw_plan_dft(grid.dim(), dims, reinterpret_cast<fftw_complex*>(in.data()),
                                 reinterpret_cast<fftw_complex*>(out.data()), sign,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (plan == nullptr) throw Error("FFTW failed to create a plan");
  plans.emplace(key, plan);
  return plan;
}

void execute(const Grid& grid, int sign, std::span<const Complex> in, std::span<Complex> out) {
  if (in.size() != grid.size() || out.size() != grid.size())
    throw Error("transform buffer does not match grid size");
  fftw_plan plan = plan_for(grid, sign);
  // The out-of-place complex DFT leaves its input untouched.
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in.data())),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace

void inverse_transform(const Grid& grid, std::span<const Complex> coeffs,
                       std::span<Complex> samples) {
  execute(grid, FFTW_BACKWARD, coeffs, samples);
}

void forward_transform(const Grid& grid, std::span<const Complex> samples,
                       std::span<Complex> coeffs) {
  execute(grid, FFTW_FORWARD, samples, coeffs);
  const double scale = 1.0 / static_cast<double>(grid.size());
  for (auto& c : coeffs) c *= scale;
}

}  // namespace kgs::detail
