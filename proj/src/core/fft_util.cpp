// SPDX-License-Identifier: Apache-2.0
#include "core/fft_util.hpp"

#include <fftw3.h>

#include <mutex>

#include "core/error.hpp"

namespace nl::fftu {

namespace {
std::mutex& planner_mutex() {
  static std::mutex mu;
  return mu;
}
}  // namespace

void dft(std::vector<std::complex<double>>& data, int dim, const std::array<int, 3>& shape,
         int sign) {
  require(dim >= 1 && dim <= 3, ErrorCode::invalid_argument, "fft: dim in {1,2,3}");
  size_t total = 1;
  for (int k = 0; k < dim; ++k) total *= static_cast<size_t>(shape[k]);
  require(total == data.size(), ErrorCode::invalid_argument, "fft: size mismatch");

  auto* raw = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    // FFTW wants the last dimension contiguous; our flat index has axis 0
    // contiguous, so the dims are passed reversed.
    switch (dim) {
      case 1: plan = fftw_plan_dft_1d(shape[0], raw, raw, sign, FFTW_ESTIMATE); break;
      case 2: plan = fftw_plan_dft_2d(shape[1], shape[0], raw, raw, sign, FFTW_ESTIMATE); break;
      default:
        plan = fftw_plan_dft_3d(shape[2], shape[1], shape[0], raw, raw, sign, FFTW_ESTIMATE);
    }
  }
  require(plan != nullptr, ErrorCode::internal, "fft: planning failed");
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
}

std::vector<double> autocorrelation(const std::vector<double>& a, int dim,
                                    const std::array<int, 3>& shape,
                                    std::array<int, 3>& padded_shape) {
  padded_shape = {1, 1, 1};
  size_t padded_total = 1;
  for (int k = 0; k < dim; ++k) {
    padded_shape[k] = 2 * shape[k];
    padded_total *= static_cast<size_t>(padded_shape[k]);
  }
  std::vector<std::complex<double>> buf(padded_total, 0.0);
  for (int i2 = 0; i2 < shape[2]; ++i2)
    for (int i1 = 0; i1 < shape[1]; ++i1)
      for (int i0 = 0; i0 < shape[0]; ++i0) {
        const size_t src = static_cast<size_t>(i0) +
                           static_cast<size_t>(shape[0]) *
                               (static_cast<size_t>(i1) + static_cast<size_t>(shape[1]) * i2);
        const size_t dst = static_cast<size_t>(i0) +
                           static_cast<size_t>(padded_shape[0]) *
                               (static_cast<size_t>(i1) +
                                static_cast<size_t>(padded_shape[1]) * i2);
        buf[dst] = a[src];
      }
  dft(buf, dim, padded_shape, -1);
  for (auto& c : buf) c = std::norm(c);
  dft(buf, dim, padded_shape, +1);
  std::vector<double> out(padded_total);
  const double scale = 1.0 / static_cast<double>(padded_total);
  for (size_t i = 0; i < padded_total; ++i) out[i] = buf[i].real() * scale;
  return out;
}

}  // namespace nl::fftu
