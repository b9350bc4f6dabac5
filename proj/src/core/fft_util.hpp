// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <complex>
#include <vector>

namespace nl::fftu {

// Complex DFT over a row-major-with-first-index-fastest array (shape[0]
// contiguous). sign -1 forward, +1 backward (unnormalized, FFTW convention).
void dft(std::vector<std::complex<double>>& data, int dim, const std::array<int, 3>& shape,
         int sign);

// Linear autocorrelation c[k] = sum_j a[j] a[j+k] of real data with zero
// extension, computed by zero-padded FFT. The result is on the padded,
// circularly indexed lattice; padded_shape receives the padded extents.
std::vector<double> autocorrelation(const std::vector<double>& a, int dim,
                                    const std::array<int, 3>& shape,
                                    std::array<int, 3>& padded_shape);

}  // namespace nl::fftu
