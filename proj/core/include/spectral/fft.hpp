#pragma once

#include <complex>
#include <span>
#include <vector>

namespace spectral::fft {

using cplx = std::complex<double>;

// Discrete Fourier transforms with the fft/ifft convention:
//   forward: X_k = sum_j x_j exp(-2 pi i j k / n)          (unnormalized)
//   inverse: x_j = (1/n) sum_k X_k exp(+2 pi i j k / n)
// Any length is accepted. `in` and `out` must not alias.

void forward(std::span<const cplx> in, std::span<cplx> out);
void inverse(std::span<const cplx> in, std::span<cplx> out);

[[nodiscard]] std::vector<cplx> forward(std::span<const cplx> in);
[[nodiscard]] std::vector<cplx> forward(std::span<const double> in);
[[nodiscard]] std::vector<cplx> inverse(std::span<const cplx> in);

}  // namespace spectral::fft
