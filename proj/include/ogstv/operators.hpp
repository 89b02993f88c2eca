#pragma once

#include <cstdint>

#include "ogstv/fft.hpp"
#include "ogstv/image.hpp"
#include "ogstv/kernel.hpp"

namespace ogstv {

// Forward differences with periodic wrap. grad_x differences along rows
// (out(i,j) = f(i+1,j) - f(i,j)), grad_y along columns; the adjoints are the
// exact transposes under the Euclidean inner product.
Image grad_x(const Image& img);
Image grad_y(const Image& img);
Image grad_x_adjoint(const Image& img);
Image grad_y_adjoint(const Image& img);

// 2x1 / 1x2 difference stencils whose periodic application reproduces
// grad_x / grad_y; used to derive their spectra.
Kernel grad_x_kernel();
Kernel grad_y_kernel();

// Correlation-style periodic filtering: the anchor cell sits on the output
// pixel, out(p) = sum_q w(q) * img(p + q - anchor) with wraparound. For
// symmetric kernels this coincides with circular convolution.
Image apply_psf_periodic(const Image& img, const Kernel& k);

// DFT of the kernel's n x n periodic impulse response (anchor at the
// origin), so apply_psf_periodic(x, k) == IDFT(spectrum .* DFT(x)).
Spectrum psf_spectrum(const Kernel& k, int n);

// g = H f + eta with eta i.i.d. N(0, noise_std^2) drawn from GaussianStream
// keyed by seed, added in linear-index order. noise_std = 0 returns the
// blurred image bit-exactly.
Image degrade(const Image& img, const Kernel& k, double noise_std, std::uint64_t seed);

}  // namespace ogstv
