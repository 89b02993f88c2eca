#pragma once

#include "ogstv/image.hpp"

namespace ogstv {

// ||reference - estimate||_2 / ||reference||_2. The reference must not be
// identically zero.
double rel_err(const Image& reference, const Image& estimate);

// 10 log10(n^2 max_val^2 / ||reference - estimate||_2^2), in dB. Identical
// images report +infinity.
double psnr(const Image& reference, const Image& estimate, double max_val = 255.0);

// 20 log10(||g||_2 / ||eta||_2), in dB. eta must not be identically zero.
double bsnr(const Image& g, const Image& eta);

// Noise standard deviation that attains the target BSNR in expectation for
// the given noiseless blurred image: ||blurred||_2 / (n * 10^(target/20)),
// using E||eta||_2^2 = n^2 std^2.
double noise_std_for_bsnr(const Image& blurred, double target_bsnr_db);

}  // namespace ogstv
