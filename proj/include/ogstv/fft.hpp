#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "ogstv/image.hpp"

namespace ogstv {

// Eigenvalue grid of an n x n periodic (BCCB) operator: the 2D DFT of its
// impulse response, stored in the same column-major layout as Image.
struct Spectrum {
  int n = 0;
  std::vector<std::complex<double>> values;
};

// 2D DFT of an n x n grid with the convention pinned for the whole library:
// unnormalized forward transform, inverse scaled by 1/n^2. Plans are created
// once per instance; an instance is not safe to share between threads.
class Dft2 {
 public:
  explicit Dft2(int n);
  ~Dft2();
  Dft2(const Dft2&) = delete;
  Dft2& operator=(const Dft2&) = delete;

  int side() const { return n_; }

  std::vector<std::complex<double>> forward(const Image& x);
  // Inverse transform; the imaginary residue is discarded.
  Image inverse_real(std::span<const std::complex<double>> s);

 private:
  struct Plans;
  int n_;
  std::unique_ptr<Plans> plans_;
};

}  // namespace ogstv
