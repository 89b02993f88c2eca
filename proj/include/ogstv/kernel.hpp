#pragma once

#include <string>
#include <vector>

namespace ogstv {

// Small point-spread function with an anchor cell marking the origin of the
// stencil. Weights are stored row-major (weights[r * cols + c]); the anchor
// is 0-based and must lie inside the extent. Application is correlation
// style: the anchor sits on the output pixel (see apply_psf_periodic).
struct Kernel {
  int rows = 0;
  int cols = 0;
  int anchor_row = 0;
  int anchor_col = 0;
  std::vector<double> weights;

  double at(int r, int c) const { return weights[static_cast<size_t>(r) * cols + c]; }
};

// 1x1 kernel with weight 1; applying it is the identity.
Kernel identity_kernel();

// size x size weights proportional to exp(-(x^2+y^2)/(2 std^2)) on the
// centered integer grid, normalized to sum 1. size must be odd.
Kernel make_gaussian_kernel(int size, double stddev);

// size x size kernel of uniform weights 1/size^2, anchored at the cell
// matching the Matlab fspecial convention (ceil(size/2), 1-based).
Kernel make_average_kernel(int size);

// Text format: header line "rows cols anchor_r anchor_c" (anchor 1-based),
// then `rows` lines of `cols` whitespace-separated reals. Doubles round-trip
// exactly.
Kernel load_kernel(const std::string& path);
void save_kernel(const Kernel& k, const std::string& path);

void validate_kernel(const Kernel& k);

}  // namespace ogstv
