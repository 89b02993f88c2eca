#include "ogstv/operators.hpp"

#include <stdexcept>

#include "ogstv/rng.hpp"

namespace ogstv {

namespace {
inline int wrap(int i, int n) {
  i %= n;
  return i < 0 ? i + n : i;
}
}  // namespace

Image grad_x(const Image& img) {
  const int n = img.side();
  Image out(n);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r)
      out.at(r, c) = img.at(r + 1 == n ? 0 : r + 1, c) - img.at(r, c);
  return out;
}

Image grad_y(const Image& img) {
  const int n = img.side();
  Image out(n);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r)
      out.at(r, c) = img.at(r, c + 1 == n ? 0 : c + 1) - img.at(r, c);
  return out;
}

Image grad_x_adjoint(const Image& img) {
  const int n = img.side();
  Image out(n);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r)
      out.at(r, c) = img.at(r == 0 ? n - 1 : r - 1, c) - img.at(r, c);
  return out;
}

Image grad_y_adjoint(const Image& img) {
  const int n = img.side();
  Image out(n);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r)
      out.at(r, c) = img.at(r, c == 0 ? n - 1 : c - 1) - img.at(r, c);
  return out;
}

Kernel grad_x_kernel() { return Kernel{2, 1, 0, 0, {-1.0, 1.0}}; }
Kernel grad_y_kernel() { return Kernel{1, 2, 0, 0, {-1.0, 1.0}}; }

Image apply_psf_periodic(const Image& img, const Kernel& k) {
  validate_kernel(k);
  const int n = img.side();
  if (k.rows > n || k.cols > n)
    throw std::invalid_argument("apply_psf_periodic: kernel larger than image");
  Image out(n);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r) {
      double s = 0.0;
      for (int kr = 0; kr < k.rows; ++kr) {
        const int rr = wrap(r + kr - k.anchor_row, n);
        for (int kc = 0; kc < k.cols; ++kc) {
          const int cc = wrap(c + kc - k.anchor_col, n);
          s += k.at(kr, kc) * img.at(rr, cc);
        }
      }
      out.at(r, c) = s;
    }
  return out;
}

Spectrum psf_spectrum(const Kernel& k, int n) {
  validate_kernel(k);
  if (k.rows > n || k.cols > n)
    throw std::invalid_argument("psf_spectrum: kernel larger than image");
  // Impulse response of the correlation operator: weight at stencil cell q
  // lands at position anchor - q (mod n).
  Image h(n);
  for (int kr = 0; kr < k.rows; ++kr)
    for (int kc = 0; kc < k.cols; ++kc) {
      const int r = wrap(k.anchor_row - kr, n);
      const int c = wrap(k.anchor_col - kc, n);
      h.at(r, c) += k.at(kr, kc);
    }
  Dft2 dft(n);
  return Spectrum{n, dft.forward(h)};
}

Image degrade(const Image& img, const Kernel& k, double noise_std, std::uint64_t seed) {
  if (noise_std < 0.0) throw std::invalid_argument("degrade: noise_std must be nonnegative");
  Image out = apply_psf_periodic(img, k);
  if (noise_std == 0.0) return out;
  GaussianStream gs(seed);
  for (double& v : out.data()) v += noise_std * gs.next();
  return out;
}

}  // namespace ogstv
