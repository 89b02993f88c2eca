#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ogstv {

// Square grayscale image stored as doubles in column-major order: the pixel
// in row r, column c (0-based) lives at linear index c*n + r. This matches
// the stacked-columns vector convention used throughout the solver, so an
// Image doubles as a flat n^2 vector for any of the auxiliary fields.
class Image {
 public:
  Image() = default;
  explicit Image(int n, double fill = 0.0);
  Image(int n, std::vector<double> data);

  int side() const { return n_; }
  int size() const { return n_ * n_; }

  double& at(int r, int c) { return data_[static_cast<size_t>(c) * n_ + r]; }
  double at(int r, int c) const { return data_[static_cast<size_t>(c) * n_ + r]; }

  double& operator[](int l) { return data_[static_cast<size_t>(l)]; }
  double operator[](int l) const { return data_[static_cast<size_t>(l)]; }

  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }

  bool operator==(const Image&) const = default;

 private:
  int n_ = 0;
  std::vector<double> data_;
};

struct BoxBounds {
  double lo = 0.0;
  double hi = 255.0;
};

// Entrywise clamp into [b.lo, b.hi]. Idempotent and 1-Lipschitz.
Image project_box(const Image& img, const BoxBounds& b);

double norm2(const Image& a);
double norm2_sq(const Image& a);
double dot(const Image& a, const Image& b);
bool all_finite(const Image& a);

Image operator+(const Image& a, const Image& b);
Image operator-(const Image& a, const Image& b);
Image& operator+=(Image& a, const Image& b);

struct PgmError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Reads a binary (P5) or ASCII (P2) PGM with maxval <= 255. The image must
// be square; pixels are converted to doubles in [0, maxval].
Image load_pgm(const std::string& path);

// Writes binary P5 with maxval 255. Each sample is clamped into [0, 255]
// and rounded half away from zero, so save followed by load reproduces
// exactly that quantization.
void save_pgm(const Image& img, const std::string& path);

}  // namespace ogstv
