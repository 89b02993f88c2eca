#include "ogstv/kernel.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ogstv {

void validate_kernel(const Kernel& k) {
  if (k.rows <= 0 || k.cols <= 0) throw std::invalid_argument("Kernel: empty extent");
  if (k.weights.size() != static_cast<size_t>(k.rows) * k.cols)
    throw std::invalid_argument("Kernel: weight count does not match extent");
  if (k.anchor_row < 0 || k.anchor_row >= k.rows || k.anchor_col < 0 || k.anchor_col >= k.cols)
    throw std::invalid_argument("Kernel: anchor outside extent");
  for (double w : k.weights)
    if (!std::isfinite(w)) throw std::invalid_argument("Kernel: non-finite weight");
}

Kernel identity_kernel() { return Kernel{1, 1, 0, 0, {1.0}}; }

Kernel make_gaussian_kernel(int size, double stddev) {
  if (size <= 0 || size % 2 == 0)
    throw std::invalid_argument("gaussian kernel: size must be odd and positive");
  if (!(stddev > 0.0)) throw std::invalid_argument("gaussian kernel: std must be positive");
  const int h = (size - 1) / 2;
  Kernel k{size, size, h, h, std::vector<double>(static_cast<size_t>(size) * size)};
  double sum = 0.0;
  for (int r = 0; r < size; ++r)
    for (int c = 0; c < size; ++c) {
      const double x = r - h, y = c - h;
      const double w = std::exp(-(x * x + y * y) / (2.0 * stddev * stddev));
      k.weights[static_cast<size_t>(r) * size + c] = w;
      sum += w;
    }
  for (double& w : k.weights) w /= sum;
  return k;
}

Kernel make_average_kernel(int size) {
  if (size <= 0) throw std::invalid_argument("average kernel: size must be positive");
  const int anchor = (size - 1) / 2;  // == ceil(size/2) - 1 in 1-based terms
  Kernel k{size, size, anchor, anchor,
           std::vector<double>(static_cast<size_t>(size) * size, 1.0 / (size * size))};
  return k;
}

Kernel load_kernel(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("kernel: cannot open '" + path + "'");
  Kernel k;
  int ar = 0, ac = 0;
  if (!(in >> k.rows >> k.cols >> ar >> ac))
    throw std::runtime_error("kernel: malformed header in '" + path + "'");
  k.anchor_row = ar - 1;
  k.anchor_col = ac - 1;
  if (k.rows <= 0 || k.cols <= 0)
    throw std::runtime_error("kernel: bad extent in '" + path + "'");
  k.weights.resize(static_cast<size_t>(k.rows) * k.cols);
  for (double& w : k.weights)
    if (!(in >> w)) throw std::runtime_error("kernel: truncated weights in '" + path + "'");
  validate_kernel(k);
  return k;
}

void save_kernel(const Kernel& k, const std::string& path) {
  validate_kernel(k);
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("kernel: cannot open '" + path + "' for writing");
  out << k.rows << " " << k.cols << " " << (k.anchor_row + 1) << " " << (k.anchor_col + 1)
      << "\n";
  char buf[40];
  for (int r = 0; r < k.rows; ++r) {
    for (int c = 0; c < k.cols; ++c) {
      std::snprintf(buf, sizeof(buf), "%.17g", k.at(r, c));
      out << buf << (c + 1 == k.cols ? "\n" : " ");
    }
  }
  if (!out) throw std::runtime_error("kernel: write failed for '" + path + "'");
}

}  // namespace ogstv
