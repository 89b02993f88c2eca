#pragma once

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "ogstv/image.hpp"

namespace ogstv::test {

inline Image random_uniform(std::mt19937_64& rng, int n, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Image img(n);
  for (double& v : img.data()) v = dist(rng);
  return img;
}

inline Image random_gaussian(std::mt19937_64& rng, int n, double mean, double stddev) {
  std::normal_distribution<double> dist(mean, stddev);
  Image img(n);
  for (double& v : img.data()) v = dist(rng);
  return img;
}

inline double max_abs_diff(const Image& a, const Image& b) {
  double m = 0.0;
  auto da = a.data(), db = b.data();
  for (size_t i = 0; i < da.size(); ++i) m = std::max(m, std::abs(da[i] - db[i]));
  return m;
}

inline Image transpose(const Image& a) {
  Image out(a.side());
  for (int r = 0; r < a.side(); ++r)
    for (int c = 0; c < a.side(); ++c) out.at(c, r) = a.at(r, c);
  return out;
}

// Piecewise-constant phantom with a few rectangles on a flat background;
// deterministic in n, intensities within [0, 255].
inline Image make_phantom(int n) {
  Image img(n, 40.0);
  auto fill = [&](int r0, int r1, int c0, int c1, double v) {
    for (int r = r0; r < r1; ++r)
      for (int c = c0; c < c1; ++c) img.at(r, c) = v;
  };
  fill(n / 8, n / 2, n / 8, 5 * n / 8, 120.0);
  fill(9 * n / 16, 7 * n / 8, n / 2, 15 * n / 16, 200.0);
  fill(n / 16, 3 * n / 16, 11 * n / 16, 15 * n / 16, 230.0);
  fill(5 * n / 8, 13 * n / 16, n / 16, 5 * n / 16, 90.0);
  return img;
}

// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<unsigned> counter{0};
    const auto id = counter.fetch_add(1);
    path_ = std::filesystem::temp_directory_path() /
            ("ogstv_test_" + std::to_string(::getpid()) + "_" + std::to_string(id));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace ogstv::test
