#include "ogstv/image.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace ogstv {

Image::Image(int n, double fill) : n_(n) {
  if (n <= 0) throw std::invalid_argument("Image: side length must be positive");
  data_.assign(static_cast<size_t>(n) * n, fill);
}

Image::Image(int n, std::vector<double> data) : n_(n), data_(std::move(data)) {
  if (n <= 0) throw std::invalid_argument("Image: side length must be positive");
  if (data_.size() != static_cast<size_t>(n) * n)
    throw std::invalid_argument("Image: data length must equal n^2");
}

Image project_box(const Image& img, const BoxBounds& b) {
  if (!(b.lo < b.hi)) throw std::invalid_argument("BoxBounds: lo must be < hi");
  Image out = img;
  for (double& v : out.data()) v = std::clamp(v, b.lo, b.hi);
  return out;
}

double norm2_sq(const Image& a) {
  double s = 0.0;
  for (double v : a.data()) s += v * v;
  return s;
}

double norm2(const Image& a) { return std::sqrt(norm2_sq(a)); }

double dot(const Image& a, const Image& b) {
  if (a.side() != b.side()) throw std::invalid_argument("dot: size mismatch");
  double s = 0.0;
  auto da = a.data(), db = b.data();
  for (size_t i = 0; i < da.size(); ++i) s += da[i] * db[i];
  return s;
}

bool all_finite(const Image& a) {
  for (double v : a.data())
    if (!std::isfinite(v)) return false;
  return true;
}

Image operator+(const Image& a, const Image& b) {
  if (a.side() != b.side()) throw std::invalid_argument("Image+: size mismatch");
  Image out = a;
  auto d = out.data();
  auto db = b.data();
  for (size_t i = 0; i < d.size(); ++i) d[i] += db[i];
  return out;
}

Image operator-(const Image& a, const Image& b) {
  if (a.side() != b.side()) throw std::invalid_argument("Image-: size mismatch");
  Image out = a;
  auto d = out.data();
  auto db = b.data();
  for (size_t i = 0; i < d.size(); ++i) d[i] -= db[i];
  return out;
}

Image& operator+=(Image& a, const Image& b) {
  if (a.side() != b.side()) throw std::invalid_argument("Image+=: size mismatch");
  auto d = a.data();
  auto db = b.data();
  for (size_t i = 0; i < d.size(); ++i) d[i] += db[i];
  return a;
}

namespace {

// Skips PGM header whitespace, treating '#' comments as running to end of line.
void skip_ws_and_comments(std::istream& in) {
  for (;;) {
    int ch = in.peek();
    if (ch == '#') {
      while (ch != EOF && ch != '\n') ch = in.get();
    } else if (ch != EOF && std::isspace(ch)) {
      in.get();
    } else {
      return;
    }
  }
}

long read_header_int(std::istream& in, const char* what) {
  skip_ws_and_comments(in);
  long v = 0;
  if (!(in >> v)) throw PgmError(std::string("PGM: malformed header, expected ") + what);
  return v;
}

}  // namespace

Image load_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PgmError("PGM: cannot open '" + path + "'");

  char m0 = 0, m1 = 0;
  in.get(m0);
  in.get(m1);
  if (m0 != 'P' || (m1 != '5' && m1 != '2'))
    throw PgmError("PGM: malformed header, bad magic number");
  const bool binary = (m1 == '5');

  const long width = read_header_int(in, "width");
  const long height = read_header_int(in, "height");
  const long maxval = read_header_int(in, "maxval");
  if (width <= 0 || height <= 0) throw PgmError("PGM: malformed header, bad dimensions");
  if (width != height)
    throw PgmError("PGM: non-square image (" + std::to_string(width) + "x" +
                   std::to_string(height) + ")");
  if (maxval > 255) throw PgmError("PGM: maxval > 255 not supported");
  if (maxval <= 0) throw PgmError("PGM: malformed header, bad maxval");

  const int n = static_cast<int>(width);
  Image img(n);
  if (binary) {
    // Exactly one whitespace byte separates the header from the raster.
    in.get();
    std::vector<unsigned char> raw(static_cast<size_t>(n) * n);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (in.gcount() != static_cast<std::streamsize>(raw.size()))
      throw PgmError("PGM: truncated pixel data");
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) img.at(r, c) = raw[static_cast<size_t>(r) * n + c];
  } else {
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        long v = read_header_int(in, "pixel sample");
        if (v < 0 || v > maxval) throw PgmError("PGM: sample out of range");
        img.at(r, c) = static_cast<double>(v);
      }
  }
  return img;
}

void save_pgm(const Image& img, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("PGM: cannot open '" + path + "' for writing");
  const int n = img.side();
  out << "P5\n" << n << " " << n << "\n255\n";
  std::vector<unsigned char> raw(static_cast<size_t>(n) * n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const double v = std::clamp(img.at(r, c), 0.0, 255.0);
      raw[static_cast<size_t>(r) * n + c] = static_cast<unsigned char>(std::lround(v));
    }
  out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (!out) throw std::runtime_error("PGM: write failed for '" + path + "'");
}

}  // namespace ogstv
