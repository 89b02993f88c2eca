#include "ogstv/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ogstv {

namespace {
double diff_sq(const Image& a, const Image& b) {
  if (a.side() != b.side()) throw std::invalid_argument("metrics: size mismatch");
  double s = 0.0;
  auto da = a.data(), db = b.data();
  for (size_t i = 0; i < da.size(); ++i) {
    const double d = da[i] - db[i];
    s += d * d;
  }
  return s;
}
}  // namespace

double rel_err(const Image& reference, const Image& estimate) {
  const double ref_norm = norm2(reference);
  if (ref_norm == 0.0) throw std::invalid_argument("rel_err: reference is identically zero");
  return std::sqrt(diff_sq(reference, estimate)) / ref_norm;
}

double psnr(const Image& reference, const Image& estimate, double max_val) {
  const double err = diff_sq(reference, estimate);
  if (err == 0.0) return std::numeric_limits<double>::infinity();
  const double n2 = static_cast<double>(reference.side()) * reference.side();
  return 10.0 * std::log10(n2 * max_val * max_val / err);
}

double bsnr(const Image& g, const Image& eta) {
  if (g.side() != eta.side()) throw std::invalid_argument("bsnr: size mismatch");
  const double eta_norm = norm2(eta);
  if (eta_norm == 0.0) throw std::invalid_argument("bsnr: noise is identically zero");
  return 20.0 * std::log10(norm2(g) / eta_norm);
}

double noise_std_for_bsnr(const Image& blurred, double target_bsnr_db) {
  const double b_norm = norm2(blurred);
  if (b_norm == 0.0)
    throw std::invalid_argument("noise_std_for_bsnr: blurred image is identically zero");
  return b_norm / (blurred.side() * std::pow(10.0, target_bsnr_db / 20.0));
}

}  // namespace ogstv
