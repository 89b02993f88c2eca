#include "ogstv/ogs.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ogstv {

namespace {

void validate_spec(const GroupSpec& spec) {
  if (spec.K <= 0) throw std::invalid_argument("GroupSpec: K must be positive");
}

// Shifted box sum with zero padding, separable in the two axes:
// out(r,c) = sum_{dr=lo..hi} sum_{dc=lo..hi} x(r+dr, c+dc).
Image box_sum(const Image& x, int lo, int hi) {
  const int n = x.side();
  Image tmp(n), out(n);
  std::vector<double> prefix(static_cast<size_t>(n) + 1);
  // Rows pass: tmp(r,c) = sum_dr x(r+dr, c).
  for (int c = 0; c < n; ++c) {
    prefix[0] = 0.0;
    for (int r = 0; r < n; ++r) prefix[r + 1] = prefix[r] + x.at(r, c);
    for (int r = 0; r < n; ++r) {
      const int a = std::max(r + lo, 0);
      const int b = std::min(r + hi, n - 1);
      tmp.at(r, c) = a > b ? 0.0 : prefix[b + 1] - prefix[a];
    }
  }
  // Columns pass on tmp.
  for (int r = 0; r < n; ++r) {
    prefix[0] = 0.0;
    for (int c = 0; c < n; ++c) prefix[c + 1] = prefix[c] + tmp.at(r, c);
    for (int c = 0; c < n; ++c) {
      const int a = std::max(c + lo, 0);
      const int b = std::min(c + hi, n - 1);
      out.at(r, c) = a > b ? 0.0 : prefix[b + 1] - prefix[a];
    }
  }
  return out;
}

// Squared group norms: box sum of squared entries over the group window.
Image group_sq_norms(const Image& v, const GroupSpec& spec) {
  const int n = v.side();
  Image sq(n);
  auto src = v.data();
  auto dst = sq.data();
  for (size_t i = 0; i < src.size(); ++i) dst[i] = src[i] * src[i];
  return box_sum(sq, -spec.m1(), spec.m2());
}

// Diagonal of Lambda(u)^T Lambda(u): the inverse square roots of the guarded
// squared group norms, summed over the groups containing each pixel. The
// group centered at (i,j) contains pixel (r,t) iff (i,j) is within offsets
// [-m2, m1] of (r,t), hence the mirrored box-sum range.
Image mm_weights_sq(const Image& u, const GroupSpec& spec, double eps_floor) {
  Image g2 = group_sq_norms(u, spec);
  for (double& v : g2.data()) v = 1.0 / std::sqrt(v + eps_floor);
  return box_sum(g2, -spec.m2(), spec.m1());
}

}  // namespace

Image group_norm_field(const Image& v, const GroupSpec& spec) {
  validate_spec(spec);
  Image g2 = group_sq_norms(v, spec);
  for (double& x : g2.data()) x = std::sqrt(x);
  return g2;
}

double ogs_value(const Image& v, const GroupSpec& spec) {
  validate_spec(spec);
  Image g2 = group_sq_norms(v, spec);
  double s = 0.0;
  for (double x : g2.data()) s += std::sqrt(x);
  return s;
}

double prox_objective(const Image& v, const Image& v0, const GroupSpec& spec, double mu) {
  double quad = 0.0;
  auto a = v.data(), b = v0.data();
  for (size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    quad += d * d;
  }
  return 0.5 * quad + mu * ogs_value(v, spec);
}

Image mm_weights(const Image& u, const GroupSpec& spec, double eps_floor) {
  validate_spec(spec);
  Image lam2 = mm_weights_sq(u, spec, eps_floor);
  for (double& v : lam2.data()) v = std::sqrt(v);
  return lam2;
}

Image ogs_prox_mm(const Image& v0, const GroupSpec& spec, const MmConfig& cfg,
                  std::vector<Image>* iterates) {
  validate_spec(spec);
  if (cfg.iterations <= 0) throw std::invalid_argument("MmConfig: iterations must be positive");
  if (!(cfg.mu >= 0.0)) throw std::invalid_argument("MmConfig: mu must be nonnegative");

  Image v = v0;
  if (iterates) iterates->push_back(v);
  for (int k = 0; k < cfg.iterations; ++k) {
    Image lam2 = mm_weights_sq(v, spec, cfg.eps_floor);
    Image next(v0.side());
    auto src = v0.data();
    auto w = lam2.data();
    auto dst = next.data();
    for (size_t i = 0; i < src.size(); ++i) dst[i] = src[i] / (1.0 + cfg.mu * w[i]);
    if (iterates) iterates->push_back(next);
    if (cfg.inner_tol > 0.0) {
      const double diff = norm2(next - v);
      const double base = norm2(v);
      const bool converged = base > 0.0 ? diff / base < cfg.inner_tol : diff == 0.0;
      if (converged) return next;
    }
    v = std::move(next);
  }
  return v;
}

double majorizer_value(const Image& v, const Image& u, const Image& v0, const GroupSpec& spec,
                       double mu, double eps_floor) {
  validate_spec(spec);
  double quad = 0.0;
  auto a = v.data(), b = v0.data();
  for (size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    quad += d * d;
  }
  Image lam2 = mm_weights_sq(u, spec, eps_floor);
  double weighted = 0.0;
  auto w = lam2.data();
  for (size_t i = 0; i < a.size(); ++i) weighted += w[i] * a[i] * a[i];
  Image g2 = group_sq_norms(u, spec);
  double guarded_norms = 0.0;
  for (double x : g2.data()) guarded_norms += std::sqrt(x + eps_floor);
  return 0.5 * quad + 0.5 * mu * (weighted + guarded_norms);
}

}  // namespace ogstv
