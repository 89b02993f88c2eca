#include "ogstv/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace ogstv {

namespace {
// FFTW plan creation/destruction is not thread-safe; execution on distinct
// plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct Dft2::Plans {
  std::vector<std::complex<double>> in;
  std::vector<std::complex<double>> out;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

Dft2::Dft2(int n) : n_(n), plans_(std::make_unique<Plans>()) {
  if (n <= 0) throw std::invalid_argument("Dft2: side must be positive");
  const size_t total = static_cast<size_t>(n) * n;
  plans_->in.resize(total);
  plans_->out.resize(total);
  auto* in = reinterpret_cast<fftw_complex*>(plans_->in.data());
  auto* out = reinterpret_cast<fftw_complex*>(plans_->out.data());
  std::lock_guard<std::mutex> lock(planner_mutex());
  // FFTW_ESTIMATE keeps planning deterministic, which the reproducibility
  // contract relies on.
  plans_->fwd = fftw_plan_dft_2d(n, n, in, out, FFTW_FORWARD, FFTW_ESTIMATE);
  plans_->bwd = fftw_plan_dft_2d(n, n, in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
  if (!plans_->fwd || !plans_->bwd) throw std::runtime_error("Dft2: planning failed");
}

Dft2::~Dft2() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  if (plans_->fwd) fftw_destroy_plan(plans_->fwd);
  if (plans_->bwd) fftw_destroy_plan(plans_->bwd);
}

std::vector<std::complex<double>> Dft2::forward(const Image& x) {
  if (x.side() != n_) throw std::invalid_argument("Dft2::forward: size mismatch");
  auto src = x.data();
  for (size_t i = 0; i < src.size(); ++i) plans_->in[i] = src[i];
  fftw_execute(plans_->fwd);
  return plans_->out;
}

Image Dft2::inverse_real(std::span<const std::complex<double>> s) {
  if (s.size() != static_cast<size_t>(n_) * n_)
    throw std::invalid_argument("Dft2::inverse_real: size mismatch");
  for (size_t i = 0; i < s.size(); ++i) plans_->in[i] = s[i];
  fftw_execute(plans_->bwd);
  Image out(n_);
  auto dst = out.data();
  const double scale = 1.0 / (static_cast<double>(n_) * n_);
  for (size_t i = 0; i < dst.size(); ++i) dst[i] = plans_->out[i].real() * scale;
  return out;
}

}  // namespace ogstv
