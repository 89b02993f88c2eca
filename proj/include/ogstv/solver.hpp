#pragma once

#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "ogstv/fft.hpp"
#include "ogstv/image.hpp"
#include "ogstv/kernel.hpp"
#include "ogstv/ogs.hpp"
#include "ogstv/operators.hpp"

namespace ogstv {

// Tunables for one restoration run. sigma defaults to alpha/3; the inner
// prox solver always sees mu = alpha/sigma. dual_step scales the multiplier
// updates: 1.0 is the scaled-ADMM pairing used by default, sigma reproduces
// the unscaled update rule.
struct SolverConfig {
  explicit SolverConfig(double alpha_) : alpha(alpha_), sigma(alpha_ / 3.0) {
    if (!(alpha_ > 0.0)) throw std::invalid_argument("SolverConfig: alpha must be positive");
  }

  double alpha;
  double sigma;
  GroupSpec group{3};
  int inner_iterations = 5;
  double inner_tol = 0.0;
  double eps_floor = 1e-12;
  BoxBounds box{0.0, 255.0};
  double eps_outer = 1e-5;
  int max_iter = 500;
  double dual_step = 1.0;
  // When set, each log record carries psnr(*track_psnr_against, f).
  const Image* track_psnr_against = nullptr;
  // When true, each log record carries cumulative wall-clock milliseconds.
  // Off by default so repeated runs produce bit-identical logs.
  bool collect_timing = false;

  MmConfig mm_config() const { return MmConfig{alpha / sigma, inner_iterations, inner_tol, eps_floor}; }
};

// Primal and dual variables of the split problem: v_x, v_y mirror the two
// gradient fields, z mirrors f inside the box, b1..b3 are the (scaled)
// multipliers.
struct SolverState {
  Image f, v_x, v_y, z, b1, b2, b3;
  int k = 0;
};

struct LogRecord {
  int iter = 0;
  double objective = 0.0;
  double rel_change = 0.0;
  double res_vx = 0.0;
  double res_vy = 0.0;
  double res_z = 0.0;
  double psnr_db = std::numeric_limits<double>::quiet_NaN();
  double time_ms = std::numeric_limits<double>::quiet_NaN();
};

enum class StopReason { tolerance, max_iter };

struct ConvergenceLog {
  std::vector<LogRecord> records;
  StopReason reason = StopReason::max_iter;
};

// CSV with header "iter,objective,rel_change,res_vx,res_vy,res_z,psnr,time_ms".
// NaN fields (psnr with no reference, time_ms without timing) serialize as
// empty cells.
std::string to_csv(const ConvergenceLog& log);

struct DivergenceError : std::runtime_error {
  DivergenceError(int iteration_, const std::string& what_)
      : std::runtime_error(what_), iteration(iteration_) {}
  int iteration;
};

// Model objective 1/2 ||g - H f||^2 + alpha * (ogs(grad_x f) + ogs(grad_y f)),
// with H applied as periodic correlation in the spatial domain.
double objective_value(const Image& f, const Image& g, const Kernel& k, const SolverConfig& cfg);

// Kernel- and data-dependent quantities reused across iterations: the DFT
// plans, the three operator spectra and the transformed observation.
struct SolverWorkspace {
  SolverWorkspace(const Image& g, const Kernel& k);

  Dft2 dft;
  Spectrum h_hat, dx_hat, dy_hat;
  std::vector<std::complex<double>> g_hat;
};

// Quadratic data subproblem solved in the spectral domain:
//   (H^T H + sigma (Dx^T Dx + Dy^T Dy) + sigma I) f
//     = H^T g + sigma (Dx^T (v_x - b1) + Dy^T (v_y - b2) + (z - b3)).
// The denominator is strictly positive for sigma > 0, so the solve is
// always well defined; the imaginary residue of the inverse transform is
// discarded.
Image solve_f_subproblem(const std::vector<std::complex<double>>& g_hat,
                         const SolverState& state, const Spectrum& h_hat,
                         const Spectrum& dx_hat, const Spectrum& dy_hat, double sigma,
                         Dft2& dft);

// One outer iteration: f-update, the two group-sparsity prox updates on the
// shifted gradients, box projection of f + b3, then the multiplier steps.
void admm_step(SolverState& state, const SolverConfig& cfg, SolverWorkspace& ws);
void admm_step(SolverState& state, const Image& g, const Kernel& k, const SolverConfig& cfg);

struct RestoreResult {
  Image f;
  ConvergenceLog log;
};

// Full restoration: starts from f = v_x = v_y = g, z = box projection of g,
// zero multipliers, and iterates until the relative objective change drops
// below eps_outer or max_iter is reached. The returned image is projected
// into the box. Throws DivergenceError if any iterate stops being finite.
RestoreResult restore(const Image& g, const Kernel& k, const SolverConfig& cfg);

}  // namespace ogstv
