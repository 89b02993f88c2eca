#include "ogstv/solver.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>

#include "ogstv/metrics.hpp"

namespace ogstv {

namespace {

void validate_config(const SolverConfig& cfg) {
  if (!(cfg.alpha > 0.0)) throw std::invalid_argument("SolverConfig: alpha must be positive");
  if (!(cfg.sigma > 0.0)) throw std::invalid_argument("SolverConfig: sigma must be positive");
  if (!(cfg.eps_outer > 0.0)) throw std::invalid_argument("SolverConfig: eps_outer must be positive");
  if (cfg.max_iter <= 0) throw std::invalid_argument("SolverConfig: max_iter must be positive");
  if (cfg.inner_iterations <= 0)
    throw std::invalid_argument("SolverConfig: inner_iterations must be positive");
  if (!(cfg.dual_step > 0.0)) throw std::invalid_argument("SolverConfig: dual_step must be positive");
  if (!(cfg.box.lo < cfg.box.hi)) throw std::invalid_argument("SolverConfig: empty box");
}

void append_field(std::string& out, double v) {
  if (std::isnan(v)) return;  // empty cell
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

}  // namespace

std::string to_csv(const ConvergenceLog& log) {
  std::string out = "iter,objective,rel_change,res_vx,res_vy,res_z,psnr,time_ms\n";
  for (const LogRecord& r : log.records) {
    out += std::to_string(r.iter);
    out += ',';
    append_field(out, r.objective);
    out += ',';
    append_field(out, r.rel_change);
    out += ',';
    append_field(out, r.res_vx);
    out += ',';
    append_field(out, r.res_vy);
    out += ',';
    append_field(out, r.res_z);
    out += ',';
    append_field(out, r.psnr_db);
    out += ',';
    append_field(out, r.time_ms);
    out += '\n';
  }
  return out;
}

double objective_value(const Image& f, const Image& g, const Kernel& k,
                       const SolverConfig& cfg) {
  const Image hf = apply_psf_periodic(f, k);
  double fidelity = 0.0;
  auto dg = g.data(), dh = hf.data();
  for (size_t i = 0; i < dg.size(); ++i) {
    const double d = dg[i] - dh[i];
    fidelity += d * d;
  }
  return 0.5 * fidelity +
         cfg.alpha * (ogs_value(grad_x(f), cfg.group) + ogs_value(grad_y(f), cfg.group));
}

SolverWorkspace::SolverWorkspace(const Image& g, const Kernel& k)
    : dft(g.side()),
      h_hat(psf_spectrum(k, g.side())),
      dx_hat(psf_spectrum(grad_x_kernel(), g.side())),
      dy_hat(psf_spectrum(grad_y_kernel(), g.side())),
      g_hat(dft.forward(g)) {}

Image solve_f_subproblem(const std::vector<std::complex<double>>& g_hat,
                         const SolverState& state, const Spectrum& h_hat,
                         const Spectrum& dx_hat, const Spectrum& dy_hat, double sigma,
                         Dft2& dft) {
  if (!(sigma > 0.0)) throw std::invalid_argument("solve_f_subproblem: sigma must be positive");
  const int n = state.f.side();
  if (h_hat.n != n || dx_hat.n != n || dy_hat.n != n ||
      g_hat.size() != static_cast<size_t>(n) * n)
    throw std::invalid_argument("solve_f_subproblem: size mismatch");

  const auto rx = dft.forward(state.v_x - state.b1);
  const auto ry = dft.forward(state.v_y - state.b2);
  const auto rz = dft.forward(state.z - state.b3);

  std::vector<std::complex<double>> f_hat(g_hat.size());
  for (size_t i = 0; i < f_hat.size(); ++i) {
    const auto h = h_hat.values[i];
    const auto dx = dx_hat.values[i];
    const auto dy = dy_hat.values[i];
    const std::complex<double> rhs =
        std::conj(h) * g_hat[i] + sigma * (std::conj(dx) * rx[i] + std::conj(dy) * ry[i] + rz[i]);
    const double den =
        std::norm(h) + sigma * (std::norm(dx) + std::norm(dy)) + sigma;
    f_hat[i] = rhs / den;
  }
  return dft.inverse_real(f_hat);
}

void admm_step(SolverState& state, const SolverConfig& cfg, SolverWorkspace& ws) {
  state.f = solve_f_subproblem(ws.g_hat, state, ws.h_hat, ws.dx_hat, ws.dy_hat, cfg.sigma,
                               ws.dft);

  const Image gx = grad_x(state.f);
  const Image gy = grad_y(state.f);
  const MmConfig mm = cfg.mm_config();
  state.v_x = ogs_prox_mm(gx + state.b1, cfg.group, mm);
  state.v_y = ogs_prox_mm(gy + state.b2, cfg.group, mm);
  state.z = project_box(state.f + state.b3, cfg.box);

  auto axpy = [&](Image& b, const Image& lhs, const Image& rhs) {
    auto db = b.data();
    auto dl = lhs.data();
    auto dr = rhs.data();
    for (size_t i = 0; i < db.size(); ++i) db[i] += cfg.dual_step * (dl[i] - dr[i]);
  };
  axpy(state.b1, gx, state.v_x);
  axpy(state.b2, gy, state.v_y);
  axpy(state.b3, state.f, state.z);
  ++state.k;
}

void admm_step(SolverState& state, const Image& g, const Kernel& k, const SolverConfig& cfg) {
  validate_config(cfg);
  if (state.f.side() != g.side()) throw std::invalid_argument("admm_step: size mismatch");
  SolverWorkspace ws(g, k);
  admm_step(state, cfg, ws);
}

RestoreResult restore(const Image& g, const Kernel& k, const SolverConfig& cfg) {
  validate_config(cfg);
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();

  SolverState state;
  state.f = g;
  state.v_x = g;
  state.v_y = g;
  state.z = project_box(g, cfg.box);
  const Image zero(g.side());
  state.b1 = zero;
  state.b2 = zero;
  state.b3 = zero;

  SolverWorkspace ws(g, k);
  ConvergenceLog log;
  log.reason = StopReason::max_iter;

  double j_prev = objective_value(state.f, g, k, cfg);
  if (!std::isfinite(j_prev)) throw DivergenceError(0, "restore: non-finite objective at start");

  for (int iter = 1; iter <= cfg.max_iter; ++iter) {
    admm_step(state, cfg, ws);

    const double j = objective_value(state.f, g, k, cfg);
    if (!std::isfinite(j) || !all_finite(state.f))
      throw DivergenceError(iter, "restore: non-finite iterate at iteration " +
                                      std::to_string(iter));
    const double rel = j_prev != 0.0 ? std::abs(j - j_prev) / std::abs(j_prev) : std::abs(j);

    LogRecord rec;
    rec.iter = iter;
    rec.objective = j;
    rec.rel_change = rel;
    rec.res_vx = norm2(grad_x(state.f) - state.v_x);
    rec.res_vy = norm2(grad_y(state.f) - state.v_y);
    rec.res_z = norm2(state.f - state.z);
    if (cfg.track_psnr_against) rec.psnr_db = psnr(*cfg.track_psnr_against, state.f);
    if (cfg.collect_timing)
      rec.time_ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    log.records.push_back(rec);

    if (rel < cfg.eps_outer) {
      log.reason = StopReason::tolerance;
      break;
    }
    j_prev = j;
  }

  return RestoreResult{project_box(state.f, cfg.box), std::move(log)};
}

}  // namespace ogstv
