// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Each criterion pins its tolerance and runtime budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ogstv/cli.hpp"
#include "ogstv/metrics.hpp"
#include "ogstv/operators.hpp"
#include "ogstv/oracle.hpp"
#include "ogstv/solver.hpp"
#include "support.hpp"

using namespace ogstv;
using namespace ogstv::test;

namespace {

std::vector<std::string> g_fails;
std::vector<ConvergenceLog> g_solver_logs;  // collected for the stopping contract

void expect(bool ok, const std::string& what) {
  if (!ok) g_fails.push_back(what);
}

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), pattern, a, b);
  return buf;
}

// --- 1. adjoint identities --------------------------------------------------

void criterion_adjoints() {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 50; ++trial) {
    const Image u = random_gaussian(rng, 16, 0.0, 8.0);
    const Image w = random_gaussian(rng, 16, 0.0, 8.0);
    const double bound = 1e-10 * norm2(u) * norm2(w);
    const double ex = std::abs(dot(grad_x(u), w) - dot(u, grad_x_adjoint(w)));
    const double ey = std::abs(dot(grad_y(u), w) - dot(u, grad_y_adjoint(w)));
    expect(ex <= bound, fmt("grad_x adjoint gap %.3e > bound %.3e", ex, bound));
    expect(ey <= bound, fmt("grad_y adjoint gap %.3e > bound %.3e", ey, bound));
  }
}

// --- 2. spectral vs dense data subproblem -----------------------------------

void criterion_spectral_vs_dense() {
  std::mt19937_64 rng(102);
  const int n = 8;
  std::vector<std::pair<Kernel, double>> instances;
  for (const Kernel& k :
       {identity_kernel(), make_gaussian_kernel(7, 2.0), make_average_kernel(5)})
    for (double sigma : {0.01, 1.0, 100.0}) instances.emplace_back(k, sigma);
  instances.emplace_back(make_average_kernel(3), 0.5);

  for (const auto& [kernel, sigma] : instances) {
    SolverState state;
    state.f = Image(n);
    const Image g = random_uniform(rng, n, 0.0, 255.0);
    state.v_x = random_gaussian(rng, n, 0.0, 5.0);
    state.v_y = random_gaussian(rng, n, 0.0, 5.0);
    state.z = random_uniform(rng, n, 0.0, 255.0);
    state.b1 = random_gaussian(rng, n, 0.0, 1.0);
    state.b2 = random_gaussian(rng, n, 0.0, 1.0);
    state.b3 = random_gaussian(rng, n, 0.0, 1.0);

    Dft2 dft(n);
    const Image spectral =
        solve_f_subproblem(dft.forward(g), state, psf_spectrum(kernel, n),
                           psf_spectrum(grad_x_kernel(), n), psf_spectrum(grad_y_kernel(), n),
                           sigma, dft);
    const Image dense = oracle::dense_solve_f(g, kernel, state.v_x, state.v_y, state.z,
                                              state.b1, state.b2, state.b3, sigma);
    const double rel = norm2(spectral - dense) / norm2(dense);
    expect(rel <= 1e-8, fmt("spectral/dense rel error %.3e > 1e-8 (sigma=%g)", rel, sigma));
  }
}

// --- 3. majorization --------------------------------------------------------

void criterion_majorization() {
  std::mt19937_64 rng(103);
  const double eps_floor = 1e-12;
  for (int trial = 0; trial < 100; ++trial) {
    const int K = 1 + trial % 3;
    const GroupSpec spec{K};
    const Image u = random_gaussian(rng, 5, 0.0, 2.0);
    const Image v = random_gaussian(rng, 5, 0.0, 2.0);
    const Image v0 = random_gaussian(rng, 5, 0.0, 2.0);
    const double mu = 0.2 + 0.25 * (trial % 5);

    const double q = majorizer_value(v, u, v0, spec, mu, eps_floor);
    const double r = prox_objective(v, v0, spec, mu);
    expect(q >= r - 1e-9, fmt("majorizer below objective by %.3e (K=%g)", r - q, K));

    const double q_diag = majorizer_value(u, u, v0, spec, mu, eps_floor);
    const double r_diag = prox_objective(u, v0, spec, mu);
    expect(std::abs(q_diag - r_diag) <= 1e-9,
           fmt("diagonal gap %.3e > 1e-9 (K=%g)", std::abs(q_diag - r_diag), K));
  }
}

// --- 4. monotone MM descent -------------------------------------------------

void criterion_mm_descent() {
  std::mt19937_64 rng(104);
  for (int trial = 0; trial < 20; ++trial) {
    const int K = 1 + trial % 3;
    const GroupSpec spec{K};
    const double mu = 0.3 + 0.2 * (trial % 4);
    const Image v0 = random_gaussian(rng, 6, 0.0, 2.5);
    std::vector<Image> iterates;
    ogs_prox_mm(v0, spec, MmConfig{mu, 15, 0.0, 1e-12}, &iterates);
    for (size_t i = 1; i < iterates.size(); ++i) {
      const double before = prox_objective(iterates[i - 1], v0, spec, mu);
      const double after = prox_objective(iterates[i], v0, spec, mu);
      expect(after <= before + 1e-10,
             fmt("objective rose by %.3e at inner step %g", after - before,
                 static_cast<double>(i)));
    }
  }
}

// --- 5. prox oracle equivalence ----------------------------------------------

void criterion_prox_oracle() {
  std::mt19937_64 rng(205);
  for (int trial = 0; trial < 20; ++trial) {
    const GroupSpec spec{2 + trial % 2};
    const double mu = 0.4 + 0.2 * (trial % 4);
    const Image v0 = random_gaussian(rng, 4, 0.0, 1.5);
    const Image mm = ogs_prox_mm(v0, spec, MmConfig{mu, 300, 0.0, 1e-12});
    const Image sub = oracle::ogs_prox_subgradient(v0, spec, mu, 600000);
    const double r_mm = prox_objective(mm, v0, spec, mu);
    const double r_sub = prox_objective(sub, v0, spec, mu);
    expect(std::abs(r_mm - r_sub) <= 1e-4,
           fmt("prox objective gap %.3e > 1e-4 (K=%g)", std::abs(r_mm - r_sub),
               static_cast<double>(spec.K)));
  }

  // K=1 closed form. Entries keep a margin from the threshold |v0| = mu,
  // where the reweighted iteration is only sublinearly convergent.
  std::mt19937_64 rng2(106);
  const double mu = 1.0;
  for (int trial = 0; trial < 10; ++trial) {
    Image v0(4);
    std::uniform_real_distribution<double> mag(0.0, 3.0);
    for (double& x : v0.data()) {
      double m = mag(rng2);
      if (std::abs(m - mu) < 0.25) m += 0.5;
      x = (rng2() % 2 ? 1.0 : -1.0) * m;
    }
    const Image out = ogs_prox_mm(v0, GroupSpec{1}, MmConfig{mu, 300, 0.0, 1e-12});
    for (int l = 0; l < v0.size(); ++l) {
      const double soft = std::copysign(std::max(std::abs(v0[l]) - mu, 0.0), v0[l]);
      expect(std::abs(out[l] - soft) <= 1e-4,
             fmt("soft threshold gap %.3e > 1e-4 at v0=%g", std::abs(out[l] - soft), v0[l]));
    }
  }
}

// --- 6. reweighting diagonal, fast pipeline vs literal loop -------------------

void criterion_weights_literal() {
  std::mt19937_64 rng(107);
  for (int K : {1, 2, 3}) {
    for (int trial = 0; trial < 5; ++trial) {
      const Image u = random_uniform(rng, 5, -3.0, 3.0);
      const Image fast = mm_weights(u, GroupSpec{K}, 1e-12);
      const Image naive = oracle::mm_weights_naive(u, GroupSpec{K}, 1e-12);
      const double gap = max_abs_diff(fast, naive);
      expect(gap <= 1e-12, fmt("weights gap %.3e > 1e-12 (K=%g)", gap, K));
    }
  }
  const Image ones(7, 1.0);
  const Image lam = mm_weights(ones, GroupSpec{3}, 0.0);
  const double gap = std::abs(lam.at(3, 3) - std::sqrt(3.0));
  expect(gap <= 1e-12, fmt("interior weight off sqrt(3) by %.3e", gap));
}

// --- 7. denoising end to end -------------------------------------------------

void criterion_denoise() {
  const Image clean = make_phantom(64);
  const Image g = degrade(clean, identity_kernel(), 15.0, 4207);
  const double noisy_psnr = psnr(clean, g);
  double best = -1e300;
  for (double alpha : {1.0, 5.0, 10.0, 20.0}) {
    SolverConfig cfg(alpha);
    const RestoreResult result = restore(g, identity_kernel(), cfg);
    g_solver_logs.push_back(result.log);
    best = std::max(best, psnr(clean, result.f));
  }
  expect(best >= noisy_psnr + 2.0,
         fmt("denoise gain %.2f dB < 2 dB (noisy %.2f dB)", best - noisy_psnr, noisy_psnr));
}

// --- 8. deblurring end to end ------------------------------------------------

void criterion_deblur() {
  const Image clean = make_phantom(64);
  const Kernel k = make_gaussian_kernel(7, 2.0);
  const Image blurred = apply_psf_periodic(clean, k);
  const double noise_std = noise_std_for_bsnr(blurred, 40.0);
  const Image g = degrade(clean, k, noise_std, 4208);
  const double observed_psnr = psnr(clean, g);
  double best = -1e300;
  for (double alpha : {0.05, 0.2, 0.5, 2.0}) {
    SolverConfig cfg(alpha);
    const RestoreResult result = restore(g, k, cfg);
    g_solver_logs.push_back(result.log);
    best = std::max(best, psnr(clean, result.f));
  }
  expect(best >= observed_psnr + 1.0,
         fmt("deblur gain %.2f dB < 1 dB (observed %.2f dB)", best - observed_psnr,
             observed_psnr));
}

// --- 9. insensitivity to the inner iteration count ----------------------------

void criterion_inner_iteration_trend() {
  const Image clean = make_phantom(64);
  const Kernel k = make_gaussian_kernel(7, 2.0);
  const Image blurred = apply_psf_periodic(clean, k);
  const Image g = degrade(clean, k, noise_std_for_bsnr(blurred, 40.0), 4209);

  auto psnr_for = [&](int inner) {
    SolverConfig cfg(1.0);
    cfg.inner_iterations = inner;
    const RestoreResult result = restore(g, k, cfg);
    g_solver_logs.push_back(result.log);
    return psnr(clean, result.f);
  };
  const double p1 = psnr_for(1);
  const double p5 = psnr_for(5);
  const double p20 = psnr_for(20);
  expect(std::abs(p5 - p20) <= 0.2,
         fmt("|PSNR(N=5) - PSNR(N=20)| = %.3f dB > 0.2 dB", std::abs(p5 - p20)));
  expect(p1 <= p5 + 0.05, fmt("PSNR(N=1)=%.3f exceeds PSNR(N=5)=%.3f + 0.05", p1, p5));
}

// --- 10. stopping contract ----------------------------------------------------

void criterion_stopping_contract() {
  expect(!g_solver_logs.empty(), "no solver logs were collected");
  for (const ConvergenceLog& log : g_solver_logs) {
    expect(!log.records.empty(), "empty convergence log");
    if (log.reason == StopReason::tolerance) {
      const double rel = log.records.back().rel_change;
      expect(rel < 1e-5, fmt("terminating rel_change %.3e not < 1e-5", rel));
    }
  }
  // Both stop conditions are reachable and recorded.
  const Image clean = make_phantom(32);
  const Image g = degrade(clean, identity_kernel(), 10.0, 4210);
  SolverConfig capped(5.0);
  capped.eps_outer = 1e-14;
  capped.max_iter = 4;
  const RestoreResult r = restore(g, identity_kernel(), capped);
  expect(r.log.reason == StopReason::max_iter, "max_iter stop not recorded");
  expect(r.log.records.size() == 4, "max_iter run iteration count mismatch");
  bool saw_tolerance = false;
  for (const ConvergenceLog& log : g_solver_logs)
    saw_tolerance = saw_tolerance || log.reason == StopReason::tolerance;
  expect(saw_tolerance, "no run terminated by tolerance");
}

// --- 11. CLI determinism -------------------------------------------------------

void criterion_cli_determinism() {
  TempDir dir;
  const auto clean = dir.file("clean.pgm");
  save_pgm(make_phantom(64), clean);

  auto run = [&](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    expect(code == 0, "cli exited with code " + std::to_string(code) + ": " + err.str());
  };

  const auto noisy1 = dir.file("n1.pgm");
  const auto noisy2 = dir.file("n2.pgm");
  run({"degrade", "--in", clean, "--out", noisy1, "--kernel", "gaussian:7:2", "--bsnr", "40",
       "--seed", "7"});
  run({"degrade", "--in", clean, "--out", noisy2, "--kernel", "gaussian:7:2", "--bsnr", "40",
       "--seed", "7"});
  expect(!slurp(noisy1).empty(), "degraded image is empty");
  expect(slurp(noisy1) == slurp(noisy2), "cmd_degrade outputs differ between runs");

  const auto out1 = dir.file("r1.pgm");
  const auto out2 = dir.file("r2.pgm");
  const auto log1 = dir.file("l1.csv");
  const auto log2 = dir.file("l2.csv");
  run({"restore", "--in", noisy1, "--out", out1, "--kernel", "gaussian:7:2", "--alpha", "0.2",
       "--ref", clean, "--log", log1});
  run({"restore", "--in", noisy1, "--out", out2, "--kernel", "gaussian:7:2", "--alpha", "0.2",
       "--ref", clean, "--log", log2});
  expect(!slurp(out1).empty(), "restored image is empty");
  expect(slurp(out1) == slurp(out2), "cmd_restore PGM outputs differ between runs");
  expect(!slurp(log1).empty(), "convergence CSV is empty");
  expect(slurp(log1) == slurp(log2), "cmd_restore CSV outputs differ between runs");
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<void()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "gradient adjoint identities", 1.0, criterion_adjoints},
      {2, "spectral data subproblem matches dense solve", 5.0, criterion_spectral_vs_dense},
      {3, "surrogate majorizes the prox objective", 5.0, criterion_majorization},
      {4, "MM inner iterations never increase the objective", 5.0, criterion_mm_descent},
      {5, "prox solver agrees with independent oracles", 30.0, criterion_prox_oracle},
      {6, "reweighting diagonal matches the literal loop", 2.0, criterion_weights_literal},
      {7, "denoising gains at least 2 dB", 30.0, criterion_denoise},
      {8, "deblurring at BSNR 40 gains at least 1 dB", 60.0, criterion_deblur},
      {9, "restoration quality is stable for N >= 5", 120.0, criterion_inner_iteration_trend},
      {10, "stopping rule is honored and recorded", 120.0, criterion_stopping_contract},
      {11, "CLI outputs are byte-identical across runs", 120.0, criterion_cli_determinism},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    g_fails.clear();
    const auto t0 = std::chrono::steady_clock::now();
    c.run();
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (elapsed > c.budget_seconds)
      g_fails.push_back(fmt("runtime %.2f s exceeds budget %.0f s", elapsed, c.budget_seconds));
    if (g_fails.empty()) {
      std::printf("PASS criterion %2d: %s (%.2f s)\n", c.id, c.name, elapsed);
    } else {
      ++failures;
      std::printf("FAIL criterion %2d: %s (%.2f s)\n", c.id, c.name, elapsed);
      for (const std::string& f : g_fails) std::printf("      - %s\n", f.c_str());
    }
  }
  if (failures > 0) std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
