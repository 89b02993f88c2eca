#include "ogstv/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>

#include "ogstv/image.hpp"
#include "ogstv/metrics.hpp"
#include "ogstv/operators.hpp"
#include "ogstv/solver.hpp"

namespace ogstv {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitNumeric = 3;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  size_t start = 0;
  while (true) {
    const size_t pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_real(const std::string& s, const char* what) {
  size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string(what) + ": expected a number, got '" + s + "'");
  }
  if (used != s.size())
    throw std::invalid_argument(std::string(what) + ": expected a number, got '" + s + "'");
  return v;
}

int parse_int(const std::string& s, const char* what) {
  const double v = parse_real(s, what);
  if (v != std::floor(v)) throw std::invalid_argument(std::string(what) + ": expected an integer");
  return static_cast<int>(v);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

struct DegradeArgs {
  std::string in, out, kernel;
  double noise_std = -1.0;
  double target_bsnr = 0.0;
  bool has_noise_std = false, has_bsnr = false;
  std::uint64_t seed = 0;
};

int cmd_degrade(const DegradeArgs& a, std::ostream& out) {
  const Kernel k = parse_kernel_spec(a.kernel);
  const Image img = load_pgm(a.in);
  const Image blurred = apply_psf_periodic(img, k);
  const double std_used = a.has_noise_std ? a.noise_std : noise_std_for_bsnr(blurred, a.target_bsnr);
  if (std_used < 0.0) throw std::invalid_argument("--noise-std must be nonnegative");
  const Image g = degrade(img, k, std_used, a.seed);
  save_pgm(g, a.out);

  const Image eta = g - blurred;
  const double eta_norm = norm2(eta);
  out << "noise_std=" << fmt(std_used) << "\n";
  double sq = 0.0;
  for (double v : eta.data()) sq += v * v;
  out << "realized_noise_std=" << fmt(std::sqrt(sq / eta.size())) << "\n";
  out << "bsnr_db="
      << fmt(eta_norm > 0.0 ? bsnr(g, eta) : std::numeric_limits<double>::infinity()) << "\n";
  return kExitOk;
}

struct RestoreArgs {
  std::string in, out, kernel;
  double alpha = 0.0;
  double sigma = -1.0;
  bool has_sigma = false;
  int group_size = 3;
  int inner_iters = 5;
  double eps = 1e-5;
  int max_iter = 500;
  std::string box = "0:255";
  double dual_step = 1.0;
  std::string ref_path, log_path;
};

int cmd_restore(const RestoreArgs& a, std::ostream& out) {
  const Kernel k = parse_kernel_spec(a.kernel);
  const Image g = load_pgm(a.in);

  SolverConfig cfg(a.alpha);
  if (a.has_sigma) cfg.sigma = a.sigma;
  cfg.group = GroupSpec{a.group_size};
  cfg.inner_iterations = a.inner_iters;
  cfg.eps_outer = a.eps;
  cfg.max_iter = a.max_iter;
  cfg.dual_step = a.dual_step;
  const auto box_parts = split(a.box, ':');
  if (box_parts.size() != 2) throw std::invalid_argument("--box: expected LO:HI");
  cfg.box = BoxBounds{parse_real(box_parts[0], "--box lo"), parse_real(box_parts[1], "--box hi")};

  Image ref;
  if (!a.ref_path.empty()) {
    ref = load_pgm(a.ref_path);
    cfg.track_psnr_against = &ref;
  }

  const auto t0 = std::chrono::steady_clock::now();
  const RestoreResult result = restore(g, k, cfg);
  const double total_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  save_pgm(result.f, a.out);
  if (!a.log_path.empty()) {
    std::string content = "# alpha=" + fmt(cfg.alpha) + " sigma=" + fmt(cfg.sigma) +
                          " group_size=" + std::to_string(cfg.group.K) +
                          " inner_iters=" + std::to_string(cfg.inner_iterations) +
                          " eps=" + fmt(cfg.eps_outer) +
                          " max_iter=" + std::to_string(cfg.max_iter) + " box=" + a.box +
                          " dual_step=" + fmt(cfg.dual_step) + "\n";
    content += to_csv(result.log);
    write_file(a.log_path, content);
  }

  out << "sigma=" << fmt(cfg.sigma) << "\n";
  out << "iterations=" << result.log.records.size() << "\n";
  out << "stop_reason="
      << (result.log.reason == StopReason::tolerance ? "tolerance" : "max_iter") << "\n";
  if (!result.log.records.empty()) {
    out << "final_objective=" << fmt(result.log.records.back().objective) << "\n";
    out << "final_rel_change=" << fmt(result.log.records.back().rel_change) << "\n";
  }
  if (cfg.track_psnr_against) {
    out << "psnr_db=" << fmt(psnr(ref, result.f)) << "\n";
    out << "rel_err=" << fmt(rel_err(ref, result.f)) << "\n";
  }
  out << "total_time_ms=" << fmt(total_ms) << "\n";
  return kExitOk;
}

int cmd_metrics(const std::string& ref_path, const std::string& est_path, double max_val,
                std::ostream& out) {
  const Image ref = load_pgm(ref_path);
  const Image est = load_pgm(est_path);
  if (ref.side() != est.side()) throw std::invalid_argument("metrics: dimension mismatch");
  out << "psnr_db=" << fmt(psnr(ref, est, max_val)) << "\n";
  out << "rel_err=" << fmt(rel_err(ref, est)) << "\n";
  return kExitOk;
}

int cmd_kernel(const std::string& spec, const std::string& out_path) {
  save_kernel(parse_kernel_spec(spec), out_path);
  return kExitOk;
}

}  // namespace

Kernel parse_kernel_spec(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.empty()) throw std::invalid_argument("kernel spec: empty");
  const std::string& kind = parts[0];
  if (kind == "identity") {
    if (parts.size() != 1) throw std::invalid_argument("kernel spec: identity takes no arguments");
    return identity_kernel();
  }
  if (kind == "gaussian") {
    if (parts.size() != 3)
      throw std::invalid_argument("kernel spec: expected gaussian:SIZE:STD");
    return make_gaussian_kernel(parse_int(parts[1], "gaussian size"),
                                parse_real(parts[2], "gaussian std"));
  }
  if (kind == "average") {
    if (parts.size() != 2) throw std::invalid_argument("kernel spec: expected average:SIZE");
    return make_average_kernel(parse_int(parts[1], "average size"));
  }
  if (kind == "file") {
    if (parts.size() < 2) throw std::invalid_argument("kernel spec: expected file:PATH");
    // Paths may themselves contain ':'.
    return load_kernel(spec.substr(5));
  }
  throw std::invalid_argument("kernel spec: unknown kind '" + kind + "'");
}

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Grayscale image restoration with group-sparse total variation"};
  app.require_subcommand(1);

  DegradeArgs d;
  auto* degrade_cmd = app.add_subcommand("degrade", "Blur an image and add Gaussian noise");
  degrade_cmd->add_option("--in", d.in, "Input PGM")->required();
  degrade_cmd->add_option("--out", d.out, "Output PGM")->required();
  degrade_cmd->add_option("--kernel", d.kernel, "Kernel spec")->required();
  auto* std_opt = degrade_cmd->add_option("--noise-std", d.noise_std, "Noise standard deviation");
  auto* bsnr_opt = degrade_cmd->add_option("--bsnr", d.target_bsnr, "Target BSNR in dB");
  std_opt->excludes(bsnr_opt);
  bsnr_opt->excludes(std_opt);
  degrade_cmd->add_option("--seed", d.seed, "Noise generator seed");

  RestoreArgs r;
  auto* restore_cmd = app.add_subcommand("restore", "Restore a degraded image");
  restore_cmd->add_option("--in", r.in, "Degraded PGM")->required();
  restore_cmd->add_option("--out", r.out, "Restored PGM")->required();
  restore_cmd->add_option("--kernel", r.kernel, "Kernel spec")->required();
  restore_cmd->add_option("--alpha", r.alpha, "Regularization weight")->required();
  auto* sigma_opt = restore_cmd->add_option("--sigma", r.sigma, "Penalty parameter (default alpha/3)");
  restore_cmd->add_option("--group-size", r.group_size, "Group side K");
  restore_cmd->add_option("--inner-iters", r.inner_iters, "Inner prox iterations N");
  restore_cmd->add_option("--eps", r.eps, "Outer stopping tolerance");
  restore_cmd->add_option("--max-iter", r.max_iter, "Maximum outer iterations");
  restore_cmd->add_option("--box", r.box, "Intensity box LO:HI");
  restore_cmd->add_option("--dual-step", r.dual_step, "Multiplier step size");
  restore_cmd->add_option("--ref", r.ref_path, "Reference PGM for quality metrics");
  restore_cmd->add_option("--log", r.log_path, "Convergence CSV path");

  std::string m_ref, m_est;
  double m_max_val = 255.0;
  auto* metrics_cmd = app.add_subcommand("metrics", "PSNR and relative error of two images");
  metrics_cmd->add_option("--ref", m_ref, "Reference PGM")->required();
  metrics_cmd->add_option("--est", m_est, "Estimate PGM")->required();
  metrics_cmd->add_option("--max-val", m_max_val, "Peak value for PSNR");

  std::string k_spec, k_out;
  auto* kernel_cmd = app.add_subcommand("kernel", "Write a kernel spec to a text file");
  kernel_cmd->add_option("--spec", k_spec, "Kernel spec")->required();
  kernel_cmd->add_option("--out", k_out, "Output path")->required();

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help and friends.
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (degrade_cmd->parsed()) {
      d.has_noise_std = std_opt->count() > 0;
      d.has_bsnr = bsnr_opt->count() > 0;
      if (!d.has_noise_std && !d.has_bsnr)
        throw std::invalid_argument("degrade: exactly one of --noise-std/--bsnr is required");
      return cmd_degrade(d, out);
    }
    if (restore_cmd->parsed()) {
      r.has_sigma = sigma_opt->count() > 0;
      return cmd_restore(r, out);
    }
    if (metrics_cmd->parsed()) return cmd_metrics(m_ref, m_est, m_max_val, out);
    if (kernel_cmd->parsed()) return cmd_kernel(k_spec, k_out);
  } catch (const DivergenceError& e) {
    err << "error: " << e.what() << "\n";
    err << "iteration=" << e.iteration << "\n";
    return kExitNumeric;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
  err << "error: no subcommand\n";
  return kExitUsage;
}

}  // namespace ogstv
