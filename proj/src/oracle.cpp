#include "ogstv/oracle.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

#include "ogstv/operators.hpp"

namespace ogstv::oracle {

namespace {

Eigen::MatrixXd to_eigen(const DenseOperator& op) {
  Eigen::MatrixXd m(op.n2, op.n2);
  for (int r = 0; r < op.n2; ++r)
    for (int c = 0; c < op.n2; ++c) m(r, c) = op.at(r, c);
  return m;
}

Eigen::VectorXd to_eigen(const Image& x) {
  Eigen::VectorXd v(x.size());
  for (int l = 0; l < x.size(); ++l) v(l) = x[l];
  return v;
}

Image from_eigen(const Eigen::VectorXd& v, int n) {
  Image out(n);
  for (int l = 0; l < out.size(); ++l) out[l] = v(l);
  return out;
}

// Zero-padded read at 1-based pixel coordinates.
double read_padded(const Image& x, int i, int j) {
  if (i < 1 || i > x.side() || j < 1 || j > x.side()) return 0.0;
  return x.at(i - 1, j - 1);
}

}  // namespace

DenseOperator dense_from_kernel(const Kernel& k, int n) {
  if (n > 16) throw std::invalid_argument("dense_from_kernel: n limited to 16");
  const int n2 = n * n;
  DenseOperator op{n2, std::vector<double>(static_cast<size_t>(n2) * n2, 0.0)};
  for (int col = 0; col < n2; ++col) {
    Image impulse(n);
    impulse[col] = 1.0;
    const Image response = apply_psf_periodic(impulse, k);
    for (int row = 0; row < n2; ++row)
      op.entries[static_cast<size_t>(row) * n2 + col] = response[row];
  }
  return op;
}

Image dense_apply(const DenseOperator& op, const Image& x) {
  if (x.size() != op.n2) throw std::invalid_argument("dense_apply: size mismatch");
  Image out(x.side());
  for (int r = 0; r < op.n2; ++r) {
    double s = 0.0;
    for (int c = 0; c < op.n2; ++c) s += op.at(r, c) * x[c];
    out[r] = s;
  }
  return out;
}

Image dense_solve_f(const Image& g, const Kernel& k, const Image& v_x, const Image& v_y,
                    const Image& z, const Image& b1, const Image& b2, const Image& b3,
                    double sigma) {
  const int n = g.side();
  if (n > 8) throw std::invalid_argument("dense_solve_f: n limited to 8");
  const Eigen::MatrixXd H = to_eigen(dense_from_kernel(k, n));
  const Eigen::MatrixXd Dx = to_eigen(dense_from_kernel(grad_x_kernel(), n));
  const Eigen::MatrixXd Dy = to_eigen(dense_from_kernel(grad_y_kernel(), n));
  const int n2 = n * n;

  const Eigen::MatrixXd A = H.transpose() * H +
                            sigma * (Dx.transpose() * Dx + Dy.transpose() * Dy) +
                            sigma * Eigen::MatrixXd::Identity(n2, n2);
  const Eigen::VectorXd rhs = H.transpose() * to_eigen(g) +
                              sigma * (Dx.transpose() * to_eigen(v_x - b1) +
                                       Dy.transpose() * to_eigen(v_y - b2) +
                                       to_eigen(z - b3));
  return from_eigen(A.llt().solve(rhs), n);
}

double ogs_value_naive(const Image& v, const GroupSpec& spec) {
  const int n = v.side();
  const int m1 = spec.m1(), m2 = spec.m2();
  double total = 0.0;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      double sq = 0.0;
      for (int di = -m1; di <= m2; ++di)
        for (int dj = -m1; dj <= m2; ++dj) {
          const double x = read_padded(v, i + di, j + dj);
          sq += x * x;
        }
      total += std::sqrt(sq);
    }
  return total;
}

Image mm_weights_naive(const Image& u, const GroupSpec& spec, double eps_floor) {
  const int n = u.side();
  const int m1 = spec.m1(), m2 = spec.m2();
  Image out(n);
  for (int r = 1; r <= n; ++r)
    for (int t = 1; t <= n; ++t) {
      double acc = 0.0;
      for (int i = -m1; i <= m2; ++i)
        for (int j = -m1; j <= m2; ++j) {
          // Only groups centered inside the image exist; this keeps the
          // weights the exact quadratic form of the group functional, whose
          // outer sum runs over the n^2 grid positions.
          if (r - i < 1 || r - i > n || t - j < 1 || t - j > n) continue;
          double sq = 0.0;
          for (int k1 = -m1; k1 <= m2; ++k1)
            for (int k2 = -m1; k2 <= m2; ++k2) {
              const double x = read_padded(u, r - i + k1, t - j + k2);
              sq += x * x;
            }
          acc += 1.0 / std::sqrt(sq + eps_floor);
        }
      out.at(r - 1, t - 1) = std::sqrt(acc);
    }
  return out;
}

Image ogs_prox_subgradient(const Image& v0, const GroupSpec& spec, double mu, int steps,
                           double step_scale) {
  const int n = v0.side();
  if (n > 6) throw std::invalid_argument("ogs_prox_subgradient: n limited to 6");
  const int m1 = spec.m1(), m2 = spec.m2();

  // Subgradient of the group functional: each pixel accumulates
  // v_l / ||group|| over the groups containing it; zero-norm groups
  // contribute the zero subgradient.
  auto phi_subgrad = [&](const Image& v) {
    Image out(n);
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        double sq = 0.0;
        for (int di = -m1; di <= m2; ++di)
          for (int dj = -m1; dj <= m2; ++dj) {
            const double x = read_padded(v, i + di, j + dj);
            sq += x * x;
          }
        if (sq == 0.0) continue;
        const double inv = 1.0 / std::sqrt(sq);
        for (int di = -m1; di <= m2; ++di)
          for (int dj = -m1; dj <= m2; ++dj) {
            const int r = i + di, t = j + dj;
            if (r < 1 || r > n || t < 1 || t > n) continue;
            out.at(r - 1, t - 1) += v.at(r - 1, t - 1) * inv;
          }
      }
    return out;
  };

  auto objective = [&](const Image& v) {
    double quad = 0.0;
    for (int l = 0; l < v.size(); ++l) {
      const double d = v[l] - v0[l];
      quad += d * d;
    }
    return 0.5 * quad + mu * ogs_value_naive(v, spec);
  };

  Image v = v0;
  Image best = v;
  double best_obj = objective(v);
  for (int t = 1; t <= steps; ++t) {
    const Image gphi = phi_subgrad(v);
    // R is 1-strongly convex thanks to the quadratic attachment, so the
    // classic a/t schedule applies; a/sqrt(t) stalls orders of magnitude
    // short of the accuracy the cross-checks need.
    const double step = step_scale / t;
    for (int l = 0; l < v.size(); ++l) v[l] -= step * ((v[l] - v0[l]) + mu * gphi[l]);
    const double obj = objective(v);
    if (obj < best_obj) {
      best_obj = obj;
      best = v;
    }
  }
  return best;
}

}  // namespace ogstv::oracle
