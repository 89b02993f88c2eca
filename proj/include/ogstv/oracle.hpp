#pragma once

#include "ogstv/image.hpp"
#include "ogstv/kernel.hpp"
#include "ogstv/ogs.hpp"

namespace ogstv::oracle {

// Brute-force reference implementations used by the test suites. Everything
// here favors literal transcription over speed and is restricted to tiny
// sizes; none of it is called from the solver path.

// Dense n^2 x n^2 matrix of a periodic kernel operator, row-major entries.
struct DenseOperator {
  int n2 = 0;
  std::vector<double> entries;

  double at(int r, int c) const { return entries[static_cast<size_t>(r) * n2 + c]; }
};

// Column l is the flattened response to a unit impulse at linear index l.
// Limited to n <= 16.
DenseOperator dense_from_kernel(const Kernel& k, int n);

Image dense_apply(const DenseOperator& op, const Image& x);

// Direct solve of the assembled normal equation of the data subproblem;
// limited to n <= 8. The matrix is symmetric positive definite for
// sigma > 0.
Image dense_solve_f(const Image& g, const Kernel& k, const Image& v_x, const Image& v_y,
                    const Image& z, const Image& b1, const Image& b2, const Image& b3,
                    double sigma);

// Literal per-group transcriptions of the group functional and the
// reweighting diagonal, quadruple loops and all.
double ogs_value_naive(const Image& v, const GroupSpec& spec);
Image mm_weights_naive(const Image& u, const GroupSpec& spec, double eps_floor);

// Subgradient descent on R(v) = 1/2 ||v - v0||^2 + mu * ogs(v) with the
// strongly-convex step schedule a / t and best-iterate tracking; limited to
// n <= 6. `step_scale` is a.
Image ogs_prox_subgradient(const Image& v0, const GroupSpec& spec, double mu, int steps,
                           double step_scale = 1.0);

}  // namespace ogstv::oracle
