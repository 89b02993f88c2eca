#pragma once

#include <vector>

#include "ogstv/image.hpp"

namespace ogstv {

// K x K overlapping groups. The window of the group centered at pixel (i,j)
// spans rows i-m1..i+m2 and columns j-m1..j+m2; entries outside the image
// read as zero.
struct GroupSpec {
  int K = 3;
  int m1() const { return (K - 1) / 2; }
  int m2() const { return K / 2; }
};

// Settings for the majorize-minimize prox solver. mu is the penalty weight
// of the group term relative to the quadratic attachment. The loop runs
// exactly `iterations` passes unless inner_tol > 0 enables the relative
// change early exit. eps_floor is added to each squared group norm before
// the inverse square root so empty groups do not produce infinite weights.
struct MmConfig {
  double mu = 1.0;
  int iterations = 5;
  double inner_tol = 0.0;
  double eps_floor = 1e-12;
};

// Per-pixel Euclidean norm of the zero-padded K x K window.
Image group_norm_field(const Image& v, const GroupSpec& spec);

// Overlapping group sparsity functional: sum of all group norms. With K = 1
// this is the entrywise L1 norm.
double ogs_value(const Image& v, const GroupSpec& spec);

// Prox objective R(v) = 1/2 ||v - v0||^2 + mu * ogs_value(v).
double prox_objective(const Image& v, const Image& v0, const GroupSpec& spec, double mu);

// Diagonal of the reweighting matrix: entry (r,t) is
//   sqrt( sum over groups containing (r,t) of (group squared norm + eps)^(-1/2) ).
// Computed as two box-sum passes (squares, then inverse root sums with the
// mirrored offset range).
Image mm_weights(const Image& u, const GroupSpec& spec, double eps_floor);

// Majorize-minimize solver for min_v R(v). Starts at v0 and repeats the
// reweighted closed-form update v_l = v0_l / (1 + mu * Lambda(v)_l^2); R is
// non-increasing across iterates. If `iterates` is non-null every iterate
// including the start is appended.
Image ogs_prox_mm(const Image& v0, const GroupSpec& spec, const MmConfig& cfg,
                  std::vector<Image>* iterates = nullptr);

// Quadratic surrogate value
//   Q(v,u) = 1/2 ||v - v0||^2 + mu/2 (||Lambda(u) v||^2 + sum of group norms of u),
// evaluated with the same eps_floor guard as mm_weights (including the
// constant term). Q(v,u) >= R(v) for every u, with equality at v = u when
// eps_floor = 0.
double majorizer_value(const Image& v, const Image& u, const Image& v0, const GroupSpec& spec,
                       double mu, double eps_floor = 1e-12);

}  // namespace ogstv
