#pragma once

#include <cmath>
#include <cstdint>

namespace ogstv {

// Deterministic standard-normal stream: SplitMix64 for the uniform bits,
// Box-Muller for the transform. The algorithm is pinned so that a given
// seed yields the same sample sequence on every platform with IEEE-754
// doubles:
//   u64    : SplitMix64 (Steele, Lea, Flood 2014) advanced once per draw
//   u in (0,1] : ((u64 >> 11) + 1) * 2^-53
//   pair   : r = sqrt(-2 ln u1); z0 = r cos(2 pi u2), z1 = r sin(2 pi u2)
// Samples are emitted z0, z1, z0, z1, ...
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : state_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = next_unit();
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * 3.141592653589793238462643383279502884 * u2;
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
  }

 private:
  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform on (0, 1]; never 0, so log(u1) is finite.
  double next_unit() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace ogstv
