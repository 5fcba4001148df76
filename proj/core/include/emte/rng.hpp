// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <random>

#include "emte/tensor.hpp"

namespace emte {

// Deterministic random draws for test-state generation.  Uses mt19937_64
// with an explicit 53-bit-to-double conversion so streams are identical
// across platforms and standard libraries.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform(double lo, double hi) {
    const std::uint64_t bits = eng_() >> 11; // keep 53 bits
    const double u = static_cast<double>(bits) * (1.0 / 9007199254740992.0);
    return lo + (hi - lo) * u;
  }

  Vec3 vec(double lo, double hi) {
    // Evaluation order of braced initializers would be unspecified inside
    // the return expression on some compilers; draw explicitly.
    const double x = uniform(lo, hi);
    const double y = uniform(lo, hi);
    const double z = uniform(lo, hi);
    return {x, y, z};
  }

  Vec3 unit_vec() {
    for (;;) {
      Vec3 v = vec(-1.0, 1.0);
      const double n = norm(v);
      if (n > 0.1 && n <= 1.0) return v / n;
    }
  }

  Ten2 ten2(double lo, double hi) {
    Ten2 t;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) t(i, j) = uniform(lo, hi);
    return t;
  }

  // Random deformation gradient near the identity with det F > 0 guaranteed
  // by construction scale; spread <= ~0.35 keeps J well away from zero.
  Ten2 deformation(double spread = 0.3) {
    for (;;) {
      Ten2 f = Ten2::identity() + ten2(-spread, spread);
      if (det(f) > 0.3) return f;
    }
  }

  std::uint64_t raw() { return eng_(); }

private:
  std::mt19937_64 eng_;
};

} // namespace emte
