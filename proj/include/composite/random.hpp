#pragma once

// Seeded random distributions for property checks and the CLI.

#include <random>

#include "composite/mode_dist.hpp"

namespace composite {

using Rng = std::mt19937_64;

inline ComplexMatrix random_complex_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> normal;
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

inline DiscreteModeDistribution random_distribution(Rng& rng, Eigen::Index na, Eigen::Index nb, SpinLabel spin_a = {},
                                                    SpinLabel spin_b = {}) {
  return normalize(random_complex_matrix(rng, na, nb), spin_a, spin_b);
}

inline ComplexVector random_unit_vector(Rng& rng, Eigen::Index n) {
  ComplexVector v = random_complex_matrix(rng, n, 1).col(0);
  return v / v.norm();
}

// f3_nmk = +/- f3_mnk.
inline ThreeParticleDistribution random_exchange_tensor(Rng& rng, Eigen::Index fermion_modes, Eigen::Index other_modes,
                                                        bool symmetric, SpinLabel r = {}, SpinLabel s = {},
                                                        SpinLabel other = {}) {
  const auto raw = random_complex_matrix(rng, fermion_modes * fermion_modes, other_modes);
  const double sign = symmetric ? 1.0 : -1.0;
  std::vector<Complex> values(static_cast<std::size_t>(fermion_modes * fermion_modes * other_modes));
  for (Eigen::Index n = 0; n < fermion_modes; ++n)
    for (Eigen::Index m = 0; m < fermion_modes; ++m)
      for (Eigen::Index k = 0; k < other_modes; ++k) {
        values[static_cast<std::size_t>((n * fermion_modes + m) * other_modes + k)] =
            raw(n * fermion_modes + m, k) + sign * raw(m * fermion_modes + n, k);
      }
  return ThreeParticleDistribution::normalized(fermion_modes, other_modes, std::move(values), r, s, other);
}

}  // namespace composite
