#pragma once

// Multi-particle states built by brute force on a Fock space.

#include <map>
#include <memory>

#include "composite/fock.hpp"

namespace composite {

// (c_f+)^2 |0>, unnormalized. Pairs of composite terms are enumerated
// directly and each coefficient product is formed in a fixed order before the
// ladder amplitude is applied, so exchange partners are bitwise opposite and
// exclusion shows up as an exact zero vector.
inline StateVector two_composite_state(const std::shared_ptr<const FockSpace>& space,
                                       const DiscreteModeDistribution& f) {
  const auto& config = space->config();
  require(f.na() == config.na && f.nb() == config.nb, ErrorCode::ShapeMismatch,
          "distribution does not match the Fock space");
  require(config.stat_a == Statistics::Fermion || config.boson_cutoff >= 2, ErrorCode::InvalidArgument,
          "two-composite states need boson cutoff >= 2");
  require(config.stat_b == Statistics::Fermion || config.boson_cutoff >= 2, ErrorCode::InvalidArgument,
          "two-composite states need boson cutoff >= 2");
  const int na = config.na;
  const int nb = config.nb;
  LadderEngine engine(*space);
  std::map<FockSpace::Index, ExactComplexSum> rows;
  for (int first = 0; first < na * nb; ++first) {
    for (int second = 0; second < na * nb; ++second) {
      const int n = first / nb, m = first % nb;
      const int n2 = second / nb, m2 = second % nb;
      const Ladder string[] = {create(space->mode_id(Family::A, n2, f.spin_a())),
                               create(space->mode_id(Family::B, m2, f.spin_b())),
                               create(space->mode_id(Family::A, n, f.spin_a())),
                               create(space->mode_id(Family::B, m, f.spin_b()))};
      FockSpace::Index target = 0;
      double amplitude = 1.0;
      if (!engine.apply(FockSpace::vacuum(), string, target, amplitude)) continue;
      const Complex product = first <= second ? f(n, m) * f(n2, m2) : f(n2, m2) * f(n, m);
      rows[target].add(product * amplitude);
    }
  }
  ComplexVector out = ComplexVector::Zero(space->dimension());
  for (const auto& [row, sum] : rows) out[row] = sum.value();
  return {space, std::move(out)};
}

// c_f+ a_g+ |0>: a composite (a-fermion entangled with a distinguishable b
// particle) plus a free a-fermion in mode vector g. Both fermions share f's a-spin.
inline StateVector three_particle_state(const DiscreteModeDistribution& f, const ComplexVector& g,
                                        Statistics distinguishable = Statistics::Fermion,
                                        std::size_t max_dimension = std::size_t{1} << 20) {
  FockSpaceConfig config;
  config.na = static_cast<int>(f.na());
  config.nb = static_cast<int>(f.nb());
  config.stat_a = Statistics::Fermion;
  config.stat_b = distinguishable;
  config.boson_cutoff = 1;
  config.spins_a = {f.spin_a()};
  config.spins_b = {f.spin_b()};
  config.max_dimension = max_dimension;
  const auto space = build_space(config);
  const auto free = apply(mode_creation(space, Family::A, g, f.spin_a()), StateVector::vacuum(space),
                          Accumulation::Exact);
  return apply(composite_creation(space, f), free, Accumulation::Exact);
}

// sum f3_nmk a+_{n,r} a+_{m,s} b+_{k,S} |0>.
inline StateVector symmetric_three_state(const ThreeParticleDistribution& f3,
                                         Statistics distinguishable = Statistics::Boson,
                                         std::size_t max_dimension = std::size_t{1} << 20) {
  FockSpaceConfig config;
  config.na = static_cast<int>(f3.fermion_modes());
  config.nb = static_cast<int>(f3.other_modes());
  config.stat_a = Statistics::Fermion;
  config.stat_b = distinguishable;
  config.boson_cutoff = 1;
  config.spins_a = {f3.spin_r()};
  if (f3.spin_s() != f3.spin_r()) config.spins_a.push_back(f3.spin_s());
  config.spins_b = {f3.spin_other()};
  config.max_dimension = max_dimension;
  const auto space = build_space(config);

  std::vector<OperatorTerm> terms;
  const int nf = config.na;
  const int no = config.nb;
  for (int n = 0; n < nf; ++n) {
    for (int m = 0; m < nf; ++m) {
      for (int k = 0; k < no; ++k) {
        terms.push_back({f3(n, m, k),
                         {create(space->mode_id(Family::A, n, f3.spin_r())),
                          create(space->mode_id(Family::A, m, f3.spin_s())),
                          create(space->mode_id(Family::B, k, f3.spin_other()))}});
      }
    }
  }
  return apply(OperatorMatrix::from_terms(space, terms), StateVector::vacuum(space), Accumulation::Exact);
}

}  // namespace composite
