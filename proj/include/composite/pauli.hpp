#pragma once

// Exclusion diagnostics. A multi-particle state is judged preparable when its
// squared norm is finite and nonzero; a vanishing norm (divergent normalization
// constant) means the exclusion principle forbids it.

#include <cmath>
#include <string>

#include "composite/algebra.hpp"
#include "composite/fock.hpp"
#include "composite/oracle_states.hpp"

namespace composite {

enum class Preparability { Preparable, ForbiddenByExclusion, Indeterminate };
enum class Method { SecondQuantization, FirstQuantization, Both };

inline std::string_view to_string(Preparability p) {
  switch (p) {
    case Preparability::Preparable: return "Preparable";
    case Preparability::ForbiddenByExclusion: return "ForbiddenByExclusion";
    case Preparability::Indeterminate: return "Indeterminate";
  }
  return "?";
}

inline std::string_view to_string(Method m) {
  switch (m) {
    case Method::SecondQuantization: return "SecondQuantization";
    case Method::FirstQuantization: return "FirstQuantization";
    case Method::Both: return "Both";
  }
  return "?";
}

struct PreparabilityVerdict {
  Preparability status;
  double evidence;  // squared norm of the unnormalized state (= N^-2)
  Method method;
};

inline PreparabilityVerdict verdict_from_norm(double norm_sq, Method method) {
  return {norm_sq <= tol::divergence ? Preparability::ForbiddenByExclusion : Preparability::Preparable, norm_sq,
          method};
}

struct ExclusionResult {
  PreparabilityVerdict verdict;
  bool exact_zero;  // every amplitude of (c_f+)^2 |0> is exactly 0.0
};

// Builds (c_f+)^2 |0> on the oracle and inspects it.
inline ExclusionResult exclusion_check(const DiscreteModeDistribution& f, CompositeKind kind,
                                       const std::shared_ptr<const FockSpace>& space) {
  const auto& config = space->config();
  require(config.stat_a == statistics_a(kind) && config.stat_b == statistics_b(kind), ErrorCode::SpaceMismatch,
          "Fock space statistics do not match the composite kind");
  const auto state = two_composite_state(space, f);
  return {verdict_from_norm(state.squared_norm(), Method::SecondQuantization), state.is_exact_zero()};
}

// Two identical fermions (same spin), one entangled with a distinguishable
// particle through `composite`, the other free in mode vector `free_fermion`.
struct ThreeBodyScenario {
  DiscreteModeDistribution composite;
  ComplexVector free_fermion;
  SpinLabel free_spin;
  Statistics distinguishable = Statistics::Fermion;

  ThreeBodyScenario(DiscreteModeDistribution f, ComplexVector g, SpinLabel spin,
                    Statistics third = Statistics::Fermion)
      : composite(std::move(f)), free_fermion(std::move(g)), free_spin(spin), distinguishable(third) {
    require(free_fermion.size() == composite.na(), ErrorCode::ShapeMismatch,
            "free fermion mode vector does not match the composite's a-modes");
    require(std::abs(free_fermion.squaredNorm() - 1.0) <= tol::structural, ErrorCode::InvalidArgument,
            "free fermion mode vector is not unit-norm");
    require(free_spin == composite.spin_a(), ErrorCode::InvalidArgument,
            "the two identical fermions must carry the same spin label");
  }
};

// Oracle norm of c_f+ a_g+ |0>.
inline PreparabilityVerdict scenario_verdict(const ThreeBodyScenario& s) {
  const auto state = three_particle_state(s.composite, s.free_fermion, s.distinguishable);
  return verdict_from_norm(state.squared_norm(), Method::SecondQuantization);
}

// Ratio between the first-quantization norm of the antisymmetrized product
// Psi_nmk - Psi_mnk and the Fock-space norm: the antisymmetrized product is
// not divided by sqrt(2!).
inline constexpr double first_quantization_factor = 2.0;

// || Psi_nmk - Psi_mnk ||^2 with Psi_nmk = f_nk g_m (n, m: identical fermions; k: third particle).
inline double first_quantization_norm(const ThreeBodyScenario& s) {
  const auto& f = s.composite.coefficients();
  const auto& g = s.free_fermion;
  const auto na = f.rows();
  const auto nb = f.cols();
  double total = 0.0;
  for (Eigen::Index n = 0; n < na; ++n)
    for (Eigen::Index m = 0; m < na; ++m)
      for (Eigen::Index k = 0; k < nb; ++k) total += std::norm(f(n, k) * g[m] - f(m, k) * g[n]);
  return total;
}

inline PreparabilityVerdict first_quantization_verdict(const ThreeBodyScenario& s) {
  return verdict_from_norm(first_quantization_norm(s) / first_quantization_factor, Method::FirstQuantization);
}

// Antisymmetrized spin-orbital tensor for the helium-type state: each identical
// fermion carries (mode, spin); Psi(n r, m s, k) - Psi(m s, n r, k).
inline double helium_first_quantization_norm(const ThreeParticleDistribution& f3) {
  const auto nf = f3.fermion_modes();
  const auto no = f3.other_modes();
  // Spin slots: 0 holds r, 1 holds s when it differs.
  const bool same = f3.spin_r() == f3.spin_s();
  const Eigen::Index slots = same ? 1 : 2;
  const Eigen::Index r_slot = 0;
  const Eigen::Index s_slot = same ? 0 : 1;
  auto psi = [&](Eigen::Index n, Eigen::Index sn, Eigen::Index m, Eigen::Index sm, Eigen::Index k) -> Complex {
    return (sn == r_slot && sm == s_slot) ? f3(n, m, k) : Complex{};
  };
  double total = 0.0;
  for (Eigen::Index n = 0; n < nf; ++n)
    for (Eigen::Index sn = 0; sn < slots; ++sn)
      for (Eigen::Index m = 0; m < nf; ++m)
        for (Eigen::Index sm = 0; sm < slots; ++sm)
          for (Eigen::Index k = 0; k < no; ++k) total += std::norm(psi(n, sn, m, sm, k) - psi(m, sm, n, sn, k));
  return total;
}

inline PreparabilityVerdict helium_verdict(const ThreeParticleDistribution& f3) {
  const auto report = symmetric_three_norm(f3);
  const auto status = report.status == ThreeNormStatus::ExcludedByPauli ? Preparability::ForbiddenByExclusion
                                                                        : Preparability::Preparable;
  return {status, report.inverse_norm_sq, Method::SecondQuantization};
}

}  // namespace composite
