#include <gtest/gtest.h>

#include "composite/pauli.hpp"
#include "composite/random.hpp"

using namespace composite;

namespace {

ThreeBodyScenario separable_scenario(Rng& rng, int na, int nb) {
  const ComplexVector g = random_unit_vector(rng, na);
  const ComplexVector v = random_unit_vector(rng, nb);
  return {normalize(ComplexMatrix(g * v.transpose())), g, SpinLabel{}};
}

}  // namespace

TEST(Exclusion, CompositeFermionsVanishExactly) {
  Rng rng(12);
  const auto space = build_space(FockSpaceConfig::for_kind(CompositeKind::FB, 3, 3, 2));
  for (int trial = 0; trial < 5; ++trial) {
    const auto result = exclusion_check(random_distribution(rng, 3, 3), CompositeKind::FB, space);
    EXPECT_TRUE(result.exact_zero);
    EXPECT_EQ(result.verdict.status, Preparability::ForbiddenByExclusion);
  }
}

TEST(Exclusion, CompositeBosonsArePreparable) {
  Rng rng(13);
  for (const auto kind : {CompositeKind::BB, CompositeKind::FF}) {
    const auto space = build_space(FockSpaceConfig::for_kind(kind, 2, 3, 2));
    const double sign = kind == CompositeKind::BB ? 1.0 : -1.0;
    for (int trial = 0; trial < 5; ++trial) {
      const auto f = random_distribution(rng, 2, 3);
      const auto result = exclusion_check(f, kind, space);
      EXPECT_FALSE(result.exact_zero);
      EXPECT_EQ(result.verdict.status, Preparability::Preparable);
      EXPECT_NEAR(result.verdict.evidence, 2.0 * (1.0 + sign * lambda(f)), 1e-12);
    }
  }
  // Two quanta in a single composite mode: ||a+^2 b+^2 |0>||^2 = 2 * 2.
  const auto single = build_space(FockSpaceConfig::for_kind(CompositeKind::BB, 1, 1, 2));
  const auto one = exclusion_check(normalize(ComplexMatrix::Ones(1, 1)), CompositeKind::BB, single);
  EXPECT_NEAR(one.verdict.evidence, 4.0, 1e-14);
  EXPECT_EQ(one.verdict.status, Preparability::Preparable);
}

TEST(Exclusion, SeparableFermionPairsAreForbidden) {
  const auto space = build_space(FockSpaceConfig::for_kind(CompositeKind::FF, 2, 2));
  const auto result = exclusion_check(normalize(ComplexMatrix::Ones(2, 2)), CompositeKind::FF, space);
  EXPECT_EQ(result.verdict.status, Preparability::ForbiddenByExclusion);
  EXPECT_LT(result.verdict.evidence, 1e-12);
}

TEST(Exclusion, RejectsMismatchedSpace) {
  const auto space = build_space(FockSpaceConfig::for_kind(CompositeKind::BB, 2, 2));
  EXPECT_THROW(exclusion_check(normalize(ComplexMatrix::Ones(2, 2)), CompositeKind::FF, space), Error);
  EXPECT_THROW(exclusion_check(normalize(ComplexMatrix::Ones(3, 2)), CompositeKind::BB, space), Error);
}

TEST(ThreeBody, SeparableMatchingMarginalIsForbiddenInBothFormalisms) {
  Rng rng(21);
  for (int trial = 0; trial < 5; ++trial) {
    const auto s = separable_scenario(rng, 3, 2);
    const auto second = scenario_verdict(s);
    const auto first = first_quantization_verdict(s);
    EXPECT_EQ(second.status, Preparability::ForbiddenByExclusion);
    EXPECT_EQ(first.status, Preparability::ForbiddenByExclusion);
    EXPECT_LT(second.evidence, 1e-12);
    EXPECT_LT(first.evidence, 1e-12);
  }
}

TEST(ThreeBody, EntangledIsPreparableAndFormalismsAgree) {
  Rng rng(22);
  for (int trial = 0; trial < 5; ++trial) {
    const auto f = random_distribution(rng, 3, 3);
    const ThreeBodyScenario s(f, random_unit_vector(rng, 3), SpinLabel{});
    const auto second = scenario_verdict(s);
    EXPECT_EQ(second.status, Preparability::Preparable);
    EXPECT_GT(second.evidence, 0.0);
    // The antisymmetrized first-quantization product carries a factor 2 relative to the Fock norm.
    EXPECT_NEAR(first_quantization_norm(s), 2.0 * second.evidence, 1e-12);
    EXPECT_EQ(first_quantization_verdict(s).status, Preparability::Preparable);
    // A bosonic third particle does not change the norm.
    const ThreeBodyScenario boson(s.composite, s.free_fermion, s.free_spin, Statistics::Boson);
    EXPECT_NEAR(scenario_verdict(boson).evidence, second.evidence, 1e-12);
  }
}

TEST(ThreeBody, ScenarioValidation) {
  const auto f = normalize(ComplexMatrix::Ones(2, 2));
  ComplexVector g(2);
  g << 1.0, 0.0;
  EXPECT_THROW(ThreeBodyScenario(f, g, SpinLabel{1}), Error);
  EXPECT_THROW(ThreeBodyScenario(f, ComplexVector::Ones(2), SpinLabel{}), Error);
  EXPECT_THROW(ThreeBodyScenario(f, ComplexVector::Ones(3) / std::sqrt(3.0), SpinLabel{}), Error);
}

TEST(Helium, VerdictsBySymmetryAndSpin) {
  Rng rng(31);
  const SpinLabel up{0};
  const SpinLabel down{1};
  for (int trial = 0; trial < 3; ++trial) {
    const auto sym = random_exchange_tensor(rng, 3, 2, true, up, up);
    EXPECT_EQ(helium_verdict(sym).status, Preparability::ForbiddenByExclusion);
    EXPECT_NEAR(helium_verdict(sym).evidence, 0.0, 1e-12);
    const auto mixed = sym.with_spins(up, down, up);
    EXPECT_EQ(helium_verdict(mixed).status, Preparability::Preparable);
    EXPECT_NEAR(helium_verdict(mixed).evidence, 1.0, 1e-12);
    const auto anti = random_exchange_tensor(rng, 3, 2, false, up, up);
    EXPECT_NEAR(helium_verdict(anti).evidence, 2.0, 1e-12);

    for (const auto& f3 : {sym, mixed, anti}) {
      EXPECT_NEAR(helium_first_quantization_norm(f3), 2.0 * symmetric_three_state(f3).squared_norm(), 1e-12);
    }
  }
}
