#include <gtest/gtest.h>

#include "composite/algebra.hpp"
#include "composite/oracle_states.hpp"
#include "composite/random.hpp"

using namespace composite;

namespace {

// c_f+ assembled from products of single-mode operators.
OperatorMatrix composite_by_products(const std::shared_ptr<const FockSpace>& space, const DiscreteModeDistribution& f) {
  auto out = OperatorMatrix::zero(space);
  for (int n = 0; n < f.na(); ++n)
    for (int m = 0; m < f.nb(); ++m)
      out = out + f(n, m) * (creation_op(space, Family::A, n, f.spin_a()) * creation_op(space, Family::B, m, f.spin_b()));
  return out;
}

// Deviation operators assembled from products of single-mode operators.
OperatorMatrix theta_a_by_products(const std::shared_ptr<const FockSpace>& space, const DiscreteModeDistribution& f,
                                   const DiscreteModeDistribution& g) {
  auto out = OperatorMatrix::zero(space);
  if (f.spin_b() != g.spin_b()) return out;
  for (int n = 0; n < f.na(); ++n)
    for (int big = 0; big < f.na(); ++big) {
      Complex k{};
      for (int m = 0; m < f.nb(); ++m) k += std::conj(f(n, m)) * g(big, m);
      out = out + k * (creation_op(space, Family::A, big, g.spin_a()) * annihilation_op(space, Family::A, n, f.spin_a()));
    }
  return out;
}

OperatorMatrix theta_b_by_products(const std::shared_ptr<const FockSpace>& space, const DiscreteModeDistribution& f,
                                   const DiscreteModeDistribution& g) {
  auto out = OperatorMatrix::zero(space);
  if (f.spin_a() != g.spin_a()) return out;
  for (int m = 0; m < f.nb(); ++m)
    for (int big = 0; big < f.nb(); ++big) {
      Complex k{};
      for (int n = 0; n < f.na(); ++n) k += std::conj(f(n, m)) * g(n, big);
      out = out + k * (creation_op(space, Family::B, big, g.spin_b()) * annihilation_op(space, Family::B, m, f.spin_b()));
    }
  return out;
}

ComplexMatrix diagonal(std::initializer_list<double> values) {
  ComplexMatrix f = ComplexMatrix::Zero(static_cast<Eigen::Index>(values.size()), static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double v : values) f(i, i) = v, ++i;
  return f;
}

}  // namespace

class CompositeRelations : public ::testing::TestWithParam<CompositeKind> {};

TEST_P(CompositeRelations, MatchDeviationOperatorsForAllSpinCombinations) {
  const auto kind = GetParam();
  Rng rng(2024);
  const SpinLabel up{0};
  const SpinLabel down{1};
  for (int trial = 0; trial < 2; ++trial) {
    const auto f = random_distribution(rng, 2, 2, up, up);
    for (const auto& [same_a, same_b] : {std::pair{true, true}, {false, true}, {true, false}, {false, false}}) {
      const auto g = random_distribution(rng, 2, 2, same_a ? up : down, same_b ? up : down);
      auto config = FockSpaceConfig::for_kind(kind, 2, 2, 2);
      config.with_spins_of(f, g);
      const auto space = build_space(config);
      const auto safe = space->truncation_safe_states(1);
      const bool anti = kind == CompositeKind::FB;

      const auto cf_dag = composite_by_products(space, f);
      const auto cg_dag = composite_by_products(space, g);
      EXPECT_EQ(max_abs_difference(composite_creation(space, f), cf_dag), 0.0);
      const auto cf = cf_dag.adjoint();
      const auto cg = cg_dag.adjoint();

      EXPECT_LT(commutator_on(cf, cg, anti, safe).max_abs(), 1e-12);
      EXPECT_LT(commutator_on(cf_dag, cg_dag, anti, safe).max_abs(), 1e-12);

      const auto ta = theta_a_by_products(space, f, g);
      const auto tb = theta_b_by_products(space, f, g);
      EXPECT_LT(max_abs_difference(theta_op_a(f, g, space), ta), 1e-15);
      EXPECT_LT(max_abs_difference(theta_op_b(f, g, space), tb), 1e-15);

      // BB: theta + theta_a + theta_b; FF: theta - theta_a - theta_b; FB: theta - theta_a + theta_b.
      const double sa = kind == CompositeKind::BB ? 1.0 : -1.0;
      const double sb = kind == CompositeKind::FB ? 1.0 : sa;
      Complex overlap{};
      if (same_a && same_b) overlap = f.coefficients().cwiseProduct(g.coefficients().conjugate()).sum();
      overlap = std::conj(overlap);
      const auto expected = overlap * OperatorMatrix::identity(space) + Complex(sa) * ta + Complex(sb) * tb;
      EXPECT_LT(max_abs_difference(commutator_on(cf, cg_dag, anti, safe), expected.restrict_columns(safe)), 1e-12)
          << to_string(kind) << " same_a=" << same_a << " same_b=" << same_b;
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Kinds, CompositeRelations,
                         ::testing::Values(CompositeKind::BB, CompositeKind::FF, CompositeKind::FB),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST(DeviationSigns, PerKind) {
  EXPECT_EQ(deviation_signs(CompositeKind::BB).theta_a, 1);
  EXPECT_EQ(deviation_signs(CompositeKind::BB).theta_b, 1);
  EXPECT_EQ(deviation_signs(CompositeKind::FF).theta_a, -1);
  EXPECT_EQ(deviation_signs(CompositeKind::FF).theta_b, -1);
  EXPECT_EQ(deviation_signs(CompositeKind::FB).theta_a, -1);
  EXPECT_EQ(deviation_signs(CompositeKind::FB).theta_b, 1);
  EXPECT_FALSE(uses_anticommutator(CompositeKind::BB));
  EXPECT_FALSE(uses_anticommutator(CompositeKind::FF));
  EXPECT_TRUE(uses_anticommutator(CompositeKind::FB));
}

TEST(TwoComposites, OracleNormMatchesOverlapFormula) {
  Rng rng(8);
  for (const auto kind : {CompositeKind::BB, CompositeKind::FF}) {
    const auto space = build_space(FockSpaceConfig::for_kind(kind, 3, 2, 2));
    for (int trial = 0; trial < 4; ++trial) {
      const auto f = random_distribution(rng, 3, 2);
      const double sign = kind == CompositeKind::BB ? 1.0 : -1.0;
      const double norm_sq = two_composite_state(space, f).squared_norm();
      EXPECT_NEAR(norm_sq, 2.0 * (1.0 + sign * lambda(f)), 1e-12);
      EXPECT_NEAR(two_composite_norm(f, kind).value, 1.0 / norm_sq, 1e-12);
    }
  }
  EXPECT_THROW(two_composite_norm(normalize(ComplexMatrix::Ones(1, 1)), CompositeKind::FB), Error);
}

TEST(TwoComposites, SeparableFermionsDiverge) {
  const auto f = normalize(ComplexMatrix::Ones(2, 2));
  EXPECT_EQ(two_composite_norm(f, CompositeKind::FF).kind, NormStatus::Kind::Divergent);
  const auto report = deviation_expectations(f, CompositeKind::FF);
  EXPECT_EQ(report.norm_status.kind, NormStatus::Kind::Indeterminate);
  EXPECT_FALSE(report.exp_theta_a.has_value());
  EXPECT_NEAR(two_composite_norm(f, CompositeKind::BB).value, 0.25, 1e-15);
}

TEST(DeviationExpectations, HandDerivedValues) {
  // Separable BB: every constituent pair sits in one mode, <theta_a> = 2.
  const auto separable = normalize(ComplexMatrix::Ones(2, 3));
  EXPECT_NEAR(*deviation_expectations(separable, CompositeKind::BB).exp_theta_a, 2.0, 1e-14);
  // Maximally entangled 2x2: Lambda = 1/2, tr rho^3 = 1/4.
  // BB: 2 (1/2 + 1/4) / (3/2) = 1; FF: 2 (1/2 - 1/4) / (1/2) = 1.
  const auto bell = normalize(diagonal({1.0, 1.0}));
  EXPECT_NEAR(*deviation_expectations(bell, CompositeKind::BB).exp_theta_a, 1.0, 1e-14);
  EXPECT_NEAR(*deviation_expectations(bell, CompositeKind::FF).exp_theta_a, 1.0, 1e-14);
  EXPECT_NEAR(*deviation_expectations(bell, CompositeKind::FF).exp_theta_b, 1.0, 1e-14);
}

TEST(DeviationExpectations, ContractionsMatchOracle) {
  Rng rng(77);
  for (const auto kind : {CompositeKind::BB, CompositeKind::FF}) {
    const auto space = build_space(FockSpaceConfig::for_kind(kind, 3, 3, 2));
    for (int trial = 0; trial < 3; ++trial) {
      const auto f = random_distribution(rng, 3, 3);
      const auto state = two_composite_state(space, f);
      const double oracle_a = expectation(state, theta_a_by_products(space, f, f)).real();
      const double oracle_b = expectation(state, theta_b_by_products(space, f, f)).real();
      const auto report = deviation_expectations(f, kind);
      EXPECT_NEAR(*report.exp_theta_a, oracle_a, 1e-10);
      EXPECT_NEAR(*report.exp_theta_b, oracle_b, 1e-10);
      const Complex chained = deviation_contraction(f.coefficients(), kind);
      const Complex naive = deviation_contraction_naive(f.coefficients(), kind);
      EXPECT_NEAR(std::abs(chained - naive), 0.0, 1e-12);
      EXPECT_NEAR(report.norm_status.value * naive.real(), oracle_a, 1e-10);
    }
  }
  EXPECT_THROW(deviation_contraction_naive(ComplexMatrix::Ones(4, 2), CompositeKind::BB), Error);
}

TEST(ThreeParticle, NormMatchesOracleAndConvention) {
  Rng rng(19);
  for (int trial = 0; trial < 5; ++trial) {
    const auto f = random_distribution(rng, 3, 2);
    const auto g = random_unit_vector(rng, 3);
    const auto report = three_particle_norm(f, g);
    // Oracle: 1 - <g|rho|g> with rho = f f+.
    const double expected = 1.0 - (g.adjoint() * f.coefficients() * f.coefficients().adjoint() * g)(0, 0).real();
    EXPECT_NEAR(report.inverse_norm_sq, expected, 1e-12);
    ASSERT_TRUE(report.oracle_norm_sq.has_value());
    EXPECT_NEAR(*report.oracle_norm_sq, expected, 1e-12);
    EXPECT_NEAR(report.written_expression, -report.inverse_norm_sq, 1e-15);
    EXPECT_FALSE(report.convention_note.empty());
    EXPECT_EQ(report.status, ThreeNormStatus::Finite);
  }
  ComplexVector g(2);
  g << 0.6, 0.8;
  ComplexVector v(2);
  v << 1.0, Complex(0, 1);
  const auto separable = normalize(ComplexMatrix(g * v.transpose()));
  EXPECT_EQ(three_particle_norm(separable, g).status, ThreeNormStatus::Divergent);
}

TEST(ThreeParticle, ExchangeTensorNorms) {
  Rng rng(4);
  const SpinLabel up{0};
  const SpinLabel down{1};
  for (int trial = 0; trial < 3; ++trial) {
    const auto sym = random_exchange_tensor(rng, 3, 2, true, up, up);
    const auto sym_report = symmetric_three_norm(sym);
    EXPECT_NEAR(sym_report.inverse_norm_sq, 0.0, 1e-12);
    EXPECT_EQ(sym_report.status, ThreeNormStatus::ExcludedByPauli);
    EXPECT_NEAR(symmetric_three_norm(sym.with_spins(up, down, up)).inverse_norm_sq, 1.0, 1e-12);
    EXPECT_NEAR(symmetric_three_norm(random_exchange_tensor(rng, 3, 2, false, up, up)).inverse_norm_sq, 2.0, 1e-12);
  }
}

TEST(ThreeParticle, ExchangeTensorNormsMatchOracle) {
  Rng rng(40);
  const SpinLabel up{0};
  const SpinLabel down{1};
  for (const bool symmetric : {true, false}) {
    for (const auto spin_s : {up, down}) {
      const auto f3 = random_exchange_tensor(rng, 2, 2, symmetric, up, spin_s);
      EXPECT_NEAR(symmetric_three_state(f3).squared_norm(), symmetric_three_norm(f3).inverse_norm_sq, 1e-12);
    }
  }
}
