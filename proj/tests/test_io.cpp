#include <gtest/gtest.h>

#include "composite/io.hpp"
#include "composite/random.hpp"

using namespace composite;

namespace {

std::string parse_error(const std::string& text) {
  try {
    io::parse(text);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
    return e.what();
  }
  ADD_FAILURE() << "expected a parse error";
  return {};
}

template <class Fn>
std::string field_error(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
    return e.what();
  }
  ADD_FAILURE() << "expected a field error";
  return {};
}

}  // namespace

TEST(Json, SyntaxErrorsReportLineAndColumn) {
  const auto message = parse_error("{\n  \"na\": 2,\n  \"nb\": ]\n}");
  EXPECT_NE(message.find("line 3"), std::string::npos) << message;
  EXPECT_NE(message.find("column 9"), std::string::npos) << message;
}

TEST(Json, DiscreteRoundTrip) {
  Rng rng(6);
  const auto f = random_distribution(rng, 2, 3, SpinLabel{1}, SpinLabel{0});
  const auto back = io::discrete_from_json(io::parse(io::to_json(f).dump()));
  EXPECT_LT((back.coefficients() - f.coefficients()).norm(), 1e-15);
  EXPECT_EQ(back.spin_a(), SpinLabel{1});
}

TEST(Json, DiscreteIsNormalizedOnLoad) {
  const auto f = io::discrete_from_json(io::parse(R"({"na": 1, "nb": 2, "re": [[3, 0]], "im": [[0, 4]]})"));
  EXPECT_NEAR(std::abs(f(0, 1) - Complex(0, 0.8)), 0.0, 1e-15);
}

TEST(Json, FieldErrorsNameThePath) {
  auto msg = field_error([] { io::discrete_from_json(io::parse(R"({"na": 2, "nb": 1, "re": [[1], [1, 2]]})")); });
  EXPECT_NE(msg.find("re[1]"), std::string::npos) << msg;
  msg = field_error([] { io::discrete_from_json(io::parse(R"({"na": 2, "re": [[1], [1]]})")); });
  EXPECT_NE(msg.find("missing field 'nb'"), std::string::npos) << msg;
  msg = field_error([] { io::scenario_from_json(io::parse(R"({"composite": {"na": 1, "nb": 1, "re": [["x"]]}})")); });
  EXPECT_NE(msg.find("composite.re[0][0]"), std::string::npos) << msg;
  msg = field_error([] {
    io::scenario_from_json(io::parse(R"({"composite": {"na": 1, "nb": 1, "re": [[1]]}, "free_fermion": {"re": [1]},
                                          "distinguishable": "Photon"})"));
  });
  EXPECT_NE(msg.find("distinguishable"), std::string::npos) << msg;
}

TEST(Json, ScenarioAndTensorRoundTrip) {
  Rng rng(9);
  const ThreeBodyScenario s(random_distribution(rng, 2, 2), random_unit_vector(rng, 2), SpinLabel{}, Statistics::Boson);
  const auto back = io::scenario_from_json(io::parse(io::to_json(s).dump()));
  EXPECT_LT((back.composite.coefficients() - s.composite.coefficients()).norm(), 1e-15);
  EXPECT_LT((back.free_fermion - s.free_fermion).norm(), 1e-15);
  EXPECT_EQ(back.distinguishable, Statistics::Boson);

  const auto f3 = random_exchange_tensor(rng, 2, 3, false, SpinLabel{0}, SpinLabel{1});
  const auto f3_back = io::three_particle_from_json(io::parse(io::to_json(f3).dump()));
  EXPECT_EQ(f3_back.values(), f3.values());
  EXPECT_EQ(f3_back.spin_s(), SpinLabel{1});
}

TEST(Json, GaussianRoundTrip) {
  const GaussianModeDistribution g(1.5, 0.5, -0.25);
  const auto back = io::gaussian_from_json(io::to_json(g));
  EXPECT_EQ(back.alpha(), 1.5);
  EXPECT_EQ(back.gamma(), -0.25);
  EXPECT_THROW(io::gaussian_from_json(io::parse(R"({"alpha": 1, "beta": 1, "gamma": 2})")), Error);
}

TEST(Json, ReportsUseNullForMissingValues) {
  const auto report = deviation_expectations(normalize(ComplexMatrix::Ones(2, 2)), CompositeKind::FF);
  const auto doc = io::to_json(report);
  EXPECT_TRUE(doc["exp_theta_a"].is_null());
  EXPECT_EQ(doc["norm"]["status"], "Indeterminate");
}
