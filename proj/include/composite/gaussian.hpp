#pragma once

// Closed forms for the Gaussian mode distribution
//   f(p,q) = sqrt(2/pi) (alpha beta - gamma^2)^(1/4) exp(-alpha p^2 - beta q^2 - 2 gamma p q)
// and an independent evaluator that assembles the same quantities as
// multivariate Gaussian integrals.

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include <Eigen/Cholesky>

#include "composite/algebra.hpp"
#include "composite/mode_dist.hpp"

namespace composite {

// Integrand prefactor * exp(-x^T A x + b^T x) over R^d.
struct QuadraticForm {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd linear;
  double prefactor = 1.0;

  explicit QuadraticForm(Eigen::Index dimension)
      : matrix(Eigen::MatrixXd::Zero(dimension, dimension)), linear(Eigen::VectorXd::Zero(dimension)) {}

  QuadraticForm(Eigen::MatrixXd a, Eigen::VectorXd b, double scale)
      : matrix(std::move(a)), linear(std::move(b)), prefactor(scale) {
    require(matrix.rows() == matrix.cols() && linear.size() == matrix.rows(), ErrorCode::ShapeMismatch,
            "quadratic form dimensions disagree");
  }

  Eigen::Index dimension() const { return matrix.rows(); }
};

// Cholesky factorization; failure means the integral diverges.
inline Eigen::LLT<Eigen::MatrixXd> positive_definite_factor(const QuadraticForm& q) {
  require((q.matrix - q.matrix.transpose()).cwiseAbs().maxCoeff() <=
              1e-14 * std::max(1.0, q.matrix.cwiseAbs().maxCoeff()),
          ErrorCode::InvalidArgument, "quadratic form matrix is not symmetric");
  Eigen::LLT<Eigen::MatrixXd> llt(q.matrix);
  if (llt.info() != Eigen::Success) fail(ErrorCode::NotPositiveDefinite, "quadratic form is not positive-definite");
  const Eigen::VectorXd diag = llt.matrixLLT().diagonal();
  if (!(diag.array() > 0.0).all() || !diag.allFinite()) {
    fail(ErrorCode::NotPositiveDefinite, "quadratic form is not positive-definite");
  }
  return llt;
}

// prefactor * pi^(d/2) / sqrt(det A) * exp(b^T A^-1 b / 4).
inline double gaussian_integral(const QuadraticForm& q) {
  const auto llt = positive_definite_factor(q);
  const Eigen::VectorXd diag = llt.matrixLLT().diagonal();
  const double sqrt_det = diag.prod();
  const double d = static_cast<double>(q.dimension());
  const double exponent = q.linear.size() > 0 ? 0.25 * q.linear.dot(llt.solve(q.linear)) : 0.0;
  return q.prefactor * std::pow(std::numbers::pi, 0.5 * d) / sqrt_det * std::exp(exponent);
}

// Accumulates products of f(x_i, x_j) factors of one Gaussian distribution.
class GaussianProduct {
 public:
  GaussianProduct(const GaussianModeDistribution& g, Eigen::Index dimension) : g_(g), form_(dimension) {}

  // Multiplies by f(x[p], x[q]); f is real so f* contributes the same factor.
  GaussianProduct& times(Eigen::Index p, Eigen::Index q) {
    form_.matrix(p, p) += g_.alpha();
    form_.matrix(q, q) += g_.beta();
    form_.matrix(p, q) += g_.gamma();
    form_.matrix(q, p) += g_.gamma();
    form_.prefactor *= g_.prefactor();
    return *this;
  }

  const QuadraticForm& form() const { return form_; }
  double integrate() const { return gaussian_integral(form_); }

 private:
  GaussianModeDistribution g_;
  QuadraticForm form_;
};

inline double epsilon(const GaussianModeDistribution& g) { return std::sqrt(1.0 - gaussian_entanglement(g)); }

inline double mu(const GaussianModeDistribution& g) {
  const double c = g.gamma() * g.gamma();
  const double d = 2.0 * g.alpha() * g.beta() - c;
  return d - c * c / (4.0 * d);
}

inline double eta(const GaussianModeDistribution& g) {
  const double c = g.gamma() * g.gamma();
  const double d = 2.0 * g.alpha() * g.beta() - c;
  const double m = mu(g);
  const double inner = c + c * c / (2.0 * d);
  return m - inner * inner / (4.0 * m);
}

struct GaussianClosedForm {
  CompositeKind kind;
  double epsilon;
  double mu;
  double eta;
  NormStatus norm_status;
  std::optional<double> deviation;  // <2_f|theta_a|2_f> = <2_f|theta_b|2_f>; empty when Indeterminate
};

inline GaussianClosedForm closed_form(const GaussianModeDistribution& g, CompositeKind kind) {
  const double sign = composite_sign(kind);
  const double eps = epsilon(g);
  GaussianClosedForm out{kind, eps, mu(g), eta(g), two_composite_norm_from_overlap(eps, kind), std::nullopt};
  if (!out.norm_status.is_finite()) {
    out.norm_status = kind == CompositeKind::FF ? NormStatus::divergent() : out.norm_status;
    return out;
  }
  if (eps == 0.0) {
    // eta vanishes with epsilon; the second term goes as epsilon^2.
    out.deviation = 0.0;
    return out;
  }
  const double ab = g.alpha() * g.beta();
  const double c = g.gamma() * g.gamma();
  const double first = 2.0 * eps / (1.0 + sign * eps);
  const double second = 8.0 * eps * eps * eps * std::pow(ab, 1.5) /
                        (std::sqrt(2.0 * out.mu * out.eta) * std::sqrt(2.0 * ab - c) * (1.0 + sign * eps));
  out.deviation = first + sign * second;
  return out;
}

// Lambda as a four-dimensional Gaussian integral over (p, P, q, Q):
// f*(P,Q) f(P,q) f*(p,q) f(p,Q).
inline double numeric_lambda(const GaussianModeDistribution& g) {
  require(g.strictly_valid(), ErrorCode::NotPositiveDefinite,
          "numeric evaluation needs alpha*beta > gamma^2 strictly");
  enum { p, P, q, Q };
  return GaussianProduct(g, 4).times(P, Q).times(P, q).times(p, q).times(p, Q).integrate();
}

// The four six-dimensional forms F * G_k over (p, P, p*, q, Q, q*), without the factor 2.
inline std::array<GaussianProduct, 4> deviation_forms(const GaussianModeDistribution& g) {
  enum { p, P, ps, q, Q, qs };
  auto base = [&] { return GaussianProduct(g, 6).times(p, q).times(P, Q).times(ps, qs); };
  return {base().times(ps, Q).times(P, qs).times(p, q), base().times(ps, q).times(p, qs).times(P, Q),
          base().times(ps, q).times(p, Q).times(P, qs), base().times(ps, Q).times(P, q).times(p, qs)};
}

inline std::optional<double> numeric_deviation(const GaussianModeDistribution& g, CompositeKind kind) {
  const double sign = composite_sign(kind);
  require(g.strictly_valid(), ErrorCode::NotPositiveDefinite,
          "numeric evaluation needs alpha*beta > gamma^2 strictly");
  const auto norm = two_composite_norm_from_overlap(epsilon(g), kind);
  if (!norm.is_finite()) return std::nullopt;
  const auto forms = deviation_forms(g);
  const double total = 2.0 * forms[0].integrate() + 2.0 * forms[1].integrate() +
                       sign * (2.0 * forms[2].integrate() + 2.0 * forms[3].integrate());
  return norm.value * total;
}

}  // namespace composite
