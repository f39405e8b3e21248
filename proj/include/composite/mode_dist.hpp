#pragma once

// Two-particle mode distributions: discrete coefficient matrices f[n][m],
// the Gaussian family f(p,q) ~ exp(-alpha p^2 - beta q^2 - 2 gamma p q),
// and three-particle coefficient tensors.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "composite/types.hpp"

namespace composite {

inline double squared_norm(const ComplexMatrix& m) { return m.squaredNorm(); }

class DiscreteModeDistribution {
 public:
  // Throws ShapeMismatch for an empty matrix and InvalidArgument when the
  // coefficients are not unit-normalized.
  DiscreteModeDistribution(ComplexMatrix f, SpinLabel spin_a = {}, SpinLabel spin_b = {})
      : f_(std::move(f)), spin_a_(spin_a), spin_b_(spin_b) {
    require(f_.rows() >= 1 && f_.cols() >= 1, ErrorCode::ShapeMismatch,
            "mode distribution needs at least one a-mode and one b-mode");
    require(f_.allFinite(), ErrorCode::InvalidArgument, "mode distribution has non-finite entries");
    const double norm = f_.squaredNorm();
    require(std::abs(norm - 1.0) <= tol::structural, ErrorCode::InvalidArgument,
            "mode distribution is not normalized (sum |f|^2 = " + std::to_string(norm) + ")");
  }

  const ComplexMatrix& coefficients() const { return f_; }
  Complex operator()(Eigen::Index n, Eigen::Index m) const { return f_(n, m); }
  Eigen::Index na() const { return f_.rows(); }
  Eigen::Index nb() const { return f_.cols(); }
  SpinLabel spin_a() const { return spin_a_; }
  SpinLabel spin_b() const { return spin_b_; }

  DiscreteModeDistribution with_spins(SpinLabel a, SpinLabel b) const { return {f_, a, b}; }

 private:
  ComplexMatrix f_;
  SpinLabel spin_a_;
  SpinLabel spin_b_;
};

inline DiscreteModeDistribution normalize(const ComplexMatrix& f, SpinLabel spin_a = {},
                                          SpinLabel spin_b = {}) {
  const double norm = std::sqrt(f.squaredNorm());
  require(norm > 0.0, ErrorCode::AllZero, "cannot normalize an all-zero distribution");
  require(std::isfinite(norm), ErrorCode::InvalidArgument, "distribution has non-finite entries");
  return {f / norm, spin_a, spin_b};
}

inline DiscreteModeDistribution normalize(const DiscreteModeDistribution& f) {
  return normalize(f.coefficients(), f.spin_a(), f.spin_b());
}

// theta = <f|g> delta_{rR} delta_{sS}.
inline Complex inner_product(const DiscreteModeDistribution& f, const DiscreteModeDistribution& g) {
  require(f.na() == g.na() && f.nb() == g.nb(), ErrorCode::ShapeMismatch,
          "inner product of distributions with different shapes");
  const Complex overlap = f.coefficients().cwiseProduct(g.coefficients().conjugate()).sum();
  return std::conj(overlap) * kronecker(f.spin_a(), g.spin_a()) * kronecker(f.spin_b(), g.spin_b());
}

// Singular values of f in descending order. Values below 1e-14 of the largest
// are roundoff and dropped.
inline std::vector<double> schmidt_coefficients(const DiscreteModeDistribution& f) {
  Eigen::JacobiSVD<ComplexMatrix> svd(f.coefficients());
  const auto& values = svd.singularValues();
  require(values.allFinite(), ErrorCode::NumericalError, "singular value decomposition failed");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(values.size()));
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    if (k == 0 || values[k] > 1e-14 * values[0]) out.push_back(values[k]);
  }
  return out;
}

inline std::size_t schmidt_rank(const DiscreteModeDistribution& f, double threshold = 1e-10) {
  const auto coefficients = schmidt_coefficients(f);
  return static_cast<std::size_t>(
      std::count_if(coefficients.begin(), coefficients.end(), [&](double c) { return c > threshold; }));
}

// ---------------------------------------------------------------------------
// Gaussian family

class GaussianModeDistribution {
 public:
  GaussianModeDistribution(double alpha, double beta, double gamma, SpinLabel spin_a = {},
                           SpinLabel spin_b = {})
      : alpha_(alpha), beta_(beta), gamma_(gamma), spin_a_(spin_a), spin_b_(spin_b) {
    require(std::isfinite(alpha) && std::isfinite(beta) && std::isfinite(gamma),
            ErrorCode::InvalidArgument, "Gaussian parameters must be finite");
    require(alpha > 0.0 && beta > 0.0, ErrorCode::InvalidArgument, "alpha and beta must be positive");
    // Small relative slack so that gamma = sqrt(alpha beta) survives rounding.
    require(gamma * gamma <= alpha * beta * (1.0 + 1e-14), ErrorCode::InvalidArgument,
            "Gaussian condition alpha*beta >= gamma^2 violated");
  }

  // gamma = sqrt(ratio * alpha * beta), ratio = gamma^2 / (alpha beta) in [0, 1].
  static GaussianModeDistribution from_ratio(double alpha, double beta, double ratio,
                                             SpinLabel spin_a = {}, SpinLabel spin_b = {}) {
    require(ratio >= 0.0 && ratio <= 1.0, ErrorCode::InvalidArgument, "entanglement ratio outside [0, 1]");
    return {alpha, beta, std::sqrt(ratio * alpha * beta), spin_a, spin_b};
  }

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double gamma() const { return gamma_; }
  SpinLabel spin_a() const { return spin_a_; }
  SpinLabel spin_b() const { return spin_b_; }

  // alpha beta - gamma^2, clamped at zero.
  double determinant() const { return std::max(0.0, alpha_ * beta_ - gamma_ * gamma_); }
  bool strictly_valid() const { return alpha_ * beta_ > gamma_ * gamma_; }

  double prefactor() const { return std::sqrt(2.0 / std::numbers::pi) * std::pow(determinant(), 0.25); }

  double amplitude(double p, double q) const {
    return prefactor() * std::exp(-alpha_ * p * p - beta_ * q * q - 2.0 * gamma_ * p * q);
  }

  // |f|^2 is a bivariate normal density with inverse covariance 4 [[alpha, gamma], [gamma, beta]].
  double sigma_p() const { return std::sqrt(beta_ / (4.0 * determinant())); }
  double sigma_q() const { return std::sqrt(alpha_ / (4.0 * determinant())); }

 private:
  double alpha_;
  double beta_;
  double gamma_;
  SpinLabel spin_a_;
  SpinLabel spin_b_;
};

inline double gaussian_entanglement(const GaussianModeDistribution& g) {
  return std::clamp(g.gamma() * g.gamma() / (g.alpha() * g.beta()), 0.0, 1.0);
}

// Uniform midpoint grid on [-half_width, half_width] in each momentum direction.
struct MomentumGrid {
  Eigen::Index points_p = 64;
  Eigen::Index points_q = 64;
  double half_width_p = 0.0;
  double half_width_q = 0.0;

  static constexpr double default_sigmas = 6.0;

  static MomentumGrid covering(const GaussianModeDistribution& g, Eigen::Index points_p,
                               Eigen::Index points_q, double sigmas = default_sigmas) {
    require(g.strictly_valid(), ErrorCode::InvalidArgument,
            "a momentum grid needs alpha*beta > gamma^2 (finite covariance)");
    return {points_p, points_q, sigmas * g.sigma_p(), sigmas * g.sigma_q()};
  }

  double spacing_p() const { return 2.0 * half_width_p / static_cast<double>(points_p); }
  double spacing_q() const { return 2.0 * half_width_q / static_cast<double>(points_q); }
  double p(Eigen::Index n) const { return -half_width_p + (static_cast<double>(n) + 0.5) * spacing_p(); }
  double q(Eigen::Index m) const { return -half_width_q + (static_cast<double>(m) + 0.5) * spacing_q(); }
};

struct DiscretizedGaussian {
  DiscreteModeDistribution distribution;
  // |sum |f_nm|^2 - 1| before renormalization.
  double defect;
};

inline DiscretizedGaussian discretize(const GaussianModeDistribution& g, const MomentumGrid& grid) {
  require(g.strictly_valid(), ErrorCode::InvalidArgument, "discretize needs alpha*beta > gamma^2");
  require(grid.points_p >= 1 && grid.points_q >= 1, ErrorCode::InvalidArgument, "empty momentum grid");
  constexpr double slack = 1.0 - 1e-12;
  if (grid.half_width_p < MomentumGrid::default_sigmas * g.sigma_p() * slack ||
      grid.half_width_q < MomentumGrid::default_sigmas * g.sigma_q() * slack) {
    fail(ErrorCode::GridTooCoarse, "momentum grid must cover 6 standard deviations in each direction");
  }

  const double weight = std::sqrt(grid.spacing_p() * grid.spacing_q());
  ComplexMatrix f(grid.points_p, grid.points_q);
  for (Eigen::Index n = 0; n < grid.points_p; ++n) {
    for (Eigen::Index m = 0; m < grid.points_q; ++m) f(n, m) = g.amplitude(grid.p(n), grid.q(m)) * weight;
  }
  const double defect = std::abs(f.squaredNorm() - 1.0);
  if (defect > tol::discretization) {
    fail(ErrorCode::GridTooCoarse, "discretization defect " + std::to_string(defect) + " exceeds 1e-6");
  }
  return {normalize(f, g.spin_a(), g.spin_b()), defect};
}

inline DiscretizedGaussian discretize(const GaussianModeDistribution& g, Eigen::Index points = 64) {
  return discretize(g, MomentumGrid::covering(g, points, points));
}

// ---------------------------------------------------------------------------
// Three-particle tensors f3[n][m][k]: n, m index the two identical fermions
// (spins r and s), k the distinguishable particle (spin S).

class ThreeParticleDistribution {
 public:
  ThreeParticleDistribution(Eigen::Index fermion_modes, Eigen::Index other_modes, std::vector<Complex> values,
                            SpinLabel spin_r = {}, SpinLabel spin_s = {}, SpinLabel spin_other = {})
      : nf_(fermion_modes), no_(other_modes), values_(std::move(values)), r_(spin_r), s_(spin_s),
        other_(spin_other) {
    require(nf_ >= 1 && no_ >= 1, ErrorCode::ShapeMismatch, "three-particle tensor needs at least one mode");
    require(values_.size() == static_cast<std::size_t>(nf_ * nf_ * no_), ErrorCode::ShapeMismatch,
            "three-particle tensor has the wrong number of entries");
    double norm = 0.0;
    for (const auto& v : values_) norm += std::norm(v);
    require(std::abs(norm - 1.0) <= tol::structural, ErrorCode::InvalidArgument,
            "three-particle tensor is not normalized");
  }

  // Scales arbitrary coefficients to unit norm.
  static ThreeParticleDistribution normalized(Eigen::Index fermion_modes, Eigen::Index other_modes,
                                              std::vector<Complex> values, SpinLabel spin_r = {},
                                              SpinLabel spin_s = {}, SpinLabel spin_other = {}) {
    double norm = 0.0;
    for (const auto& v : values) norm += std::norm(v);
    require(norm > 0.0, ErrorCode::AllZero, "cannot normalize an all-zero tensor");
    const double scale = 1.0 / std::sqrt(norm);
    for (auto& v : values) v *= scale;
    return {fermion_modes, other_modes, std::move(values), spin_r, spin_s, spin_other};
  }

  Eigen::Index fermion_modes() const { return nf_; }
  Eigen::Index other_modes() const { return no_; }
  Complex operator()(Eigen::Index n, Eigen::Index m, Eigen::Index k) const {
    return values_[static_cast<std::size_t>((n * nf_ + m) * no_ + k)];
  }
  const std::vector<Complex>& values() const { return values_; }
  SpinLabel spin_r() const { return r_; }
  SpinLabel spin_s() const { return s_; }
  SpinLabel spin_other() const { return other_; }

  ThreeParticleDistribution with_spins(SpinLabel r, SpinLabel s, SpinLabel other) const {
    return {nf_, no_, values_, r, s, other};
  }

 private:
  Eigen::Index nf_;
  Eigen::Index no_;
  std::vector<Complex> values_;
  SpinLabel r_;
  SpinLabel s_;
  SpinLabel other_;
};

}  // namespace composite
