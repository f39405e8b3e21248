#pragma once

// Discrete-mode formulas for composite particles c_f+ = sum f_nm a+_n b+_m:
// deviation operators, the four-fold overlap Lambda, two-composite
// normalization, deviation expectation values and three-particle norms.

#include <cmath>
#include <optional>
#include <string>

#include "composite/fock.hpp"
#include "composite/mode_dist.hpp"
#include "composite/oracle_states.hpp"

namespace composite {

// theta = <f|g> delta_{rR} delta_{sS}.
inline Complex theta(const DiscreteModeDistribution& f, const DiscreteModeDistribution& g) {
  return inner_product(f, g);
}

namespace detail {
inline void check_pair_shape(const DiscreteModeDistribution& f, const DiscreteModeDistribution& g,
                             const FockSpace& space) {
  require(f.na() == g.na() && f.nb() == g.nb(), ErrorCode::ShapeMismatch, "distributions differ in shape");
  require(f.na() == space.config().na && f.nb() == space.config().nb, ErrorCode::ShapeMismatch,
          "distributions do not match the Fock space");
}
}  // namespace detail

// theta_a = delta_{sS} sum_{n,N,m} f*_nm g_Nm a+_{N,R} a_{n,r}.
inline OperatorMatrix theta_op_a(const DiscreteModeDistribution& f, const DiscreteModeDistribution& g,
                                 const std::shared_ptr<const FockSpace>& space) {
  detail::check_pair_shape(f, g, *space);
  const double spin = kronecker(f.spin_b(), g.spin_b());
  // kernel(N, n) = sum_m g_Nm f*_nm
  const ComplexMatrix kernel = g.coefficients() * f.coefficients().adjoint();
  std::vector<OperatorTerm> terms;
  for (int big = 0; big < f.na(); ++big) {
    for (int n = 0; n < f.na(); ++n) {
      terms.push_back({spin * kernel(big, n),
                       {create(space->mode_id(Family::A, big, g.spin_a())), annihilate(space->mode_id(Family::A, n, f.spin_a()))}});
    }
  }
  return OperatorMatrix::from_terms(space, terms);
}

// theta_b = delta_{rR} sum_{n,m,M} f*_nm g_nM b+_{M,S} b_{m,s}.
inline OperatorMatrix theta_op_b(const DiscreteModeDistribution& f, const DiscreteModeDistribution& g,
                                 const std::shared_ptr<const FockSpace>& space) {
  detail::check_pair_shape(f, g, *space);
  const double spin = kronecker(f.spin_a(), g.spin_a());
  // kernel(M, m) = sum_n g_nM f*_nm
  const ComplexMatrix kernel = g.coefficients().transpose() * f.coefficients().conjugate();
  std::vector<OperatorTerm> terms;
  for (int big = 0; big < f.nb(); ++big) {
    for (int m = 0; m < f.nb(); ++m) {
      terms.push_back({spin * kernel(big, m),
                       {create(space->mode_id(Family::B, big, g.spin_b())), annihilate(space->mode_id(Family::B, m, f.spin_b()))}});
    }
  }
  return OperatorMatrix::from_terms(space, terms);
}

struct DeviationSigns {
  double theta_a;
  double theta_b;
};

// [c_f, c_g+]_BB = theta + theta_a + theta_b, [c_f, c_g+]_FF = theta - theta_a - theta_b,
// {c_f, c_g+}_FB = theta - theta_a + theta_b.
constexpr DeviationSigns deviation_signs(CompositeKind kind) {
  switch (kind) {
    case CompositeKind::BB: return {+1.0, +1.0};
    case CompositeKind::FF: return {-1.0, -1.0};
    case CompositeKind::FB: return {-1.0, +1.0};
  }
  return {0.0, 0.0};
}

// FB composites anticommute; BB and FF composites commute.
constexpr bool uses_anticommutator(CompositeKind kind) { return kind == CompositeKind::FB; }

// Right-hand side theta 1 +/- theta_a +/- theta_b of the mixed (anti)commutator.
inline OperatorMatrix deviation_sum(const DiscreteModeDistribution& f, const DiscreteModeDistribution& g,
                                    CompositeKind kind, const std::shared_ptr<const FockSpace>& space) {
  const auto signs = deviation_signs(kind);
  return theta(f, g) * OperatorMatrix::identity(space) + Complex(signs.theta_a) * theta_op_a(f, g, space) +
         Complex(signs.theta_b) * theta_op_b(f, g, space);
}

// rho = f f+, the reduced one-particle matrix of family a.
inline ComplexMatrix reduced_a(const DiscreteModeDistribution& f) { return f.coefficients() * f.coefficients().adjoint(); }
inline ComplexMatrix reduced_b(const DiscreteModeDistribution& f) { return f.coefficients().adjoint() * f.coefficients(); }

// Lambda = sum f*_NM f_Nm f*_nm f_nM = tr (f f+)^2.
inline double lambda(const DiscreteModeDistribution& f) {
  const ComplexMatrix rho = reduced_a(f);
  return rho.cwiseAbs2().sum();
}

// ---------------------------------------------------------------------------
// Two identical composites |2_f> = N (c_f+)^2 |0>

struct NormStatus {
  enum class Kind { Finite, Divergent, Indeterminate };
  Kind kind = Kind::Finite;
  double value = 0.0;  // meaningful for Finite only

  static NormStatus finite(double v) { return {Kind::Finite, v}; }
  static NormStatus divergent() { return {Kind::Divergent, 0.0}; }
  static NormStatus indeterminate() { return {Kind::Indeterminate, 0.0}; }
  bool is_finite() const { return kind == Kind::Finite; }
};

inline std::string_view to_string(NormStatus::Kind k) {
  switch (k) {
    case NormStatus::Kind::Finite: return "Finite";
    case NormStatus::Kind::Divergent: return "Divergent";
    case NormStatus::Kind::Indeterminate: return "Indeterminate";
  }
  return "?";
}

inline double composite_sign(CompositeKind kind) {
  require(kind != CompositeKind::FB, ErrorCode::UnsupportedKind,
          "two identical composites are defined for BB and FF only");
  return kind == CompositeKind::BB ? 1.0 : -1.0;
}

// Shared by the discrete and Gaussian paths: N^2 = 1 / (2 (1 +/- overlap)).
inline NormStatus two_composite_norm_from_overlap(double overlap, CompositeKind kind) {
  const double sign = composite_sign(kind);
  if (kind == CompositeKind::FF && std::abs(1.0 - overlap) <= tol::divergence) return NormStatus::divergent();
  return NormStatus::finite(1.0 / (2.0 * (1.0 + sign * overlap)));
}

inline NormStatus two_composite_norm(const DiscreteModeDistribution& f, CompositeKind kind) {
  return two_composite_norm_from_overlap(lambda(f), kind);
}

// Six-index contraction sum F G with
//   F = f*(n,m) f*(N,M) f*(n',m')
//   G = 2 f(n',M) f(N,m') f(n,m) + 2 f(n',m) f(n,m') f(N,M)
//       +/- 2 f(n',m) f(n,M) f(N,m') +/- 2 f(n',M) f(N,m) f(n,m')
// Each term is a chain of matrix products: the first and third through f f+,
// the second and fourth through f+ f.
inline Complex deviation_contraction(const ComplexMatrix& f, CompositeKind kind) {
  const double sign = composite_sign(kind);
  const double weight = f.squaredNorm();
  const ComplexMatrix rho_a = f * f.adjoint();
  const ComplexMatrix rho_b = f.adjoint() * f;
  const Complex t1 = 2.0 * weight * (rho_a * rho_a).trace();
  const Complex t2 = 2.0 * weight * (rho_b * rho_b).trace();
  const Complex t3 = 2.0 * (rho_a * rho_a * rho_a).trace();
  const Complex t4 = 2.0 * (rho_b * rho_b * rho_b).trace();
  return t1 + t2 + sign * (t3 + t4);
}

// Reference O(N^6) loop over the same kernel; limited to three modes per family.
inline Complex deviation_contraction_naive(const ComplexMatrix& f, CompositeKind kind) {
  const double sign = composite_sign(kind);
  require(f.rows() <= 3 && f.cols() <= 3, ErrorCode::InvalidArgument,
          "naive six-index contraction is limited to three modes per family");
  const auto na = f.rows();
  const auto nb = f.cols();
  Complex total{};
  for (Eigen::Index n = 0; n < na; ++n)
    for (Eigen::Index big_n = 0; big_n < na; ++big_n)
      for (Eigen::Index n_star = 0; n_star < na; ++n_star)
        for (Eigen::Index m = 0; m < nb; ++m)
          for (Eigen::Index big_m = 0; big_m < nb; ++big_m)
            for (Eigen::Index m_star = 0; m_star < nb; ++m_star) {
              const Complex kernel_f =
                  std::conj(f(n, m)) * std::conj(f(big_n, big_m)) * std::conj(f(n_star, m_star));
              const Complex kernel_g = 2.0 * f(n_star, big_m) * f(big_n, m_star) * f(n, m) +
                                       2.0 * f(n_star, m) * f(n, m_star) * f(big_n, big_m) +
                                       sign * 2.0 * f(n_star, m) * f(n, big_m) * f(big_n, m_star) +
                                       sign * 2.0 * f(n_star, big_m) * f(big_n, m) * f(n, m_star);
              total += kernel_f * kernel_g;
            }
  return total;
}

struct DeviationReport {
  CompositeKind kind;
  Complex theta;
  double lambda_value;
  NormStatus norm_status;
  std::optional<double> exp_theta_a;  // empty when Indeterminate
  std::optional<double> exp_theta_b;
};

namespace detail {
inline double real_or_throw(Complex z, const char* what) {
  require(std::abs(z.imag()) <= tol::oracle * std::max(1.0, std::abs(z.real())), ErrorCode::NumericalError,
          std::string(what) + " has an imaginary residue");
  return z.real();
}
}  // namespace detail

// <2_f| theta_a |2_f> and <2_f| theta_b |2_f>. The b value is evaluated on the
// transposed distribution (roles of a and b swapped).
inline DeviationReport deviation_expectations(const DiscreteModeDistribution& f, CompositeKind kind) {
  DeviationReport report{kind, theta(f, f), lambda(f), two_composite_norm(f, kind), std::nullopt, std::nullopt};
  if (!report.norm_status.is_finite()) {
    report.norm_status = kind == CompositeKind::FF ? NormStatus::indeterminate() : report.norm_status;
    return report;
  }
  const double n2 = report.norm_status.value;
  report.exp_theta_a = n2 * detail::real_or_throw(deviation_contraction(f.coefficients(), kind), "<theta_a>");
  const ComplexMatrix swapped = f.coefficients().transpose();
  report.exp_theta_b = n2 * detail::real_or_throw(deviation_contraction(swapped, kind), "<theta_b>");
  return report;
}

// ---------------------------------------------------------------------------
// Three-particle states

enum class ThreeNormStatus { Finite, Divergent, ExcludedByPauli };

inline std::string_view to_string(ThreeNormStatus s) {
  switch (s) {
    case ThreeNormStatus::Finite: return "Finite";
    case ThreeNormStatus::Divergent: return "Divergent";
    case ThreeNormStatus::ExcludedByPauli: return "ExcludedByPauli";
  }
  return "?";
}

struct ThreeParticleNormReport {
  // ||state||^2 = N^-2 of the normalized state.
  double inverse_norm_sq = 0.0;
  ThreeNormStatus status = ThreeNormStatus::Finite;
  // The closed-form expression as customarily written, before the sign convention is applied.
  double written_expression = 0.0;
  std::optional<double> oracle_norm_sq;
  std::string convention_note;
};

inline constexpr const char* three_particle_convention =
    "inverse_norm_sq = ||c_f+ a_g+ |0>||^2 = 1 - sum_{n,m,k} f*_nm f_km g*_k g_n (exponent -2). "
    "The written form -1 + sum(...) equals -inverse_norm_sq; the Fock oracle fixes the sign.";

// N_3^-2 for c_f+ a_g+ |0>. When the Fock space fits within `oracle_limit`
// the oracle norm is computed and must agree within 1e-10.
inline ThreeParticleNormReport three_particle_norm(const DiscreteModeDistribution& f, const ComplexVector& g,
                                                   std::size_t oracle_limit = std::size_t{1} << 16) {
  require(g.size() == f.na(), ErrorCode::ShapeMismatch, "free fermion mode vector does not match the a-modes");
  require(std::abs(g.squaredNorm() - 1.0) <= tol::structural, ErrorCode::InvalidArgument,
          "free fermion mode vector is not unit-norm");
  const ComplexMatrix rho = reduced_a(f);
  const double overlap = detail::real_or_throw(g.dot(rho * g), "<g|rho|g>");

  ThreeParticleNormReport report;
  report.written_expression = -1.0 + overlap;
  report.inverse_norm_sq = 1.0 - overlap;
  report.convention_note = three_particle_convention;

  const double modes = static_cast<double>(f.na() + f.nb());
  if (std::exp2(modes) <= static_cast<double>(oracle_limit)) {
    const double oracle = three_particle_state(f, g, Statistics::Fermion, oracle_limit).squared_norm();
    report.oracle_norm_sq = oracle;
    require(std::abs(oracle - report.inverse_norm_sq) <= tol::oracle, ErrorCode::NumericalError,
            "three-particle norm disagrees with the Fock oracle");
  }
  report.status = std::abs(report.inverse_norm_sq) <= tol::divergence ? ThreeNormStatus::Divergent
                                                                       : ThreeNormStatus::Finite;
  return report;
}

// N^-2 = sum f3*_nmk (f3_nmk - f3_mnk delta_rs).
inline ThreeParticleNormReport symmetric_three_norm(const ThreeParticleDistribution& f3) {
  const double spin = kronecker(f3.spin_r(), f3.spin_s());
  Complex total{};
  for (Eigen::Index n = 0; n < f3.fermion_modes(); ++n)
    for (Eigen::Index m = 0; m < f3.fermion_modes(); ++m)
      for (Eigen::Index k = 0; k < f3.other_modes(); ++k)
        total += std::conj(f3(n, m, k)) * (f3(n, m, k) - f3(m, n, k) * spin);

  ThreeParticleNormReport report;
  report.inverse_norm_sq = detail::real_or_throw(total, "three-particle norm");
  report.written_expression = report.inverse_norm_sq;
  report.convention_note = "inverse_norm_sq = sum f3*_nmk (f3_nmk - f3_mnk delta_rs); matches the Fock oracle directly.";
  if (spin == 1.0 && std::abs(report.inverse_norm_sq) <= tol::divergence) {
    report.status = ThreeNormStatus::ExcludedByPauli;
  }
  return report;
}

}  // namespace composite
