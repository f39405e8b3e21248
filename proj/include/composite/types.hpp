#pragma once

#include <complex>
#include <cstdint>
#include <string_view>

#include <Eigen/Dense>

#include "composite/error.hpp"

namespace composite {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// Opaque spin label; only equality matters.
struct SpinLabel {
  std::uint32_t index = 0;

  friend constexpr bool operator==(SpinLabel, SpinLabel) = default;
  friend constexpr auto operator<=>(SpinLabel, SpinLabel) = default;
};

constexpr double kronecker(SpinLabel a, SpinLabel b) { return a == b ? 1.0 : 0.0; }

enum class Statistics { Boson, Fermion };

// In FB, family a is the fermion and family b the boson.
enum class CompositeKind { BB, FF, FB };

constexpr Statistics statistics_a(CompositeKind kind) {
  return kind == CompositeKind::BB ? Statistics::Boson : Statistics::Fermion;
}

constexpr Statistics statistics_b(CompositeKind kind) {
  return kind == CompositeKind::FF ? Statistics::Fermion : Statistics::Boson;
}

inline std::string_view to_string(Statistics s) { return s == Statistics::Boson ? "Boson" : "Fermion"; }

inline std::string_view to_string(CompositeKind kind) {
  switch (kind) {
    case CompositeKind::BB: return "BB";
    case CompositeKind::FF: return "FF";
    case CompositeKind::FB: return "FB";
  }
  return "?";
}

inline CompositeKind parse_kind(std::string_view text) {
  if (text == "BB") return CompositeKind::BB;
  if (text == "FF") return CompositeKind::FF;
  if (text == "FB") return CompositeKind::FB;
  fail(ErrorCode::InvalidArgument, "unknown composite kind '" + std::string(text) + "'");
}

// Tolerances shared across modules.
namespace tol {
inline constexpr double structural = 1e-12;
inline constexpr double discretization = 1e-6;
inline constexpr double divergence = 1e-9;
inline constexpr double oracle = 1e-10;
}  // namespace tol

}  // namespace composite
