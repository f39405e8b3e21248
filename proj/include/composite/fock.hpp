#pragma once

// Brute-force second quantization over two mode families (a and b).
//
// Global mode order: family a, then family b. Inside a family, modes are grouped
// by spin slot, then ascending index. Fermionic operators carry the sign
// (-1)^(number of fermions in earlier modes), so all fermionic modes, including
// a and b modes of an FF system, mutually anticommute. Bosonic modes are
// truncated at `boson_cutoff` quanta: creation on a full mode gives zero.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Sparse>

#include "composite/exact_sum.hpp"
#include "composite/mode_dist.hpp"
#include "composite/types.hpp"

namespace composite {

enum class Family { A, B };

inline std::string_view to_string(Family f) { return f == Family::A ? "a" : "b"; }

struct FockSpaceConfig {
  int na = 1;
  int nb = 1;
  Statistics stat_a = Statistics::Fermion;
  Statistics stat_b = Statistics::Fermion;
  int boson_cutoff = 2;
  std::vector<SpinLabel> spins_a{SpinLabel{}};
  std::vector<SpinLabel> spins_b{SpinLabel{}};
  std::size_t max_dimension = std::size_t{1} << 20;

  static FockSpaceConfig for_kind(CompositeKind kind, int na, int nb, int boson_cutoff = 2) {
    FockSpaceConfig config;
    config.na = na;
    config.nb = nb;
    config.stat_a = statistics_a(kind);
    config.stat_b = statistics_b(kind);
    config.boson_cutoff = boson_cutoff;
    return config;
  }

  // Adds the spin labels needed to host both distributions.
  FockSpaceConfig& with_spins_of(const DiscreteModeDistribution& f, const DiscreteModeDistribution& g) {
    spins_a = {f.spin_a()};
    if (g.spin_a() != f.spin_a()) spins_a.push_back(g.spin_a());
    spins_b = {f.spin_b()};
    if (g.spin_b() != f.spin_b()) spins_b.push_back(g.spin_b());
    return *this;
  }

  friend bool operator==(const FockSpaceConfig&, const FockSpaceConfig&) = default;
};

struct ModeInfo {
  Family family;
  std::size_t spin_slot;
  int index;
  Statistics statistics;
  int local_dimension;
};

class FockSpace {
 public:
  using Index = Eigen::Index;

  static std::shared_ptr<const FockSpace> build(const FockSpaceConfig& config) {
    return std::shared_ptr<const FockSpace>(new FockSpace(config));
  }

  const FockSpaceConfig& config() const { return config_; }
  Index dimension() const { return dimension_; }
  std::size_t mode_count() const { return modes_.size(); }
  const ModeInfo& mode(std::size_t id) const { return modes_.at(id); }
  static constexpr Index vacuum() { return 0; }

  std::size_t mode_id(Family family, int index, SpinLabel spin = {}) const {
    const auto& spins = family == Family::A ? config_.spins_a : config_.spins_b;
    const int count = family == Family::A ? config_.na : config_.nb;
    require(index >= 0 && index < count, ErrorCode::IndexOutOfRange,
            "mode index " + std::to_string(index) + " out of range for family " + std::string(to_string(family)));
    const auto it = std::find(spins.begin(), spins.end(), spin);
    require(it != spins.end(), ErrorCode::IndexOutOfRange,
            "spin label " + std::to_string(spin.index) + " not present in family " + std::string(to_string(family)));
    const auto slot = static_cast<std::size_t>(it - spins.begin());
    const std::size_t offset = family == Family::A ? 0 : config_.spins_a.size() * static_cast<std::size_t>(config_.na);
    return offset + slot * static_cast<std::size_t>(count) + static_cast<std::size_t>(index);
  }

  std::span<const std::uint8_t> occupations(Index state) const {
    return {occupations_.data() + static_cast<std::size_t>(state) * modes_.size(), modes_.size()};
  }

  int occupation(Index state, std::size_t mode_id) const { return occupations(state)[mode_id]; }

  Index index_of(std::span<const std::uint8_t> occupation) const {
    require(occupation.size() == modes_.size(), ErrorCode::ShapeMismatch, "occupation vector has wrong length");
    Index index = 0;
    for (std::size_t i = 0; i < modes_.size(); ++i) {
      require(occupation[i] < modes_[i].local_dimension, ErrorCode::IndexOutOfRange, "occupation exceeds mode capacity");
      index += static_cast<Index>(occupation[i]) * strides_[i];
    }
    return index;
  }

  int total_occupation(Index state, Family family) const {
    int total = 0;
    const auto occ = occupations(state);
    for (std::size_t i = 0; i < modes_.size(); ++i) {
      if (modes_[i].family == family) total += occ[i];
    }
    return total;
  }

  // States on which operators containing up to `margin` bosonic creations per
  // family act without hitting the cutoff: every bosonic family holds at most
  // cutoff - margin quanta in total.
  std::vector<Index> truncation_safe_states(int margin = 1) const {
    std::vector<Index> states;
    const int limit = config_.boson_cutoff - margin;
    for (Index s = 0; s < dimension_; ++s) {
      bool safe = true;
      if (config_.stat_a == Statistics::Boson && total_occupation(s, Family::A) > limit) safe = false;
      if (config_.stat_b == Statistics::Boson && total_occupation(s, Family::B) > limit) safe = false;
      if (safe) states.push_back(s);
    }
    return states;
  }

  // One "occupation-vector: index" line per basis state, families separated by '|'.
  void dump_basis(std::ostream& os) const {
    for (Index s = 0; s < dimension_; ++s) {
      const auto occ = occupations(s);
      for (std::size_t i = 0; i < occ.size(); ++i) {
        if (i > 0) os << (modes_[i].family != modes_[i - 1].family ? " | " : " ");
        os << static_cast<int>(occ[i]);
      }
      os << ": " << s << '\n';
    }
  }

 private:
  explicit FockSpace(const FockSpaceConfig& config) : config_(config) {
    require(config.na >= 1 && config.nb >= 1, ErrorCode::InvalidArgument, "each family needs at least one mode");
    require(!config.spins_a.empty() && !config.spins_b.empty(), ErrorCode::InvalidArgument,
            "each family needs at least one spin label");
    const bool has_bosons = config.stat_a == Statistics::Boson || config.stat_b == Statistics::Boson;
    require(!has_bosons || config.boson_cutoff >= 1, ErrorCode::InvalidArgument, "boson cutoff must be at least 1");

    auto add_family = [&](Family family, int count, Statistics stat, std::size_t slots) {
      for (std::size_t slot = 0; slot < slots; ++slot) {
        for (int i = 0; i < count; ++i) {
          const int local = stat == Statistics::Fermion ? 2 : config.boson_cutoff + 1;
          modes_.push_back({family, slot, i, stat, local});
        }
      }
    };
    add_family(Family::A, config.na, config.stat_a, config.spins_a.size());
    add_family(Family::B, config.nb, config.stat_b, config.spins_b.size());

    std::size_t dim = 1;
    for (const auto& m : modes_) {
      dim *= static_cast<std::size_t>(m.local_dimension);
      if (dim > config.max_dimension) {
        fail(ErrorCode::DimensionOverflow, "Fock space dimension exceeds the limit of " +
                                               std::to_string(config.max_dimension));
      }
    }
    dimension_ = static_cast<Index>(dim);

    // Mode 0 is the most significant digit, so states are listed in
    // lexicographic order of their occupation vectors and the vacuum is 0.
    strides_.assign(modes_.size(), 1);
    for (std::size_t i = modes_.size(); i-- > 1;) {
      strides_[i - 1] = strides_[i] * modes_[i].local_dimension;
    }
    occupations_.resize(dim * modes_.size());
    std::vector<std::uint8_t> current(modes_.size(), 0);
    for (std::size_t s = 0; s < dim; ++s) {
      std::copy(current.begin(), current.end(), occupations_.begin() + static_cast<std::ptrdiff_t>(s * modes_.size()));
      for (std::size_t i = modes_.size(); i-- > 0;) {
        if (++current[i] < modes_[i].local_dimension) break;
        current[i] = 0;
      }
    }
  }

  FockSpaceConfig config_;
  std::vector<ModeInfo> modes_;
  std::vector<Index> strides_;
  std::vector<std::uint8_t> occupations_;
  Index dimension_ = 0;

  friend class LadderEngine;
};

inline std::shared_ptr<const FockSpace> build_space(const FockSpaceConfig& config) { return FockSpace::build(config); }

// One creation or annihilation operator on a global mode id.
struct Ladder {
  std::size_t mode;
  bool create;
};

inline Ladder create(std::size_t mode) { return {mode, true}; }
inline Ladder annihilate(std::size_t mode) { return {mode, false}; }

// A coefficient times an operator string written left to right (the rightmost
// factor acts first).
struct OperatorTerm {
  Complex coefficient;
  std::vector<Ladder> string;
};

// Applies ladder strings to basis states.
class LadderEngine {
 public:
  explicit LadderEngine(const FockSpace& space) : space_(space), scratch_(space.mode_count()) {}

  // Returns false when the string annihilates the state.
  bool apply(FockSpace::Index state, std::span<const Ladder> string, FockSpace::Index& target, double& amplitude) {
    const auto occ = space_.occupations(state);
    std::copy(occ.begin(), occ.end(), scratch_.begin());
    FockSpace::Index index = state;
    amplitude = 1.0;
    for (std::size_t k = string.size(); k-- > 0;) {
      const auto [mode, is_create] = string[k];
      const auto& info = space_.modes_[mode];
      const int n = scratch_[mode];
      if (info.statistics == Statistics::Fermion) {
        if (is_create == (n == 1)) return false;
        int parity = 0;
        for (std::size_t i = 0; i < mode; ++i) {
          if (space_.modes_[i].statistics == Statistics::Fermion) parity ^= scratch_[i] & 1;
        }
        if (parity) amplitude = -amplitude;
      } else if (is_create) {
        if (n + 1 >= info.local_dimension) return false;
        amplitude *= std::sqrt(static_cast<double>(n + 1));
      } else {
        if (n == 0) return false;
        amplitude *= std::sqrt(static_cast<double>(n));
      }
      const int next = is_create ? n + 1 : n - 1;
      scratch_[mode] = static_cast<std::uint8_t>(next);
      index += (next - n) * space_.strides_[mode];
    }
    target = index;
    return true;
  }

 private:
  const FockSpace& space_;
  std::vector<std::uint8_t> scratch_;
};

using SparseComplex = Eigen::SparseMatrix<Complex, Eigen::ColMajor, std::int64_t>;

class OperatorMatrix {
 public:
  using Index = FockSpace::Index;

  OperatorMatrix(std::shared_ptr<const FockSpace> space, SparseComplex matrix)
      : space_(std::move(space)), matrix_(std::move(matrix)) {
    require(space_ != nullptr, ErrorCode::InvalidArgument, "operator without a Fock space");
    require(matrix_.rows() == space_->dimension() && matrix_.cols() == space_->dimension(),
            ErrorCode::ShapeMismatch, "operator dimensions differ from the basis size");
  }

  static OperatorMatrix zero(std::shared_ptr<const FockSpace> space) {
    const auto dim = space->dimension();
    return {std::move(space), SparseComplex(dim, dim)};
  }

  static OperatorMatrix identity(std::shared_ptr<const FockSpace> space) {
    const auto dim = space->dimension();
    SparseComplex id(dim, dim);
    id.setIdentity();
    return {std::move(space), std::move(id)};
  }

  // Builds sum_t coefficient_t * string_t column by column. Entries that
  // receive several contributions are summed exactly.
  static OperatorMatrix from_terms(std::shared_ptr<const FockSpace> space, std::span<const OperatorTerm> terms) {
    const Index dim = space->dimension();
    LadderEngine engine(*space);
    std::vector<std::int64_t> outer(static_cast<std::size_t>(dim) + 1, 0);
    std::vector<std::int64_t> inner;
    std::vector<Complex> values;
    std::vector<std::pair<Index, Complex>> column;
    for (Index s = 0; s < dim; ++s) {
      column.clear();
      for (const auto& term : terms) {
        if (term.coefficient == Complex{}) continue;
        Index target = 0;
        double amplitude = 0.0;
        if (engine.apply(s, term.string, target, amplitude)) column.emplace_back(target, term.coefficient * amplitude);
      }
      std::stable_sort(column.begin(), column.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      for (std::size_t i = 0; i < column.size();) {
        std::size_t j = i + 1;
        while (j < column.size() && column[j].first == column[i].first) ++j;
        Complex value = column[i].second;
        if (j - i > 1) {
          ExactComplexSum sum;
          for (std::size_t k = i; k < j; ++k) sum.add(column[k].second);
          value = sum.value();
        }
        if (value != Complex{}) {
          inner.push_back(column[i].first);
          values.push_back(value);
        }
        i = j;
      }
      outer[static_cast<std::size_t>(s) + 1] = static_cast<std::int64_t>(inner.size());
    }
    Eigen::Map<const SparseComplex> view(dim, dim, static_cast<Index>(values.size()), outer.data(), inner.data(),
                                         values.data());
    return {std::move(space), SparseComplex(view)};
  }

  const std::shared_ptr<const FockSpace>& space() const { return space_; }
  const SparseComplex& matrix() const { return matrix_; }
  Index dimension() const { return matrix_.rows(); }
  Index nonzeros() const { return matrix_.nonZeros(); }

  Complex coefficient(Index row, Index col) const { return matrix_.coeff(row, col); }

  OperatorMatrix adjoint() const { return {space_, SparseComplex(matrix_.adjoint())}; }

  // Keeps only the given columns; the rest become zero.
  OperatorMatrix restrict_columns(std::span<const Index> columns) const {
    std::vector<Eigen::Triplet<Complex, std::int64_t>> triplets;
    for (const Index c : columns) {
      for (SparseComplex::InnerIterator it(matrix_, c); it; ++it) triplets.emplace_back(it.row(), c, it.value());
    }
    SparseComplex out(matrix_.rows(), matrix_.cols());
    out.setFromTriplets(triplets.begin(), triplets.end());
    return {space_, std::move(out)};
  }

  double max_abs() const {
    double best = 0.0;
    for (Index c = 0; c < matrix_.outerSize(); ++c) {
      for (SparseComplex::InnerIterator it(matrix_, c); it; ++it) best = std::max(best, std::abs(it.value()));
    }
    return best;
  }

  bool is_exact_zero() const { return max_abs() == 0.0; }

  friend OperatorMatrix operator+(const OperatorMatrix& x, const OperatorMatrix& y) {
    check_same_space(x, y);
    return {x.space_, SparseComplex(x.matrix_ + y.matrix_)};
  }
  friend OperatorMatrix operator-(const OperatorMatrix& x, const OperatorMatrix& y) {
    check_same_space(x, y);
    return {x.space_, SparseComplex(x.matrix_ - y.matrix_)};
  }
  friend OperatorMatrix operator*(const OperatorMatrix& x, const OperatorMatrix& y) {
    check_same_space(x, y);
    return {x.space_, SparseComplex(x.matrix_ * y.matrix_)};
  }
  friend OperatorMatrix operator*(Complex scale, const OperatorMatrix& x) {
    return {x.space_, SparseComplex(scale * x.matrix_)};
  }

  static void check_same_space(const OperatorMatrix& x, const OperatorMatrix& y) {
    require(x.space_ == y.space_ || x.space_->config() == y.space_->config(), ErrorCode::SpaceMismatch,
            "operators live on different Fock spaces");
  }

  // "row col re im" per stored entry, column-major.
  void dump(std::ostream& os) const {
    for (Index c = 0; c < matrix_.outerSize(); ++c) {
      for (SparseComplex::InnerIterator it(matrix_, c); it; ++it) {
        os << it.row() << ' ' << c << ' ' << it.value().real() << ' ' << it.value().imag() << '\n';
      }
    }
  }

 private:
  std::shared_ptr<const FockSpace> space_;
  SparseComplex matrix_;
};

// Largest entrywise |x - y|.
inline double max_abs_difference(const OperatorMatrix& x, const OperatorMatrix& y) { return (x - y).max_abs(); }

inline OperatorMatrix creation_op(const std::shared_ptr<const FockSpace>& space, Family family, int mode,
                                  SpinLabel spin = {}) {
  const OperatorTerm term{1.0, {create(space->mode_id(family, mode, spin))}};
  return OperatorMatrix::from_terms(space, std::span(&term, 1));
}

inline OperatorMatrix annihilation_op(const std::shared_ptr<const FockSpace>& space, Family family, int mode,
                                      SpinLabel spin = {}) {
  const OperatorTerm term{1.0, {annihilate(space->mode_id(family, mode, spin))}};
  return OperatorMatrix::from_terms(space, std::span(&term, 1));
}

// Total number operator of one family.
inline OperatorMatrix number_op(const std::shared_ptr<const FockSpace>& space, Family family) {
  std::vector<OperatorTerm> terms;
  for (std::size_t id = 0; id < space->mode_count(); ++id) {
    if (space->mode(id).family == family) terms.push_back({1.0, {create(id), annihilate(id)}});
  }
  return OperatorMatrix::from_terms(space, terms);
}

// sum_{n,m} f_nm a+_{n,r} b+_{m,s}: the b creation acts first, then the a creation.
inline OperatorMatrix composite_creation(const std::shared_ptr<const FockSpace>& space,
                                         const DiscreteModeDistribution& f) {
  const auto& config = space->config();
  require(f.na() == config.na && f.nb() == config.nb, ErrorCode::ShapeMismatch,
          "distribution shape does not match the Fock space");
  std::vector<OperatorTerm> terms;
  terms.reserve(static_cast<std::size_t>(f.na() * f.nb()));
  for (int n = 0; n < config.na; ++n) {
    for (int m = 0; m < config.nb; ++m) {
      terms.push_back({f(n, m),
                       {create(space->mode_id(Family::A, n, f.spin_a())), create(space->mode_id(Family::B, m, f.spin_b()))}});
    }
  }
  return OperatorMatrix::from_terms(space, terms);
}

// Single-particle creation sum_n g_n a+_{n,spin} in family a.
inline OperatorMatrix mode_creation(const std::shared_ptr<const FockSpace>& space, Family family,
                                    const ComplexVector& g, SpinLabel spin = {}) {
  const int count = family == Family::A ? space->config().na : space->config().nb;
  require(g.size() == count, ErrorCode::ShapeMismatch, "mode vector length does not match the family");
  std::vector<OperatorTerm> terms;
  for (int n = 0; n < count; ++n) terms.push_back({g[n], {create(space->mode_id(family, n, spin))}});
  return OperatorMatrix::from_terms(space, terms);
}

inline OperatorMatrix commutator(const OperatorMatrix& x, const OperatorMatrix& y, bool anti) {
  OperatorMatrix::check_same_space(x, y);
  const auto xy = x * y;
  const auto yx = y * x;
  return anti ? xy + yx : xy - yx;
}

// [x, y] or {x, y} evaluated on the given basis columns only.
inline OperatorMatrix commutator_on(const OperatorMatrix& x, const OperatorMatrix& y, bool anti,
                                    std::span<const FockSpace::Index> columns) {
  OperatorMatrix::check_same_space(x, y);
  const auto xy = x * y.restrict_columns(columns);
  const auto yx = y * x.restrict_columns(columns);
  return anti ? xy + yx : xy - yx;
}

// ---------------------------------------------------------------------------
// States

class StateVector {
 public:
  StateVector(std::shared_ptr<const FockSpace> space, ComplexVector amplitudes)
      : space_(std::move(space)), amplitudes_(std::move(amplitudes)) {
    require(amplitudes_.size() == space_->dimension(), ErrorCode::ShapeMismatch, "state length differs from basis size");
    require(amplitudes_.allFinite(), ErrorCode::InvalidArgument, "state has non-finite amplitudes");
  }

  static StateVector vacuum(std::shared_ptr<const FockSpace> space) {
    ComplexVector v = ComplexVector::Zero(space->dimension());
    v[FockSpace::vacuum()] = 1.0;
    return {std::move(space), std::move(v)};
  }

  const std::shared_ptr<const FockSpace>& space() const { return space_; }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  double squared_norm() const { return amplitudes_.squaredNorm(); }
  bool is_exact_zero() const { return (amplitudes_.array() == Complex{}).all(); }

 private:
  std::shared_ptr<const FockSpace> space_;
  ComplexVector amplitudes_;
};

enum class Accumulation { Fast, Exact };

// With Accumulation::Exact each output amplitude is the correctly rounded
// exact sum of its contributions, so exactly cancelling terms give exact zeros.
inline StateVector apply(const OperatorMatrix& op, const StateVector& state, Accumulation mode = Accumulation::Fast) {
  require(op.space() == state.space() || op.space()->config() == state.space()->config(), ErrorCode::SpaceMismatch,
          "operator and state live on different Fock spaces");
  if (mode == Accumulation::Fast) return {op.space(), op.matrix() * state.amplitudes()};

  std::map<FockSpace::Index, ExactComplexSum> rows;
  const auto& m = op.matrix();
  const auto& v = state.amplitudes();
  for (FockSpace::Index c = 0; c < m.outerSize(); ++c) {
    if (v[c] == Complex{}) continue;
    for (SparseComplex::InnerIterator it(m, c); it; ++it) rows[it.row()].add(it.value() * v[c]);
  }
  ComplexVector out = ComplexVector::Zero(op.dimension());
  for (const auto& [row, sum] : rows) out[row] = sum.value();
  return {op.space(), std::move(out)};
}

// <psi|A|psi> / <psi|psi>.
inline Complex expectation(const StateVector& state, const OperatorMatrix& op) {
  const double norm = state.squared_norm();
  require(norm > 0.0, ErrorCode::ZeroState, "expectation value of the zero state");
  const auto image = apply(op, state);
  return state.amplitudes().dot(image.amplitudes()) / norm;
}

}  // namespace composite
