#pragma once

// Command implementations behind the composite-lab executable. Each command
// writes its report to a stream and returns the process exit status.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <string>
#include <vector>

#include "composite/algebra.hpp"
#include "composite/gaussian.hpp"
#include "composite/io.hpp"
#include "composite/pauli.hpp"
#include "composite/random.hpp"

namespace composite::cli {

inline constexpr const char* dimension_env = "COMPOSITE_MAX_FOCK_DIM";

inline std::size_t max_fock_dimension() {
  if (const char* text = std::getenv(dimension_env)) {
    char* end = nullptr;
    const auto value = std::strtoull(text, &end, 10);
    require(end != text && *end == '\0' && value > 0, ErrorCode::InvalidArgument,
            std::string(dimension_env) + " must be a positive integer");
    return static_cast<std::size_t>(value);
  }
  return std::size_t{1} << 20;
}

// 17 significant digits round-trip a double exactly.
inline std::string format_number(double x) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return buffer;
}

// ---------------------------------------------------------------------------
// verify-algebra

struct ModeSize {
  int na;
  int nb;
};

inline std::vector<ModeSize> parse_sizes(const std::string& text) {
  std::vector<ModeSize> sizes;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!item.empty()) {
      const auto x = item.find('x');
      require(x != std::string::npos, ErrorCode::InvalidArgument, "size '" + item + "' is not of the form NAxNB");
      try {
        std::size_t used_a = 0;
        std::size_t used_b = 0;
        const int na = std::stoi(item.substr(0, x), &used_a);
        const int nb = std::stoi(item.substr(x + 1), &used_b);
        require(used_a == x && used_b == item.size() - x - 1 && na >= 1 && nb >= 1, ErrorCode::InvalidArgument,
                "size '" + item + "' is not of the form NAxNB");
        sizes.push_back({na, nb});
      } catch (const std::logic_error&) {
        fail(ErrorCode::InvalidArgument, "size '" + item + "' is not of the form NAxNB");
      }
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return sizes;
}

struct VerifyOptions {
  std::uint64_t seed = 1;
  std::vector<ModeSize> sizes;
  // Flips the sign of theta in the expected right-hand side (failure-path check).
  bool corrupt_theta_sign = false;
  int seeds_per_size = 1;
  std::size_t max_dimension = std::size_t{1} << 20;
};

struct ResidualRow {
  std::string relation;
  std::string label;  // size / kind / spin combination
  double residual;
  double tolerance;
  bool pass() const { return residual < tolerance; }
};

struct VerifyReport {
  std::uint64_t seed;
  std::vector<ResidualRow> rows;
  bool all_pass() const {
    for (const auto& r : rows) {
      if (!r.pass()) return false;
    }
    return true;
  }
};

// The four spin match/mismatch combinations (a-spin equal?, b-spin equal?).
inline std::vector<std::pair<bool, bool>> spin_combinations() { return {{true, true}, {false, true}, {true, false}, {false, false}}; }

inline std::string spin_label(bool same_a, bool same_b) {
  return std::string(same_a ? "r=R" : "r!=R") + "," + (same_b ? "s=S" : "s!=S");
}

// Residuals of the composite (anti)commutation relations for one pair (f, g)
// evaluated on the truncation-safe columns.
inline std::vector<ResidualRow> commutation_residuals(const DiscreteModeDistribution& f, const DiscreteModeDistribution& g,
                                                      CompositeKind kind, std::size_t max_dimension,
                                                      const std::string& label, bool corrupt_theta_sign = false) {
  auto config = FockSpaceConfig::for_kind(kind, static_cast<int>(f.na()), static_cast<int>(f.nb()), 2);
  config.with_spins_of(f, g);
  config.max_dimension = max_dimension;
  const auto space = build_space(config);
  const auto columns = space->truncation_safe_states(1);
  const bool anti = uses_anticommutator(kind);

  const auto cf_dag = composite_creation(space, f);
  const auto cg_dag = composite_creation(space, g);
  const auto cf = cf_dag.adjoint();
  const auto cg = cg_dag.adjoint();

  const auto annihilators = commutator_on(cf, cg, anti, columns);
  const auto creators = commutator_on(cf_dag, cg_dag, anti, columns);
  const auto mixed = commutator_on(cf, cg_dag, anti, columns);
  auto expected = deviation_sum(f, g, kind, space);
  if (corrupt_theta_sign) {
    expected = expected - Complex(2.0) * theta(f, g) * OperatorMatrix::identity(space);
  }
  const auto expected_cols = expected.restrict_columns(columns);

  return {{"(anti)commutator c_f, c_g", label, annihilators.max_abs(), tol::structural},
          {"(anti)commutator c_f+, c_g+", label, creators.max_abs(), tol::structural},
          {"mixed (anti)commutator vs theta +/- theta_a +/- theta_b", label,
           max_abs_difference(mixed, expected_cols), tol::structural}};
}

// Oracle-equivalence residuals for a single distribution (spins equal).
inline std::vector<ResidualRow> oracle_residuals(const DiscreteModeDistribution& f, CompositeKind kind,
                                                 std::size_t max_dimension, const std::string& label) {
  std::vector<ResidualRow> rows;
  auto config = FockSpaceConfig::for_kind(kind, static_cast<int>(f.na()), static_cast<int>(f.nb()), 2);
  config.max_dimension = max_dimension;
  const auto space = build_space(config);

  const double sign = composite_sign(kind);
  const double lam = lambda(f);
  double purity = 0.0;
  for (double c : schmidt_coefficients(f)) purity += c * c * c * c;
  rows.push_back({"Lambda vs Schmidt purity", label, std::abs(lam - purity), tol::structural});

  const auto state = two_composite_state(space, f);
  rows.push_back({"||(c_f+)^2|0>||^2 vs 2(1 +/- Lambda)", label, std::abs(state.squared_norm() - 2.0 * (1.0 + sign * lam)),
                  tol::oracle});

  const auto report = deviation_expectations(f, kind);
  if (report.exp_theta_a && state.squared_norm() > tol::divergence) {
    const double oracle_a = expectation(state, theta_op_a(f, f, space)).real();
    const double oracle_b = expectation(state, theta_op_b(f, f, space)).real();
    rows.push_back({"<theta_a> contraction vs oracle", label, std::abs(*report.exp_theta_a - oracle_a), tol::oracle});
    rows.push_back({"<theta_b> contraction vs oracle", label, std::abs(*report.exp_theta_b - oracle_b), tol::oracle});
    if (f.na() <= 3 && f.nb() <= 3) {
      const double naive = report.norm_status.value * deviation_contraction_naive(f.coefficients(), kind).real();
      rows.push_back({"<theta_a> naive loop vs oracle", label, std::abs(naive - oracle_a), tol::oracle});
    }
  }
  return rows;
}

inline VerifyReport verify_algebra(const VerifyOptions& options) {
  require(!options.sizes.empty(), ErrorCode::InvalidArgument, "at least one size is required");
  VerifyReport report{options.seed, {}};
  Rng rng(options.seed);
  const SpinLabel up{0};
  const SpinLabel down{1};
  for (const auto& size : options.sizes) {
    for (int trial = 0; trial < options.seeds_per_size; ++trial) {
      const std::string base = std::to_string(size.na) + "x" + std::to_string(size.nb) + " trial " + std::to_string(trial);
      for (const auto kind : {CompositeKind::BB, CompositeKind::FF, CompositeKind::FB}) {
        const auto f = random_distribution(rng, size.na, size.nb);
        const auto g = random_distribution(rng, size.na, size.nb);
        for (const auto& [same_a, same_b] : spin_combinations()) {
          const auto label = base + " " + std::string(to_string(kind)) + " " + spin_label(same_a, same_b);
          auto rows = commutation_residuals(f.with_spins(up, up), g.with_spins(same_a ? up : down, same_b ? up : down),
                                            kind, options.max_dimension, label, options.corrupt_theta_sign);
          report.rows.insert(report.rows.end(), rows.begin(), rows.end());
        }
        if (kind != CompositeKind::FB) {
          auto rows = oracle_residuals(f, kind, options.max_dimension, base + " " + std::string(to_string(kind)));
          report.rows.insert(report.rows.end(), rows.begin(), rows.end());
        }
      }
      const auto f = random_distribution(rng, size.na, size.nb);
      const auto g = random_unit_vector(rng, size.na);
      const auto three = three_particle_norm(f, g, 0);
      const double oracle = three_particle_state(f, g, Statistics::Fermion, options.max_dimension).squared_norm();
      report.rows.push_back({"three-particle norm vs oracle", base, std::abs(three.inverse_norm_sq - oracle), tol::oracle});
    }
  }
  return report;
}

inline int cmd_verify_algebra(const VerifyOptions& options, std::ostream& out) {
  const auto report = verify_algebra(options);
  out << "# verify-algebra seed " << report.seed << "\n";
  // Max residual per relation, then any individual failures.
  std::vector<std::pair<std::string, ResidualRow>> worst;
  for (const auto& row : report.rows) {
    auto it = std::find_if(worst.begin(), worst.end(), [&](const auto& w) { return w.first == row.relation; });
    if (it == worst.end()) {
      worst.emplace_back(row.relation, row);
    } else if (row.residual > it->second.residual) {
      it->second = row;
    }
  }
  for (const auto& [relation, row] : worst) {
    out << (row.pass() ? "PASS " : "FAIL ") << relation << ": max residual " << format_number(row.residual)
        << " (tolerance " << format_number(row.tolerance) << ", worst at " << row.label << ")\n";
  }
  const bool ok = report.all_pass();
  out << (ok ? "all relations hold\n" : "relation check FAILED\n");
  return ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// deviation-scan

enum class OutputFormat { Csv, Json };

struct SweepConfig {
  double alpha = 1.0;
  double beta = 1.0;
  std::vector<double> ratios;
  std::vector<CompositeKind> kinds{CompositeKind::BB, CompositeKind::FF};
  OutputFormat format = OutputFormat::Csv;

  void validate() const {
    require(alpha > 0.0 && beta > 0.0, ErrorCode::InvalidArgument, "alpha and beta must be positive");
    require(!ratios.empty(), ErrorCode::InvalidArgument, "at least one ratio is required");
    for (double r : ratios) {
      require(r >= 0.0 && r <= 1.0, ErrorCode::InvalidArgument, "ratio " + format_number(r) + " outside [0, 1]");
    }
    require(!kinds.empty(), ErrorCode::InvalidArgument, "at least one kind is required");
    for (auto k : kinds) require(k != CompositeKind::FB, ErrorCode::UnsupportedKind, "deviation-scan supports BB and FF");
  }
};

inline constexpr const char* token_divergent = "DIVERGENT";
inline constexpr const char* token_indeterminate = "INDETERMINATE";

inline const std::vector<std::string>& scan_columns() {
  static const std::vector<std::string> columns{"ratio",   "kind",      "epsilon",     "mu",      "eta",
                                                "norm_sq", "dev_closed", "dev_numeric", "abs_diff"};
  return columns;
}

struct ScanRow {
  std::vector<std::string> cells;  // in scan_columns() order
  bool consistent = true;          // closed and numeric agree where both exist
};

inline ScanRow scan_row(double alpha, double beta, double ratio, CompositeKind kind) {
  const auto g = GaussianModeDistribution::from_ratio(alpha, beta, ratio);
  const auto closed = closed_form(g, kind);
  ScanRow row;
  row.cells = {format_number(ratio), std::string(to_string(kind)), format_number(closed.epsilon),
               format_number(closed.mu), format_number(closed.eta)};
  row.cells.push_back(closed.norm_status.is_finite() ? format_number(closed.norm_status.value) : token_divergent);
  row.cells.push_back(closed.deviation ? format_number(*closed.deviation) : token_indeterminate);

  // At ratio 1 the quadratic forms are singular and the integrals diverge.
  const auto numeric = g.strictly_valid() ? numeric_deviation(g, kind) : std::nullopt;
  row.cells.push_back(numeric ? format_number(*numeric) : token_indeterminate);

  if (closed.deviation && numeric) {
    const double diff = std::abs(*closed.deviation - *numeric);
    row.cells.push_back(format_number(diff));
    row.consistent = diff <= 1e-8 * std::max(1.0, std::abs(*closed.deviation));
  } else {
    row.cells.push_back(token_indeterminate);
  }
  return row;
}

inline int cmd_deviation_scan(const SweepConfig& config, std::ostream& out) {
  config.validate();
  std::vector<ScanRow> rows;
  for (double ratio : config.ratios) {
    for (auto kind : config.kinds) rows.push_back(scan_row(config.alpha, config.beta, ratio, kind));
  }
  if (config.format == OutputFormat::Csv) {
    const auto& columns = scan_columns();
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
    out << "\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.cells.size(); ++i) out << (i ? "," : "") << row.cells[i];
      out << "\n";
    }
  } else {
    io::json doc{{"alpha", config.alpha}, {"beta", config.beta}, {"columns", scan_columns()}};
    io::json list = io::json::array();
    for (const auto& row : rows) {
      io::json entry = io::json::object();
      for (std::size_t i = 0; i < row.cells.size(); ++i) {
        const auto& cell = row.cells[i];
        const bool textual = i == 1 || cell == token_divergent || cell == token_indeterminate;
        entry[scan_columns()[i]] = textual ? io::json(cell) : io::json(std::stod(cell));
      }
      list.push_back(entry);
    }
    doc["rows"] = list;
    out << doc.dump(2) << "\n";
  }
  for (const auto& row : rows) {
    if (!row.consistent) return 1;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// pauli-demo

inline int cmd_pauli_demo(const std::string& path, std::ostream& out) {
  const auto doc = io::load_file(path);
  io::json report;
  bool agree = false;
  if (doc.is_object() && doc.contains("composite")) {
    const auto scenario = io::scenario_from_json(doc);
    const auto second = scenario_verdict(scenario);
    const auto first = first_quantization_verdict(scenario);
    const auto analytic = three_particle_norm(scenario.composite, scenario.free_fermion);
    const double residual = std::abs(first.evidence - second.evidence);
    agree = first.status == second.status && residual <= tol::structural;
    report = {{"type", "three_body_scenario"},
              {"second_quantization", io::to_json(second)},
              {"first_quantization", io::to_json(first)},
              {"first_quantization_factor", first_quantization_factor},
              {"agreement_residual", residual},
              {"analytic", io::to_json(analytic)}};
  } else if (doc.is_object() && doc.contains("n_fermion")) {
    const auto f3 = io::three_particle_from_json(doc);
    const auto second = helium_verdict(f3);
    const double oracle = symmetric_three_state(f3).squared_norm();
    const auto first = verdict_from_norm(helium_first_quantization_norm(f3) / first_quantization_factor,
                                         Method::FirstQuantization);
    const double residual = std::max(std::abs(first.evidence - second.evidence), std::abs(oracle - second.evidence));
    agree = first.status == second.status && residual <= tol::structural;
    report = {{"type", "helium"},
              {"second_quantization", io::to_json(second)},
              {"fock_oracle_norm_sq", oracle},
              {"first_quantization", io::to_json(first)},
              {"first_quantization_factor", first_quantization_factor},
              {"agreement_residual", residual},
              {"analytic", io::to_json(symmetric_three_norm(f3))}};
  } else {
    fail(ErrorCode::ParseError, "field '<root>': expected a scenario with \"composite\" or a tensor with \"n_fermion\"");
  }
  report["agree"] = agree;
  out << report.dump(2) << "\n";
  return agree ? 0 : 1;
}

}  // namespace composite::cli
