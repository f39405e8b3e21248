#pragma once

// JSON documents for distributions, scenarios and reports.
//
// Discrete coefficients are normalized on load, so files may store any
// nonzero multiple of the intended distribution.

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "composite/algebra.hpp"
#include "composite/mode_dist.hpp"
#include "composite/pauli.hpp"

namespace composite::io {

using json = nlohmann::json;

namespace detail {

// Walks a document while remembering the field path for diagnostics.
class Field {
 public:
  Field(const json& value, std::string path) : value_(value), path_(std::move(path)) {}

  Field operator[](const std::string& key) const {
    if (!value_.is_object()) parse_fail("expected an object");
    const auto it = value_.find(key);
    if (it == value_.end()) parse_fail("missing field '" + key + "'");
    return {*it, join(key)};
  }

  Field operator[](std::size_t i) const {
    if (!value_.is_array()) parse_fail("expected an array");
    if (i >= value_.size()) parse_fail("index " + std::to_string(i) + " out of range");
    return {value_[i], path_ + "[" + std::to_string(i) + "]"};
  }

  bool has(const std::string& key) const { return value_.is_object() && value_.contains(key); }

  std::size_t size() const {
    if (!value_.is_array()) parse_fail("expected an array");
    return value_.size();
  }

  double number() const {
    if (!value_.is_number()) parse_fail("expected a number");
    return value_.get<double>();
  }

  int integer() const {
    if (!value_.is_number_integer()) parse_fail("expected an integer");
    return value_.get<int>();
  }

  std::string string() const {
    if (!value_.is_string()) parse_fail("expected a string");
    return value_.get<std::string>();
  }

  SpinLabel spin() const {
    const int v = integer();
    if (v < 0) parse_fail("spin label must be non-negative");
    return SpinLabel{static_cast<std::uint32_t>(v)};
  }

  [[noreturn]] void parse_fail(const std::string& what) const {
    fail(ErrorCode::ParseError, "field '" + (path_.empty() ? std::string("<root>") : path_) + "': " + what);
  }

 private:
  std::string join(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  const json& value_;
  std::string path_;
};

inline json complex_matrix_part(const ComplexMatrix& m, bool imaginary) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(imaginary ? m(i, j).imag() : m(i, j).real());
    rows.push_back(row);
  }
  return rows;
}

inline ComplexMatrix read_matrix(const Field& doc, Eigen::Index rows, Eigen::Index cols) {
  ComplexMatrix m(rows, cols);
  const auto re = doc["re"];
  const bool has_im = doc.has("im");
  if (re.size() != static_cast<std::size_t>(rows)) re.parse_fail("expected " + std::to_string(rows) + " rows");
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto row = re[static_cast<std::size_t>(i)];
    if (row.size() != static_cast<std::size_t>(cols)) row.parse_fail("expected " + std::to_string(cols) + " columns");
    for (Eigen::Index j = 0; j < cols; ++j) {
      const double imag = has_im ? doc["im"][static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].number() : 0.0;
      m(i, j) = Complex(row[static_cast<std::size_t>(j)].number(), imag);
    }
  }
  return m;
}

inline int positive_count(const Field& f) {
  const int v = f.integer();
  if (v < 1) f.parse_fail("must be at least 1");
  return v;
}

}  // namespace detail

// Parses text, reporting syntax errors with line and column.
inline json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    fail(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + e.what());
  }
}

inline json load_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::ParseError, "cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

// ---------------------------------------------------------------------------
// Distributions

inline json to_json(const DiscreteModeDistribution& f) {
  return {{"na", f.na()},
          {"nb", f.nb()},
          {"re", detail::complex_matrix_part(f.coefficients(), false)},
          {"im", detail::complex_matrix_part(f.coefficients(), true)},
          {"spin_a", f.spin_a().index},
          {"spin_b", f.spin_b().index}};
}

inline DiscreteModeDistribution discrete_from_json(const json& doc, const std::string& path = "") {
  const detail::Field root(doc, path);
  const int na = detail::positive_count(root["na"]);
  const int nb = detail::positive_count(root["nb"]);
  const auto spin_a = root.has("spin_a") ? root["spin_a"].spin() : SpinLabel{};
  const auto spin_b = root.has("spin_b") ? root["spin_b"].spin() : SpinLabel{};
  return normalize(detail::read_matrix(root, na, nb), spin_a, spin_b);
}

inline json to_json(const GaussianModeDistribution& g) {
  return {{"alpha", g.alpha()},
          {"beta", g.beta()},
          {"gamma", g.gamma()},
          {"spin_a", g.spin_a().index},
          {"spin_b", g.spin_b().index}};
}

inline GaussianModeDistribution gaussian_from_json(const json& doc) {
  const detail::Field root(doc, "");
  const auto spin_a = root.has("spin_a") ? root["spin_a"].spin() : SpinLabel{};
  const auto spin_b = root.has("spin_b") ? root["spin_b"].spin() : SpinLabel{};
  return {root["alpha"].number(), root["beta"].number(), root["gamma"].number(), spin_a, spin_b};
}

inline json to_json(const ThreeParticleDistribution& f3) {
  json re = json::array();
  json im = json::array();
  for (Eigen::Index n = 0; n < f3.fermion_modes(); ++n) {
    json re_n = json::array();
    json im_n = json::array();
    for (Eigen::Index m = 0; m < f3.fermion_modes(); ++m) {
      json re_m = json::array();
      json im_m = json::array();
      for (Eigen::Index k = 0; k < f3.other_modes(); ++k) {
        re_m.push_back(f3(n, m, k).real());
        im_m.push_back(f3(n, m, k).imag());
      }
      re_n.push_back(re_m);
      im_n.push_back(im_m);
    }
    re.push_back(re_n);
    im.push_back(im_n);
  }
  return {{"n_fermion", f3.fermion_modes()}, {"n_other", f3.other_modes()}, {"re", re}, {"im", im},
          {"spin_r", f3.spin_r().index},     {"spin_s", f3.spin_s().index}, {"spin_other", f3.spin_other().index}};
}

inline ThreeParticleDistribution three_particle_from_json(const json& doc) {
  const detail::Field root(doc, "");
  const int nf = detail::positive_count(root["n_fermion"]);
  const int no = detail::positive_count(root["n_other"]);
  const bool has_im = root.has("im");
  std::vector<Complex> values;
  values.reserve(static_cast<std::size_t>(nf * nf * no));
  auto check = [](const detail::Field& f, int expected) {
    if (f.size() != static_cast<std::size_t>(expected)) f.parse_fail("expected " + std::to_string(expected) + " entries");
  };
  check(root["re"], nf);
  for (std::size_t n = 0; n < static_cast<std::size_t>(nf); ++n) {
    check(root["re"][n], nf);
    for (std::size_t m = 0; m < static_cast<std::size_t>(nf); ++m) {
      check(root["re"][n][m], no);
      for (std::size_t k = 0; k < static_cast<std::size_t>(no); ++k) {
        const double imag = has_im ? root["im"][n][m][k].number() : 0.0;
        values.emplace_back(root["re"][n][m][k].number(), imag);
      }
    }
  }
  return ThreeParticleDistribution::normalized(nf, no, std::move(values),
                                               root.has("spin_r") ? root["spin_r"].spin() : SpinLabel{},
                                               root.has("spin_s") ? root["spin_s"].spin() : SpinLabel{},
                                               root.has("spin_other") ? root["spin_other"].spin() : SpinLabel{});
}

inline json to_json(const ThreeBodyScenario& s) {
  json re = json::array();
  json im = json::array();
  for (Eigen::Index i = 0; i < s.free_fermion.size(); ++i) {
    re.push_back(s.free_fermion[i].real());
    im.push_back(s.free_fermion[i].imag());
  }
  return {{"composite", to_json(s.composite)},
          {"free_fermion", {{"re", re}, {"im", im}}},
          {"free_spin", s.free_spin.index},
          {"distinguishable", std::string(to_string(s.distinguishable))}};
}

inline ThreeBodyScenario scenario_from_json(const json& doc) {
  const detail::Field root(doc, "");
  (void)root["composite"];
  auto f = discrete_from_json(doc.at("composite"), "composite");
  const auto free = root["free_fermion"];
  const auto re = free["re"];
  if (re.size() != static_cast<std::size_t>(f.na())) re.parse_fail("expected one entry per composite a-mode");
  ComplexVector g(f.na());
  for (std::size_t i = 0; i < re.size(); ++i) {
    g[static_cast<Eigen::Index>(i)] = Complex(re[i].number(), free.has("im") ? free["im"][i].number() : 0.0);
  }
  const double norm = g.norm();
  if (norm == 0.0) re.parse_fail("free fermion mode vector is zero");
  g /= norm;
  Statistics third = Statistics::Fermion;
  if (root.has("distinguishable")) {
    const auto text = root["distinguishable"].string();
    if (text == "Boson") {
      third = Statistics::Boson;
    } else if (text != "Fermion") {
      root["distinguishable"].parse_fail("expected \"Fermion\" or \"Boson\"");
    }
  }
  const SpinLabel spin = root.has("free_spin") ? root["free_spin"].spin() : f.spin_a();
  return {std::move(f), std::move(g), spin, third};
}

// ---------------------------------------------------------------------------
// Reports

inline json to_json(const NormStatus& s) {
  json out{{"status", std::string(to_string(s.kind))}};
  out["value"] = s.is_finite() ? json(s.value) : json(nullptr);
  return out;
}

inline json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

inline json to_json(const DeviationReport& r) {
  return {{"kind", std::string(to_string(r.kind))},
          {"theta", {{"re", r.theta.real()}, {"im", r.theta.imag()}}},
          {"lambda", r.lambda_value},
          {"norm", to_json(r.norm_status)},
          {"exp_theta_a", optional_number(r.exp_theta_a)},
          {"exp_theta_b", optional_number(r.exp_theta_b)}};
}

inline json to_json(const ThreeParticleNormReport& r) {
  return {{"status", std::string(to_string(r.status))},
          {"inverse_norm_sq", r.inverse_norm_sq},
          {"written_expression", r.written_expression},
          {"oracle_norm_sq", optional_number(r.oracle_norm_sq)},
          {"convention_note", r.convention_note}};
}

inline json to_json(const PreparabilityVerdict& v) {
  return {{"status", std::string(to_string(v.status))}, {"evidence", v.evidence},
          {"method", std::string(to_string(v.method))}};
}

}  // namespace composite::io
