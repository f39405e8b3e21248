// composite-lab: verification suites, Gaussian deviation sweeps and exclusion demos.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "composite/cli.hpp"

namespace {

constexpr int usage_error = 2;

std::vector<composite::CompositeKind> parse_kinds(const std::vector<std::string>& names) {
  std::vector<composite::CompositeKind> kinds;
  for (const auto& name : names) kinds.push_back(composite::parse_kind(name));
  return kinds;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Composite-particle operator algebra laboratory"};
  app.require_subcommand(1);

  composite::cli::VerifyOptions verify;
  std::string sizes_text;
  auto* verify_cmd = app.add_subcommand("verify-algebra", "Check composite (anti)commutation relations against the Fock oracle");
  verify_cmd->add_option("--seed", verify.seed, "Random seed")->default_val(1);
  verify_cmd->add_option("--sizes", sizes_text, "Comma-separated mode counts, e.g. 2x2,3x3")->required();
  verify_cmd->add_option("--trials", verify.seeds_per_size, "Random distributions per size and kind")
      ->default_val(1)
      ->check(CLI::PositiveNumber);
  verify_cmd->add_flag("--corrupt-theta-sign", verify.corrupt_theta_sign,
                       "Flip the sign of theta in the expected relation (failure-path check)");

  composite::cli::SweepConfig sweep;
  std::vector<double> ratios;
  std::vector<std::string> kind_names{"BB", "FF"};
  std::string out_path;
  std::string format = "csv";
  auto* scan_cmd = app.add_subcommand("deviation-scan", "Closed-form vs numeric deviation table for the Gaussian distribution");
  scan_cmd->add_option("--alpha", sweep.alpha, "alpha")->default_val(1.0);
  scan_cmd->add_option("--beta", sweep.beta, "beta")->default_val(1.0);
  scan_cmd->add_option("--ratios", ratios, "gamma^2/(alpha beta) values in [0, 1]")->delimiter(',')->required();
  scan_cmd->add_option("--kinds", kind_names, "Subset of BB,FF")->delimiter(',');
  scan_cmd->add_option("--out", out_path, "Output file (default: standard output)");
  scan_cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  std::string scenario_path;
  auto* pauli_cmd = app.add_subcommand("pauli-demo", "Preparability verdicts in both formalisms");
  pauli_cmd->add_option("--scenario", scenario_path, "Scenario or three-particle tensor JSON file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*verify_cmd) {
      verify.sizes = composite::cli::parse_sizes(sizes_text);
      if (verify.sizes.empty()) {
        std::cerr << "usage error: --sizes needs at least one NAxNB entry\n";
        return usage_error;
      }
      verify.max_dimension = composite::cli::max_fock_dimension();
      return composite::cli::cmd_verify_algebra(verify, std::cout);
    }
    if (*scan_cmd) {
      sweep.ratios = ratios;
      sweep.kinds = parse_kinds(kind_names);
      sweep.format = format == "json" ? composite::cli::OutputFormat::Json : composite::cli::OutputFormat::Csv;
      if (out_path.empty()) return composite::cli::cmd_deviation_scan(sweep, std::cout);
      std::ofstream out(out_path);
      if (!out) {
        std::cerr << "error: cannot write '" << out_path << "'\n";
        return usage_error;
      }
      return composite::cli::cmd_deviation_scan(sweep, out);
    }
    if (*pauli_cmd) return composite::cli::cmd_pauli_demo(scenario_path, std::cout);
  } catch (const composite::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage_error;
  }
  return usage_error;
}
