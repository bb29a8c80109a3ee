#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "vbslab/report.hpp"

namespace {

vbslab::Sign parse_sign(const std::string& text) {
  if (text == "+" || text == "plus") return vbslab::Sign::plus;
  if (text == "-" || text == "minus") return vbslab::Sign::minus;
  throw CLI::ValidationError("sign", "expected + or -");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spin-1 valence-bond chain with general open boundaries"};
  app.require_subcommand(1);

  vbslab::RunConfig config;
  std::string nl, nr, sign_l = "+", sign_r = "+", format = "csv";
  double tol = 0.0;

  const std::map<std::string, vbslab::OutputFormat> formats{
      {"csv", vbslab::OutputFormat::csv},
      {"json", vbslab::OutputFormat::json},
      {"markdown", vbslab::OutputFormat::markdown}};

  const std::vector<std::pair<vbslab::Command, CLI::App*>> commands{
      {vbslab::Command::tables, app.add_subcommand("tables", "Nearest-neighbour negativity and realignment tables")},
      {vbslab::Command::entropy_scan, app.add_subcommand("entropy-scan", "Block entropy against block length")},
      {vbslab::Command::compare_xx, app.add_subcommand("compare-xx", "Boundary term of a critical XX chain")},
      {vbslab::Command::verify, app.add_subcommand("verify", "Self-consistency checks and findings")}};

  for (const auto& [command, sub] : commands) {
    sub->add_option("--nl", nl, "Left boundary distance (integer or inf)");
    sub->add_option("--nr", nr, "Right boundary distance (integer or inf)");
    sub->add_option("--sign-l", sign_l, "Left boundary operator sign (+ or -)");
    sub->add_option("--sign-r", sign_r, "Right boundary operator sign (+ or -)");
    sub->add_option("--lmin", config.l_min, "Smallest block length");
    sub->add_option("--lmax", config.l_max, "Largest block length");
    sub->add_option("--k", config.exponent_k, "Exponent K of the XX boundary term");
    sub->add_option("--format", format, "csv, json or markdown")->check(CLI::IsMember({"csv", "json", "markdown"}));
    sub->add_option("--out", config.out_path, "Output file (default stdout)");
    sub->add_option("--tol", tol, "Tolerance override");
    sub->callback([&config, command = command] { config.command = command; });
  }

  try {
    app.parse(argc, argv);
    if (!nl.empty()) config.left = vbslab::BoundaryDistance::parse(nl);
    if (!nr.empty()) config.right = vbslab::BoundaryDistance::parse(nr);
    config.sign_left = parse_sign(sign_l);
    config.sign_right = parse_sign(sign_r);
    config.format = formats.at(format);
    for (const auto& [command, sub] : commands)
      if (sub->parsed() && sub->count("--tol")) config.tolerance = tol;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  return vbslab::run_command(config, std::cout, std::cerr);
}
