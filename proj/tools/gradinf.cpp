#include "gradinf/report.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Gradient exponents at infinity of polynomials in two variables"};
  app.require_subcommand(1, 1);

  gradinf::Command cmd;
  for (const auto& verb : gradinf::verbs()) {
    auto* sub = app.add_subcommand(verb);
    sub->add_option("--poly", cmd.poly, "polynomial expression")->required();
    sub->add_option("--lambda", cmd.lambda, "rational, root(<polynomial in t>) or generic");
    sub->add_option("--vars", cmd.vars, "comma-separated variable names (default x,y)");
    sub->add_flag("--json", cmd.json, "machine-readable output");
    if (verb == "witness") {
      sub->add_option("--curve", cmd.curve, "comma-separated Laurent polynomials in t")->required();
      sub->add_flag("--not-in-kinf", cmd.not_in_kinf, "assert that lambda is not in K_inf(f)");
    }
    sub->callback([&cmd, verb] { cmd.verb = verb; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? gradinf::kExitOk : gradinf::kExitUsage;
  }

  auto res = gradinf::run_command(cmd);
  std::cout << res.out;
  std::cerr << res.err;
  return res.exit_code;
}
