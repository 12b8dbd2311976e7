// pnfield: finite-field construction, counting sweeps, subset searches and
// the claim-verification suite.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "pnfield/cli.hpp"
#include "pnfield/errors.hpp"

namespace {

using pnfield::cli::Format;
using pnfield::cli::RunConfig;

struct Options {
  RunConfig cfg;
  std::string out;
  std::string format = "csv";
};

void addCommon(CLI::App* cmd, Options* o) {
  cmd->add_option("--seed", o->cfg.seed, "Seed for every randomized choice");
  cmd->add_option("--budget", o->cfg.budget, "Element-count cap (default $PNFIELD_BUDGET or 2^24)");
  cmd->add_option("--out", o->out, "Write output to this file instead of stdout");
  cmd->add_option("--format", o->format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Primitive and normal elements in finite fields"};
  app.require_subcommand(1);
  Options o;
  o.cfg.budget = pnfield::cli::defaultBudget();

  auto* info = app.add_subcommand("info", "Describe a field");
  info->add_option("--field", o.cfg.fieldSpec, "Field as p^k:n[:basePoly][:extPoly]")->required();
  addCommon(info, &o);

  auto* verify = app.add_subcommand("verify", "Run the claim-verification suite");
  verify->add_option("--range", o.cfg.range, "Max q^n, or qlo..qhixnlo..nhi")
      ->default_val("256");
  verify->add_option("--trials", o.cfg.trials, "Character-sum subset pairs per field");
  addCommon(verify, &o);

  auto* sweep = app.add_subcommand("sweep", "Exact density table over a field range");
  sweep->add_option("--range", o.cfg.range, "Max q^n, or qlo..qhixnlo..nhi")->required();
  addCommon(sweep, &o);

  auto* search = app.add_subcommand("search", "Scan a subset for primitive normal elements");
  search->add_option("--field", o.cfg.fieldSpec, "Field as p^k:n[:basePoly][:extPoly]")->required();
  search->add_option("--subset", o.cfg.subset, "Subset as JSON, e.g. {\"kind\":\"heightBox\",\"d\":2,\"H\":1}");
  search->add_option("--epsilon", o.cfg.epsilon, "Exponent slack in the threshold size");
  addCommon(search, &o);

  auto* experiment = app.add_subcommand("experiment", "Random subsets at the threshold size");
  experiment->add_option("--field", o.cfg.fieldSpec, "Field as p^k:n[:basePoly][:extPoly]")->required();
  experiment->add_option("--subset", o.cfg.subset, "Family to draw from (JSON); default the whole field");
  experiment->add_option("--epsilon", o.cfg.epsilon, "Exponent slack in the threshold size");
  experiment->add_option("--multiplier", o.cfg.multiplier, "Constant in front of the threshold");
  experiment->add_option("--trials", o.cfg.trials, "Number of subsets");
  addCommon(experiment, &o);

  auto* conjecture = app.add_subcommand("conjecture", "Track one element across extensions");
  conjecture->add_option("--field", o.cfg.fieldSpec, "Field holding alpha, as p^k:m")->required();
  conjecture->add_option("--alpha", o.cfg.alpha, "Coordinates of alpha; default the reference element");
  conjecture->add_option("--range", o.cfg.range, "Extension degrees lo..hi")->default_val("2..8");
  addCommon(conjecture, &o);

  CLI11_PARSE(app, argc, argv);
  o.cfg.format = o.format == "json" ? Format::kJson : Format::kCsv;

  std::ostringstream buffer;
  int code = 0;
  try {
    if (info->parsed()) pnfield::cli::cmdFieldInfo(o.cfg, buffer);
    if (verify->parsed()) code = pnfield::cli::cmdVerify(o.cfg, buffer);
    if (sweep->parsed()) pnfield::cli::cmdSweep(o.cfg, buffer);
    if (search->parsed()) pnfield::cli::cmdSearch(o.cfg, buffer);
    if (experiment->parsed()) pnfield::cli::cmdExperiment(o.cfg, buffer);
    if (conjecture->parsed()) pnfield::cli::cmdConjecture(o.cfg, buffer);
  } catch (const pnfield::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }

  if (o.out.empty()) {
    std::cout << buffer.str();
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!(f << buffer.str()) || !f.flush()) {
      std::cerr << "error: cannot write " << o.out << '\n';
      return 3;
    }
  }
  return code;
}
