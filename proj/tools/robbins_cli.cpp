// robbins: reproduce thresholds, tables, curves and simulations for the
// full-information expected-rank stopping problem.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "robbins/commands.hpp"

namespace {

using robbins::cmd::Format;
using robbins::cmd::Output;

struct Flags {
  int n = 4;
  int max_n = 5;
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 42;
  double tol = 1e-9;
  int grid = 64;
  int samples = 201;
  unsigned workers = 0;
  std::string format = "json";
  std::string out;
  std::string policy = "exact4";
  std::string level = "quick";
  std::string check;
};

Format parse_format(const std::string& f) {
  if (f == "csv") return Format::Csv;
  if (f == "json") return Format::Json;
  throw robbins::input_error("format must be csv or json");
}

int emit(const Output& o, const std::string& path) {
  if (path.empty()) {
    std::cout << o.text;
  } else {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw robbins::input_error("cannot open output file " + path);
    f << o.text;
  }
  return o.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robbins' problem: optimal thresholds, oracles and simulation"};
  app.require_subcommand(1);
  Flags fl;

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", fl.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", fl.out, "write to PATH instead of standard output");
  };

  auto* table1 = app.add_subcommand("table1", "optimal memoryless expected rank V(n), n = 1..max-n");
  table1->add_option("--max-n,--n", fl.max_n, "largest horizon (<= 50)");
  table1->add_option("--tol", fl.tol, "optimizer objective tolerance");
  add_format(table1);

  auto* thresholds = app.add_subcommand("thresholds", "closed-form optimal thresholds for n = 2, 3, 4");
  thresholds->add_option("--n", fl.n, "horizon")->required();
  add_format(thresholds);

  auto* curve = app.add_subcommand("h2-curve", "n = 4 step-2 threshold h2(x1) on a grid plus breakpoints");
  curve->add_option("--samples", fl.samples, "equally spaced grid points (>= 2)");
  add_format(curve);

  auto* regions = app.add_subcommand("regions", "n = 4 step-3 region labels on a grid x grid raster");
  regions->add_option("--grid", fl.grid, "cells per axis (>= 2)");
  add_format(regions);

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo evaluation of a policy");
  simulate->add_option("--policy", fl.policy, std::string("policy id: ") + std::string(robbins::kPolicyRegistry));
  simulate->add_option("--trials", fl.trials, "number of trials");
  simulate->add_option("--seed", fl.seed, "64-bit seed");
  simulate->add_option("--workers", fl.workers, "threads (0 = all cores); does not change the output");
  add_format(simulate);

  auto* verify = app.add_subcommand("verify", "run the cross-check suite");
  verify->add_option("--level", fl.level, "quick or full")->check(CLI::IsMember({"quick", "full"}));
  verify->add_option("--check", fl.check, "run a single named check");
  verify->add_option("--workers", fl.workers, "threads for simulation checks");
  add_format(verify);

  auto* noinfo = app.add_subcommand("noinfo", "no-information benchmark W(n), n = 1..max-n");
  noinfo->add_option("--max-n,--n", fl.max_n, "largest horizon (<= 10000)");
  add_format(noinfo);

  auto* value = app.add_subcommand("value", "optimal value v(n) by backward induction (n <= 5)");
  value->add_option("--n", fl.n, "horizon")->required();
  value->add_option("--tol", fl.tol, "relative quadrature tolerance");
  add_format(value);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return robbins::cmd::kInputError;
  }

  try {
    const Format fmt = parse_format(fl.format);
    namespace cmd = robbins::cmd;
    if (*table1) return emit(cmd::table1(fl.max_n, fl.tol, fmt), fl.out);
    if (*thresholds) return emit(cmd::thresholds(fl.n, fmt), fl.out);
    if (*curve) return emit(cmd::h2_curve_cmd(fl.samples, fmt), fl.out);
    if (*regions) return emit(cmd::regions(fl.grid, fmt), fl.out);
    if (*simulate) return emit(cmd::simulate(fl.policy, fl.trials, fl.seed, fl.workers, fmt), fl.out);
    if (*noinfo) return emit(cmd::noinfo(fl.max_n, fmt), fl.out);
    if (*value) return emit(cmd::value(fl.n, fl.tol, fmt), fl.out);
    if (*verify) {
      robbins::verify::Context ctx;
      ctx.sim.workers = fl.workers;
      const auto level = fl.level == "full" ? robbins::verify::Level::Full : robbins::verify::Level::Quick;
      return emit(cmd::verify_cmd(level, fl.check, fmt, ctx), fl.out);
    }
  } catch (const robbins::input_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return robbins::cmd::kInputError;
  } catch (const robbins::numerical_error& e) {
    std::cerr << "numerical error: " << e.what() << " (best " << e.best() << ", achieved " << e.achieved() << ")\n";
    return robbins::cmd::kNonConvergence;
  }
  return robbins::cmd::kInputError;
}
