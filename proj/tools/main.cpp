#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "lebmaps/cli.hpp"

namespace {

int report(const lebmaps::cli::CommandOutcome& outcome) {
  if (!outcome.output.empty()) std::cout << outcome.output;
  std::ostream& log = outcome.output.empty() ? std::cout : std::cerr;
  for (const std::string& line : outcome.details) log << line << '\n';
  log << outcome.summary << '\n';
  if (outcome.report_path) log << "wrote " << outcome.report_path->string() << '\n';
  return outcome.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace lebmaps::cli;

  CLI::App app{"Lebesgue-preserving expanding circle maps of degree 2"};
  app.require_subcommand(1);

  ExtendOptions extend;
  std::string method = "both";
  auto* c_extend = app.add_subcommand("extend", "extend a first branch to a Lebesgue-preserving map");
  c_extend->add_option("input", extend.input, "branch JSON file")->required();
  c_extend->add_option("--method", method, "ode, transport or both")
      ->check(CLI::IsMember({"ode", "transport", "both"}));
  c_extend->add_option("--step", extend.step, "RK4 step")->check(CLI::PositiveNumber);
  c_extend->add_option("--tol", extend.tol, "half-step error tolerance")->check(CLI::PositiveNumber);
  c_extend->add_option("--out", extend.out, "map JSON output");

  VerifyOptions verify;
  auto* c_verify = app.add_subcommand("verify", "validate a map");
  c_verify->add_option("input", verify.input, "map JSON file")->required();
  c_verify->add_option("--grid", verify.grid, "residual grid cells")->check(CLI::PositiveNumber);
  c_verify->add_option("--tol", verify.tol, "preservation and gluing tolerance")->check(CLI::PositiveNumber);

  DensityOptions density;
  auto* c_density = app.add_subcommand("density", "iterate the transfer operator from the constant density");
  c_density->add_option("input", density.input, "map JSON file")->required();
  c_density->add_option("--iters", density.iters, "maximum iterations");
  c_density->add_option("--grid", density.grid, "density grid cells")->check(CLI::Range(16, 1 << 24));
  c_density->add_option("--tol", density.tol, "sup-norm residual tolerance")->check(CLI::PositiveNumber);
  c_density->add_option("--out", density.out, "density CSV output (history goes next to it)");

  PathOptions path;
  auto* c_path = app.add_subcommand("path", "homotopy from a map to the doubling map");
  c_path->add_option("input", path.input, "map JSON file")->required();
  c_path->add_option("--steps", path.steps, "number of steps K")->check(CLI::PositiveNumber);
  c_path->add_option("--tol", path.tol, "preservation tolerance per sample")->check(CLI::PositiveNumber);
  c_path->add_option("--out", path.out, "output directory");

  LoopOptions loop;
  auto* c_loop = app.add_subcommand("loop", "rotation loop of the doubling map and its winding number");
  c_loop->add_option("--steps", loop.steps, "number of steps K");
  c_loop->add_option("--tol", loop.tol, "preservation tolerance per sample")->check(CLI::PositiveNumber);
  c_loop->add_option("--out", loop.out, "output directory");

  ExportOptions exp;
  std::string format = "csv";
  auto* c_export = app.add_subcommand("export", "sample x, f(x), f'(x) on a uniform grid");
  c_export->add_option("input", exp.input, "map JSON file")->required();
  c_export->add_option("--format", format, "output format")->check(CLI::IsMember({"csv"}));
  c_export->add_option("--grid", exp.grid, "number of cells N")->check(CLI::PositiveNumber);
  c_export->add_option("--out", exp.out, "CSV output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  if (*c_extend) {
    extend.method = method == "ode" ? ExtendMethod::Ode
                    : method == "transport" ? ExtendMethod::Transport
                                            : ExtendMethod::Both;
    return report(run_extend(extend));
  }
  if (*c_verify) return report(run_verify(verify));
  if (*c_density) return report(run_density(density));
  if (*c_path) return report(run_path(path));
  if (*c_loop) return report(run_loop(loop));
  return report(run_export(exp));
}
