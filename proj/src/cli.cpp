#include "lebmaps/cli.hpp"

#include <algorithm>
#include <sstream>

#include "lebmaps/error.hpp"
#include "lebmaps/io.hpp"

namespace lebmaps::cli {
namespace {

using io::format_number;

CommandOutcome input_error(const std::exception& e) {
  CommandOutcome out;
  out.exit_code = kExitInput;
  out.summary = std::string("input error: ") + e.what();
  return out;
}

CommandOutcome failure(const std::exception& e) {
  CommandOutcome out;
  out.exit_code = kExitValidation;
  out.summary = std::string("failed: ") + e.what();
  return out;
}

std::string verdict(bool ok) { return ok ? "pass" : "FAIL"; }

void deliver(CommandOutcome& outcome, const std::optional<std::filesystem::path>& out, const std::string& payload) {
  if (out) {
    io::write_text(*out, payload);
    outcome.report_path = *out;
  } else {
    outcome.output = payload;
  }
}

}  // namespace

std::filesystem::path history_path(const std::filesystem::path& density_out) {
  std::filesystem::path p = density_out;
  p.replace_extension(".history.csv");
  return p;
}

CommandOutcome run_extend(const ExtendOptions& options) {
  std::optional<BranchFunction> f1;
  try {
    f1 = io::read_branch(options.input);
  } catch (const std::exception& e) {
    return input_error(e);
  }
  CommandOutcome outcome;
  try {
    std::optional<ExtensionResult> primary;
    std::ostringstream summary;
    if (options.method != ExtendMethod::Ode) primary = extend_by_transport(*f1);
    if (options.method != ExtendMethod::Transport) {
      ExtensionResult ode = extend_by_ode(*f1, options.step, options.tol);
      outcome.details.push_back("ode: steps " + std::to_string(ode.steps_used) + ", half-step estimate " +
                                format_number(ode.error_estimate) + ", closure " + format_number(ode.closure_residual));
      if (primary) {
        const double diff = branch_sup_difference(primary->map.branch2(), ode.map.branch2());
        summary << "cross-check sup difference " << format_number(diff) << "; ";
        if (diff > kCrossCheckTol) outcome.exit_code = kExitValidation;
      } else {
        primary = std::move(ode);
      }
    }
    summary << "extended map: branch point " << format_number(primary->map.branch_point()) << ", closure "
            << format_number(primary->closure_residual) << ", balance defect "
            << format_number(balance_defect(primary->map));
    outcome.summary = summary.str();
    deliver(outcome, options.out, io::map_to_json(primary->map) + "\n");
  } catch (const std::exception& e) {
    return failure(e);
  }
  return outcome;
}

CommandOutcome run_verify(const VerifyOptions& options) {
  std::optional<CircleMap> m;
  try {
    m = io::read_map(options.input);
  } catch (const std::exception& e) {
    return input_error(e);
  }
  try {
    Tolerances tol;
    tol.preservation = options.tol;
    tol.gluing = options.tol;
    const ValidationReport r = validate_map(*m, options.grid);
    CommandOutcome outcome;
    outcome.details = {
        "is_full_branch " + std::string(r.is_full_branch ? "true" : "false"),
        "is_expanding " + std::string(r.is_expanding ? "true" : "false"),
        "min_derivative " + format_number(r.min_derivative),
        "preservation_residual " + format_number(r.preservation_residual),
        "gluing_residual " + format_number(r.gluing_residual),
        "closure_residual " + format_number(r.closure_residual),
    };
    std::ostringstream s;
    s << "full branch " << verdict(r.is_full_branch) << ", expanding " << verdict(r.is_expanding)
      << ", preservation " << verdict(r.preserves_lebesgue(tol)) << " (" << format_number(r.preservation_residual)
      << "), gluing " << verdict(r.is_c1(tol)) << " (" << format_number(r.gluing_residual) << ")";
    outcome.summary = s.str();
    outcome.exit_code = r.in_space(tol) ? kExitOk : kExitValidation;
    return outcome;
  } catch (const std::exception& e) {
    return failure(e);
  }
}

CommandOutcome run_density(const DensityOptions& options) {
  std::optional<CircleMap> m;
  try {
    m = io::read_map(options.input);
  } catch (const std::exception& e) {
    return input_error(e);
  }
  try {
    const InvariantDensityResult r =
        iterate_to_invariant(*m, DensityGrid::constant(options.grid), options.iters, options.tol);
    CommandOutcome outcome;
    std::ostringstream s;
    s << (r.converged ? "converged" : "not converged") << " after " << r.iterations << " iterations, residual "
      << format_number(r.residuals.back());
    outcome.summary = s.str();
    outcome.exit_code = r.converged ? kExitOk : kExitValidation;
    deliver(outcome, options.out, io::density_csv(r.density));
    if (options.out) {
      io::write_text(history_path(*options.out), io::history_csv(r.residuals));
      outcome.details.push_back("history " + history_path(*options.out).string());
    }
    return outcome;
  } catch (const std::exception& e) {
    return failure(e);
  }
}

namespace {

CommandOutcome report_path_outcome(const HomotopyPath& path, double tol, const std::optional<std::filesystem::path>& out) {
  CommandOutcome outcome;
  std::size_t failed = 0;
  double worst = 0.0;
  Tolerances t;
  t.preservation = tol;
  for (const ValidationReport& r : path.reports) {
    if (!r.in_space(t)) ++failed;
    worst = std::max(worst, r.preservation_residual);
  }
  for (const PathLeg& l : path.legs)
    outcome.details.push_back("leg " + std::string(to_string(l.kind)) + " [" + format_number(l.t0) + ", " +
                              format_number(l.t1) + "]" + (l.degenerate ? " degenerate" : ""));
  std::ostringstream s;
  s << path.size() << " samples, " << failed << " failed validation, worst preservation residual "
    << format_number(worst);
  outcome.summary = s.str();
  outcome.exit_code = failed == 0 ? kExitOk : kExitValidation;
  if (out) {
    io::write_path(*out, path);
    outcome.report_path = *out / "index.csv";
  }
  return outcome;
}

}  // namespace

CommandOutcome run_path(const PathOptions& options) {
  std::optional<CircleMap> m;
  try {
    m = io::read_map(options.input);
    const ValidationReport r = validate_map(*m);
    if (!r.in_space())
      throw Error(ErrorCode::NotInSpace, "preservation " + format_number(r.preservation_residual) + ", gluing " +
                                             format_number(r.gluing_residual));
  } catch (const std::exception& e) {
    return input_error(e);
  }
  try {
    return report_path_outcome(build_path(*m, options.steps), options.tol, options.out);
  } catch (const std::exception& e) {
    return failure(e);
  }
}

CommandOutcome run_loop(const LoopOptions& options) {
  if (options.steps < kMinLoopSteps)
    return input_error(Error(ErrorCode::OutOfDomain, "loop needs at least 8 steps"));
  try {
    const HomotopyPath loop = generator_loop(options.steps);
    CommandOutcome outcome = report_path_outcome(loop, options.tol, options.out);
    outcome.summary = "winding number " + std::to_string(winding_number(loop)) + "; " + outcome.summary;
    return outcome;
  } catch (const std::exception& e) {
    return failure(e);
  }
}

CommandOutcome run_export(const ExportOptions& options) {
  std::optional<CircleMap> m;
  try {
    m = io::read_map(options.input);
    if (options.grid < 1) throw Error(ErrorCode::GridTooCoarse, "export needs at least one cell");
  } catch (const std::exception& e) {
    return input_error(e);
  }
  CommandOutcome outcome;
  const std::string csv = io::map_csv(*m, options.grid);
  const auto rows = static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')) - 1;
  outcome.summary = std::to_string(rows) + " rows";
  try {
    deliver(outcome, options.out, csv);
  } catch (const std::exception& e) {
    return failure(e);
  }
  return outcome;
}

}  // namespace lebmaps::cli
