#pragma once

// Command implementations behind the lebmaps executable. Each returns an
// outcome instead of exiting so that tests can drive them directly.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lebmaps/circle_map.hpp"
#include "lebmaps/extension.hpp"
#include "lebmaps/homotopy.hpp"
#include "lebmaps/transfer.hpp"

namespace lebmaps::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitInput = 2;

inline constexpr double kCrossCheckTol = 1e-6;
inline constexpr double kDensityTol = 1e-10;
inline constexpr std::size_t kDefaultExportGrid = 1024;

struct CommandOutcome {
  int exit_code = kExitOk;
  std::optional<std::filesystem::path> report_path;
  std::string summary;
  /// extra report lines
  std::vector<std::string> details;
  /// payload for stdout when no output file was requested
  std::string output;
};

enum class ExtendMethod { Ode, Transport, Both };

struct ExtendOptions {
  std::filesystem::path input;
  ExtendMethod method = ExtendMethod::Both;
  double step = kDefaultOdeStep;
  double tol = kDefaultOdeTol;
  std::optional<std::filesystem::path> out;
};

struct VerifyOptions {
  std::filesystem::path input;
  std::size_t grid = kDefaultResidualGrid;
  double tol = Tolerances{}.preservation;
};

struct DensityOptions {
  std::filesystem::path input;
  std::size_t iters = kDefaultMaxIterations;
  std::size_t grid = kDefaultDensityGrid;
  double tol = kDensityTol;
  std::optional<std::filesystem::path> out;
};

struct PathOptions {
  std::filesystem::path input;
  std::size_t steps = kDefaultPathSteps;
  double tol = kPathPreservationTol;
  std::optional<std::filesystem::path> out;
};

struct LoopOptions {
  std::size_t steps = kDefaultPathSteps;
  double tol = kPathPreservationTol;
  std::optional<std::filesystem::path> out;
};

struct ExportOptions {
  std::filesystem::path input;
  std::size_t grid = kDefaultExportGrid;
  std::optional<std::filesystem::path> out;
};

CommandOutcome run_extend(const ExtendOptions& options);
CommandOutcome run_verify(const VerifyOptions& options);
CommandOutcome run_density(const DensityOptions& options);
CommandOutcome run_path(const PathOptions& options);
CommandOutcome run_loop(const LoopOptions& options);
CommandOutcome run_export(const ExportOptions& options);

/// History file written next to a density file: out.csv -> out.history.csv.
std::filesystem::path history_path(const std::filesystem::path& density_out);

}  // namespace lebmaps::cli
