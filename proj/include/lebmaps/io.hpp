#pragma once

// File formats. Maps, branches and arc elements are JSON with knots written
// as [x, y, dy] triples; tabular output is CSV with 12 significant digits.

#include <filesystem>
#include <span>
#include <string>

#include "lebmaps/branch.hpp"
#include "lebmaps/circle_map.hpp"
#include "lebmaps/homotopy.hpp"
#include "lebmaps/parametrization.hpp"
#include "lebmaps/transfer.hpp"

namespace lebmaps::io {

/// 12 significant digits.
std::string format_number(double v);

std::string map_to_json(const CircleMap& m);
CircleMap map_from_json(const std::string& text);
std::string branch_to_json(const BranchFunction& b);
BranchFunction branch_from_json(const std::string& text);
std::string gamma_to_json(const GammaElement& g);
GammaElement gamma_from_json(const std::string& text);

/// ParseError if the file cannot be read.
std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

CircleMap read_map(const std::filesystem::path& path);
BranchFunction read_branch(const std::filesystem::path& path);
void write_map(const std::filesystem::path& path, const CircleMap& m);
void write_branch(const std::filesystem::path& path, const BranchFunction& b);

/// Normalized map at x = i/N, i = 0..N, columns x,f,df. The branch point
/// appears twice, once with the value of each branch.
std::string map_csv(const CircleMap& m, std::size_t nodes);
std::string density_csv(const DensityGrid& h);
std::string history_csv(std::span<const double> residuals);

/// sample_KKKK.json per sample plus index.csv.
void write_path(const std::filesystem::path& dir, const HomotopyPath& path);

}  // namespace lebmaps::io
