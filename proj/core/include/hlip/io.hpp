#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "hlip/surface.hpp"

namespace hlip {

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Text header (magic, version, n, origin, spacing, counts, mask flag) followed by
// little-endian float64 node values and, when flagged, one byte per node of the
// boundary mask.
void write_grid(const std::filesystem::path& path, const GridFunction& phi);
GridFunction read_grid(const std::filesystem::path& path);

// Text header (magic, version, n, count, meta) followed by count records of
// 4n+2 little-endian float64 values.
void write_cloud(const std::filesystem::path& path, const BoundaryCloud& cloud);
BoundaryCloud read_cloud(const std::filesystem::path& path);

struct CsvColumn {
    std::string name;
    std::span<const double> values;
};

// One row per node: W coordinates followed by the given columns.
void write_nodes_csv(const std::filesystem::path& path, const GridSpec& grid, std::span<const CsvColumn> columns);

std::vector<double> mask_values(const CellMask& mask);

}  // namespace hlip
