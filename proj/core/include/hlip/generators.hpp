#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hlip/maximal.hpp"
#include "hlip/surface.hpp"

namespace hlip {

// phi = eps * y1.
GridFunction linear_graph(const GridSpec& grid, double eps);

// One sample per grid node of the graph of phi; provenance is recorded in the meta.
BoundaryCloud graph_cloud(const GridFunction& phi, const std::string& provenance = "graph");
BoundaryCloud flat_cloud(const GridSpec& grid);
BoundaryCloud linear_cloud(const GridSpec& grid, double eps);

struct ClusterSpec {
    WPoint center;
    std::size_t count = 16;
    double height = 0.5;
};

struct CorruptedCloud {
    BoundaryCloud cloud;
    std::vector<std::size_t> members;
    double injected_mass = 0.0;  // sum of member weights
};

// Moves the count samples nearest to center (box distance of projections, ties
// by index) to height spec.height above their projection and flips their normals.
CorruptedCloud corrupt_cluster(const BoundaryCloud& cloud, const ClusterSpec& spec);

// Removes the samples whose projection lies in D_radius(center).
BoundaryCloud delete_patch(const BoundaryCloud& cloud, const WPoint& center, double radius);

// Sum of a few random low-frequency products of sines, scaled to sup <= amplitude.
GridFunction random_smooth_graph(const GridSpec& grid, std::uint64_t seed, double amplitude, int modes = 3);

// Random atoms on the cells of support with the given total mass.
DiscreteMeasure random_measure(const GridSpec& grid, const CellMask& support, double total, std::size_t atoms,
                               std::uint64_t seed);

struct SolverInstance {
    GridFunction phi;
    double boundary_value = 0.0;
    int iterations = 0;
    bool converged = false;
    double calibration_gap = 0.0;
};

// Minimizer with constant boundary data from a noisy start.
SolverInstance solver_graph(const GridSpec& grid, double boundary_value, double noise, std::uint64_t seed,
                            int max_iter = 5000);

}  // namespace hlip
