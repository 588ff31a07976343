#pragma once

#include <cstdint>
#include <vector>

#include "hlip/surface.hpp"

namespace hlip {

// Graph competitors with fixed values on a mask that must contain the outer
// node layer, so every free node sits under centred stencils.
struct DirichletProblem {
    GridFunction initial;
    CellMask fixed;
};

DirichletProblem make_dirichlet_problem(GridFunction initial);  // fixes the outer layer
void validate(const DirichletProblem& problem);

// Nodes whose centred stencil stays on the grid.
CellMask interior_mask(const GridSpec& spec);

// Discrete area functional over region (interior nodes only).
double energy(const GridFunction& phi, const CellMask& region);
// Exact derivative of energy with respect to every nodal value.
std::vector<double> energy_gradient(const GridFunction& phi, const CellMask& region);

struct SolverConfig {
    double tol = 1e-8;
    int max_iter = 5000;
    double armijo = 1e-4;
    double shrink = 0.5;
    double initial_step = 1.0;
    int max_backtracks = 80;
};

struct SolveReport {
    GridFunction phi;
    std::vector<double> energy_trace;
    std::vector<double> gradient_trace;  // max-norm over free nodes
    int iterations = 0;
    bool converged = false;
    bool line_search_failed = false;
    double calibration_gap = 0.0;  // energy - L(region)
};

SolveReport solve(const DirichletProblem& problem, const SolverConfig& config = {});

struct GradientCheck {
    double max_rel_error = 0.0;
    std::size_t checked = 0;
};

// Analytic gradient against central differences on up to max_nodes region nodes.
// Differences are taken on the energy restricted to the stencil neighbourhood of
// each node, which is the same function up to a constant.
GradientCheck gradient_check(const GridFunction& phi, const CellMask& region, double step = 1e-6,
                             std::size_t max_nodes = 100, std::uint64_t seed = 7);
// Directional derivatives along random directions against central differences.
GradientCheck directional_check(const GridFunction& phi, const CellMask& region, int directions = 20,
                                double step = 1e-6, std::uint64_t seed = 11);

}  // namespace hlip
