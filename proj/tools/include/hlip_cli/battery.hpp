#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hlip/graph.hpp"

namespace hlip::cli {

struct BatteryItem {
    std::string name;
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::size_t skipped = 0;     // cases whose hypothesis did not hold
    std::size_t nontrivial = 0;  // cases with a nonzero left-hand side
    double worst_lhs = 0.0;
    double worst_rhs = 0.0;
    double worst_ratio = 0.0;  // max lhs / rhs over the cases
    double slack = 0.0;
    bool conditional = false;  // informational, not part of the aggregate verdict
    bool pass() const { return failures == 0; }
};

// BV estimate on random smooth graphs over D_1.
BatteryItem bv_random(std::size_t count, std::uint64_t seed);
// BV estimate on phi = eps y1, where it holds with equality; failures count gaps above tol.
BatteryItem bv_tight(const std::vector<double>& eps, double tol = 1e-9);
// Disk maximal lemma on random measures drawn inside the hypothesis. The grid
// resolves radii below s/5, where the superlevel set lives.
BatteryItem disk_lemma_random(std::size_t count, std::uint64_t seed);
// Greedy 5r selection on random ball families: disjointness and 5-enlargement coverage.
BatteryItem vitali_random(std::size_t count, std::uint64_t seed);
// Ball sandwich and disk comparison for phi = eps y1 at random (x, r).
BatteryItem sandwich_random(std::size_t count, double eps, std::uint64_t seed);
// Poincare ratio at random balls of a random smooth graph (informational).
BatteryItem poincare_probe(std::size_t count, std::uint64_t seed);
// Height-bound ratio of the eps y1 cloud (informational).
BatteryItem height_bound_probe(double eps);

}  // namespace hlip::cli
