#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hlip/grid.hpp"

namespace hlip {

inline constexpr std::uint64_t kDefaultSeed = 0x9e3779b97f4a7c15ull;

// Raised when a function on W fails to define an intrinsic graph
// (two distinct graph points with vanishing projected gap but distinct heights).
class InvalidGraphError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// Components (X2 phi..Xn phi, B phi, Y2 phi..Yn phi), one field each.
class IntrinsicGradient {
public:
    IntrinsicGradient() = default;
    IntrinsicGradient(GridSpec spec, std::vector<std::vector<double>> components);

    const GridSpec& spec() const noexcept { return spec_; }
    int components() const noexcept { return static_cast<int>(comp_.size()); }
    const std::vector<double>& component(int k) const { return comp_[static_cast<std::size_t>(k)]; }
    // Index of the Burgers component.
    int burgers_index() const noexcept { return spec_.n() - 1; }

    double norm_sq(std::size_t node) const;
    double norm(std::size_t node) const { return std::sqrt(norm_sq(node)); }
    double sup_norm() const;
    double sup_norm(const CellMask& region) const;

private:
    GridSpec spec_;
    std::vector<std::vector<double>> comp_;
};

// Partial derivative along one axis at a node. Centered when both neighbours are
// available, second-order one-sided otherwise, first-order as a last resort.
// With a stencil region, only nodes inside it are used.
double axis_derivative(const GridSpec& spec, std::span<const double> f, std::size_t node, int axis,
                       const CellMask* stencil_region = nullptr);

IntrinsicGradient intrinsic_gradient(const GridFunction& phi);
// Stencils confined to stencil_region; used when values outside are not trusted.
IntrinsicGradient intrinsic_gradient(const GridFunction& phi, const CellMask& stencil_region);

// Phi(w) = w * phi(w) e1.
HPoint graph_map(const GridFunction& phi, const WPoint& w);
HPoint graph_point(const GridFunction& phi, std::size_t node);
std::vector<HPoint> graph_points(const GridFunction& phi);

// Symmetrized projected gap between two graph points.
inline double graph_distance(const HPoint& a, const HPoint& b) {
    return 0.5 * (projected_gap(a, b) + projected_gap(b, a));
}
double graph_distance(const GridFunction& phi, const WPoint& w, const WPoint& v);

struct PhiBall {
    std::vector<std::size_t> cells;
    double measure = 0.0;
    bool exits_grid = false;
};

PhiBall phi_ball(const GridFunction& phi, const WPoint& x, double r);
PhiBall phi_ball(const GridSpec& spec, std::span<const HPoint> graph, const HPoint& center, double r);

struct LipschitzOptions {
    std::size_t pair_budget = 200000;
    std::uint64_t seed = kDefaultSeed;
    // Restricts both endpoints to this node subset when non-empty.
    CellMask subset;
    // Half-width (in nodes) of the neighbourhood used for local pairs.
    int local_window = 2;
};

struct LipschitzEstimate {
    double value = 0.0;
    std::size_t pairs = 0;
    bool exhaustive = false;
};

// Lower bound for the intrinsic Lipschitz constant from node pairs. When the
// budget covers every pair the max is exact over the subset; otherwise half the
// pairs are global and half local, drawn from a seeded stream so that a larger
// budget extends a smaller one.
LipschitzEstimate lipschitz_estimate(const GridFunction& phi, const LipschitzOptions& opt);
double lipschitz_estimate(const GridFunction& phi, std::size_t pair_budget, std::uint64_t seed = kDefaultSeed);

// Constant M(L) of the intrinsic Lipschitz extension.
double extension_constant(double L);

struct ExtensionOptions {
    std::optional<double> sup_bound;
    // Allowed change between the sweep and the group-law re-evaluation.
    double tol = 1e-10;
    // Pairs checked for the cone condition on the input; exhaustive when it suffices.
    std::size_t verify_pair_budget = 20'000'000;
    double cone_slack = 1e-9;
    bool verify_input = true;
    // Uses this constant instead of M(L) when set.
    std::optional<double> constant_override;
};

struct ExtensionResult {
    GridFunction function;
    double constant = 0.0;  // cone constant actually used
    int iterations = 0;
    double residual = 0.0;
    double input_cone_ratio = 0.0;  // largest observed ratio on the known set
};

// Cone (McShane type) extension from the known nodes to the whole grid.
// values must have one entry per node; entries outside known are ignored.
ExtensionResult extend_lipschitz(const GridSpec& spec, const CellMask& known, std::span<const double> values,
                                 double L, const ExtensionOptions& opt = {});

// phi_lambda with phi_lambda(delta_lambda w) = lambda phi(w) on the dilated grid.
GridFunction dilate_graph(double lambda, const GridFunction& phi);
// Same, resampled on a target grid by interpolation of phi at delta_{1/lambda}(w).
GridFunction dilate_graph(double lambda, const GridFunction& phi, const GridSpec& target);

}  // namespace hlip
