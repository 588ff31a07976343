#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hlip/maximal.hpp"
#include "hlip/surface.hpp"

namespace hlip {

// Scale ratios outer : scan : inner required by the approximation hypotheses. The
// literal values make the inner disk a single cell at any practical resolution,
// so pipelines run at reduced ratios and these are kept for reference.
struct ScaleRatios {
    double outer = 5124.0;
    double scan = 256.0;
    double inner = 1.0;
};
inline constexpr ScaleRatios kReferenceRatios{};
inline constexpr double kReferenceMuDiskRatio = 1.0 / 5124.0;    // D_{k/5124}
inline constexpr double kReferenceMuScaleRatio = 1.0 / 20496.0;  // s = k/20496

enum class ExtensionPolicy {
    measured,  // cone constant = observed ratio of the M0 heights
    fixed,     // cone constant = M(cone_L); the M0 heights must satisfy L = cone_L
};

struct PipelineConfig {
    double delta1 = 0.05;
    std::vector<double> scales{0.25, 0.5};
    double tau = 0.0;  // 0 selects two grid spacings
    int orientation = 1;
    double alpha = 0.25;
    double gamma2 = 1.0;
    double outer_radius = 2.0;     // scale of e(outer)
    double sigma = 4.0 / 3.0;      // disk D_sigma carrying mu
    double mu_scale = 0.0;         // scale s of M mu; 0 selects sigma / 4
    ExtensionPolicy extension = ExtensionPolicy::measured;
    double cone_L = 0.07;          // L(n) for the fixed policy and the representative region
    double cone_floor = 1e-3;      // lower bound of the measured cone constant
    std::optional<double> sup_bound;
    bool representative = false;   // also pin heights over the representative region
    std::size_t lip_pairs = 200000;
    std::uint64_t seed = kDefaultSeed;
    LadderOptions ladder;
    int center_stride = 2;         // phi-maximal centres every stride-th node per axis
    // Constant of the phi-maximal Lipschitz lemma; measured per run when unset.
    std::optional<double> phi_lemma_constant;

    void validate() const;
    double tau_for(const GridSpec& grid) const;
    double mu_scale_or_default() const { return mu_scale > 0.0 ? mu_scale : sigma / 4.0; }
};

// Grid with cells covering D_sigma: z half-width sigma, t half-width sigma^2.
GridSpec pipeline_grid(int n, double sigma, double h);

// Box-norm diameter of one cell.
double cell_diameter(const GridSpec& grid);

std::vector<std::size_t> select_m0(const CloudIndex& index, const PipelineConfig& config);
std::vector<std::size_t> select_m0(const BoundaryCloud& cloud, const PipelineConfig& config);

struct PartialHeights {
    CellMask known;
    std::vector<double> values;
    std::size_t deposits = 0;
    std::size_t dropped = 0;  // samples projecting outside the grid
};

// Each sample deposits h(p) at the node nearest to pi(p); several deposits on a
// node are resolved by the weighted median.
PartialHeights heights_on_projection(const BoundaryCloud& cloud, std::span<const std::size_t> samples,
                                     const GridSpec& grid);

// Height of the graph above pi(p), or nothing when pi(p) is off the grid.
std::optional<double> graph_height_at(const GridFunction& phi, const WPoint& w);
// |h(p) - phi(pi(p))| <= tau (1 + cell diameter).
bool sample_matched(const GridFunction& phi, const HPoint& p, double tau);

struct SymDiff {
    double sample_side = 0.0;  // mu_E mass of M \ Gamma
    double graph_side = 0.0;   // area mass of Gamma \ M
    double total = 0.0;
    double hausdorff = 0.0;    // total / delta(n)
    std::size_t unmatched_samples = 0;
    std::size_t uncovered_cells = 0;
};

// M is the part of the cloud in C_1; Gamma is the graph over region (D_1 by default).
SymDiff sym_diff_measure(const CloudIndex& index, const GridFunction& phi, double tau, const CellMask& region);
SymDiff sym_diff_measure(const BoundaryCloud& cloud, const GridFunction& phi, double tau);

// Region cells whose graph point has no sample within tau in the cylinder norm.
CellMask uncovered_cells(const CloudIndex& index, const GridFunction& phi, double tau, const CellMask& region);

struct ApproxResult {
    GridFunction phi;
    std::vector<std::size_t> m0;
    std::size_t cloud_size = 0;
    bool degenerate = false;  // empty M0
    double tau = 0.0;
    double sup_abs = 0.0;
    LipschitzEstimate lip;
    bool lip_ok = true;  // estimate <= 1
    double extension_constant = 0.0;
    double extension_residual = 0.0;
    double input_cone_ratio = 0.0;
    std::size_t representative_cells = 0;
    SymDiff symdiff;
    double l2_gradient = 0.0;  // integral over D_1 of |grad|^2
    std::size_t m0_unmatched = 0;
};

ApproxResult lipschitz_approximation(const BoundaryCloud& cloud, const GridSpec& grid, const PipelineConfig& config);
ApproxResult lipschitz_approximation(const CloudIndex& index, const GridSpec& grid, const PipelineConfig& config);

// Largest set of D_sigma cells whose samples satisfy the cone condition with
// constant L against every sample over D_sigma with |h| < height_window.
CellMask representative_region(const CloudIndex& index, const GridSpec& grid, double sigma, double L,
                               double height_window = 1.0);
// All-pairs reference implementation of the same set.
CellMask representative_region_bruteforce(const BoundaryCloud& cloud, const GridSpec& grid, double sigma, double L,
                                          double height_window = 1.0);

struct MuTerms {
    DiscreteMeasure mu;
    double sample_term = 0.0;  // 2 sum w (1 - <nu_E, nu>)
    double graph_term = 0.0;   // uncovered graph cells
};

// Cell masses of mu over region: twice the excess density of every sample with
// |h| < height_window plus the normalised gradient mass of uncovered graph cells.
MuTerms build_mu(const CloudIndex& index, const GridFunction& phi, const IntrinsicGradient& grad,
                 const CellMask& region, double tau, int orientation = 1, double height_window = 1.0);

struct TruncationResult {
    CellMask K;
    CellMask d1;
    std::size_t k_cells = 0;
    double d1_measure = 0.0;
    double complement_measure = 0.0;  // L(D_1 \ K)
    double excess = 0.0;              // e(outer)
    double eta = 0.0;
    bool zero_excess = false;
    MuTerms mu;
    MaximalField maximal;
    DiskLemmaReport disk_lemma;
    double coincidence_residual = 0.0;
    std::size_t coincidence_samples = 0;
    std::size_t coincidence_uncovered = 0;
    bool coincidence_holds = true;
    LipschitzEstimate lip_on_k;
    double theta = 0.0;       // sqrt(c_sq eta)
    double c_sq = 0.0;        // max over K of [mu_phi]^2 / M mu
    double c_phi = 0.0;       // phi-lemma constant used
    double c_phi_measured = 0.0;
    double lip_certified = 0.0;  // c_phi * theta
    std::size_t phi_pairs = 0;
    bool phi_regime_ok = true;
    double phi_lip_estimate = 0.0;
};

TruncationResult truncate(const CloudIndex& index, const ApproxResult& approx, const PipelineConfig& config);

struct BVReport {
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass = true;
};

// sup |grad| is taken over the whole grid.
BVReport check_bv(const IntrinsicGradient& grad, const CellMask& region);
BVReport check_bv(const GridFunction& phi, const CellMask& region);

struct InclusionCheck {
    std::size_t checked = 0;
    std::size_t violations = 0;
    double worst_ratio = 0.0;  // max of (distance on the right) / (its radius) over the left set
};

struct SandwichReport {
    double lip = 0.0;
    double C = 0.0;
    double R = 0.0;
    bool precondition = true;  // C < 1 / (1 + lip)
    InclusionCheck inner;      // U(x, C r) in pi(B_r(Phi x))
    InclusionCheck outer;      // pi(B_r(Phi x)) in U(x, r)
    InclusionCheck to_disk;    // U(x, r) in D_R(x)
    InclusionCheck from_disk;  // D_r(x) in U(x, R)
    bool pass() const {
        return inner.violations + outer.violations + to_disk.violations + from_disk.violations == 0;
    }
};

SandwichReport check_sandwich(const GridFunction& phi, std::size_t node, double r, double C, double lip);

struct CorollaryQuantity {
    std::string name;
    double value = 0.0;
    double power = 0.0;  // excess exponent
    double ratio = 0.0;  // value / e^power, 0 when e = 0
};

struct CorollaryReport {
    ApproxResult approx;
    TruncationResult truncation;
    GridFunction phi;
    ExtensionResult extension;
    LipschitzEstimate lip;
    SymDiff symdiff;
    double l2_gradient = 0.0;
    std::vector<CorollaryQuantity> quantities;
};

CorollaryReport corollary_report(const BoundaryCloud& cloud, const GridSpec& grid, const PipelineConfig& config);

}  // namespace hlip
