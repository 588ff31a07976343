#pragma once

#include <cstdint>
#include <vector>

#include "hlip/graph.hpp"

namespace hlip {

// Nonnegative cell masses on a W-grid.
class DiscreteMeasure {
public:
    DiscreteMeasure() = default;
    DiscreteMeasure(GridSpec spec, std::vector<double> mass);
    static DiscreteMeasure zero(const GridSpec& spec) { return DiscreteMeasure(spec, std::vector<double>(spec.size(), 0.0)); }

    const GridSpec& spec() const noexcept { return spec_; }
    std::span<const double> mass() const noexcept { return mass_; }
    double operator[](std::size_t i) const { return mass_[i]; }
    double total() const;
    double total(const CellMask& region) const;

private:
    GridSpec spec_;
    std::vector<double> mass_;
};

// Radius at which a disk has the volume of one cell.
double cell_radius(const GridSpec& spec);
// r_min * ratio^k for all k with r < r_max.
std::vector<double> radius_ladder(double r_min, double r_max, double ratio = 1.1);

struct LadderOptions {
    double ratio = 1.1;
    double r_min = 0.0;  // 0 selects cell_radius
};

struct MaximalField {
    GridSpec spec;
    std::vector<double> values;
    CellMask domain;  // cells of D_{4s}
    double s = 0.0;
};

// Local maximal function sup_r mu(D_r(x)) / (kappa r^(2n+1)) over the ladder
// restricted to r < 4s - |x|.
MaximalField disk_maximal(const DiscreteMeasure& mu, double s, const LadderOptions& ladder = {});

struct Superlevel {
    CellMask mask;
    std::size_t count = 0;
    double measure = 0.0;
};

// Cells of the field's domain where the value exceeds theta.
Superlevel superlevel(const MaximalField& field, double theta);
Superlevel superlevel(const GridSpec& spec, std::span<const double> values, const CellMask& domain, double theta);

enum class LemmaStatus { pass, fail, hypothesis_failed };
const char* to_string(LemmaStatus s);

struct DiskLemmaReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double hypothesis_lhs = 0.0;  // mu(D_{4s})
    double hypothesis_rhs = 0.0;  // theta kappa s^(2n+1) / 5^(2n+1)
    double slack = 0.05;
    LemmaStatus status = LemmaStatus::pass;
};

DiskLemmaReport check_disk_lemma(const DiscreteMeasure& mu, double s, double theta, double r,
                                 const LadderOptions& ladder = {});
DiskLemmaReport check_disk_lemma(const DiscreteMeasure& mu, const MaximalField& field, double theta, double r);

struct Ball {
    HPoint center;
    double radius = 0.0;
};

// Greedy 5r selection: descending radius, ties by index, keep d_inf-disjoint balls.
std::vector<std::size_t> vitali_5r(std::span<const Ball> balls);

struct VitaliCheck {
    bool disjoint = true;
    bool covered = true;
    double worst_cover_ratio = 0.0;  // max over inputs of min over selected (d + r) / (5 R)
};

VitaliCheck verify_vitali(std::span<const Ball> balls, std::span<const std::size_t> selected);

// Density |grad| times cell volume.
DiscreteMeasure gradient_measure(const IntrinsicGradient& grad);

struct PhiMaximalSettings {
    double gamma2 = 1.0;
    double c_L = 1.0;  // empirical quasi-triangle constant
    double ratio = 1.1;
    double r_min = 0.0;
    double ell = 0.07;  // small-L regime threshold on the Lipschitz estimate
    std::size_t lip_pairs = 20000;
    // Centres to evaluate; empty means every node.
    CellMask centers;
};

inline double rho_constant(double gamma2) { return 64.0 * gamma2 + 2.0; }

struct PhiMaximalField {
    GridSpec spec;
    std::vector<double> values;
    CellMask evaluated;
    std::vector<double> dist_to_origin;  // d_phi(x, 0) for evaluated centres
    double s = 0.0;
    double rho = 0.0;
    double c_L = 1.0;
    double gamma2 = 1.0;
    double lip_estimate = 0.0;
    bool regime_ok = true;
};

// sup over the ladder of mu_phi(U_phi(x,r)) / L(U_phi(x,r)) for r below both
// r_phi(x,s) = rho/c_L s - d_phi(x,0) and the largest radius whose ball stays on the grid.
PhiMaximalField phi_maximal(const GridFunction& phi, const DiscreteMeasure& mu_phi, double s,
                            const PhiMaximalSettings& settings = {});

struct PhiLemmaReport {
    double worst_ratio = 0.0;
    std::size_t pairs = 0;
    std::size_t candidates = 0;
};

// max |phi(x)-phi(y)| / (theta d_phi(x,y)) over evaluated centres of U_phi(0,s) outside J^phi_theta.
PhiLemmaReport check_phi_lemma(const GridFunction& phi, const PhiMaximalField& field, double theta,
                               std::size_t pair_budget = 200000, std::uint64_t seed = kDefaultSeed);

struct PoincareReport {
    double numerator = 0.0;
    double denominator = 0.0;
    double ratio = 0.0;
    double c2 = 2.0;
    bool violation_candidate = false;
    bool exits_grid = false;
};

PoincareReport check_poincare(const GridFunction& phi, const IntrinsicGradient& grad, const WPoint& x, double r,
                              double p, double gamma2 = 1.0);

struct BallConstants {
    double c1 = 0.0;
    double c2 = 0.0;
    double c_L = 1.0;
    std::size_t balls_used = 0;
    std::size_t triples_used = 0;
};

struct BallSample {
    std::size_t node;
    double radius;
};

BallConstants estimate_ball_constants(const GridFunction& phi, std::span<const BallSample> balls,
                                      std::size_t triples = 2000, std::uint64_t seed = kDefaultSeed);

}  // namespace hlip
