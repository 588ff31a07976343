#include "hlip_cli/battery.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "hlip/approx.hpp"
#include "hlip/generators.hpp"
#include "hlip/maximal.hpp"

namespace hlip::cli {
namespace {

void record(BatteryItem& item, double lhs, double rhs, bool ok) {
    ++item.cases;
    if (!ok) ++item.failures;
    const double ratio = rhs > 0.0 ? lhs / rhs : (lhs > 0.0 ? INFINITY : 0.0);
    if (item.cases == 1 || ratio > item.worst_ratio) {
        item.worst_ratio = ratio;
        item.worst_lhs = lhs;
        item.worst_rhs = rhs;
    }
}

GridSpec unit_disk_grid(double h) { return GridSpec::centered_box(2, 1.0 + h / 2.0, 1.0 + h / 2.0, h); }

}  // namespace

BatteryItem bv_random(std::size_t count, std::uint64_t seed) {
    BatteryItem item{.name = "bv_random", .slack = 1e-9};
    const GridSpec grid = unit_disk_grid(0.125);
    const CellMask d1 = disk_mask(grid, WPoint::zero(2), 1.0);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> amp(0.05, 1.0);
    for (std::size_t k = 0; k < count; ++k) {
        const GridFunction phi = random_smooth_graph(grid, rng(), amp(rng), 3);
        const BVReport rep = check_bv(phi, d1);
        record(item, rep.lhs, rep.rhs, rep.pass);
    }
    return item;
}

BatteryItem bv_tight(const std::vector<double>& eps, double tol) {
    BatteryItem item{.name = "bv_tight", .slack = tol};
    const GridSpec grid = unit_disk_grid(0.125);
    const CellMask d1 = disk_mask(grid, WPoint::zero(2), 1.0);
    for (double e : eps) {
        const BVReport rep = check_bv(linear_graph(grid, e), d1);
        const bool equal = std::abs(rep.lhs - rep.rhs) <= tol * std::max(rep.rhs, 1e-300);
        record(item, rep.lhs, rep.rhs, rep.pass && equal);
    }
    return item;
}

BatteryItem disk_lemma_random(std::size_t count, std::uint64_t seed) {
    BatteryItem item{.name = "disk_lemma", .slack = 0.05};
    // J_theta lies within s/5 of the support, so a grid over D_{1.1 s} carrying
    // mass in D_{0.8 s} sees all of it while the maximal radii reach 4s.
    const double s = 1.0;
    const GridSpec grid = GridSpec::centered_box(2, 1.1, 1.21, 0.1, 0.1);
    const CellMask support = disk_mask(grid, WPoint::zero(2), 0.8 * s);
    const Dimension dim(2);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t k = 0; k < count; ++k) {
        const double theta = 0.5 + 4.0 * unit(rng);
        const double bound = theta * dim.kappa() * std::pow(s, 5) / std::pow(5.0, 5);
        const double total = bound * (0.3 + 0.69 * unit(rng));
        const std::size_t atoms = 1 + static_cast<std::size_t>(unit(rng) * 8.0);
        const double r = 3.0 * s * (0.05 + 0.95 * unit(rng));
        const DiscreteMeasure mu = random_measure(grid, support, total, atoms, rng());
        const DiskLemmaReport rep = check_disk_lemma(mu, s, theta, r);
        if (rep.status == LemmaStatus::hypothesis_failed) {
            ++item.skipped;
            continue;
        }
        if (rep.lhs > 0.0) ++item.nontrivial;
        record(item, rep.lhs, rep.rhs, rep.status == LemmaStatus::pass);
    }
    return item;
}

BatteryItem vitali_random(std::size_t count, std::uint64_t seed) {
    BatteryItem item{.name = "vitali_5r"};
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    std::uniform_real_distribution<double> radius(0.02, 0.6);
    std::uniform_int_distribution<int> size(1, 60);
    for (std::size_t k = 0; k < count; ++k) {
        std::vector<Ball> balls(static_cast<std::size_t>(size(rng)));
        for (Ball& b : balls) {
            b.center = HPoint::zero(2);
            for (int j = 0; j < 2; ++j) {
                b.center.x[j] = coord(rng);
                b.center.y[j] = coord(rng);
            }
            b.center.t = coord(rng);
            b.radius = radius(rng);
        }
        const auto chosen = vitali_5r(balls);
        const VitaliCheck chk = verify_vitali(balls, chosen);
        record(item, chk.worst_cover_ratio, 1.0, chk.disjoint && chk.covered);
    }
    return item;
}

BatteryItem sandwich_random(std::size_t count, double eps, std::uint64_t seed) {
    BatteryItem item{.name = "sandwich"};
    const GridSpec grid = GridSpec::centered_box(2, 1.0, 1.0, 0.1);
    const GridFunction phi = linear_graph(grid, eps);
    const double lip = lipschitz_estimate(phi, 200000, seed);
    const double C = 0.9 / (1.0 + lip);
    std::vector<std::size_t> centres;
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (box_norm(grid.node(i)) < 0.3) centres.push_back(i);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, centres.size() - 1);
    std::uniform_real_distribution<double> radius(0.1, 0.4);
    for (std::size_t k = 0; k < count; ++k) {
        const SandwichReport rep = check_sandwich(phi, centres[pick(rng)], radius(rng), C, lip);
        const double worst = std::max({rep.inner.worst_ratio, rep.outer.worst_ratio, rep.to_disk.worst_ratio,
                                       rep.from_disk.worst_ratio});
        record(item, worst, 1.0, rep.precondition && rep.pass());
    }
    return item;
}

BatteryItem poincare_probe(std::size_t count, std::uint64_t seed) {
    BatteryItem item{.name = "poincare", .conditional = true};
    const GridSpec grid = GridSpec::centered_box(2, 1.0, 1.0, 0.125);
    std::mt19937_64 rng(seed);
    const GridFunction phi = random_smooth_graph(grid, rng(), 0.2, 3);
    const IntrinsicGradient grad = intrinsic_gradient(phi);
    std::uniform_real_distribution<double> coord(-0.2, 0.2);
    std::uniform_real_distribution<double> radius(0.15, 0.3);
    for (std::size_t k = 0; k < count; ++k) {
        WPoint x = WPoint::zero(2);
        for (int a = 0; a < 4; ++a) x.c[a] = coord(rng);
        const PoincareReport rep = check_poincare(phi, grad, x, radius(rng), 1.0);
        if (rep.exits_grid) {
            ++item.skipped;
            continue;
        }
        record(item, rep.numerator, rep.denominator, !rep.violation_candidate);
    }
    return item;
}

BatteryItem height_bound_probe(double eps) {
    BatteryItem item{.name = "height_bound", .conditional = true};
    // Coarse samples carry the excess at 16 r0; weightless fine samples resolve C_{r0}.
    const double r0 = 1.0 / 12.0;
    BoundaryCloud cloud = linear_cloud(pipeline_grid(2, 16.0 * r0, 1.0 / 6.0), eps);
    const BoundaryCloud fine = linear_cloud(GridSpec::centered_box(2, r0, r0 * r0, r0 / 4.0, r0 * r0 / 4.0), eps);
    for (std::size_t i = 0; i < fine.size(); ++i) {
        BoundarySample smp = fine.sample(i);
        smp.weight = 0.0;
        cloud.push_back(smp);
    }
    const HeightBoundReport rep = height_bound_ratio(cloud, r0);
    record(item, rep.sup_height_ratio, std::pow(rep.excess, 0.1), !rep.infinite);
    return item;
}

}  // namespace hlip::cli
