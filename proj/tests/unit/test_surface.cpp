#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hlip/generators.hpp"
#include "hlip/surface.hpp"

using namespace hlip;

namespace {

const double kKappa = Dimension(2).kappa();

GridSpec unit_grid(double h) { return GridSpec::centered_box(2, 1.0 + h, 1.0 + h, h); }

BoundaryCloud dilate_cloud(const BoundaryCloud& c, double lambda) {
    BoundaryCloud out(c.n());
    for (std::size_t i = 0; i < c.size(); ++i) {
        BoundarySample s = c.sample(i);
        s.point = dilate(lambda, s.point);
        s.weight *= std::pow(lambda, 5);
        out.push_back(s);
    }
    return out;
}

double brute_excess(const BoundaryCloud& c, const HPoint& p, double r) {
    double sum = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i)
        if (in_cylinder(c.point(i), p, r)) sum += c.weight(i) * (1.0 - c.normal_x1(i));
    return sum / std::pow(r, 5);
}

}  // namespace

TEST(Surface, EpigraphNormals) {
    const GridSpec g = unit_grid(0.25);
    const WPoint o = g.node(g.nearest(WPoint::zero(2)).value());
    const Normal flat = epigraph_normal(GridFunction::constant(g, 0.0), o);
    EXPECT_EQ(flat[0], 1.0);
    for (int k = 1; k < 4; ++k) EXPECT_EQ(flat[k], 0.0);
    // Slots ordered X1, X2, Y1, Y2; the Burgers component sits on Y1.
    const Normal lin = epigraph_normal(linear_graph(g, 1.0), o);
    EXPECT_NEAR(lin[0], 1.0 / std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(lin[1], 0.0, 1e-12);
    EXPECT_NEAR(lin[2], -1.0 / std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(lin[3], 0.0, 1e-12);

    const GridFunction phi = random_smooth_graph(g, 2, 0.5);
    const IntrinsicGradient grad = intrinsic_gradient(phi);
    for (std::size_t i = 0; i < g.size(); i += 5) {
        const Normal n = epigraph_normal(grad, i);
        double s = 0.0;
        for (double v : n) s += v * v;
        EXPECT_NEAR(s, 1.0, 1e-12);
    }
}

TEST(Surface, AreaFormulaAnchors) {
    const GridSpec g = unit_grid(0.05);
    const CellMask d1 = disk_mask(g, WPoint::zero(2), 1.0);
    EXPECT_NEAR(hperimeter(GridFunction::constant(g, 0.0), d1), kKappa, 0.01 * kKappa);
    EXPECT_NEAR(hperimeter(linear_graph(g, 1.0), d1), std::sqrt(2.0) * kKappa, 0.01 * std::sqrt(2.0) * kKappa);
}

TEST(Surface, PerimeterBounds) {
    const GridSpec g = unit_grid(0.125);
    const CellMask d1 = disk_mask(g, WPoint::zero(2), 1.0);
    const CellMask dh = disk_mask(g, WPoint::zero(2), 0.6);
    const GridFunction phi = random_smooth_graph(g, 8, 0.4);
    EXPECT_GE(hperimeter(phi, d1), mask_measure(g, d1));
    EXPECT_GE(hperimeter(phi, d1), hperimeter(phi, dh));
    EXPECT_DOUBLE_EQ(hperimeter(GridFunction::constant(g, 0.2), d1), mask_measure(g, d1));
}

TEST(Surface, SamplingConservesWeight) {
    const GridSpec g = unit_grid(0.125);
    const CellMask d1 = disk_mask(g, WPoint::zero(2), 1.0);
    const GridFunction phi = random_smooth_graph(g, 6, 0.3);
    const BoundaryCloud c = sample_graph_boundary(phi, d1);
    EXPECT_EQ(c.size(), mask_count(d1));
    EXPECT_NEAR(c.total_weight(), hperimeter(phi, d1), 1e-12);

    const BoundaryCloud flat = sample_graph_boundary(GridFunction::constant(g, 0.0), d1);
    for (std::size_t i = 0; i < flat.size(); ++i) EXPECT_EQ(flat.normal_x1(i), 1.0);

    const BoundaryCloud lin = sample_graph_boundary(linear_graph(g, 1.0), d1);
    for (std::size_t i = 0; i < lin.size(); ++i) EXPECT_NEAR(lin.weight(i), std::sqrt(2.0) * g.cell_volume(), 1e-15);
}

TEST(Surface, CloudValidation) {
    BoundaryCloud c(2);
    BoundarySample s;
    s.point = HPoint::zero(2);
    s.normal[0] = 0.5;
    s.weight = 1.0;
    EXPECT_THROW(c.push_back(s), PreconditionError);
    s.normal[0] = 1.0;
    s.weight = -1.0;
    EXPECT_THROW(c.push_back(s), PreconditionError);
}

TEST(Surface, ExcessAnchors) {
    const GridSpec g = GridSpec::centered_box(2, 1.0, 1.0, 0.05);
    EXPECT_EQ(excess_cloud(flat_cloud(g), HPoint::zero(2), 0.5).value, 0.0);
    const BoundaryCloud lin = linear_cloud(g, 1.0);
    const double expected = (std::sqrt(2.0) - 1.0) * kKappa;
    for (double r : {0.5, std::sqrt(0.5), 1.0}) {
        EXPECT_NEAR(excess_cloud(lin, HPoint::zero(2), r).value, expected, 0.02 * expected) << r;
        EXPECT_NEAR(excess_cloud(dilate_cloud(lin, 2.0), HPoint::zero(2), 2.0 * r).value,
                    excess_cloud(lin, HPoint::zero(2), r).value, 1e-9);
    }
}

TEST(Surface, OrientationFlipsFlatExcess) {
    const GridSpec g = GridSpec::centered_box(2, 0.6, 0.36, 0.1);
    const BoundaryCloud flat = flat_cloud(g);
    const ExcessReport up = excess_cloud(flat, HPoint::zero(2), 0.5, 1);
    const ExcessReport down = excess_cloud(flat, HPoint::zero(2), 0.5, -1);
    EXPECT_EQ(up.value, 0.0);
    EXPECT_GT(down.value, 0.0);
    EXPECT_THROW(excess_cloud(flat, HPoint::zero(2), 0.5, 0), PreconditionError);
    EXPECT_TRUE(excess_cloud(flat, axis_point(2, 10.0), 0.5).empty);
}

TEST(Surface, IndexedExcessMatchesBruteForce) {
    const GridSpec g = GridSpec::centered_box(2, 1.0, 1.0, 0.125);
    const BoundaryCloud base = graph_cloud(random_smooth_graph(g, 12, 0.3));
    const CorruptedCloud cc = corrupt_cluster(base, {WPoint::zero(2), 20, 0.2});
    const CloudIndex index = CloudIndex::build(cc.cloud);
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (int k = 0; k < 40; ++k) {
        const double c[] = {u(rng), u(rng), u(rng), u(rng), u(rng)};
        const HPoint p = HPoint::from_coords(2, c);
        const double r = 0.1 + std::abs(u(rng));
        const double brute = brute_excess(cc.cloud, p, r);
        EXPECT_NEAR(excess_cloud(index, p, r).value, brute, 1e-12 * (1.0 + brute));
        EXPECT_NEAR(excess_cloud(cc.cloud, p, r).value, brute, 1e-12 * (1.0 + brute));
    }
}

TEST(SurfaceProperty, ExcessScaleComparison) {
    // e(p, r) <= (R/r)^(2n+1) e(p, R) since C_r is inside C_R.
    const GridSpec g = GridSpec::centered_box(2, 1.0, 1.0, 0.125);
    std::mt19937_64 rng(7);
    for (int k = 0; k < 10; ++k) {
        const BoundaryCloud c = graph_cloud(random_smooth_graph(g, rng(), 0.5));
        for (double r : {0.2, 0.35, 0.5})
            for (double R : {0.5, 0.75, 1.0}) {
                if (R < r) continue;
                const double er = excess_cloud(c, HPoint::zero(2), r).value;
                const double eR = excess_cloud(c, HPoint::zero(2), R).value;
                EXPECT_GE(er, 0.0);
                EXPECT_LE(er, std::pow(R / r, 5) * eR * (1.0 + 1e-12) + 1e-15);
            }
    }
}

TEST(Surface, ProfileOfFlatAndLinear) {
    const GridSpec g = GridSpec::centered_box(2, 1.0, 1.0, 0.05);
    const double scales[] = {0.5, 1.0};
    for (const ExcessReport& e : excess_profile(flat_cloud(g), HPoint::zero(2), scales)) EXPECT_EQ(e.value, 0.0);
    const auto prof = excess_profile(linear_cloud(g, 1.0), HPoint::zero(2), scales);
    EXPECT_NEAR(prof[0].value, prof[1].value, 0.02 * prof[1].value);
}

TEST(Surface, ClusterProfileDecreasesBeyondCluster) {
    const GridSpec g = GridSpec::centered_box(2, 1.0, 1.0, 0.1);
    const CorruptedCloud cc = corrupt_cluster(flat_cloud(g), {WPoint::zero(2), 8, 0.0});
    const double scales[] = {0.4, 0.6, 0.8, 1.0};
    const auto prof = excess_profile(cc.cloud, HPoint::zero(2), scales);
    for (std::size_t k = 1; k < prof.size(); ++k) EXPECT_LT(prof[k].value, prof[k - 1].value);
}

TEST(Surface, HeightBoundConventions) {
    const GridSpec g = GridSpec::centered_box(2, 1.0, 1.0, 0.125);
    const HeightBoundReport flat = height_bound_ratio(flat_cloud(g), 0.3);
    EXPECT_EQ(flat.sup_height_ratio, 0.0);
    EXPECT_EQ(flat.ratio, 0.0);
    EXPECT_FALSE(flat.infinite);
    // Lifted flat cloud: nonzero height with zero excess. r0 exceeds the vertical node gap.
    BoundaryCloud lifted(2);
    const BoundaryCloud base = flat_cloud(g);
    for (std::size_t i = 0; i < base.size(); ++i) {
        BoundarySample s = base.sample(i);
        s.point = exp_x1(0.01, s.point);
        lifted.push_back(s);
    }
    EXPECT_TRUE(height_bound_ratio(lifted, 0.3).infinite);
}

TEST(Surface, StableSumIsCompensated) {
    StableSum s;
    s.add(1.0);
    s.add(1e-16);
    s.add(-1.0);
    EXPECT_NEAR(s.value(), 1e-16, 1e-30);
}
