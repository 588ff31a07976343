#include <gtest/gtest.h>

#include <cmath>

#include "hlip/approx.hpp"
#include "hlip/generators.hpp"

using namespace hlip;

namespace {

const double kKappa = Dimension(2).kappa();

// Coarse pipeline grid so each run stays well under a second.
const GridSpec& grid() {
    static const GridSpec g = pipeline_grid(2, 4.0 / 3.0, 0.25);
    return g;
}

PipelineConfig config() {
    PipelineConfig c;
    c.lip_pairs = 20000;
    return c;
}

CellMask d1() { return disk_mask(grid(), WPoint::zero(2), 1.0); }

}  // namespace

TEST(Approx, ConfigValidation) {
    PipelineConfig c;
    c.alpha = 0.5;
    EXPECT_THROW(c.validate(), PreconditionError);
    c = {};
    c.scales.clear();
    EXPECT_THROW(c.validate(), PreconditionError);
    c = {};
    c.delta1 = 0.0;
    EXPECT_THROW(c.validate(), PreconditionError);
    c = {};
    EXPECT_NO_THROW(c.validate());
    EXPECT_DOUBLE_EQ(c.tau_for(grid()), 0.5);
}

TEST(Approx, SelectM0) {
    const BoundaryCloud flat = flat_cloud(grid());
    EXPECT_EQ(select_m0(flat, config()).size(), flat.size());
    const CorruptedCloud cc = corrupt_cluster(flat, {WPoint::zero(2), 16, 0.5});
    const auto m0 = select_m0(cc.cloud, config());
    for (std::size_t i : cc.members) EXPECT_FALSE(std::binary_search(m0.begin(), m0.end(), i));
    PipelineConfig loose = config();
    loose.delta1 = 10.0;
    EXPECT_GE(select_m0(cc.cloud, loose).size(), m0.size());
}

TEST(Approx, HeightsOnProjection) {
    const GridFunction phi = linear_graph(grid(), 0.05);
    const BoundaryCloud c = graph_cloud(phi);
    std::vector<std::size_t> all(c.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    const PartialHeights ph = heights_on_projection(c, all, grid());
    for (std::size_t i = 0; i < grid().size(); ++i) {
        ASSERT_TRUE(ph.known[i]);
        EXPECT_NEAR(ph.values[i], phi[i], 1e-15);
    }
    const std::size_t one[] = {7};
    const PartialHeights single = heights_on_projection(c, one, grid());
    EXPECT_EQ(mask_count(single.known), 1u);
    EXPECT_EQ(single.values[7], phi[7]);
}

TEST(Approx, FlatCloudIsExact) {
    const ApproxResult a = lipschitz_approximation(flat_cloud(grid()), grid(), config());
    EXPECT_EQ(a.m0.size(), a.cloud_size);
    EXPECT_EQ(a.phi.sup_abs(), 0.0);
    EXPECT_EQ(a.symdiff.total, 0.0);
    EXPECT_EQ(a.l2_gradient, 0.0);
    EXPECT_TRUE(a.lip_ok);
}

TEST(Approx, LinearCloudIsRecovered) {
    const double eps = 0.05;
    const ApproxResult a = lipschitz_approximation(linear_cloud(grid(), eps), grid(), config());
    const GridFunction exact = linear_graph(grid(), eps);
    const CellMask d = d1();
    for (std::size_t i = 0; i < grid().size(); ++i)
        if (d[i]) {
            EXPECT_NEAR(a.phi[i], exact[i], 2.0 * eps * 0.25);
        }
    EXPECT_EQ(a.m0.size(), a.cloud_size);
    EXPECT_EQ(a.symdiff.total, 0.0);
    // The coarse grid distorts |D_1|, so compare against the discrete disk measure.
    const double area = mask_measure(grid(), d);
    EXPECT_NEAR(a.l2_gradient, eps * eps * area, 0.1 * eps * eps * area);
    EXPECT_LE(a.lip.value, 1.0);
    EXPECT_EQ(a.m0_unmatched, 0u);
}

TEST(Approx, SymDiffProperties) {
    const GridFunction phi = linear_graph(grid(), 0.05);
    const BoundaryCloud exact = graph_cloud(phi);
    EXPECT_EQ(sym_diff_measure(exact, phi, 0.25).total, 0.0);

    // A deleted patch shows up as graph-side area mass over the patch.
    const double radius = 0.55;
    const BoundaryCloud holed = delete_patch(exact, WPoint::zero(2), radius);
    const SymDiff sd = sym_diff_measure(holed, phi, 0.25);
    EXPECT_GT(sd.graph_side, 0.0);
    EXPECT_EQ(sd.sample_side, 0.0);
    const double patch = hperimeter(phi, disk_mask(grid(), WPoint::zero(2), radius));
    EXPECT_LE(sd.graph_side, 1.5 * patch);
    EXPECT_GE(sd.graph_side, 0.1 * patch);
    EXPECT_NEAR(sd.hausdorff, sd.total / Dimension(2).delta(), 1e-15);

    // Non-increasing in tau.
    const CorruptedCloud cc = corrupt_cluster(exact, {WPoint::zero(2), 30, 0.4});
    double prev = INFINITY;
    for (double tau : {0.05, 0.1, 0.25, 0.5}) {
        const double v = sym_diff_measure(cc.cloud, phi, tau).total;
        EXPECT_LE(v, prev);
        prev = v;
    }
}

TEST(Approx, CorruptedClusterBoundedByInjectedMass) {
    const BoundaryCloud flat = flat_cloud(grid());
    double prev = 0.0;
    for (std::size_t m : {8, 16, 32}) {
        const CorruptedCloud cc = corrupt_cluster(flat, {WPoint::zero(2), m, 0.5});
        const ApproxResult a = lipschitz_approximation(cc.cloud, grid(), config());
        EXPECT_LE(a.symdiff.total, 3.0 * cc.injected_mass);
        EXPECT_GE(a.symdiff.total, prev);
        prev = a.symdiff.total;
    }
}

TEST(Approx, RepresentativeRegion) {
    const BoundaryCloud flat = flat_cloud(grid());
    const CloudIndex fi = CloudIndex::build(flat);
    const CellMask ds = disk_mask(grid(), WPoint::zero(2), 1.0);
    EXPECT_EQ(representative_region(fi, grid(), 1.0, 0.07), ds);

    const CorruptedCloud cc = corrupt_cluster(flat, {WPoint::zero(2), 4, 0.3});
    const CloudIndex ci = CloudIndex::build(cc.cloud);
    const CellMask fast = representative_region(ci, grid(), 1.0, 0.07);
    EXPECT_EQ(fast, representative_region_bruteforce(cc.cloud, grid(), 1.0, 0.07));
    EXPECT_LT(mask_count(fast), mask_count(ds));
    const CellMask wide = representative_region(ci, grid(), 1.0, 0.5);
    for (std::size_t i = 0; i < grid().size(); ++i)
        if (fast[i]) {
            EXPECT_TRUE(wide[i]);
        }
}

TEST(Approx, BuildMu) {
    const CellMask d = d1();
    const GridFunction zero = GridFunction::constant(grid(), 0.0);
    const BoundaryCloud fc = flat_cloud(grid());
    const CloudIndex fi = CloudIndex::build(fc);
    const MuTerms flat = build_mu(fi, zero, intrinsic_gradient(zero), d, 0.5);
    EXPECT_EQ(flat.mu.total(), 0.0);

    const double eps = 0.1;
    const GridFunction phi = linear_graph(grid(), eps);
    const IntrinsicGradient grad = intrinsic_gradient(phi);
    const BoundaryCloud lin = linear_cloud(grid(), eps);
    const CloudIndex li = CloudIndex::build(lin);
    const MuTerms m = build_mu(li, phi, grad, d, 0.5);
    EXPECT_EQ(m.graph_term, 0.0);
    const double density = 2.0 * (std::sqrt(1.0 + eps * eps) - 1.0);
    for (std::size_t i = 0; i < grid().size(); ++i)
        if (d[i]) {
            EXPECT_NEAR(m.mu[i], density * grid().cell_volume(), 1e-12);
        }

    // An uncovered cell carries g^2 / sqrt(1 + g^2) in place of its sample term.
    const BoundaryCloud holed_cloud = delete_patch(lin, WPoint::zero(2), 0.7);
    const CloudIndex hi = CloudIndex::build(holed_cloud);
    const MuTerms holed = build_mu(hi, phi, grad, d, 0.25);
    const double g2 = eps * eps;
    const double ratio = g2 / (1.0 + g2) * std::sqrt(1.0 + g2) / (2.0 * (std::sqrt(1.0 + g2) - 1.0));
    ASSERT_GT(holed.graph_term, 0.0);
    std::size_t uncovered = 0;
    for (std::size_t i = 0; i < grid().size(); ++i) {
        if (!d[i] || holed.mu[i] == m.mu[i]) continue;
        ++uncovered;
        EXPECT_NEAR(holed.mu[i] / m.mu[i], ratio, 1e-9 * ratio);
    }
    EXPECT_GT(uncovered, 0u);
}

TEST(Approx, TruncateFlatCloud) {
    const BoundaryCloud flat = flat_cloud(grid());
    const CloudIndex index = CloudIndex::build(flat);
    const ApproxResult a = lipschitz_approximation(index, grid(), config());
    const TruncationResult t = truncate(index, a, config());
    EXPECT_TRUE(t.zero_excess);
    EXPECT_EQ(t.K, t.d1);
    EXPECT_EQ(t.complement_measure, 0.0);
    EXPECT_EQ(t.lip_on_k.value, 0.0);
    for (std::size_t i = 0; i < grid().size(); ++i)
        if (t.K[i]) {
            EXPECT_TRUE(t.d1[i]);
        }
}

TEST(Approx, CheckBV) {
    const CellMask d = d1();
    const BVReport c = check_bv(GridFunction::constant(grid(), 0.4), d);
    EXPECT_EQ(c.lhs, 0.0);
    EXPECT_TRUE(c.pass);
    for (double eps : {0.01, 0.1, 1.0}) {
        const BVReport r = check_bv(linear_graph(grid(), eps), d);
        EXPECT_NEAR(r.lhs, r.rhs, 1e-9 * r.rhs);
        const double m = mask_measure(grid(), d);
        EXPECT_NEAR(r.lhs, eps * eps * m * m, 1e-9 * r.lhs);
    }
    for (std::uint64_t seed = 1; seed <= 10; ++seed)
        EXPECT_TRUE(check_bv(random_smooth_graph(grid(), seed, 0.5), d).pass);
}

TEST(Approx, SandwichOfZeroIsExact) {
    const GridSpec g = GridSpec::centered_box(2, 1.0, 1.0, 0.1);
    const GridFunction zero = GridFunction::constant(g, 0.0);
    const std::size_t c = g.nearest(WPoint::zero(2)).value();
    // r sits between lattice distances so no pair lands on the boundary.
    const SandwichReport r = check_sandwich(zero, c, 0.35, 0.5, 0.0);
    EXPECT_TRUE(r.precondition);
    EXPECT_TRUE(r.pass());
    EXPECT_DOUBLE_EQ(r.R, 0.35);
}

TEST(Approx, SandwichFlagsInflatedConstant) {
    const GridSpec g = GridSpec::centered_box(2, 1.0, 1.0, 0.1);
    const GridFunction phi = linear_graph(g, 0.5);
    const std::size_t c = g.nearest(WPoint::zero(2)).value();
    const SandwichReport r = check_sandwich(phi, c, 0.3, 3.0, 0.5);
    EXPECT_FALSE(r.precondition);
    EXPECT_GT(r.inner.violations, 0u);
}

TEST(Approx, CorollaryOfFlatCloud) {
    const CorollaryReport rep = corollary_report(flat_cloud(grid()), grid(), config());
    ASSERT_EQ(rep.quantities.size(), 5u);
    for (const CorollaryQuantity& q : rep.quantities) {
        EXPECT_EQ(q.value, 0.0) << q.name;
        EXPECT_EQ(q.ratio, 0.0) << q.name;
    }
}
