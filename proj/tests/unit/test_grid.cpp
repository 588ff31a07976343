#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hlip/grid.hpp"

using namespace hlip;

TEST(Grid, CenteredBoxIsSymmetric) {
    const GridSpec g = GridSpec::centered_box(2, 1.0, 1.0, 0.25);
    EXPECT_EQ(g.dim(), 4);
    EXPECT_EQ(g.size(), 8u * 8u * 8u * 8u);
    EXPECT_DOUBLE_EQ(g.cell_volume(), std::pow(0.25, 4));
    for (int a = 0; a < 4; ++a) EXPECT_NEAR(g.coord(a, 0), -g.coord(a, g.count(a) - 1), 1e-15);
}

TEST(Grid, RavelRoundTrip) {
    const GridSpec g = GridSpec::centered_box(2, 0.5, 0.3, 0.1, 0.05);
    for (std::size_t i = 0; i < g.size(); i += 7) EXPECT_EQ(g.ravel(g.unravel(i)), i);
    for (std::size_t i = 0; i < g.size(); i += 13) EXPECT_EQ(g.nearest(g.node(i)).value(), i);
}

TEST(Grid, InvalidSpecThrows) {
    EXPECT_THROW(GridSpec::centered_box(2, 1.0, 1.0, 0.0), PreconditionError);
    EXPECT_THROW(GridSpec(2, WPoint::zero(2), {0.1, 0.1}, {3, 3}), PreconditionError);
}

TEST(Grid, ConstantAndInterpolation) {
    const GridSpec g = GridSpec::centered_box(2, 1.0, 1.0, 0.2);
    const GridFunction c = GridFunction::constant(g, 0.7);
    EXPECT_DOUBLE_EQ(c.sup_abs(), 0.7);
    // Multilinear interpolation reproduces affine functions exactly.
    const auto f = [](const WPoint& w) { return 1.0 + 2.0 * w.x(2) - w.y(1) + 0.5 * w.y(2) + 3.0 * w.t(); };
    const GridFunction phi = GridFunction::sample(g, f);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-0.8, 0.8);
    for (int k = 0; k < 200; ++k) {
        WPoint w = WPoint::zero(2);
        for (int a = 0; a < 4; ++a) w.c[a] = u(rng);
        EXPECT_NEAR(phi.eval(w), f(w), 1e-12);
    }
    WPoint far = WPoint::zero(2);
    far.c[0] = 5.0;
    EXPECT_THROW(phi.eval(far), PreconditionError);
}

TEST(Grid, DiskMaskMeasureApproachesKappa) {
    const GridSpec g = GridSpec::centered_box(2, 1.05, 1.05, 0.05);
    const CellMask d1 = disk_mask(g, WPoint::zero(2), 1.0);
    EXPECT_NEAR(mask_measure(g, d1), Dimension(2).kappa(), 0.01 * Dimension(2).kappa());
}

TEST(Grid, TranslatedDiskHasSameMeasure) {
    // Left translation preserves Lebesgue measure, so D_r(c) = c * D_r keeps its volume.
    const GridSpec g = GridSpec::centered_box(2, 1.0, 1.5, 0.05);
    WPoint c = WPoint::zero(2);
    c.c[1] = 0.3;
    c.c[2] = -0.2;
    const double m0 = mask_measure(g, disk_mask(g, WPoint::zero(2), 0.5));
    const double m1 = mask_measure(g, disk_mask(g, c, 0.5));
    EXPECT_NEAR(m1, m0, 0.03 * m0);
}

TEST(Grid, DiskBoxContainsDisk) {
    const GridSpec g = GridSpec::centered_box(2, 1.0, 1.0, 0.1);
    WPoint c = WPoint::zero(2);
    c.c[0] = 0.2;
    c.c[2] = -0.4;
    c.c[3] = 0.1;
    const CellMask m = disk_mask(g, c, 0.4);
    const auto [lo, hi] = g.disk_box(c, 0.4);
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!m[i]) continue;
        const Index ix = g.unravel(i);
        for (int a = 0; a < 4; ++a) {
            EXPECT_GE(ix[a], lo[a]);
            EXPECT_LE(ix[a], hi[a]);
        }
    }
}
