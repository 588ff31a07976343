#include "hlip/grid.hpp"

#include <cmath>
#include <numeric>

namespace hlip {

GridSpec::GridSpec(int n, const WPoint& origin, std::vector<double> spacing, std::vector<int> counts)
    : n_(n), origin_(origin), spacing_(std::move(spacing)), counts_(std::move(counts)) {
    require_dimension(n);
    if (origin_.n != n) throw PreconditionError("GridSpec: origin dimension mismatch");
    const auto d = static_cast<std::size_t>(2 * n);
    if (spacing_.size() != d || counts_.size() != d)
        throw PreconditionError("GridSpec: spacing and counts need 2n entries");
    for (std::size_t a = 0; a < d; ++a) {
        if (!(spacing_[a] > 0.0) || !std::isfinite(spacing_[a]))
            throw PreconditionError("GridSpec: spacing must be positive");
        if (counts_[a] < 1) throw PreconditionError("GridSpec: counts must be positive");
    }
    finalize();
}

void GridSpec::finalize() {
    const int d = dim();
    strides_.assign(static_cast<std::size_t>(d), 1);
    for (int a = d - 2; a >= 0; --a) strides_[a] = strides_[a + 1] * static_cast<std::size_t>(counts_[a + 1]);
    size_ = strides_[0] * static_cast<std::size_t>(counts_[0]);
    cell_volume_ = std::accumulate(spacing_.begin(), spacing_.end(), 1.0, std::multiplies<>());
}

GridSpec GridSpec::centered_box(int n, double half_z, double half_t, double hz, double ht) {
    require_dimension(n);
    if (!(half_z > 0.0 && half_t > 0.0 && hz > 0.0 && ht > 0.0))
        throw PreconditionError("centered_box: extents and spacings must be positive");
    const int cz = static_cast<int>(std::ceil(2.0 * half_z / hz - 1e-9));
    const int ct = static_cast<int>(std::ceil(2.0 * half_t / ht - 1e-9));
    WPoint origin = WPoint::zero(n);
    std::vector<double> spacing(static_cast<std::size_t>(2 * n), hz);
    std::vector<int> counts(static_cast<std::size_t>(2 * n), cz);
    spacing.back() = ht;
    counts.back() = ct;
    for (int a = 0; a < 2 * n - 1; ++a) origin.c[a] = -0.5 * (cz - 1) * hz;
    origin.c[2 * n - 1] = -0.5 * (ct - 1) * ht;
    return GridSpec(n, origin, std::move(spacing), std::move(counts));
}

Index GridSpec::unravel(std::size_t idx) const {
    Index ix{};
    for (int a = 0; a < dim(); ++a) {
        ix[a] = static_cast<int>(idx / strides_[a]);
        idx %= strides_[a];
    }
    return ix;
}

std::size_t GridSpec::ravel(const Index& ix) const {
    std::size_t idx = 0;
    for (int a = 0; a < dim(); ++a) idx += static_cast<std::size_t>(ix[a]) * strides_[a];
    return idx;
}

WPoint GridSpec::node(const Index& ix) const {
    WPoint w;
    w.n = n_;
    for (int a = 0; a < dim(); ++a) w.c[a] = coord(a, ix[a]);
    return w;
}

WPoint GridSpec::node(std::size_t idx) const { return node(unravel(idx)); }

bool GridSpec::on_edge(std::size_t idx) const {
    const Index ix = unravel(idx);
    for (int a = 0; a < dim(); ++a)
        if (ix[a] == 0 || ix[a] == counts_[a] - 1) return true;
    return false;
}

bool GridSpec::contains(const WPoint& w) const {
    if (w.n != n_) return false;
    for (int a = 0; a < dim(); ++a) {
        const double f = fractional(a, w.c[a]);
        if (f < -1e-9 || f > counts_[a] - 1 + 1e-9) return false;
    }
    return true;
}

std::optional<std::size_t> GridSpec::nearest(const WPoint& w) const {
    if (w.n != n_) return std::nullopt;
    Index ix{};
    for (int a = 0; a < dim(); ++a) {
        const double f = fractional(a, w.c[a]);
        if (f < -0.5 || f >= counts_[a] - 0.5) return std::nullopt;
        ix[a] = std::clamp(static_cast<int>(std::lround(f)), 0, counts_[a] - 1);
    }
    return ravel(ix);
}

std::pair<Index, Index> GridSpec::index_box(const WPoint& center, double rz, double rt) const {
    Index lo{}, hi{};
    for (int a = 0; a < dim(); ++a) {
        const double r = a == t_axis() ? rt : rz;
        const double flo = fractional(a, center.c[a] - r);
        const double fhi = fractional(a, center.c[a] + r);
        lo[a] = std::max(0, static_cast<int>(std::ceil(flo - 1e-9)));
        hi[a] = std::min(counts_[a] - 1, static_cast<int>(std::floor(fhi + 1e-9)));
    }
    return {lo, hi};
}

std::pair<Index, Index> GridSpec::disk_box(const WPoint& center, double R) const {
    // |dz| < R and |dt| < R^2 + 2|z_center| R, since |P(z, dz)| <= 2|z||dz|.
    double zz = 0.0;
    for (int a = 0; a < dim() - 1; ++a) zz += center.c[a] * center.c[a];
    return index_box(center, R, R * R + 2.0 * std::sqrt(zz) * R);
}

bool GridSpec::same_layout(const GridSpec& o) const {
    if (n_ != o.n_ || counts_ != o.counts_) return false;
    for (int a = 0; a < dim(); ++a) {
        if (std::abs(spacing_[a] - o.spacing_[a]) > 1e-12 * spacing_[a]) return false;
        if (std::abs(origin_.c[a] - o.origin_.c[a]) > 1e-12 * (1.0 + std::abs(origin_.c[a]))) return false;
    }
    return true;
}

GridFunction::GridFunction(GridSpec spec, std::vector<double> values)
    : spec_(std::move(spec)), values_(std::move(values)) {
    if (values_.size() != spec_.size()) throw PreconditionError("GridFunction: value count does not match grid");
    for (double v : values_)
        if (!std::isfinite(v)) throw PreconditionError("GridFunction: values must be finite");
}

GridFunction GridFunction::sample(const GridSpec& spec, const std::function<double(const WPoint&)>& f) {
    std::vector<double> v(spec.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(spec.node(i));
    return GridFunction(spec, std::move(v));
}

GridFunction GridFunction::constant(const GridSpec& spec, double c) {
    return GridFunction(spec, std::vector<double>(spec.size(), c));
}

double GridFunction::eval(const WPoint& w) const {
    if (!spec_.contains(w)) throw PreconditionError("GridFunction::eval: point outside grid");
    const int d = spec_.dim();
    Index base{};
    std::array<double, kMaxWDim> frac{};
    for (int a = 0; a < d; ++a) {
        const double f = std::clamp(spec_.fractional(a, w.c[a]), 0.0, static_cast<double>(spec_.count(a) - 1));
        int i = static_cast<int>(std::floor(f));
        if (i >= spec_.count(a) - 1) i = std::max(0, spec_.count(a) - 2);
        base[a] = i;
        frac[a] = spec_.count(a) == 1 ? 0.0 : f - i;
    }
    double acc = 0.0;
    for (unsigned corner = 0; corner < (1u << d); ++corner) {
        double wgt = 1.0;
        Index ix = base;
        for (int a = 0; a < d; ++a) {
            const bool up = (corner >> a) & 1u;
            if (up) {
                if (spec_.count(a) == 1) {
                    wgt = 0.0;
                    break;
                }
                ++ix[a];
                wgt *= frac[a];
            } else {
                wgt *= 1.0 - frac[a];
            }
        }
        if (wgt != 0.0) acc += wgt * values_[spec_.ravel(ix)];
    }
    return acc;
}

double GridFunction::sup_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

void GridFunction::set_boundary_mask(CellMask mask) {
    if (!mask.empty()) require_mask(spec_, mask, "boundary mask");
    mask_ = std::move(mask);
}

CellMask disk_mask(const GridSpec& spec, const WPoint& center, double r) {
    if (!(r > 0.0)) throw PreconditionError("disk_mask: radius must be positive");
    CellMask m(spec.size(), 0);
    const auto [lo, hi] = spec.disk_box(center, r);
    for_each_in_box(spec, lo, hi, [&](std::size_t i) {
        if (d_inf(center, spec.node(i)) < r) m[i] = 1;
    });
    return m;
}

CellMask full_mask(const GridSpec& spec) { return CellMask(spec.size(), 1); }

CellMask edge_mask(const GridSpec& spec) {
    CellMask m(spec.size(), 0);
    for (std::size_t i = 0; i < spec.size(); ++i) m[i] = spec.on_edge(i) ? 1 : 0;
    return m;
}

std::size_t mask_count(const CellMask& m) {
    return static_cast<std::size_t>(std::count_if(m.begin(), m.end(), [](std::uint8_t v) { return v != 0; }));
}

double mask_measure(const GridSpec& spec, const CellMask& m) {
    return static_cast<double>(mask_count(m)) * spec.cell_volume();
}

void require_mask(const GridSpec& spec, const CellMask& m, const char* what) {
    if (m.size() != spec.size())
        throw PreconditionError(std::string(what) + ": mask size does not match grid (region outside grid)");
}

}  // namespace hlip
