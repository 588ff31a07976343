#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "hlip/heisenberg.hpp"

namespace hlip {

using Index = std::array<int, kMaxWDim>;
using CellMask = std::vector<std::uint8_t>;

// Uniform node-centred grid on W. Axes are ordered (x2..xn, y1..yn, t) and
// every node is the centre of a cell of volume prod(spacing).
class GridSpec {
public:
    GridSpec() = default;
    GridSpec(int n, const WPoint& origin, std::vector<double> spacing, std::vector<int> counts);

    // Nodes placed symmetrically about 0 so that cells cover |z_k| <= half_z, |t| <= half_t.
    static GridSpec centered_box(int n, double half_z, double half_t, double hz, double ht);
    static GridSpec centered_box(int n, double half_z, double half_t, double h) {
        return centered_box(n, half_z, half_t, h, h);
    }

    int n() const noexcept { return n_; }
    int dim() const noexcept { return 2 * n_; }
    const WPoint& origin() const noexcept { return origin_; }
    double spacing(int axis) const { return spacing_[static_cast<std::size_t>(axis)]; }
    int count(int axis) const { return counts_[static_cast<std::size_t>(axis)]; }
    std::size_t stride(int axis) const { return strides_[static_cast<std::size_t>(axis)]; }
    const std::vector<double>& spacings() const noexcept { return spacing_; }
    const std::vector<int>& counts() const noexcept { return counts_; }
    std::size_t size() const noexcept { return size_; }
    double cell_volume() const noexcept { return cell_volume_; }
    int t_axis() const noexcept { return 2 * n_ - 1; }

    Index unravel(std::size_t idx) const;
    std::size_t ravel(const Index& ix) const;
    double coord(int axis, int i) const { return origin_.c[static_cast<std::size_t>(axis)] + i * spacing(axis); }
    WPoint node(std::size_t idx) const;
    WPoint node(const Index& ix) const;

    // True if some axis index sits on the first or last layer.
    bool on_edge(std::size_t idx) const;
    // w lies inside the hull of the nodes (interpolation domain).
    bool contains(const WPoint& w) const;
    // Nearest node if w lies inside the union of cells.
    std::optional<std::size_t> nearest(const WPoint& w) const;
    // Fractional index of w along an axis.
    double fractional(int axis, double v) const { return (v - origin_.c[static_cast<std::size_t>(axis)]) / spacing(axis); }

    // Index ranges (inclusive, clipped) of nodes within rz of center on horizontal axes and rt on the t axis.
    std::pair<Index, Index> index_box(const WPoint& center, double rz, double rt) const;
    // Index box guaranteed to contain D_R(center) = center * D_R.
    std::pair<Index, Index> disk_box(const WPoint& center, double R) const;

    bool same_layout(const GridSpec& other) const;

private:
    void finalize();

    int n_ = 2;
    WPoint origin_{};
    std::vector<double> spacing_;
    std::vector<int> counts_;
    std::vector<std::size_t> strides_;
    std::size_t size_ = 0;
    double cell_volume_ = 0.0;
};

// Calls fn(node index) for every node in the inclusive index box, row-major.
template <class Fn>
void for_each_in_box(const GridSpec& spec, const Index& lo, const Index& hi, Fn&& fn) {
    const int d = spec.dim();
    for (int a = 0; a < d; ++a)
        if (lo[a] > hi[a]) return;
    Index ix = lo;
    const int last = d - 1;
    const std::size_t t_stride = spec.stride(last);
    for (;;) {
        std::size_t base = spec.ravel(ix);
        for (int k = lo[last]; k <= hi[last]; ++k) fn(base + static_cast<std::size_t>(k - lo[last]) * t_stride);
        int a = last - 1;
        for (; a >= 0; --a) {
            if (++ix[a] <= hi[a]) break;
            ix[a] = lo[a];
        }
        if (a < 0) return;
    }
}

// Scalar function on grid nodes, optionally with a Dirichlet mask.
class GridFunction {
public:
    GridFunction() = default;
    GridFunction(GridSpec spec, std::vector<double> values);

    static GridFunction sample(const GridSpec& spec, const std::function<double(const WPoint&)>& f);
    static GridFunction constant(const GridSpec& spec, double c);

    const GridSpec& spec() const noexcept { return spec_; }
    std::span<const double> values() const noexcept { return values_; }
    std::vector<double>& values_mut() noexcept { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }
    double& operator[](std::size_t i) { return values_[i]; }
    std::size_t size() const noexcept { return values_.size(); }

    // Multilinear interpolation; throws PreconditionError outside the node hull.
    double eval(const WPoint& w) const;
    double sup_abs() const;

    const CellMask& boundary_mask() const noexcept { return mask_; }
    bool has_boundary_mask() const noexcept { return !mask_.empty(); }
    void set_boundary_mask(CellMask mask);

private:
    GridSpec spec_;
    std::vector<double> values_;
    CellMask mask_;
};

// Cells whose centre lies in D_r(center).
CellMask disk_mask(const GridSpec& spec, const WPoint& center, double r);
CellMask full_mask(const GridSpec& spec);
// Nodes with at least one neighbour missing along some axis.
CellMask edge_mask(const GridSpec& spec);
std::size_t mask_count(const CellMask& m);
double mask_measure(const GridSpec& spec, const CellMask& m);
void require_mask(const GridSpec& spec, const CellMask& m, const char* what);

}  // namespace hlip
