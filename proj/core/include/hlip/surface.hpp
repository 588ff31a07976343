#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hlip/graph.hpp"

namespace hlip {

using Normal = std::array<double, kMaxWDim>;

struct BoundarySample {
    HPoint point;
    Normal normal{};  // coefficients on X1..Xn, Y1..Yn
    double weight = 0.0;
};

struct CloudMeta {
    std::string provenance = "unspecified";
    // Declared minimality labels; carried, never verified.
    std::optional<double> lambda;
    std::optional<double> r0;
};

// Weighted samples of a boundary, stored as flat records
// (2n+1 point coordinates, 2n normal coordinates, weight).
class BoundaryCloud {
public:
    explicit BoundaryCloud(int n = 2, CloudMeta meta = {});

    static std::size_t record_size(int n) { return static_cast<std::size_t>(4 * n + 2); }

    int n() const noexcept { return n_; }
    std::size_t size() const noexcept { return data_.size() / record_size(n_); }
    bool empty() const noexcept { return data_.empty(); }
    void reserve(std::size_t count) { data_.reserve(count * record_size(n_)); }

    void push_back(const BoundarySample& s);
    // Appends a raw record after validation.
    void push_record(std::span<const double> rec);

    BoundarySample sample(std::size_t i) const;
    HPoint point(std::size_t i) const;
    std::span<const double> normal(std::size_t i) const;
    double normal_x1(std::size_t i) const { return data_[i * record_size(n_) + static_cast<std::size_t>(2 * n_ + 1)]; }
    double weight(std::size_t i) const { return data_[(i + 1) * record_size(n_) - 1]; }
    std::span<const double> record(std::size_t i) const;
    std::span<const double> raw() const noexcept { return data_; }

    const CloudMeta& meta() const noexcept { return meta_; }
    void set_meta(CloudMeta meta);

    double total_weight() const;

private:
    int n_;
    CloudMeta meta_;
    std::vector<double> data_;
};

// Buckets samples by the grid node nearest to their projection on W, for
// cylinder and distance queries that would otherwise scan the whole cloud.
class CloudIndex {
public:
    CloudIndex(const BoundaryCloud& cloud, GridSpec bins);
    // Bins covering the projections with about target_cells cells; 0 picks about
    // two samples per cell.
    static CloudIndex build(const BoundaryCloud& cloud, std::size_t target_cells = 0);
    // The index keeps a pointer to the cloud, so temporaries are rejected.
    CloudIndex(BoundaryCloud&&, GridSpec) = delete;
    static CloudIndex build(BoundaryCloud&&, std::size_t = 0) = delete;

    const BoundaryCloud& cloud() const noexcept { return *cloud_; }
    const GridSpec& bins() const noexcept { return bins_; }

    // Every sample whose projection could lie within rz (horizontal) and rt
    // (vertical) of center; a superset, callers filter exactly.
    template <class Fn>
    void for_each_near(const WPoint& center, double rz, double rt, Fn&& fn) const {
        const auto [lo, hi] = bins_.index_box(center, rz + 0.5 * max_hz_, rt + 0.5 * bins_.spacing(bins_.t_axis()));
        for_each_in_box(bins_, lo, hi, [&](std::size_t cell) {
            for (std::size_t k = offsets_[cell]; k < offsets_[cell + 1]; ++k) fn(order_[k]);
        });
        for (std::size_t k = offsets_.back(); k < order_.size(); ++k) fn(order_[k]);
    }

    // Calls fn(sample, c) for every sample q with c = ||p^-1 q||_C < r.
    // The t coordinate of pi(p^-1 q) is t(pi q) plus an affine function of the
    // horizontal coordinates of pi q, so each column of bins gets its own t window.
    template <class Fn>
    void for_each_in_cylinder(const HPoint& p, double r, Fn&& fn) const {
        const int ta = bins_.t_axis();
        const int n = bins_.n();
        const std::size_t stride = static_cast<std::size_t>(ta) + 2;
        const WPoint c = project(p);
        const double hp = height(p);
        double slope[kMaxWDim] = {};
        for (int j = 2; j <= n; ++j) {
            slope[j - 2] = -2.0 * c.y(j);
            slope[n + j - 2] = 2.0 * c.x(j);
        }
        slope[n - 1] = 4.0 * hp;
        const double shift = -(c.t() + 4.0 * hp * c.y(1));
        const auto test = [&](std::size_t pos) {
            const double* s = &soa_[pos * stride];
            double zz = 0.0;
            double tp = s[ta] + shift;
            for (int a = 0; a < ta; ++a) {
                const double dz = s[a] - c.c[a];
                zz += dz * dz;
                tp += slope[a] * s[a];
            }
            const double cn = std::max({std::sqrt(zz), std::sqrt(std::abs(tp)), std::abs(s[ta + 1] - hp)});
            if (cn < r) fn(order_[pos], cn);
        };

        double spread = 0.0;
        for (int a = 0; a < ta; ++a) spread += std::abs(slope[a]) * 0.5 * bins_.spacing(a);
        const double reach = r * r + spread + 0.5 * bins_.spacing(ta);
        auto [lo, hi] = bins_.index_box(c, r + 0.5 * max_hz_, 0.0);
        bool empty = false;
        for (int a = 0; a < ta; ++a) empty = empty || lo[a] > hi[a];
        if (!empty) {
            lo[ta] = 0;
            hi[ta] = 0;
            Index ix = lo;
            for (;;) {
                double mid = shift;
                for (int a = 0; a < ta; ++a) mid += slope[a] * bins_.coord(a, ix[a]);
                // |t_pi| < r^2 puts t(pi q) within r^2 of -mid, up to the column spread.
                const int t0 = std::max(0, static_cast<int>(std::ceil(bins_.fractional(ta, -mid - reach))));
                const int t1 =
                    std::min(bins_.count(ta) - 1, static_cast<int>(std::floor(bins_.fractional(ta, -mid + reach))));
                if (t0 <= t1) {
                    ix[ta] = t0;
                    const std::size_t first = bins_.ravel(ix);
                    const std::size_t last = first + static_cast<std::size_t>(t1 - t0);
                    for (std::size_t k = offsets_[first]; k < offsets_[last + 1]; ++k) test(k);
                }
                int a = ta - 1;
                for (; a >= 0; --a) {
                    if (++ix[a] <= hi[a]) break;
                    ix[a] = lo[a];
                }
                if (a < 0) break;
            }
        }
        for (std::size_t k = offsets_.back(); k < order_.size(); ++k) test(k);
    }

private:
    const BoundaryCloud* cloud_;
    GridSpec bins_;
    double max_hz_ = 0.0;
    std::vector<std::size_t> offsets_;
    // Binned samples first, then samples projecting outside the bins.
    std::vector<std::size_t> order_;
    // Per position in order_: W coordinates of the projection, then the height.
    std::vector<double> soa_;
};

// Unit normal (1, -grad)/sqrt(1+|grad|^2) of the intrinsic epigraph at a node.
Normal epigraph_normal(const IntrinsicGradient& grad, std::size_t node);
// Same at the node located at w; w must be a node with a centred stencil.
Normal epigraph_normal(const GridFunction& phi, const WPoint& w);

double hperimeter(const IntrinsicGradient& grad, const CellMask& region);
double hperimeter(const GridFunction& phi, const CellMask& region);

// One sample per selected region node (every stride-th node along each axis).
BoundaryCloud sample_graph_boundary(const GridFunction& phi, const CellMask& region, int stride = 1);
BoundaryCloud sample_graph_boundary(const GridFunction& phi, const IntrinsicGradient& grad, const CellMask& region,
                                    int stride = 1);

struct ExcessReport {
    HPoint center;
    double radius = 0.0;
    int orientation = 1;
    double value = 0.0;
    std::size_t count = 0;
    bool empty = true;
};

// Cylindrical excess against the reference direction orientation * X1.
ExcessReport excess_cloud(const BoundaryCloud& cloud, const HPoint& p, double r, int orientation = 1);
ExcessReport excess_cloud(const CloudIndex& index, const HPoint& p, double r, int orientation = 1);
std::vector<ExcessReport> excess_profile(const BoundaryCloud& cloud, const HPoint& q, std::span<const double> scales,
                                         int orientation = 1);
std::vector<ExcessReport> excess_profile(const CloudIndex& index, const HPoint& q, std::span<const double> scales,
                                         int orientation = 1);

struct HeightBoundReport {
    double sup_height_ratio = 0.0;  // sup |h(p)|/r0 over C_{r0}
    double excess = 0.0;            // e(16 r0)
    double ratio = 0.0;
    bool infinite = false;
};

HeightBoundReport height_bound_ratio(const BoundaryCloud& cloud, double r0, int orientation = 1);
HeightBoundReport height_bound_ratio(const BoundaryCloud& cloud, const HPoint& center, double r0, int orientation = 1);

// Compensated summation (Neumaier); deterministic for a fixed order.
class StableSum {
public:
    void add(double v) noexcept {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            c_ += (sum_ - t) + v;
        else
            c_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const noexcept { return sum_ + c_; }

private:
    double sum_ = 0.0;
    double c_ = 0.0;
};

}  // namespace hlip
