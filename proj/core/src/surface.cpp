#include "hlip/surface.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hlip {

BoundaryCloud::BoundaryCloud(int n, CloudMeta meta) : n_(n) {
    require_dimension(n);
    set_meta(std::move(meta));
}

void BoundaryCloud::set_meta(CloudMeta meta) {
    if (meta.lambda && meta.r0) {
        if (!(*meta.lambda >= 0.0 && *meta.r0 > 0.0))
            throw PreconditionError("cloud meta: need Lambda >= 0 and r0 > 0");
        if (*meta.lambda * *meta.r0 > 1.0) throw PreconditionError("cloud meta: declared Lambda * r0 must be <= 1");
    }
    meta_ = std::move(meta);
}

void BoundaryCloud::push_back(const BoundarySample& s) {
    if (s.point.n != n_) throw PreconditionError("BoundaryCloud: sample dimension mismatch");
    std::vector<double> rec(record_size(n_));
    s.point.to_coords(std::span<double>(rec.data(), static_cast<std::size_t>(2 * n_ + 1)));
    for (int k = 0; k < 2 * n_; ++k) rec[static_cast<std::size_t>(2 * n_ + 1 + k)] = s.normal[k];
    rec.back() = s.weight;
    push_record(rec);
}

void BoundaryCloud::push_record(std::span<const double> rec) {
    if (rec.size() != record_size(n_)) throw PreconditionError("BoundaryCloud: bad record size");
    for (double v : rec)
        if (!std::isfinite(v)) throw PreconditionError("BoundaryCloud: non-finite record entry");
    double nn = 0.0;
    for (int k = 0; k < 2 * n_; ++k) nn += rec[static_cast<std::size_t>(2 * n_ + 1 + k)] * rec[static_cast<std::size_t>(2 * n_ + 1 + k)];
    if (std::abs(std::sqrt(nn) - 1.0) > 1e-9) throw PreconditionError("BoundaryCloud: normal must have unit length");
    if (rec.back() < 0.0) throw PreconditionError("BoundaryCloud: weight must be nonnegative");
    data_.insert(data_.end(), rec.begin(), rec.end());
}

std::span<const double> BoundaryCloud::record(std::size_t i) const {
    return {data_.data() + i * record_size(n_), record_size(n_)};
}

HPoint BoundaryCloud::point(std::size_t i) const {
    HPoint p;
    p.n = n_;
    const double* r = data_.data() + i * record_size(n_);
    for (int j = 0; j < n_; ++j) {
        p.x[j] = r[j];
        p.y[j] = r[n_ + j];
    }
    p.t = r[2 * n_];
    return p;
}

std::span<const double> BoundaryCloud::normal(std::size_t i) const {
    return {data_.data() + i * record_size(n_) + static_cast<std::size_t>(2 * n_ + 1), static_cast<std::size_t>(2 * n_)};
}

BoundarySample BoundaryCloud::sample(std::size_t i) const {
    BoundarySample s;
    s.point = point(i);
    const auto nv = normal(i);
    std::copy(nv.begin(), nv.end(), s.normal.begin());
    s.weight = weight(i);
    return s;
}

double BoundaryCloud::total_weight() const {
    StableSum s;
    for (std::size_t i = 0; i < size(); ++i) s.add(weight(i));
    return s.value();
}

CloudIndex::CloudIndex(const BoundaryCloud& cloud, GridSpec bins) : cloud_(&cloud), bins_(std::move(bins)) {
    if (bins_.n() != cloud.n()) throw PreconditionError("CloudIndex: dimension mismatch");
    for (int a = 0; a < bins_.dim() - 1; ++a) max_hz_ = std::max(max_hz_, bins_.spacing(a));
    std::vector<std::size_t> cell_of(cloud.size(), std::numeric_limits<std::size_t>::max());
    std::vector<std::size_t> counts(bins_.size() + 1, 0);
    std::vector<std::size_t> overflow;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        if (auto c = bins_.nearest(project(cloud.point(i)))) {
            cell_of[i] = *c;
            ++counts[*c + 1];
        } else {
            overflow.push_back(i);
        }
    }
    offsets_.assign(bins_.size() + 1, 0);
    for (std::size_t c = 0; c < bins_.size(); ++c) offsets_[c + 1] = offsets_[c] + counts[c + 1];
    order_.resize(offsets_.back());
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (std::size_t i = 0; i < cloud.size(); ++i)
        if (cell_of[i] != std::numeric_limits<std::size_t>::max()) order_[fill[cell_of[i]]++] = i;
    order_.insert(order_.end(), overflow.begin(), overflow.end());
    const std::size_t stride = static_cast<std::size_t>(bins_.dim()) + 1;
    soa_.resize(order_.size() * stride);
    for (std::size_t k = 0; k < order_.size(); ++k) {
        const HPoint p = cloud.point(order_[k]);
        const WPoint w = project(p);
        for (int a = 0; a < bins_.dim(); ++a) soa_[k * stride + static_cast<std::size_t>(a)] = w.c[a];
        soa_[k * stride + stride - 1] = height(p);
    }
}

CloudIndex CloudIndex::build(const BoundaryCloud& cloud, std::size_t target_cells) {
    if (target_cells == 0) target_cells = std::clamp<std::size_t>(cloud.size() / 2, 256, std::size_t{1} << 22);
    const int n = cloud.n();
    const int d = 2 * n;
    std::vector<double> lo(static_cast<std::size_t>(d), std::numeric_limits<double>::infinity());
    std::vector<double> hi(static_cast<std::size_t>(d), -std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const WPoint w = project(cloud.point(i));
        for (int a = 0; a < d; ++a) {
            lo[a] = std::min(lo[a], w.c[a]);
            hi[a] = std::max(hi[a], w.c[a]);
        }
    }
    if (cloud.empty()) {
        std::fill(lo.begin(), lo.end(), -1.0);
        std::fill(hi.begin(), hi.end(), 1.0);
    }
    const int k = std::max(1, static_cast<int>(std::floor(std::pow(static_cast<double>(target_cells), 1.0 / d))));
    WPoint origin = WPoint::zero(n);
    std::vector<double> spacing(static_cast<std::size_t>(d));
    std::vector<int> counts(static_cast<std::size_t>(d), k);
    for (int a = 0; a < d; ++a) {
        const double ext = std::max(hi[a] - lo[a], 1e-9);
        spacing[a] = ext / k;
        origin.c[a] = lo[a] + 0.5 * spacing[a];
    }
    return CloudIndex(cloud, GridSpec(n, origin, std::move(spacing), std::move(counts)));
}

Normal epigraph_normal(const IntrinsicGradient& grad, std::size_t node) {
    Normal nu{};
    const double s = std::sqrt(1.0 + grad.norm_sq(node));
    nu[0] = 1.0 / s;
    for (int k = 0; k < grad.components(); ++k) nu[static_cast<std::size_t>(k + 1)] = -grad.component(k)[node] / s;
    return nu;
}

Normal epigraph_normal(const GridFunction& phi, const WPoint& w) {
    const GridSpec& spec = phi.spec();
    const auto node = spec.nearest(w);
    if (!node) throw PreconditionError("epigraph_normal: point outside grid");
    const WPoint c = spec.node(*node);
    for (int a = 0; a < spec.dim(); ++a)
        if (std::abs(c.c[a] - w.c[a]) > 1e-9 * spec.spacing(a))
            throw PreconditionError("epigraph_normal: point is not a grid node");
    if (spec.on_edge(*node)) throw PreconditionError("epigraph_normal: node on stencil boundary");
    return epigraph_normal(intrinsic_gradient(phi), *node);
}

double hperimeter(const IntrinsicGradient& grad, const CellMask& region) {
    const GridSpec& spec = grad.spec();
    require_mask(spec, region, "hperimeter");
    const double cv = spec.cell_volume();
    StableSum s;
    for (std::size_t i = 0; i < spec.size(); ++i)
        if (region[i]) s.add(std::sqrt(1.0 + grad.norm_sq(i)) * cv);
    return s.value();
}

double hperimeter(const GridFunction& phi, const CellMask& region) {
    require_mask(phi.spec(), region, "hperimeter");
    return hperimeter(intrinsic_gradient(phi), region);
}

BoundaryCloud sample_graph_boundary(const GridFunction& phi, const IntrinsicGradient& grad, const CellMask& region,
                                    int stride) {
    const GridSpec& spec = phi.spec();
    require_mask(spec, region, "sample_graph_boundary");
    if (stride < 1) throw PreconditionError("sample_graph_boundary: stride must be >= 1");
    double cv = spec.cell_volume();
    for (int a = 0; a < spec.dim(); ++a) cv *= stride;
    CloudMeta meta;
    meta.provenance = "graph";
    BoundaryCloud cloud(spec.n(), meta);
    for (std::size_t i = 0; i < spec.size(); ++i) {
        if (!region[i]) continue;
        if (stride > 1) {
            const Index ix = spec.unravel(i);
            bool keep = true;
            for (int a = 0; a < spec.dim(); ++a) keep = keep && ix[a] % stride == 0;
            if (!keep) continue;
        }
        BoundarySample s;
        s.point = graph_point(phi, i);
        s.normal = epigraph_normal(grad, i);
        s.weight = std::sqrt(1.0 + grad.norm_sq(i)) * cv;
        cloud.push_back(s);
    }
    if (cloud.empty()) throw PreconditionError("sample_graph_boundary: empty region");
    return cloud;
}

BoundaryCloud sample_graph_boundary(const GridFunction& phi, const CellMask& region, int stride) {
    require_mask(phi.spec(), region, "sample_graph_boundary");
    return sample_graph_boundary(phi, intrinsic_gradient(phi), region, stride);
}

namespace {

void require_orientation(int orientation) {
    if (orientation != 1 && orientation != -1) throw PreconditionError("orientation must be +1 or -1");
}

}  // namespace

ExcessReport excess_cloud(const BoundaryCloud& cloud, const HPoint& p, double r, int orientation) {
    if (!(r > 0.0)) throw PreconditionError("excess_cloud: radius must be positive");
    require_orientation(orientation);
    const HPoint pinv = group_inv(p);
    StableSum sum;
    ExcessReport rep;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        if (cyl_norm(pinv * cloud.point(i)) < r) {
            sum.add(cloud.weight(i) * (1.0 - orientation * cloud.normal_x1(i)));
            ++rep.count;
        }
    }
    rep.center = p;
    rep.radius = r;
    rep.orientation = orientation;
    rep.empty = rep.count == 0;
    rep.value = std::max(0.0, sum.value()) / std::pow(r, 2 * cloud.n() + 1);
    return rep;
}

std::vector<ExcessReport> excess_profile(const CloudIndex& index, const HPoint& q, std::span<const double> scales,
                                         int orientation) {
    require_orientation(orientation);
    if (scales.empty()) return {};
    for (double s : scales)
        if (!(s > 0.0)) throw PreconditionError("excess_profile: scales must be positive");
    const BoundaryCloud& cloud = index.cloud();
    const double rmax = *std::max_element(scales.begin(), scales.end());
    std::vector<StableSum> sums(scales.size());
    std::vector<ExcessReport> out(scales.size());
    index.for_each_in_cylinder(q, rmax, [&](std::size_t i, double c) {
        const double v = cloud.weight(i) * (1.0 - orientation * cloud.normal_x1(i));
        for (std::size_t k = 0; k < scales.size(); ++k) {
            if (c < scales[k]) {
                sums[k].add(v);
                ++out[k].count;
            }
        }
    });
    for (std::size_t k = 0; k < scales.size(); ++k) {
        out[k].center = q;
        out[k].radius = scales[k];
        out[k].orientation = orientation;
        out[k].empty = out[k].count == 0;
        out[k].value = std::max(0.0, sums[k].value()) / std::pow(scales[k], 2 * cloud.n() + 1);
    }
    return out;
}

ExcessReport excess_cloud(const CloudIndex& index, const HPoint& p, double r, int orientation) {
    const double s[1] = {r};
    return excess_profile(index, p, s, orientation).front();
}

std::vector<ExcessReport> excess_profile(const BoundaryCloud& cloud, const HPoint& q, std::span<const double> scales,
                                         int orientation) {
    std::vector<ExcessReport> out;
    out.reserve(scales.size());
    for (double s : scales) out.push_back(excess_cloud(cloud, q, s, orientation));
    return out;
}

HeightBoundReport height_bound_ratio(const BoundaryCloud& cloud, const HPoint& center, double r0, int orientation) {
    if (!(r0 > 0.0)) throw PreconditionError("height_bound_ratio: r0 must be positive");
    HeightBoundReport rep;
    const HPoint cinv = group_inv(center);
    double sup_h = 0.0;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const HPoint rel = cinv * cloud.point(i);
        if (cyl_norm(rel) < r0) sup_h = std::max(sup_h, std::abs(height(rel)));
    }
    rep.sup_height_ratio = sup_h / r0;
    rep.excess = excess_cloud(cloud, center, 16.0 * r0, orientation).value;
    if (rep.sup_height_ratio == 0.0) {
        rep.ratio = 0.0;
    } else if (rep.excess <= 0.0) {
        rep.ratio = std::numeric_limits<double>::infinity();
        rep.infinite = true;
    } else {
        rep.ratio = rep.sup_height_ratio / std::pow(rep.excess, 1.0 / (2.0 * (2 * cloud.n() + 1)));
    }
    return rep;
}

HeightBoundReport height_bound_ratio(const BoundaryCloud& cloud, double r0, int orientation) {
    return height_bound_ratio(cloud, HPoint::zero(cloud.n()), r0, orientation);
}

}  // namespace hlip
