#include "hlip/approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hlip {

void PipelineConfig::validate() const {
    if (!(delta1 > 0.0)) throw PreconditionError("PipelineConfig: delta1 must be positive");
    if (scales.empty()) throw PreconditionError("PipelineConfig: scale set must be nonempty");
    for (double s : scales)
        if (!(s > 0.0)) throw PreconditionError("PipelineConfig: scales must be positive");
    if (!(tau >= 0.0)) throw PreconditionError("PipelineConfig: tau must be >= 0");
    if (orientation != 1 && orientation != -1) throw PreconditionError("PipelineConfig: orientation must be +1 or -1");
    if (!(alpha > 0.0 && alpha < 0.5)) throw PreconditionError("PipelineConfig: alpha must lie in (0, 1/2)");
    if (!(gamma2 >= 1.0)) throw PreconditionError("PipelineConfig: gamma2 must be >= 1");
    if (!(outer_radius > 0.0) || !(sigma > 0.0) || !(mu_scale >= 0.0))
        throw PreconditionError("PipelineConfig: radii must be positive");
    if (!(cone_L > 0.0) || !(cone_floor > 0.0)) throw PreconditionError("PipelineConfig: cone constants must be positive");
    if (sup_bound && !(*sup_bound > 0.0)) throw PreconditionError("PipelineConfig: sup_bound must be positive");
    if (center_stride < 1) throw PreconditionError("PipelineConfig: center_stride must be >= 1");
    if (phi_lemma_constant && !(*phi_lemma_constant > 0.0))
        throw PreconditionError("PipelineConfig: phi_lemma_constant must be positive");
}

double PipelineConfig::tau_for(const GridSpec& grid) const {
    if (tau > 0.0) return tau;
    double h = 0.0;
    for (int a = 0; a < grid.dim(); ++a) h = std::max(h, grid.spacing(a));
    return 2.0 * h;
}

GridSpec pipeline_grid(int n, double sigma, double h) {
    return GridSpec::centered_box(n, sigma, sigma * sigma, h);
}

double cell_diameter(const GridSpec& grid) {
    WPoint w = WPoint::zero(grid.n());
    for (int a = 0; a < grid.dim(); ++a) w.c[a] = grid.spacing(a);
    return box_norm(w);
}

std::vector<std::size_t> select_m0(const CloudIndex& index, const PipelineConfig& config) {
    config.validate();
    const BoundaryCloud& cloud = index.cloud();
    std::vector<std::uint8_t> keep(cloud.size(), 0);
#ifdef HLIP_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 64)
#endif
    for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(cloud.size()); ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        const auto prof = excess_profile(index, cloud.point(i), config.scales, config.orientation);
        double worst = 0.0;
        for (const auto& r : prof) worst = std::max(worst, r.value);
        keep[i] = worst <= config.delta1 ? 1 : 0;
    }
    std::vector<std::size_t> m0;
    for (std::size_t i = 0; i < keep.size(); ++i)
        if (keep[i]) m0.push_back(i);
    return m0;
}

std::vector<std::size_t> select_m0(const BoundaryCloud& cloud, const PipelineConfig& config) {
    const CloudIndex index = CloudIndex::build(cloud);
    return select_m0(index, config);
}

PartialHeights heights_on_projection(const BoundaryCloud& cloud, std::span<const std::size_t> samples,
                                     const GridSpec& grid) {
    if (cloud.n() != grid.n()) throw PreconditionError("heights_on_projection: dimension mismatch");
    PartialHeights out;
    out.known.assign(grid.size(), 0);
    out.values.assign(grid.size(), 0.0);
    struct Deposit {
        std::size_t node;
        double height;
        double weight;
    };
    std::vector<Deposit> deps;
    deps.reserve(samples.size());
    for (std::size_t i : samples) {
        if (i >= cloud.size()) throw PreconditionError("heights_on_projection: sample index out of range");
        const HPoint p = cloud.point(i);
        if (auto node = grid.nearest(project(p)))
            deps.push_back({*node, height(p), cloud.weight(i)});
        else
            ++out.dropped;
    }
    out.deposits = deps.size();
    std::sort(deps.begin(), deps.end(), [](const Deposit& a, const Deposit& b) {
        return a.node != b.node ? a.node < b.node : a.height < b.height;
    });
    for (std::size_t a = 0; a < deps.size();) {
        std::size_t b = a;
        double total = 0.0;
        while (b < deps.size() && deps[b].node == deps[a].node) total += deps[b++].weight;
        double chosen = deps[a + (b - a - 1) / 2].height;
        if (total > 0.0) {
            double acc = 0.0;
            for (std::size_t k = a; k < b; ++k) {
                acc += deps[k].weight;
                if (acc >= 0.5 * total) {
                    chosen = deps[k].height;
                    break;
                }
            }
        }
        out.known[deps[a].node] = 1;
        out.values[deps[a].node] = chosen;
        a = b;
    }
    return out;
}

std::optional<double> graph_height_at(const GridFunction& phi, const WPoint& w) {
    const GridSpec& grid = phi.spec();
    if (grid.contains(w)) return phi.eval(w);
    if (auto node = grid.nearest(w)) return phi[*node];
    return std::nullopt;
}

bool sample_matched(const GridFunction& phi, const HPoint& p, double tau) {
    const auto h = graph_height_at(phi, project(p));
    return h && std::abs(height(p) - *h) <= tau * (1.0 + cell_diameter(phi.spec()));
}

CellMask uncovered_cells(const CloudIndex& index, const GridFunction& phi, double tau, const CellMask& region) {
    if (!(tau > 0.0)) throw PreconditionError("uncovered_cells: tau must be positive");
    const GridSpec& grid = phi.spec();
    require_mask(grid, region, "uncovered_cells");
    CellMask out(grid.size(), 0);
#ifdef HLIP_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 64)
#endif
    for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(grid.size()); ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        if (!region[i]) continue;
        bool covered = false;
        index.for_each_in_cylinder(graph_point(phi, i), tau, [&](std::size_t, double) { covered = true; });
        out[i] = covered ? 0 : 1;
    }
    return out;
}

SymDiff sym_diff_measure(const CloudIndex& index, const GridFunction& phi, double tau, const CellMask& region) {
    if (!(tau > 0.0)) throw PreconditionError("sym_diff_measure: tau must be positive");
    const BoundaryCloud& cloud = index.cloud();
    const GridSpec& grid = phi.spec();
    if (cloud.n() != grid.n()) throw PreconditionError("sym_diff_measure: dimension mismatch");
    SymDiff out;
    StableSum sample_side;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const HPoint p = cloud.point(i);
        if (!(cyl_norm(p) < 1.0)) continue;
        if (!sample_matched(phi, p, tau)) {
            sample_side.add(cloud.weight(i));
            ++out.unmatched_samples;
        }
    }
    const CellMask uncovered = uncovered_cells(index, phi, tau, region);
    const IntrinsicGradient grad = intrinsic_gradient(phi, region);
    StableSum graph_side;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!uncovered[i]) continue;
        graph_side.add(std::sqrt(1.0 + grad.norm_sq(i)) * grid.cell_volume());
        ++out.uncovered_cells;
    }
    out.sample_side = sample_side.value();
    out.graph_side = graph_side.value();
    out.total = out.sample_side + out.graph_side;
    out.hausdorff = out.total / Dimension(grid.n()).delta();
    return out;
}

SymDiff sym_diff_measure(const BoundaryCloud& cloud, const GridFunction& phi, double tau) {
    const CloudIndex index = CloudIndex::build(cloud);
    return sym_diff_measure(index, phi, tau, disk_mask(phi.spec(), WPoint::zero(phi.spec().n()), 1.0));
}

namespace {

struct CandidateSet {
    std::vector<std::size_t> samples;
    std::vector<std::size_t> nodes;
};

CandidateSet representative_candidates(const BoundaryCloud& cloud, const GridSpec& grid, double sigma,
                                       double height_window) {
    if (!(sigma > 0.0) || !(height_window > 0.0))
        throw PreconditionError("representative_region: sigma and height window must be positive");
    if (cloud.n() != grid.n()) throw PreconditionError("representative_region: dimension mismatch");
    CandidateSet c;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const HPoint p = cloud.point(i);
        const WPoint w = project(p);
        if (!(box_norm(w) < sigma) || !(std::abs(height(p)) < height_window)) continue;
        const auto node = grid.nearest(w);
        c.samples.push_back(i);
        c.nodes.push_back(node ? *node : std::numeric_limits<std::size_t>::max());
    }
    return c;
}

bool cone_violation(const HPoint& q, const HPoint& p, double L) {
    const HPoint rel = group_inv(q) * p;
    return std::abs(height(rel)) > L * box_norm(project(rel));
}

CellMask region_from_bad(const GridSpec& grid, double sigma, const CandidateSet& c, const std::vector<std::uint8_t>& bad) {
    CellMask out = disk_mask(grid, WPoint::zero(grid.n()), sigma);
    for (std::size_t k = 0; k < c.samples.size(); ++k)
        if (bad[k] && c.nodes[k] < grid.size()) out[c.nodes[k]] = 0;
    return out;
}

}  // namespace

CellMask representative_region(const CloudIndex& index, const GridSpec& grid, double sigma, double L,
                               double height_window) {
    if (!(L > 0.0)) throw PreconditionError("representative_region: L must be positive");
    const BoundaryCloud& cloud = index.cloud();
    const CandidateSet c = representative_candidates(cloud, grid, sigma, height_window);
    std::vector<std::uint8_t> member(cloud.size(), 0);
    for (std::size_t i : c.samples) member[i] = 1;
    std::vector<std::uint8_t> bad(c.samples.size(), 0);
#ifdef HLIP_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 16)
#endif
    for (std::ptrdiff_t kk = 0; kk < static_cast<std::ptrdiff_t>(c.samples.size()); ++kk) {
        const auto k = static_cast<std::size_t>(kk);
        const HPoint q = cloud.point(c.samples[k]);
        // A violating p has |pi(q^-1 p)| < |h_p - h_q| / L <= (|h_q| + window) / L.
        const double reach = (std::abs(height(q)) + height_window) / L;
        bool found = false;
        index.for_each_in_cylinder(q, reach, [&](std::size_t j, double) {
            if (!found && member[j] && cone_violation(q, cloud.point(j), L)) found = true;
        });
        bad[k] = found ? 1 : 0;
    }
    // The condition on q does not involve the other cells of A, so one removal
    // pass already reaches the greatest admissible set.
    return region_from_bad(grid, sigma, c, bad);
}

CellMask representative_region_bruteforce(const BoundaryCloud& cloud, const GridSpec& grid, double sigma, double L,
                                          double height_window) {
    if (!(L > 0.0)) throw PreconditionError("representative_region: L must be positive");
    const CandidateSet c = representative_candidates(cloud, grid, sigma, height_window);
    CellMask A = disk_mask(grid, WPoint::zero(grid.n()), sigma);
    // Iterated removal until stable, as in the definition of the maximal element.
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t k = 0; k < c.samples.size(); ++k) {
            if (c.nodes[k] >= grid.size() || !A[c.nodes[k]]) continue;
            const HPoint q = cloud.point(c.samples[k]);
            for (std::size_t j : c.samples) {
                if (cone_violation(q, cloud.point(j), L)) {
                    A[c.nodes[k]] = 0;
                    changed = true;
                    break;
                }
            }
        }
    }
    return A;
}

MuTerms build_mu(const CloudIndex& index, const GridFunction& phi, const IntrinsicGradient& grad,
                 const CellMask& region, double tau, int orientation, double height_window) {
    if (orientation != 1 && orientation != -1) throw PreconditionError("build_mu: orientation must be +1 or -1");
    const GridSpec& grid = phi.spec();
    require_mask(grid, region, "build_mu");
    if (!grid.same_layout(grad.spec())) throw PreconditionError("build_mu: gradient grid differs from phi grid");
    const BoundaryCloud& cloud = index.cloud();
    std::vector<double> mass(grid.size(), 0.0);
    StableSum sample_term;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const HPoint p = cloud.point(i);
        if (!(std::abs(height(p)) < height_window)) continue;
        const auto node = grid.nearest(project(p));
        if (!node || !region[*node]) continue;
        const double v = 2.0 * cloud.weight(i) * std::max(0.0, 1.0 - orientation * cloud.normal_x1(i));
        mass[*node] += v;
        sample_term.add(v);
    }
    const CellMask uncovered = uncovered_cells(index, phi, tau, region);
    StableSum graph_term;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!uncovered[i]) continue;
        const double g2 = grad.norm_sq(i);
        const double v = g2 / std::sqrt(1.0 + g2) * grid.cell_volume();
        mass[i] += v;
        graph_term.add(v);
    }
    MuTerms out;
    out.sample_term = sample_term.value();
    out.graph_term = graph_term.value();
    out.mu = DiscreteMeasure(grid, std::move(mass));
    return out;
}

namespace {

double l2_gradient_over(const IntrinsicGradient& grad, const CellMask& region) {
    StableSum s;
    const double cv = grad.spec().cell_volume();
    for (std::size_t i = 0; i < region.size(); ++i)
        if (region[i]) s.add(grad.norm_sq(i) * cv);
    return s.value();
}

LipschitzEstimate lip_over(const GridFunction& phi, const PipelineConfig& config, CellMask subset = {}) {
    LipschitzOptions lo;
    lo.pair_budget = config.lip_pairs;
    lo.seed = config.seed;
    lo.subset = std::move(subset);
    if (!lo.subset.empty() && mask_count(lo.subset) < 2) return {};
    return lipschitz_estimate(phi, lo);
}

}  // namespace

ApproxResult lipschitz_approximation(const CloudIndex& index, const GridSpec& grid, const PipelineConfig& config) {
    config.validate();
    const BoundaryCloud& cloud = index.cloud();
    if (cloud.n() != grid.n()) throw PreconditionError("lipschitz_approximation: dimension mismatch");
    if (cloud.empty()) throw PreconditionError("lipschitz_approximation: empty cloud");
    ApproxResult res;
    res.cloud_size = cloud.size();
    res.tau = config.tau_for(grid);
    res.m0 = select_m0(index, config);

    std::vector<std::size_t> pinned = res.m0;
    if (config.representative && !res.m0.empty()) {
        const CellMask A = representative_region(index, grid, 1.0, config.cone_L, config.sigma);
        res.representative_cells = mask_count(A);
        for (std::size_t i = 0; i < cloud.size(); ++i) {
            const HPoint p = cloud.point(i);
            if (!(std::abs(height(p)) < config.sigma)) continue;
            const auto node = grid.nearest(project(p));
            if (node && A[*node]) pinned.push_back(i);
        }
        std::sort(pinned.begin(), pinned.end());
        pinned.erase(std::unique(pinned.begin(), pinned.end()), pinned.end());
    }
    const PartialHeights partial = heights_on_projection(cloud, pinned, grid);

    if (res.m0.empty() || mask_count(partial.known) == 0) {
        res.degenerate = true;
        res.phi = GridFunction::constant(grid, 0.0);
    } else {
        ExtensionOptions eo;
        eo.sup_bound = config.sup_bound;
        double L = config.cone_L;
        if (config.extension == ExtensionPolicy::measured) {
            const LipschitzEstimate in = lip_over(GridFunction(grid, partial.values), config, partial.known);
            L = std::max(in.value, config.cone_floor);
            eo.verify_input = false;
            res.input_cone_ratio = in.value;
        }
        ExtensionResult ext = extend_lipschitz(grid, partial.known, partial.values, L, eo);
        res.extension_constant = ext.constant;
        res.extension_residual = ext.residual;
        if (config.extension == ExtensionPolicy::fixed) res.input_cone_ratio = ext.input_cone_ratio;
        res.phi = std::move(ext.function);
    }

    const CellMask d1 = disk_mask(grid, WPoint::zero(grid.n()), 1.0);
    res.sup_abs = res.phi.sup_abs();
    res.lip = lip_over(res.phi, config);
    res.lip_ok = res.lip.value <= 1.0;
    res.symdiff = sym_diff_measure(index, res.phi, res.tau, d1);
    res.l2_gradient = l2_gradient_over(intrinsic_gradient(res.phi, d1), d1);
    for (std::size_t i : res.m0)
        if (!sample_matched(res.phi, cloud.point(i), res.tau)) ++res.m0_unmatched;
    return res;
}

ApproxResult lipschitz_approximation(const BoundaryCloud& cloud, const GridSpec& grid, const PipelineConfig& config) {
    const CloudIndex index = CloudIndex::build(cloud);
    return lipschitz_approximation(index, grid, config);
}

TruncationResult truncate(const CloudIndex& index, const ApproxResult& approx, const PipelineConfig& config) {
    config.validate();
    const GridFunction& phi = approx.phi;
    const GridSpec& grid = phi.spec();
    const BoundaryCloud& cloud = index.cloud();
    const int n = grid.n();
    const double tau = approx.tau > 0.0 ? approx.tau : config.tau_for(grid);
    const double s = config.mu_scale_or_default();
    const WPoint o = WPoint::zero(n);

    TruncationResult res;
    res.excess = excess_cloud(index, HPoint::zero(n), config.outer_radius, config.orientation).value;
    res.zero_excess = res.excess == 0.0;
    res.eta = std::pow(res.excess, 2.0 * config.alpha);
    res.d1 = disk_mask(grid, o, 1.0);
    res.d1_measure = mask_measure(grid, res.d1);

    const CellMask carrier = disk_mask(grid, o, std::min(config.sigma, 4.0 * s));
    const IntrinsicGradient carrier_grad = intrinsic_gradient(phi, carrier);
    res.mu = build_mu(index, phi, carrier_grad, carrier, tau, config.orientation, config.sigma);
    res.maximal = disk_maximal(res.mu.mu, s, config.ladder);

    res.K.assign(grid.size(), 0);
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (res.d1[i] && (res.zero_excess || res.maximal.values[i] <= res.eta)) res.K[i] = 1;
    res.k_cells = mask_count(res.K);
    res.complement_measure = res.d1_measure - mask_measure(grid, res.K);
    if (!res.zero_excess && 1.0 <= 3.0 * s) res.disk_lemma = check_disk_lemma(res.mu.mu, res.maximal, res.eta, 1.0);

    // gr(phi|K) against the cloud over K * (-1, 1).
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const HPoint p = cloud.point(i);
        if (!(std::abs(height(p)) < 1.0)) continue;
        const auto node = grid.nearest(project(p));
        if (!node || !res.K[*node]) continue;
        const auto h = graph_height_at(phi, project(p));
        res.coincidence_residual = std::max(res.coincidence_residual, std::abs(height(p) - *h));
        ++res.coincidence_samples;
    }
    res.coincidence_uncovered = mask_count(uncovered_cells(index, phi, tau, res.K));
    res.coincidence_holds = res.coincidence_residual <= tau && res.coincidence_uncovered == 0;

    res.lip_on_k = lip_over(phi, config, res.K);

    // Certified route: [mu_phi]^2 <= c_sq M mu on K, hence [mu_phi] <= theta there,
    // and the phi-maximal lemma turns theta into a Lipschitz bound.
    CellMask centers(grid.size(), 0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!res.K[i]) continue;
        const Index ix = grid.unravel(i);
        bool on = true;
        for (int a = 0; a < grid.dim(); ++a) on = on && ix[a] % config.center_stride == 0;
        centers[i] = on ? 1 : 0;
    }
    if (mask_count(centers) >= 2) {
        const IntrinsicGradient grad = intrinsic_gradient(phi);
        PhiMaximalSettings st;
        st.gamma2 = config.gamma2;
        st.ratio = config.ladder.ratio;
        st.r_min = config.ladder.r_min;
        st.centers = centers;
        st.c_L = estimate_ball_constants(phi, {}, 2000, config.seed).c_L;
        const double s_phi = 1.0 + 2.0 * std::sqrt(phi.sup_abs());
        const PhiMaximalField field = phi_maximal(phi, gradient_measure(grad), s_phi, st);
        res.phi_regime_ok = field.regime_ok;
        res.phi_lip_estimate = field.lip_estimate;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (!centers[i] || !(res.maximal.values[i] > 0.0)) continue;
            res.c_sq = std::max(res.c_sq, field.values[i] * field.values[i] / res.maximal.values[i]);
        }
        res.theta = std::sqrt(res.c_sq * res.eta);
        if (res.theta > 0.0) {
            try {
                const PhiLemmaReport lemma = check_phi_lemma(phi, field, res.theta, config.lip_pairs, config.seed);
                res.c_phi_measured = lemma.worst_ratio;
                res.phi_pairs = lemma.pairs;
            } catch (const PreconditionError&) {
                res.c_phi_measured = 0.0;
            }
        }
    }
    res.c_phi = config.phi_lemma_constant.value_or(res.c_phi_measured);
    res.lip_certified = res.c_phi * res.theta;
    return res;
}

BVReport check_bv(const IntrinsicGradient& grad, const CellMask& region) {
    const GridSpec& grid = grad.spec();
    require_mask(grid, region, "check_bv");
    const double cv = grid.cell_volume();
    const double sup = grad.sup_norm();
    StableSum first;
    StableSum graph;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!region[i]) continue;
        const double g2 = grad.norm_sq(i);
        first.add(std::sqrt(g2) * cv);
        // Area formula: the graph integral of g^2/(1+g^2) is the W integral of g^2/sqrt(1+g^2).
        graph.add(g2 / std::sqrt(1.0 + g2) * cv);
    }
    BVReport rep;
    rep.lhs = first.value() * first.value();
    rep.rhs = std::sqrt(1.0 + sup * sup) * mask_measure(grid, region) * graph.value();
    rep.pass = rep.lhs <= rep.rhs * (1.0 + 1e-9);
    return rep;
}

BVReport check_bv(const GridFunction& phi, const CellMask& region) { return check_bv(intrinsic_gradient(phi), region); }

SandwichReport check_sandwich(const GridFunction& phi, std::size_t node, double r, double C, double lip) {
    const GridSpec& grid = phi.spec();
    if (node >= grid.size()) throw PreconditionError("check_sandwich: node out of range");
    if (!(r > 0.0) || !(C > 0.0) || !(lip >= 0.0)) throw PreconditionError("check_sandwich: need r, C > 0 and lip >= 0");
    SandwichReport rep;
    rep.lip = lip;
    rep.C = C;
    rep.R = r + 2.0 * std::sqrt(phi.sup_abs() * r);
    rep.precondition = C < 1.0 / (1.0 + lip);
    const HPoint X = graph_point(phi, node);
    const WPoint x = grid.node(node);
    const auto record = [](InclusionCheck& c, double d, double radius) {
        ++c.checked;
        c.worst_ratio = std::max(c.worst_ratio, d / radius);
        if (!(d < radius)) ++c.violations;
    };
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const HPoint Y = graph_point(phi, j);
        const WPoint y = grid.node(j);
        const double d_phi = graph_distance(X, Y);
        const double d_ball = d_inf(X, Y);
        const double d_w = d_inf(x, y);
        if (d_phi < C * r) record(rep.inner, d_ball, r);
        if (d_ball < r) record(rep.outer, d_phi, r);
        if (d_phi < r) record(rep.to_disk, d_w, rep.R);
        if (d_w < r) record(rep.from_disk, d_phi, rep.R);
    }
    return rep;
}

CorollaryReport corollary_report(const BoundaryCloud& cloud, const GridSpec& grid, const PipelineConfig& config) {
    const CloudIndex index = CloudIndex::build(cloud);
    CorollaryReport rep;
    rep.approx = lipschitz_approximation(index, grid, config);
    rep.truncation = truncate(index, rep.approx, config);
    const TruncationResult& tr = rep.truncation;

    if (tr.k_cells > 0 && tr.k_cells < grid.size()) {
        ExtensionOptions eo;
        eo.verify_input = false;
        // Re-extension keeps the sup norm of the approximation, as the cited extension does.
        eo.sup_bound = config.sup_bound.value_or(rep.approx.phi.sup_abs());
        const double L = std::max(tr.lip_on_k.value, config.cone_floor);
        rep.extension = extend_lipschitz(grid, tr.K, rep.approx.phi.values(), L, eo);
        rep.phi = rep.extension.function;
    } else {
        rep.phi = rep.approx.phi;
    }

    const CellMask d1 = disk_mask(grid, WPoint::zero(grid.n()), 1.0);
    const double tau = rep.approx.tau;
    rep.lip = lip_over(rep.phi, config);
    rep.symdiff = sym_diff_measure(index, rep.phi, tau, d1);
    rep.l2_gradient = l2_gradient_over(intrinsic_gradient(rep.phi, d1), d1);

    const double e = tr.excess;
    const double a = config.alpha;
    const auto add = [&](std::string name, double value, double power) {
        const double ratio = e > 0.0 ? value / std::pow(e, power) : 0.0;
        rep.quantities.push_back({std::move(name), value, power, ratio});
    };
    add("measure_d1_minus_k", tr.complement_measure, 1.0 - 2.0 * a);
    add("coincidence_residual", tr.coincidence_residual, 0.0);
    add("symdiff_c1", rep.symdiff.hausdorff, 1.0 - 2.0 * a);
    add("lipschitz", rep.lip.value, a);
    add("l2_gradient", rep.l2_gradient, 1.0);
    return rep;
}

}  // namespace hlip
