#include "hlip/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace hlip {

IntrinsicGradient::IntrinsicGradient(GridSpec spec, std::vector<std::vector<double>> components)
    : spec_(std::move(spec)), comp_(std::move(components)) {
    if (static_cast<int>(comp_.size()) != 2 * spec_.n() - 1)
        throw PreconditionError("IntrinsicGradient: need 2n-1 components");
    for (const auto& c : comp_)
        if (c.size() != spec_.size()) throw PreconditionError("IntrinsicGradient: component size mismatch");
}

double IntrinsicGradient::norm_sq(std::size_t node) const {
    double s = 0.0;
    for (const auto& c : comp_) s += c[node] * c[node];
    return s;
}

double IntrinsicGradient::sup_norm() const {
    double m = 0.0;
    for (std::size_t i = 0; i < spec_.size(); ++i) m = std::max(m, norm_sq(i));
    return std::sqrt(m);
}

double IntrinsicGradient::sup_norm(const CellMask& region) const {
    require_mask(spec_, region, "sup_norm");
    double m = 0.0;
    for (std::size_t i = 0; i < spec_.size(); ++i)
        if (region[i]) m = std::max(m, norm_sq(i));
    return std::sqrt(m);
}

double axis_derivative(const GridSpec& spec, std::span<const double> f, std::size_t node, int axis,
                       const CellMask* region) {
    const int i = spec.unravel(node)[axis];
    const int c = spec.count(axis);
    const auto s = static_cast<std::ptrdiff_t>(spec.stride(axis));
    const double h = spec.spacing(axis);
    const auto at = [&](int k) { return static_cast<std::size_t>(static_cast<std::ptrdiff_t>(node) + (k - i) * s); };
    const auto ok = [&](int k) { return k >= 0 && k < c && (region == nullptr || (*region)[at(k)] != 0); };

    if (ok(i - 1) && ok(i + 1)) return (f[at(i + 1)] - f[at(i - 1)]) / (2.0 * h);
    // One-sided stencils in difference form so constants give exactly zero.
    if (ok(i + 1) && ok(i + 2)) return (4.0 * (f[at(i + 1)] - f[node]) - (f[at(i + 2)] - f[node])) / (2.0 * h);
    if (ok(i - 1) && ok(i - 2)) return (4.0 * (f[node] - f[at(i - 1)]) - (f[node] - f[at(i - 2)])) / (2.0 * h);
    if (ok(i + 1)) return (f[at(i + 1)] - f[node]) / h;
    if (ok(i - 1)) return (f[node] - f[at(i - 1)]) / h;
    return 0.0;
}

namespace {

IntrinsicGradient gradient_impl(const GridFunction& phi, const CellMask* region) {
    const GridSpec& spec = phi.spec();
    const int n = spec.n();
    const int ta = spec.t_axis();
    const auto f = phi.values();
    std::vector<std::vector<double>> comp(static_cast<std::size_t>(2 * n - 1), std::vector<double>(spec.size()));

#ifdef HLIP_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(spec.size()); ++ii) {
        const auto node = static_cast<std::size_t>(ii);
        const WPoint w = spec.node(node);
        const double dt = axis_derivative(spec, f, node, ta, region);
        for (int j = 2; j <= n; ++j) {
            const double dx = axis_derivative(spec, f, node, j - 2, region);
            const double dy = axis_derivative(spec, f, node, n + j - 2, region);
            comp[static_cast<std::size_t>(j - 2)][node] = dx + 2.0 * w.y(j) * dt;
            comp[static_cast<std::size_t>(n + j - 2)][node] = dy - 2.0 * w.x(j) * dt;
        }
        const double dy1 = axis_derivative(spec, f, node, n - 1, region);
        comp[static_cast<std::size_t>(n - 1)][node] = dy1 - 4.0 * f[node] * dt;
    }
    return IntrinsicGradient(spec, std::move(comp));
}

}  // namespace

IntrinsicGradient intrinsic_gradient(const GridFunction& phi) {
    for (int a = 0; a < phi.spec().dim(); ++a)
        if (phi.spec().count(a) < 3) throw PreconditionError("intrinsic_gradient: grid too small for stencil");
    return gradient_impl(phi, nullptr);
}

IntrinsicGradient intrinsic_gradient(const GridFunction& phi, const CellMask& stencil_region) {
    require_mask(phi.spec(), stencil_region, "intrinsic_gradient");
    return gradient_impl(phi, &stencil_region);
}

HPoint graph_map(const GridFunction& phi, const WPoint& w) {
    if (!phi.spec().contains(w)) throw PreconditionError("graph_map: point outside grid");
    return exp_x1(phi.eval(w), w);
}

HPoint graph_point(const GridFunction& phi, std::size_t node) {
    return exp_x1(phi[node], phi.spec().node(node));
}

std::vector<HPoint> graph_points(const GridFunction& phi) {
    std::vector<HPoint> g(phi.size());
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = graph_point(phi, i);
    return g;
}

double graph_distance(const GridFunction& phi, const WPoint& w, const WPoint& v) {
    return graph_distance(graph_map(phi, w), graph_map(phi, v));
}

PhiBall phi_ball(const GridSpec& spec, std::span<const HPoint> graph, const HPoint& center, double r) {
    if (!(r > 0.0)) throw PreconditionError("phi_ball: radius must be positive");
    if (graph.size() != spec.size()) throw PreconditionError("phi_ball: graph size mismatch");
    PhiBall b;
    for (std::size_t i = 0; i < graph.size(); ++i) {
        if (graph_distance(center, graph[i]) < r) {
            b.cells.push_back(i);
            if (spec.on_edge(i)) b.exits_grid = true;
        }
    }
    b.measure = static_cast<double>(b.cells.size()) * spec.cell_volume();
    return b;
}

PhiBall phi_ball(const GridFunction& phi, const WPoint& x, double r) {
    const auto g = graph_points(phi);
    return phi_ball(phi.spec(), g, graph_map(phi, x), r);
}

namespace {

// Ratio over both orders of the pair, i.e. the cone condition in each direction.
// Infinite when distinct heights sit over a zero gap.
double pair_ratio(const HPoint& a, const HPoint& b, double fa, double fb) {
    const double num = std::abs(fa - fb);
    const double den = std::min(projected_gap(a, b), projected_gap(b, a));
    if (den <= 0.0) return num > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    return num / den;
}

void require_graph(double ratio) {
    if (std::isinf(ratio)) throw InvalidGraphError("distinct heights over a zero projected gap");
}

}  // namespace

LipschitzEstimate lipschitz_estimate(const GridFunction& phi, const LipschitzOptions& opt) {
    if (opt.pair_budget < 1) throw PreconditionError("lipschitz_estimate: pair_budget must be >= 1");
    const GridSpec& spec = phi.spec();
    std::vector<std::size_t> nodes;
    if (opt.subset.empty()) {
        nodes.resize(spec.size());
        for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i] = i;
    } else {
        require_mask(spec, opt.subset, "lipschitz_estimate");
        for (std::size_t i = 0; i < spec.size(); ++i)
            if (opt.subset[i]) nodes.push_back(i);
    }
    LipschitzEstimate est;
    const std::size_t m = nodes.size();
    if (m < 2) return est;

    const auto gp = [&](std::size_t i) { return graph_point(phi, i); };
    const std::size_t all_pairs = m * (m - 1) / 2;
    if (all_pairs <= opt.pair_budget) {
        std::vector<HPoint> g(m);
        for (std::size_t a = 0; a < m; ++a) g[a] = gp(nodes[a]);
        double best = 0.0;
#ifdef HLIP_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 16) reduction(max : best)
#endif
        for (std::ptrdiff_t aa = 0; aa < static_cast<std::ptrdiff_t>(m); ++aa) {
            const auto a = static_cast<std::size_t>(aa);
            for (std::size_t b = a + 1; b < m; ++b)
                best = std::max(best, pair_ratio(g[a], g[b], phi[nodes[a]], phi[nodes[b]]));
        }
        require_graph(best);
        est.value = best;
        est.pairs = all_pairs;
        est.exhaustive = true;
        return est;
    }

    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<std::size_t> pick(0, m - 1);
    std::uniform_int_distribution<int> offset(-opt.local_window, opt.local_window);
    const int d = spec.dim();
    for (std::size_t k = 0; k < opt.pair_budget; ++k) {
        const std::size_t i = nodes[pick(rng)];
        std::size_t j = i;
        if (k % 2 == 0) {
            j = nodes[pick(rng)];
        } else {
            Index ix = spec.unravel(i);
            bool inside = true;
            for (int a = 0; a < d; ++a) {
                ix[a] += offset(rng);
                if (ix[a] < 0 || ix[a] >= spec.count(a)) inside = false;
            }
            if (!inside) continue;
            j = spec.ravel(ix);
            if (!opt.subset.empty() && !opt.subset[j]) continue;
        }
        if (i == j) continue;
        est.value = std::max(est.value, pair_ratio(gp(i), gp(j), phi[i], phi[j]));
        ++est.pairs;
    }
    require_graph(est.value);
    return est;
}

double lipschitz_estimate(const GridFunction& phi, std::size_t pair_budget, std::uint64_t seed) {
    LipschitzOptions opt;
    opt.pair_budget = pair_budget;
    opt.seed = seed;
    return lipschitz_estimate(phi, opt).value;
}

double extension_constant(double L) {
    if (!(L > 0.0)) throw PreconditionError("extension_constant: L must be positive");
    const double root = std::sqrt(1.0 + 1.0 / (L + 2.0 * L * L)) - 1.0;
    return 1.0 / (root * root);
}

namespace {

// Coefficients that make the projected gap from Phi(q) to any point of the
// X1-line through w an explicit function of w's coordinates.
struct ConeSources {
    int n = 2;
    std::vector<std::vector<double>> z;  // horizontal W coordinates per axis
    std::vector<double> value;
    std::vector<double> t_shift;   // t_q + 4 phi_q y1_q
    std::vector<double> y1_coef;   // 4 phi_q
    std::vector<std::vector<double>> cx;  // multiplies x_j^w: -2 y_j^q, j >= 2
    std::vector<std::vector<double>> cy;  // multiplies y_j^w:  2 x_j^q, j >= 2
};

ConeSources make_sources(const GridSpec& spec, const std::vector<std::size_t>& known, std::span<const double> values) {
    const int n = spec.n();
    const int dz = 2 * n - 1;
    ConeSources s;
    s.n = n;
    s.z.assign(static_cast<std::size_t>(dz), std::vector<double>(known.size()));
    s.cx.assign(static_cast<std::size_t>(n - 1), std::vector<double>(known.size()));
    s.cy.assign(static_cast<std::size_t>(n - 1), std::vector<double>(known.size()));
    s.value.resize(known.size());
    s.t_shift.resize(known.size());
    s.y1_coef.resize(known.size());
    for (std::size_t k = 0; k < known.size(); ++k) {
        const WPoint q = spec.node(known[k]);
        const double f = values[known[k]];
        for (int a = 0; a < dz; ++a) s.z[a][k] = q.c[a];
        s.value[k] = f;
        s.t_shift[k] = q.t() + 4.0 * f * q.y(1);
        s.y1_coef[k] = 4.0 * f;
        for (int j = 2; j <= n; ++j) {
            s.cx[j - 2][k] = -2.0 * q.y(j);
            s.cy[j - 2][k] = 2.0 * q.x(j);
        }
    }
    return s;
}

// min_q value_q + M * ||pi(Phi(q)^-1 * w)||, blocked so the inner loops vectorize.
double cone_envelope(const ConeSources& s, const WPoint& w, double M) {
    constexpr std::size_t kBlock = 256;
    const std::size_t m = s.value.size();
    const int n = s.n;
    const int dz = 2 * n - 1;
    double dz2[kBlock];
    double tp[kBlock];
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t b0 = 0; b0 < m; b0 += kBlock) {
        const std::size_t len = std::min(kBlock, m - b0);
        const double tw = w.t();
        const double y1w = w.y(1);
        for (std::size_t k = 0; k < len; ++k) {
            dz2[k] = 0.0;
            tp[k] = tw - s.t_shift[b0 + k] + s.y1_coef[b0 + k] * y1w;
        }
        for (int a = 0; a < dz; ++a) {
            const double wa = w.c[a];
            const double* za = s.z[a].data() + b0;
            for (std::size_t k = 0; k < len; ++k) {
                const double d = wa - za[k];
                dz2[k] += d * d;
            }
        }
        for (int j = 2; j <= n; ++j) {
            const double xw = w.x(j);
            const double yw = w.y(j);
            const double* cx = s.cx[j - 2].data() + b0;
            const double* cy = s.cy[j - 2].data() + b0;
            for (std::size_t k = 0; k < len; ++k) tp[k] += cx[k] * xw + cy[k] * yw;
        }
        const double* v = s.value.data() + b0;
        for (std::size_t k = 0; k < len; ++k) {
            const double g2 = std::max(dz2[k], std::abs(tp[k]));
            best = std::min(best, v[k] + M * std::sqrt(g2));
        }
    }
    return best;
}

}  // namespace

ExtensionResult extend_lipschitz(const GridSpec& spec, const CellMask& known, std::span<const double> values,
                                 double L, const ExtensionOptions& opt) {
    require_mask(spec, known, "extend_lipschitz");
    if (values.size() != spec.size()) throw PreconditionError("extend_lipschitz: values must cover every node");
    if (!(L > 0.0)) throw PreconditionError("extend_lipschitz: L must be positive");
    std::vector<std::size_t> K;
    std::vector<std::size_t> unknown;
    for (std::size_t i = 0; i < spec.size(); ++i) (known[i] ? K : unknown).push_back(i);
    if (K.empty()) throw PreconditionError("extend_lipschitz: no known nodes");

    std::vector<double> filled(values.begin(), values.end());
    for (std::size_t i : unknown) filled[i] = 0.0;
    for (std::size_t i : K)
        if (!std::isfinite(filled[i])) throw PreconditionError("extend_lipschitz: known values must be finite");
    if (opt.sup_bound) {
        for (std::size_t i : K)
            if (std::abs(filled[i]) > *opt.sup_bound * (1.0 + 1e-12))
                throw PreconditionError("extend_lipschitz: known value exceeds sup_bound");
    }

    ExtensionResult res;
    res.constant = opt.constant_override ? *opt.constant_override : extension_constant(L);
    if (!(res.constant > 0.0)) throw PreconditionError("extend_lipschitz: cone constant must be positive");

    if (opt.verify_input) {
        LipschitzOptions lo;
        lo.pair_budget = opt.verify_pair_budget;
        lo.subset = known;
        const auto est = lipschitz_estimate(GridFunction(spec, filled), lo);
        res.input_cone_ratio = est.value;
        if (est.value > L * (1.0 + opt.cone_slack) + 1e-12)
            throw PreconditionError("extend_lipschitz: input violates the cone condition (observed ratio " +
                                    std::to_string(est.value) + " > L = " + std::to_string(L) + ")");
    }

    const ConeSources src = make_sources(spec, K, filled);
    const double M = res.constant;
    std::vector<double> first(unknown.size());
#ifdef HLIP_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 64)
#endif
    for (std::ptrdiff_t u = 0; u < static_cast<std::ptrdiff_t>(unknown.size()); ++u)
        first[static_cast<std::size_t>(u)] = cone_envelope(src, spec.node(unknown[static_cast<std::size_t>(u)]), M);
    res.iterations = 1;

    // The gap from Phi(q) is constant along X1-lines, so one sweep is already
    // stationary. Confirm it on a sample with the plain group law, evaluating
    // the envelope at the updated graph point.
    std::vector<HPoint> sources(K.size());
    for (std::size_t k = 0; k < K.size(); ++k) sources[k] = exp_x1(filled[K[k]], spec.node(K[k]));
    const std::size_t probes = std::min<std::size_t>(unknown.size(), 64);
    double residual = 0.0;
    for (std::size_t p = 0; p < probes; ++p) {
        const std::size_t u = p * unknown.size() / probes;
        const HPoint at = exp_x1(first[u], spec.node(unknown[u]));
        double second = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < K.size(); ++k)
            second = std::min(second, filled[K[k]] + M * projected_gap(sources[k], at));
        residual = std::max(residual, std::abs(second - first[u]));
    }
    if (probes > 0) res.iterations = 2;
    res.residual = residual;
    if (!(residual <= opt.tol))
        throw NumericalError("extend_lipschitz: fixed point not reached, residual " + std::to_string(residual));

    for (std::size_t u = 0; u < unknown.size(); ++u) {
        double v = first[u];
        if (opt.sup_bound) v = std::clamp(v, -*opt.sup_bound, *opt.sup_bound);
        filled[unknown[u]] = v;
    }
    res.function = GridFunction(spec, std::move(filled));
    return res;
}

GridFunction dilate_graph(double lambda, const GridFunction& phi) {
    if (!(lambda > 0.0)) throw PreconditionError("dilate_graph: lambda must be positive");
    const GridSpec& s = phi.spec();
    std::vector<double> spacing = s.spacings();
    for (int a = 0; a < s.dim() - 1; ++a) spacing[a] *= lambda;
    spacing.back() *= lambda * lambda;
    GridSpec out(s.n(), dilate(lambda, s.origin()), std::move(spacing), s.counts());
    std::vector<double> v(phi.values().begin(), phi.values().end());
    for (double& x : v) x *= lambda;
    return GridFunction(std::move(out), std::move(v));
}

GridFunction dilate_graph(double lambda, const GridFunction& phi, const GridSpec& target) {
    if (!(lambda > 0.0)) throw PreconditionError("dilate_graph: lambda must be positive");
    std::vector<double> v(target.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const WPoint src = dilate(1.0 / lambda, target.node(i));
        if (!phi.spec().contains(src)) throw PreconditionError("dilate_graph: resampling outside source domain");
        v[i] = lambda * phi.eval(src);
    }
    return GridFunction(target, std::move(v));
}

}  // namespace hlip
