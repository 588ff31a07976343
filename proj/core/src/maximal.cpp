#include "hlip/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace hlip {

DiscreteMeasure::DiscreteMeasure(GridSpec spec, std::vector<double> mass) : spec_(std::move(spec)), mass_(std::move(mass)) {
    if (mass_.size() != spec_.size()) throw PreconditionError("DiscreteMeasure: mass count does not match grid");
    for (double m : mass_)
        if (!(m >= 0.0) || !std::isfinite(m)) throw PreconditionError("DiscreteMeasure: masses must be finite and >= 0");
}

double DiscreteMeasure::total() const {
    double s = 0.0;
    for (double m : mass_) s += m;
    return s;
}

double DiscreteMeasure::total(const CellMask& region) const {
    require_mask(spec_, region, "DiscreteMeasure::total");
    double s = 0.0;
    for (std::size_t i = 0; i < mass_.size(); ++i)
        if (region[i]) s += mass_[i];
    return s;
}

double cell_radius(const GridSpec& spec) {
    const Dimension dim(spec.n());
    return std::pow(spec.cell_volume() / dim.kappa(), 1.0 / dim.disk_exponent());
}

std::vector<double> radius_ladder(double r_min, double r_max, double ratio) {
    if (!(r_min > 0.0) || !(ratio > 1.0)) throw PreconditionError("radius_ladder: need r_min > 0 and ratio > 1");
    std::vector<double> r;
    for (int k = 0;; ++k) {
        const double v = r_min * std::pow(ratio, k);
        if (!(v < r_max)) break;
        r.push_back(v);
    }
    return r;
}

namespace {

// Smallest k with radii[k] > d, or radii.size() when none.
std::size_t ladder_bin(std::span<const double> radii, double d) {
    return static_cast<std::size_t>(std::upper_bound(radii.begin(), radii.end(), d) - radii.begin());
}

std::size_t box_cells(const Index& lo, const Index& hi, int d) {
    std::size_t c = 1;
    for (int a = 0; a < d; ++a) {
        if (hi[a] < lo[a]) return 0;
        c *= static_cast<std::size_t>(hi[a] - lo[a] + 1);
    }
    return c;
}

}  // namespace

MaximalField disk_maximal(const DiscreteMeasure& mu, double s, const LadderOptions& ladder) {
    if (!(s > 0.0)) throw PreconditionError("disk_maximal: s must be positive");
    const GridSpec& spec = mu.spec();
    const Dimension dim(spec.n());
    const int e = dim.disk_exponent();
    const double r_min = ladder.r_min > 0.0 ? ladder.r_min : cell_radius(spec);
    const double R = 4.0 * s;

    MaximalField field;
    field.spec = spec;
    field.s = s;
    field.values.assign(spec.size(), 0.0);
    field.domain.assign(spec.size(), 0);
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < spec.size(); ++i) {
        const bool inside = box_norm(spec.node(i)) < R;
        field.domain[i] = inside ? 1 : 0;
        if (mu[i] > 0.0) {
            if (!inside) throw PreconditionError("disk_maximal: measure not supported in D_4s");
            support.push_back(i);
        }
    }
    if (support.empty()) return field;

    const std::vector<double> radii = radius_ladder(r_min, R, ladder.ratio);
    std::vector<double> vol(radii.size());
    for (std::size_t k = 0; k < radii.size(); ++k) vol[k] = dim.kappa() * std::pow(radii[k], e);
    std::vector<WPoint> sup_pts(support.size());
    for (std::size_t k = 0; k < support.size(); ++k) sup_pts[k] = spec.node(support[k]);

#ifdef HLIP_HAVE_OPENMP
#pragma omp parallel
#endif
    {
        std::vector<double> cum(radii.size());
#ifdef HLIP_HAVE_OPENMP
#pragma omp for schedule(dynamic, 32)
#endif
        for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(spec.size()); ++ii) {
            const auto i = static_cast<std::size_t>(ii);
            if (!field.domain[i]) continue;
            const WPoint x = spec.node(i);
            const double rmax = R - box_norm(x);
            const std::size_t K = static_cast<std::size_t>(std::lower_bound(radii.begin(), radii.end(), rmax) - radii.begin());
            if (K == 0) continue;
            const std::span<const double> rk(radii.data(), K);
            const double rtop = radii[K - 1];
            std::fill(cum.begin(), cum.begin() + static_cast<std::ptrdiff_t>(K), 0.0);
            const auto deposit = [&](const WPoint& c, double m) {
                const double d = d_inf(x, c);
                if (d >= rtop) return;
                cum[ladder_bin(rk, d)] += m;
            };
            const auto [lo, hi] = spec.disk_box(x, rtop);
            if (support.size() <= box_cells(lo, hi, spec.dim())) {
                for (std::size_t k = 0; k < support.size(); ++k) deposit(sup_pts[k], mu[support[k]]);
            } else {
                for_each_in_box(spec, lo, hi, [&](std::size_t c) {
                    if (mu[c] > 0.0) deposit(spec.node(c), mu[c]);
                });
            }
            double acc = 0.0;
            double best = 0.0;
            for (std::size_t k = 0; k < K; ++k) {
                acc += cum[k];
                best = std::max(best, acc / vol[k]);
            }
            field.values[i] = best;
        }
    }
    return field;
}

Superlevel superlevel(const GridSpec& spec, std::span<const double> values, const CellMask& domain, double theta) {
    if (!(theta > 0.0)) throw PreconditionError("superlevel: theta must be positive");
    require_mask(spec, domain, "superlevel");
    Superlevel out;
    out.mask.assign(spec.size(), 0);
    for (std::size_t i = 0; i < spec.size(); ++i) {
        if (domain[i] && values[i] > theta) {
            out.mask[i] = 1;
            ++out.count;
        }
    }
    out.measure = static_cast<double>(out.count) * spec.cell_volume();
    return out;
}

Superlevel superlevel(const MaximalField& field, double theta) {
    return superlevel(field.spec, field.values, field.domain, theta);
}

const char* to_string(LemmaStatus s) {
    switch (s) {
        case LemmaStatus::pass: return "pass";
        case LemmaStatus::fail: return "fail";
        case LemmaStatus::hypothesis_failed: return "hypothesis_failed";
    }
    return "unknown";
}

DiskLemmaReport check_disk_lemma(const DiscreteMeasure& mu, const MaximalField& field, double theta, double r) {
    if (!(theta > 0.0) || !(r > 0.0)) throw PreconditionError("check_disk_lemma: theta and r must be positive");
    const double s = field.s;
    if (r > 3.0 * s * (1.0 + 1e-12)) throw PreconditionError("check_disk_lemma: need r <= 3s");
    const GridSpec& spec = mu.spec();
    const Dimension dim(spec.n());
    const int e = dim.disk_exponent();
    const double five_e = std::pow(5.0, e);

    DiskLemmaReport rep;
    rep.hypothesis_lhs = mu.total(field.domain);
    rep.hypothesis_rhs = theta * dim.kappa() * std::pow(s, e) / five_e;

    const Superlevel J = superlevel(field, theta);
    const Superlevel Jlow = superlevel(field, theta / std::pow(2.0, e));
    double lhs_cells = 0.0;
    double rhs_mass = 0.0;
    for (std::size_t i = 0; i < spec.size(); ++i) {
        const double nx = box_norm(spec.node(i));
        if (J.mask[i] && nx < r) lhs_cells += 1.0;
        if (Jlow.mask[i] && nx < r + s / 5.0) rhs_mass += mu[i];
    }
    rep.lhs = lhs_cells * spec.cell_volume();
    rep.rhs = five_e / theta * rhs_mass;
    if (rep.hypothesis_lhs > rep.hypothesis_rhs)
        rep.status = LemmaStatus::hypothesis_failed;
    else
        rep.status = rep.lhs <= rep.rhs * (1.0 + rep.slack) ? LemmaStatus::pass : LemmaStatus::fail;
    return rep;
}

DiskLemmaReport check_disk_lemma(const DiscreteMeasure& mu, double s, double theta, double r,
                                 const LadderOptions& ladder) {
    return check_disk_lemma(mu, disk_maximal(mu, s, ladder), theta, r);
}

std::vector<std::size_t> vitali_5r(std::span<const Ball> balls) {
    for (const Ball& b : balls)
        if (!(b.radius > 0.0)) throw PreconditionError("vitali_5r: radii must be positive");
    std::vector<std::size_t> order(balls.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return balls[a].radius > balls[b].radius; });
    std::vector<std::size_t> chosen;
    for (std::size_t i : order) {
        bool disjoint = true;
        for (std::size_t j : chosen) {
            if (d_inf(balls[i].center, balls[j].center) < balls[i].radius + balls[j].radius) {
                disjoint = false;
                break;
            }
        }
        if (disjoint) chosen.push_back(i);
    }
    return chosen;
}

VitaliCheck verify_vitali(std::span<const Ball> balls, std::span<const std::size_t> selected) {
    VitaliCheck out;
    for (std::size_t a = 0; a < selected.size(); ++a)
        for (std::size_t b = a + 1; b < selected.size(); ++b) {
            const Ball& p = balls[selected[a]];
            const Ball& q = balls[selected[b]];
            if (d_inf(p.center, q.center) < p.radius + q.radius) out.disjoint = false;
        }
    for (const Ball& in : balls) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j : selected) {
            const Ball& sel = balls[j];
            best = std::min(best, (d_inf(in.center, sel.center) + in.radius) / (5.0 * sel.radius));
        }
        out.worst_cover_ratio = std::max(out.worst_cover_ratio, best);
        if (!(best <= 1.0)) out.covered = false;
    }
    return out;
}

DiscreteMeasure gradient_measure(const IntrinsicGradient& grad) {
    const GridSpec& spec = grad.spec();
    std::vector<double> m(spec.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = grad.norm(i) * spec.cell_volume();
    return DiscreteMeasure(spec, std::move(m));
}

namespace {

std::vector<std::size_t> edge_nodes(const GridSpec& spec) {
    std::vector<std::size_t> e;
    for (std::size_t i = 0; i < spec.size(); ++i)
        if (spec.on_edge(i)) e.push_back(i);
    return e;
}

}  // namespace

PhiMaximalField phi_maximal(const GridFunction& phi, const DiscreteMeasure& mu_phi, double s,
                            const PhiMaximalSettings& st) {
    if (!(s > 0.0)) throw PreconditionError("phi_maximal: s must be positive");
    if (!(st.c_L >= 1.0) || !(st.gamma2 > 0.0)) throw PreconditionError("phi_maximal: need c_L >= 1, gamma2 > 0");
    const GridSpec& spec = phi.spec();
    if (!spec.same_layout(mu_phi.spec())) throw PreconditionError("phi_maximal: measure grid differs from phi grid");
    if (!st.centers.empty()) require_mask(spec, st.centers, "phi_maximal");

    PhiMaximalField f;
    f.spec = spec;
    f.s = s;
    f.gamma2 = st.gamma2;
    f.c_L = st.c_L;
    f.rho = rho_constant(st.gamma2);
    f.values.assign(spec.size(), 0.0);
    f.dist_to_origin.assign(spec.size(), 0.0);
    f.evaluated = st.centers.empty() ? full_mask(spec) : st.centers;
    f.lip_estimate = lipschitz_estimate(phi, st.lip_pairs);
    f.regime_ok = f.lip_estimate <= st.ell;

    const double r_min = st.r_min > 0.0 ? st.r_min : cell_radius(spec);
    const auto gp = graph_points(phi);
    const HPoint origin = graph_map(phi, WPoint::zero(spec.n()));
    const auto edges = edge_nodes(spec);
    const double cv = spec.cell_volume();

    std::vector<std::size_t> centers;
    for (std::size_t i = 0; i < spec.size(); ++i)
        if (f.evaluated[i]) centers.push_back(i);

#ifdef HLIP_HAVE_OPENMP
#pragma omp parallel
#endif
    {
        std::vector<double> dist(spec.size());
        std::vector<double> cum_mass;
        std::vector<double> cum_count;
#ifdef HLIP_HAVE_OPENMP
#pragma omp for schedule(dynamic, 4)
#endif
        for (std::ptrdiff_t cc = 0; cc < static_cast<std::ptrdiff_t>(centers.size()); ++cc) {
            const std::size_t x = centers[static_cast<std::size_t>(cc)];
            const double d0 = graph_distance(gp[x], origin);
            f.dist_to_origin[x] = d0;
            for (std::size_t j = 0; j < spec.size(); ++j) dist[j] = graph_distance(gp[x], gp[j]);
            double r_dom = std::numeric_limits<double>::infinity();
            for (std::size_t j : edges) r_dom = std::min(r_dom, dist[j]);
            const double cap = std::min(f.rho / st.c_L * s - d0, r_dom);
            if (!(cap > r_min)) continue;
            const auto radii = radius_ladder(r_min, cap, st.ratio);
            cum_mass.assign(radii.size(), 0.0);
            cum_count.assign(radii.size(), 0.0);
            const double rtop = radii.back();
            for (std::size_t j = 0; j < spec.size(); ++j) {
                if (dist[j] >= rtop) continue;
                const std::size_t k = ladder_bin(radii, dist[j]);
                cum_mass[k] += mu_phi[j];
                cum_count[k] += 1.0;
            }
            double m = 0.0;
            double c = 0.0;
            double best = 0.0;
            for (std::size_t k = 0; k < radii.size(); ++k) {
                m += cum_mass[k];
                c += cum_count[k];
                if (c > 0.0) best = std::max(best, m / (c * cv));
            }
            f.values[x] = best;
        }
    }
    return f;
}

PhiLemmaReport check_phi_lemma(const GridFunction& phi, const PhiMaximalField& field, double theta,
                               std::size_t pair_budget, std::uint64_t seed) {
    if (!(theta > 0.0)) throw PreconditionError("check_phi_lemma: theta must be positive");
    const GridSpec& spec = phi.spec();
    std::vector<std::size_t> cand;
    for (std::size_t i = 0; i < spec.size(); ++i)
        if (field.evaluated[i] && field.dist_to_origin[i] < field.s && field.values[i] <= theta) cand.push_back(i);
    if (cand.size() < 2) throw PreconditionError("check_phi_lemma: no pairs available");
    PhiLemmaReport rep;
    rep.candidates = cand.size();
    std::vector<HPoint> g(cand.size());
    for (std::size_t k = 0; k < cand.size(); ++k) g[k] = graph_point(phi, cand[k]);
    const auto ratio = [&](std::size_t a, std::size_t b) {
        const double d = graph_distance(g[a], g[b]);
        return d > 0.0 ? std::abs(phi[cand[a]] - phi[cand[b]]) / (theta * d) : 0.0;
    };
    const std::size_t all = cand.size() * (cand.size() - 1) / 2;
    if (all <= pair_budget) {
        for (std::size_t a = 0; a < cand.size(); ++a)
            for (std::size_t b = a + 1; b < cand.size(); ++b) rep.worst_ratio = std::max(rep.worst_ratio, ratio(a, b));
        rep.pairs = all;
        return rep;
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, cand.size() - 1);
    for (std::size_t k = 0; k < pair_budget; ++k) {
        const std::size_t a = pick(rng);
        const std::size_t b = pick(rng);
        if (a == b) continue;
        rep.worst_ratio = std::max(rep.worst_ratio, ratio(a, b));
        ++rep.pairs;
    }
    return rep;
}

PoincareReport check_poincare(const GridFunction& phi, const IntrinsicGradient& grad, const WPoint& x, double r,
                              double p, double gamma2) {
    if (!(r > 0.0) || !(p >= 1.0) || !(gamma2 > 0.0))
        throw PreconditionError("check_poincare: need r > 0, p >= 1, gamma2 > 0");
    const GridSpec& spec = phi.spec();
    if (!spec.same_layout(grad.spec())) throw PreconditionError("check_poincare: gradient grid differs from phi grid");
    PoincareReport rep;
    rep.c2 = 2.0 * gamma2;
    const HPoint gx = graph_map(phi, x);
    std::vector<std::size_t> inner;
    double grad_sum = 0.0;
    for (std::size_t j = 0; j < spec.size(); ++j) {
        const double d = graph_distance(gx, graph_point(phi, j));
        if (d < r) inner.push_back(j);
        if (d < rep.c2 * r) {
            grad_sum += std::pow(grad.norm(j), p);
            if (spec.on_edge(j)) rep.exits_grid = true;
        }
    }
    const double cv = spec.cell_volume();
    // Mean taken as an offset from the first value so constants give an exact zero numerator.
    double mean = 0.0;
    if (!inner.empty()) {
        const double base = phi[inner.front()];
        double shift = 0.0;
        for (std::size_t j : inner) shift += phi[j] - base;
        mean = base + shift / static_cast<double>(inner.size());
    }
    double num = 0.0;
    for (std::size_t j : inner) num += std::pow(std::abs(phi[j] - mean), p);
    rep.numerator = num * cv;
    rep.denominator = std::pow(r, p) * grad_sum * cv;
    if (rep.denominator > 0.0) {
        rep.ratio = rep.numerator / rep.denominator;
    } else if (rep.numerator > 0.0) {
        rep.ratio = std::numeric_limits<double>::infinity();
        rep.violation_candidate = true;
    }
    return rep;
}

BallConstants estimate_ball_constants(const GridFunction& phi, std::span<const BallSample> balls, std::size_t triples,
                                      std::uint64_t seed) {
    const GridSpec& spec = phi.spec();
    const Dimension dim(spec.n());
    const auto gp = graph_points(phi);
    BallConstants out;
    out.c1 = std::numeric_limits<double>::infinity();
    for (const BallSample& b : balls) {
        if (b.node >= spec.size()) throw PreconditionError("estimate_ball_constants: node out of range");
        const PhiBall ball = phi_ball(spec, gp, gp[b.node], b.radius);
        if (ball.exits_grid) continue;
        const double ratio = ball.measure / std::pow(b.radius, dim.disk_exponent());
        out.c1 = std::min(out.c1, ratio);
        out.c2 = std::max(out.c2, ratio);
        ++out.balls_used;
    }
    if (out.balls_used == 0) out.c1 = 0.0;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, spec.size() - 1);
    for (std::size_t k = 0; k < triples; ++k) {
        const std::size_t a = pick(rng), b = pick(rng), c = pick(rng);
        if (a == b || b == c || a == c) continue;
        const double den = graph_distance(gp[a], gp[c]) + graph_distance(gp[c], gp[b]);
        if (den > 0.0) out.c_L = std::max(out.c_L, graph_distance(gp[a], gp[b]) / den);
        ++out.triples_used;
    }
    return out;
}

}  // namespace hlip
