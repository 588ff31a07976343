#include "hlip/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace hlip {

CellMask interior_mask(const GridSpec& spec) {
    CellMask m(spec.size(), 0);
    for (std::size_t i = 0; i < spec.size(); ++i) m[i] = spec.on_edge(i) ? 0 : 1;
    return m;
}

DirichletProblem make_dirichlet_problem(GridFunction initial) {
    DirichletProblem p{std::move(initial), {}};
    p.fixed = edge_mask(p.initial.spec());
    return p;
}

void validate(const DirichletProblem& problem) {
    const GridSpec& spec = problem.initial.spec();
    require_mask(spec, problem.fixed, "DirichletProblem");
    for (int a = 0; a < spec.dim(); ++a)
        if (spec.count(a) < 3) throw PreconditionError("DirichletProblem: grid too small for stencil");
    for (std::size_t i = 0; i < spec.size(); ++i)
        if (spec.on_edge(i) && !problem.fixed[i])
            throw PreconditionError("DirichletProblem: boundary mask must cover the outer node layer");
}

namespace {

void require_interior(const GridSpec& spec, const CellMask& region) {
    require_mask(spec, region, "energy");
    for (std::size_t i = 0; i < spec.size(); ++i)
        if (region[i] && spec.on_edge(i)) throw PreconditionError("energy: region must consist of interior nodes");
}

// Centred intrinsic gradient at an interior node.
void centred_gradient(const GridSpec& spec, std::span<const double> f, std::size_t c, double* g, double* dt_out) {
    const int n = spec.n();
    const auto d = [&](int axis) {
        const std::size_t s = spec.stride(axis);
        return (f[c + s] - f[c - s]) / (2.0 * spec.spacing(axis));
    };
    const WPoint w = spec.node(c);
    const double dt = d(spec.t_axis());
    for (int j = 2; j <= n; ++j) {
        g[j - 2] = d(j - 2) + 2.0 * w.y(j) * dt;
        g[n + j - 2] = d(n + j - 2) - 2.0 * w.x(j) * dt;
    }
    g[n - 1] = d(n - 1) - 4.0 * f[c] * dt;
    if (dt_out) *dt_out = dt;
}

double integrand(const GridSpec& spec, std::span<const double> f, std::size_t c) {
    double g[kMaxWDim];
    centred_gradient(spec, f, c, g, nullptr);
    double s = 0.0;
    for (int k = 0; k < 2 * spec.n() - 1; ++k) s += g[k] * g[k];
    return std::sqrt(1.0 + s);
}

double energy_raw(const GridSpec& spec, std::span<const double> f, const CellMask& region) {
    StableSum sum;
    const double cv = spec.cell_volume();
    for (std::size_t c = 0; c < spec.size(); ++c)
        if (region[c]) sum.add(integrand(spec, f, c) * cv);
    return sum.value();
}

std::vector<double> gradient_raw(const GridSpec& spec, std::span<const double> f, const CellMask& region) {
    const int n = spec.n();
    const int ta = spec.t_axis();
    const double cv = spec.cell_volume();
    std::vector<double> grad(spec.size(), 0.0);
    double g[kMaxWDim];
    double coef[kMaxWDim];
    for (std::size_t c = 0; c < spec.size(); ++c) {
        if (!region[c]) continue;
        double dt = 0.0;
        centred_gradient(spec, f, c, g, &dt);
        double s2 = 0.0;
        for (int k = 0; k < 2 * n - 1; ++k) s2 += g[k] * g[k];
        const double scale = cv / std::sqrt(1.0 + s2);
        const WPoint w = spec.node(c);
        // coef[axis]: multiplier of the centred difference along axis in dE.
        std::fill(coef, coef + 2 * n, 0.0);
        for (int j = 2; j <= n; ++j) {
            const double aX = scale * g[j - 2];
            const double aY = scale * g[n + j - 2];
            coef[j - 2] += aX;
            coef[n + j - 2] += aY;
            coef[ta] += 2.0 * w.y(j) * aX - 2.0 * w.x(j) * aY;
        }
        const double aB = scale * g[n - 1];
        coef[n - 1] += aB;
        coef[ta] -= 4.0 * aB * f[c];
        // The Burgers coefficient -4 phi depends on the node value itself.
        grad[c] -= 4.0 * aB * dt;
        for (int axis = 0; axis < 2 * n; ++axis) {
            const double v = coef[axis] / (2.0 * spec.spacing(axis));
            const std::size_t s = spec.stride(axis);
            grad[c + s] += v;
            grad[c - s] -= v;
        }
    }
    return grad;
}

}  // namespace

double energy(const GridFunction& phi, const CellMask& region) {
    require_interior(phi.spec(), region);
    return energy_raw(phi.spec(), phi.values(), region);
}

std::vector<double> energy_gradient(const GridFunction& phi, const CellMask& region) {
    require_interior(phi.spec(), region);
    return gradient_raw(phi.spec(), phi.values(), region);
}

SolveReport solve(const DirichletProblem& problem, const SolverConfig& config) {
    validate(problem);
    if (!(config.tol > 0.0) || config.max_iter < 0 || !(config.shrink > 0.0 && config.shrink < 1.0))
        throw PreconditionError("solve: invalid solver configuration");
    const GridSpec& spec = problem.initial.spec();
    const CellMask region = interior_mask(spec);
    const double cv = spec.cell_volume();
    const double area = mask_measure(spec, region);

    std::vector<double> phi(problem.initial.values().begin(), problem.initial.values().end());
    std::vector<double> trial(phi.size());
    double E = energy_raw(spec, phi, region);
    auto grad = gradient_raw(spec, phi, region);
    const auto free_max = [&](const std::vector<double>& gv) {
        double m = 0.0;
        for (std::size_t i = 0; i < gv.size(); ++i)
            if (!problem.fixed[i]) m = std::max(m, std::abs(gv[i]));
        return m;
    };

    SolveReport rep;
    double gmax = free_max(grad);
    rep.energy_trace.push_back(E);
    rep.gradient_trace.push_back(gmax);
    double step = config.initial_step;

    for (int it = 0; it < config.max_iter; ++it) {
        if (gmax <= config.tol) break;
        // L2-gradient direction: nodal derivative divided by the cell volume.
        double slope = 0.0;
        for (std::size_t i = 0; i < phi.size(); ++i)
            if (!problem.fixed[i]) slope -= grad[i] * grad[i] / cv;
        double alpha = step * 2.0;
        bool accepted = false;
        double E_new = E;
        for (int b = 0; b < config.max_backtracks; ++b) {
            for (std::size_t i = 0; i < phi.size(); ++i)
                trial[i] = problem.fixed[i] ? phi[i] : phi[i] - alpha * grad[i] / cv;
            E_new = energy_raw(spec, trial, region);
            if (E_new <= E + config.armijo * alpha * slope) {
                accepted = true;
                break;
            }
            alpha *= config.shrink;
        }
        if (!accepted) {
            rep.line_search_failed = true;
            break;
        }
        phi.swap(trial);
        E = E_new;
        step = alpha;
        grad = gradient_raw(spec, phi, region);
        gmax = free_max(grad);
        rep.energy_trace.push_back(E);
        rep.gradient_trace.push_back(gmax);
        ++rep.iterations;
    }
    rep.converged = gmax <= config.tol;
    rep.calibration_gap = E - area;
    GridFunction out(spec, std::move(phi));
    out.set_boundary_mask(problem.fixed);
    rep.phi = std::move(out);
    return rep;
}

GradientCheck gradient_check(const GridFunction& phi, const CellMask& region, double step, std::size_t max_nodes,
                             std::uint64_t seed) {
    const GridSpec& spec = phi.spec();
    require_interior(spec, region);
    const auto grad = gradient_raw(spec, phi.values(), region);
    std::vector<std::size_t> nodes;
    for (std::size_t i = 0; i < spec.size(); ++i)
        if (region[i]) nodes.push_back(i);
    std::mt19937_64 rng(seed);
    std::shuffle(nodes.begin(), nodes.end(), rng);
    if (nodes.size() > max_nodes) nodes.resize(max_nodes);

    std::vector<double> f(phi.values().begin(), phi.values().end());
    const double cv = spec.cell_volume();
    const auto local_energy = [&](std::size_t j) {
        StableSum s;
        const auto add = [&](std::size_t c) {
            if (region[c]) s.add(integrand(spec, f, c) * cv);
        };
        add(j);
        const Index ix = spec.unravel(j);
        for (int a = 0; a < spec.dim(); ++a) {
            if (ix[a] > 0) add(j - spec.stride(a));
            if (ix[a] + 1 < spec.count(a)) add(j + spec.stride(a));
        }
        return s.value();
    };

    GradientCheck out;
    for (std::size_t j : nodes) {
        const double h = step * std::max(1.0, std::abs(f[j]));
        const double orig = f[j];
        f[j] = orig + h;
        const double ep = local_energy(j);
        f[j] = orig - h;
        const double em = local_energy(j);
        f[j] = orig;
        const double fd = (ep - em) / (2.0 * h);
        const double den = std::max({std::abs(grad[j]), std::abs(fd), 1e-300});
        const double err = (grad[j] == fd) ? 0.0 : std::abs(grad[j] - fd) / den;
        out.max_rel_error = std::max(out.max_rel_error, err);
        ++out.checked;
    }
    return out;
}

GradientCheck directional_check(const GridFunction& phi, const CellMask& region, int directions, double step,
                                std::uint64_t seed) {
    const GridSpec& spec = phi.spec();
    require_interior(spec, region);
    const auto grad = gradient_raw(spec, phi.values(), region);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> dir(spec.size());
    std::vector<double> f(spec.size());
    GradientCheck out;
    for (int k = 0; k < directions; ++k) {
        double analytic = 0.0;
        for (std::size_t i = 0; i < dir.size(); ++i) {
            dir[i] = u(rng);
            analytic += grad[i] * dir[i];
        }
        for (std::size_t i = 0; i < f.size(); ++i) f[i] = phi[i] + step * dir[i];
        const double ep = energy_raw(spec, f, region);
        for (std::size_t i = 0; i < f.size(); ++i) f[i] = phi[i] - step * dir[i];
        const double em = energy_raw(spec, f, region);
        const double fd = (ep - em) / (2.0 * step);
        const double den = std::max({std::abs(analytic), std::abs(fd), 1e-300});
        out.max_rel_error = std::max(out.max_rel_error, analytic == fd ? 0.0 : std::abs(analytic - fd) / den);
        ++out.checked;
    }
    return out;
}

}  // namespace hlip
