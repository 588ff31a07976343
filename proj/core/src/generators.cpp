#include "hlip/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "hlip/optimize.hpp"

namespace hlip {

GridFunction linear_graph(const GridSpec& grid, double eps) {
    return GridFunction::sample(grid, [eps](const WPoint& w) { return eps * w.y(1); });
}

BoundaryCloud graph_cloud(const GridFunction& phi, const std::string& provenance) {
    BoundaryCloud cloud = sample_graph_boundary(phi, full_mask(phi.spec()));
    CloudMeta meta = cloud.meta();
    meta.provenance = provenance;
    cloud.set_meta(meta);
    return cloud;
}

BoundaryCloud flat_cloud(const GridSpec& grid) { return graph_cloud(GridFunction::constant(grid, 0.0), "flat"); }

BoundaryCloud linear_cloud(const GridSpec& grid, double eps) {
    return graph_cloud(linear_graph(grid, eps), "linear eps=" + std::to_string(eps));
}

CorruptedCloud corrupt_cluster(const BoundaryCloud& cloud, const ClusterSpec& spec) {
    if (spec.center.n != cloud.n()) throw PreconditionError("corrupt_cluster: dimension mismatch");
    if (spec.count > cloud.size()) throw PreconditionError("corrupt_cluster: more members than samples");
    std::vector<std::size_t> order(cloud.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> dist(cloud.size());
    for (std::size_t i = 0; i < cloud.size(); ++i) dist[i] = d_inf(project(cloud.point(i)), spec.center);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });

    CorruptedCloud out;
    out.members.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(spec.count));
    std::sort(out.members.begin(), out.members.end());
    std::vector<std::uint8_t> member(cloud.size(), 0);
    for (std::size_t i : out.members) member[i] = 1;

    CloudMeta meta = cloud.meta();
    meta.provenance = cloud.meta().provenance + "; cluster m=" + std::to_string(spec.count);
    out.cloud = BoundaryCloud(cloud.n(), meta);
    out.cloud.reserve(cloud.size());
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        BoundarySample s = cloud.sample(i);
        if (member[i]) {
            s.point = exp_x1(spec.height, project(s.point));
            for (double& c : s.normal) c = -c;
            out.injected_mass += s.weight;
        }
        out.cloud.push_back(s);
    }
    return out;
}

BoundaryCloud delete_patch(const BoundaryCloud& cloud, const WPoint& center, double radius) {
    if (!(radius > 0.0)) throw PreconditionError("delete_patch: radius must be positive");
    CloudMeta meta = cloud.meta();
    meta.provenance = cloud.meta().provenance + "; patch removed";
    BoundaryCloud out(cloud.n(), meta);
    for (std::size_t i = 0; i < cloud.size(); ++i)
        if (!(d_inf(project(cloud.point(i)), center) < radius)) out.push_record(cloud.record(i));
    return out;
}

GridFunction random_smooth_graph(const GridSpec& grid, std::uint64_t seed, double amplitude, int modes) {
    if (!(amplitude >= 0.0) || modes < 1) throw PreconditionError("random_smooth_graph: invalid parameters");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> freq(0.3, 1.5);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    const int d = grid.dim();
    struct Mode {
        double c;
        std::vector<double> k;
        std::vector<double> p;
    };
    std::vector<Mode> ms(static_cast<std::size_t>(modes));
    for (auto& m : ms) {
        m.c = coef(rng);
        for (int a = 0; a < d; ++a) {
            m.k.push_back(freq(rng));
            m.p.push_back(phase(rng));
        }
    }
    GridFunction f = GridFunction::sample(grid, [&](const WPoint& w) {
        double v = 0.0;
        for (const auto& m : ms) {
            double prod = m.c;
            for (int a = 0; a < d; ++a) prod *= std::sin(m.k[a] * w.c[a] + m.p[a]);
            v += prod;
        }
        return v;
    });
    const double sup = f.sup_abs();
    if (sup > 0.0)
        for (double& v : f.values_mut()) v *= amplitude / sup;
    return f;
}

DiscreteMeasure random_measure(const GridSpec& grid, const CellMask& support, double total, std::size_t atoms,
                               std::uint64_t seed) {
    require_mask(grid, support, "random_measure");
    if (!(total >= 0.0) || atoms == 0) throw PreconditionError("random_measure: invalid parameters");
    std::vector<std::size_t> cells;
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (support[i]) cells.push_back(i);
    if (cells.empty()) throw PreconditionError("random_measure: empty support");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, cells.size() - 1);
    std::exponential_distribution<double> size(1.0);
    std::vector<double> mass(grid.size(), 0.0);
    double sum = 0.0;
    for (std::size_t k = 0; k < atoms; ++k) {
        const double m = size(rng);
        mass[cells[pick(rng)]] += m;
        sum += m;
    }
    for (double& m : mass) m *= total / sum;
    return DiscreteMeasure(grid, std::move(mass));
}

SolverInstance solver_graph(const GridSpec& grid, double boundary_value, double noise, std::uint64_t seed,
                            int max_iter) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-noise, noise);
    GridFunction init = GridFunction::constant(grid, boundary_value);
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (!grid.on_edge(i)) init[i] += u(rng);
    SolverConfig cfg;
    cfg.max_iter = max_iter;
    SolveReport rep = solve(make_dirichlet_problem(std::move(init)), cfg);
    return {std::move(rep.phi), boundary_value, rep.iterations, rep.converged, rep.calibration_gap};
}

}  // namespace hlip
