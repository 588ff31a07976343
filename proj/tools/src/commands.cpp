#include "hlip_cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <numbers>
#include <optional>
#include <random>

#include "hlip/generators.hpp"
#include "hlip/io.hpp"
#include "hlip/optimize.hpp"
#include "hlip_cli/battery.hpp"

namespace hlip::cli {
namespace {

using Clock = std::chrono::steady_clock;

template <class T>
T get_or(const Json& j, const char* key, T fallback) {
    if (!j.is_object() || !j.contains(key) || j.at(key).is_null()) return fallback;
    return j.at(key).get<T>();
}

Json check(const std::string& name, double lhs, double rhs, double slack, bool pass, bool conditional = false) {
    return Json{{"name", name}, {"lhs", lhs}, {"rhs", rhs}, {"slack", slack}, {"pass", pass},
                {"conditional", conditional}};
}

Json empirical(const std::string& name, double value) {
    return Json{{"name", name}, {"value", value}, {"label", "empirical"}};
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string file_hash(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return hex64(fnv1a64(bytes));
}

Json config_echo(const RunConfig& cfg) {
    Json inputs = Json::array();
    for (const auto& p : cfg.inputs) inputs.push_back(p.string());
    return Json{{"n", cfg.n}, {"seed", cfg.seed}, {"inputs", inputs}, {"params", cfg.params}};
}

// Verdict from the unconditional checks; wall time and hash are appended last.
Report finish(const RunConfig& cfg, Json results, Json checks, Json constants, Clock::time_point start) {
    bool pass = true;
    for (const Json& c : checks)
        if (!c.at("conditional").get<bool>() && !c.at("pass").get<bool>()) pass = false;
    Report rep;
    rep.body = Json{{"command", cfg.command}, {"config", config_echo(cfg)}, {"results", std::move(results)},
                    {"empirical", std::move(constants)}, {"checks", std::move(checks)}, {"pass", pass}};
    rep.body["wall_time"] = std::chrono::duration<double>(Clock::now() - start).count();
    rep.hash = report_hash(rep.body);
    rep.body["hash"] = rep.hash;
    rep.exit_code = pass ? kOk : kVerification;
    return rep;
}

void prepare_out(const RunConfig& cfg) {
    if (!cfg.out.empty()) std::filesystem::create_directories(cfg.out);
}

WPoint w_from_json(int n, const Json& j, const WPoint& fallback) {
    if (j.is_null()) return fallback;
    const auto c = j.get<std::vector<double>>();
    return WPoint::from_coords(n, c);
}

struct Instance {
    BoundaryCloud cloud;
    GridSpec grid;
    std::optional<GridFunction> graph;
    std::string kind;
};

GridSpec grid_from(int n, const Json& params) {
    return pipeline_grid(n, get_or(params, "sigma", 4.0 / 3.0), get_or(params, "h", 1.0 / 6.0));
}

Instance make_instance(int n, const Json& spec, std::uint64_t seed) {
    Instance inst;
    inst.kind = get_or<std::string>(spec, "kind", "linear");
    inst.grid = grid_from(n, spec);
    const GridSpec& g = inst.grid;
    WPoint cluster_centre = WPoint::zero(n);
    if (n == 2) cluster_centre = WPoint::from_coords(2, std::vector<double>{0.25, -0.2, 0.1, 0.15});
    if (inst.kind == "flat") {
        inst.graph = GridFunction::constant(g, 0.0);
        inst.cloud = flat_cloud(g);
    } else if (inst.kind == "linear") {
        const double eps = get_or(spec, "eps", 0.1);
        inst.graph = linear_graph(g, eps);
        inst.cloud = linear_cloud(g, eps);
    } else if (inst.kind == "smooth") {
        inst.graph = random_smooth_graph(g, seed, get_or(spec, "amplitude", 0.05), get_or(spec, "modes", 3));
        inst.cloud = graph_cloud(*inst.graph, "smooth");
    } else if (inst.kind == "solver") {
        SolverInstance s = solver_graph(g, get_or(spec, "boundary_value", 0.0), get_or(spec, "noise", 0.05), seed,
                                        get_or(spec, "max_iter", 5000));
        inst.graph = std::move(s.phi);
        inst.cloud = graph_cloud(*inst.graph, "solver");
    } else if (inst.kind == "corrupted") {
        const BoundaryCloud base = linear_cloud(g, get_or(spec, "eps", 0.0));
        ClusterSpec cs{w_from_json(n, spec.value("center", Json()), cluster_centre), get_or<std::size_t>(spec, "count", 16),
                       get_or(spec, "height", 0.5)};
        inst.cloud = corrupt_cluster(base, cs).cloud;
    } else if (inst.kind == "deleted") {
        const BoundaryCloud base = linear_cloud(g, get_or(spec, "eps", 0.0));
        inst.cloud = delete_patch(base, w_from_json(n, spec.value("center", Json()), WPoint::zero(n)),
                                  get_or(spec, "radius", 0.3));
    } else {
        throw PreconditionError("unknown instance kind: " + inst.kind);
    }
    return inst;
}

// Cloud from the first input file, or from params["instance"].
Instance load_instance(const RunConfig& cfg) {
    if (!cfg.inputs.empty()) {
        Instance inst;
        inst.cloud = read_cloud(cfg.inputs.front());
        inst.grid = grid_from(inst.cloud.n(), cfg.params);
        inst.kind = "file";
        return inst;
    }
    Json spec = cfg.params.value("instance", Json::object());
    if (!spec.contains("h") && cfg.params.contains("h")) spec["h"] = cfg.params["h"];
    if (!spec.contains("sigma") && cfg.params.contains("sigma")) spec["sigma"] = cfg.params["sigma"];
    return make_instance(cfg.n, spec, cfg.seed);
}

Json lip_json(const LipschitzEstimate& l) {
    return Json{{"value", l.value}, {"pairs", l.pairs}, {"exhaustive", l.exhaustive}};
}

Json symdiff_json(const SymDiff& s) {
    return Json{{"sample_side", s.sample_side}, {"graph_side", s.graph_side}, {"total", s.total},
                {"hausdorff", s.hausdorff}, {"unmatched_samples", s.unmatched_samples},
                {"uncovered_cells", s.uncovered_cells}};
}

Json approx_json(const ApproxResult& a) {
    return Json{{"cloud_size", a.cloud_size},
                {"m0_size", a.m0.size()},
                {"degenerate", a.degenerate},
                {"tau", a.tau},
                {"sup_abs", a.sup_abs},
                {"lip", lip_json(a.lip)},
                {"extension_constant", a.extension_constant},
                {"extension_residual", a.extension_residual},
                {"input_cone_ratio", a.input_cone_ratio},
                {"representative_cells", a.representative_cells},
                {"symdiff", symdiff_json(a.symdiff)},
                {"l2_gradient", a.l2_gradient},
                {"m0_unmatched", a.m0_unmatched}};
}

Json approx_checks(const ApproxResult& a) {
    Json checks = Json::array();
    checks.push_back(check("lip_le_one", a.lip.value, 1.0, 0.0, a.lip_ok));
    checks.push_back(check("m0_matched", static_cast<double>(a.m0_unmatched), 0.0, 0.0, a.m0_unmatched == 0));
    return checks;
}

double max_error_on_d1(const GridFunction& a, const GridFunction& b) {
    const CellMask d1 = disk_mask(a.spec(), WPoint::zero(a.spec().n()), 1.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (d1[i]) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

Json battery_json(const BatteryItem& b) {
    return Json{{"name", b.name},          {"cases", b.cases},     {"failures", b.failures},
                {"skipped", b.skipped},    {"nontrivial", b.nontrivial}, {"worst_lhs", b.worst_lhs}, {"worst_rhs", b.worst_rhs},
                {"worst_ratio", b.worst_ratio}, {"slack", b.slack}, {"conditional", b.conditional},
                {"pass", b.pass()}};
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string report_hash(const Json& body) {
    Json copy = body;
    copy.erase("wall_time");
    copy.erase("hash");
    return hex64(fnv1a64(copy.dump()));
}

RunConfig config_from_json(const Json& j) {
    RunConfig cfg;
    cfg.command = get_or<std::string>(j, "command", "");
    if (j.contains("inputs"))
        for (const auto& p : j.at("inputs")) cfg.inputs.emplace_back(p.get<std::string>());
    cfg.out = get_or<std::string>(j, "out", "");
    cfg.n = get_or(j, "n", 2);
    cfg.seed = get_or<std::uint64_t>(j, "seed", kDefaultSeed);
    cfg.threads = get_or(j, "threads", 0);
    if (j.contains("params")) cfg.params = j.at("params");
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open config " + path.string());
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw FormatError("malformed config " + path.string() + ": " + e.what());
    }
    if (!j.is_object()) throw FormatError("config must be a JSON object");
    return config_from_json(j);
}

PipelineConfig pipeline_config(const Json& p, std::uint64_t seed) {
    PipelineConfig c;
    c.delta1 = get_or(p, "delta1", c.delta1);
    c.scales = get_or(p, "scales", c.scales);
    c.tau = get_or(p, "tau", c.tau);
    c.orientation = get_or(p, "orientation", c.orientation);
    c.alpha = get_or(p, "alpha", c.alpha);
    c.gamma2 = get_or(p, "gamma2", c.gamma2);
    c.outer_radius = get_or(p, "outer_radius", c.outer_radius);
    c.sigma = get_or(p, "sigma", c.sigma);
    c.mu_scale = get_or(p, "mu_scale", c.mu_scale);
    const std::string ext = get_or<std::string>(p, "extension", "measured");
    if (ext == "measured")
        c.extension = ExtensionPolicy::measured;
    else if (ext == "fixed")
        c.extension = ExtensionPolicy::fixed;
    else
        throw PreconditionError("extension must be measured or fixed");
    c.cone_L = get_or(p, "cone_L", c.cone_L);
    c.cone_floor = get_or(p, "cone_floor", c.cone_floor);
    if (p.contains("sup_bound") && !p.at("sup_bound").is_null()) c.sup_bound = p.at("sup_bound").get<double>();
    c.representative = get_or(p, "representative", c.representative);
    c.lip_pairs = get_or(p, "lip_pairs", c.lip_pairs);
    c.center_stride = get_or(p, "center_stride", c.center_stride);
    c.ladder.ratio = get_or(p, "ladder_ratio", c.ladder.ratio);
    c.ladder.r_min = get_or(p, "ladder_r_min", c.ladder.r_min);
    if (p.contains("phi_lemma_constant") && !p.at("phi_lemma_constant").is_null())
        c.phi_lemma_constant = p.at("phi_lemma_constant").get<double>();
    c.seed = seed;
    c.validate();
    return c;
}

Report cmd_constants(const RunConfig& cfg) {
    const auto start = Clock::now();
    const Dimension dim(cfg.n);
    Json omega = Json::object();
    for (int k = 1; k <= dim.h_dim(); ++k) omega[std::to_string(k)] = unit_ball_volume(k);
    Json results{{"n", dim.n()}, {"kappa", dim.kappa()}, {"delta", dim.delta()}, {"omega", omega}};
    Json checks = Json::array();
    if (dim.n() == 2) {
        const double pi = std::numbers::pi;
        checks.push_back(check("kappa_closed_form", dim.kappa(), 8.0 * pi / 3.0, 1e-12,
                               std::abs(dim.kappa() - 8.0 * pi / 3.0) <= 1e-12));
        checks.push_back(
            check("delta_closed_form", dim.delta(), 5.0 / pi, 1e-12, std::abs(dim.delta() - 5.0 / pi) <= 1e-12));
    }
    Json table = Json::array();
    for (int k = 1; k <= 10; ++k) {
        const double L = 0.01 * k;
        const double M = extension_constant(L);
        const bool within = M <= 2.0 * L;
        table.push_back(Json{{"L", L}, {"M", M}, {"two_L", 2.0 * L}, {"within_2L", within}});
        if (k <= 7) checks.push_back(check("M_le_2L_at_" + std::to_string(k), M, 2.0 * L, 0.0, within));
    }
    results["extension_table"] = table;
    return finish(cfg, std::move(results), std::move(checks), Json::array(), start);
}

Report cmd_gen(const RunConfig& cfg) {
    const auto start = Clock::now();
    Json spec = cfg.params;
    if (!spec.contains("kind")) spec["kind"] = "flat";
    const Instance inst = make_instance(cfg.n, spec, cfg.seed);
    Json results{{"kind", inst.kind},
                 {"samples", inst.cloud.size()},
                 {"total_weight", inst.cloud.total_weight()},
                 {"provenance", inst.cloud.meta().provenance},
                 {"grid_nodes", inst.grid.size()}};
    if (!cfg.out.empty()) {
        prepare_out(cfg);
        const auto cloud_path = cfg.out / "cloud.hlc";
        write_cloud(cloud_path, inst.cloud);
        results["cloud_file"] = Json{{"path", cloud_path.string()}, {"fnv1a64", file_hash(cloud_path)}};
        if (inst.graph) {
            const auto graph_path = cfg.out / "graph.hlg";
            write_grid(graph_path, *inst.graph);
            results["graph_file"] = Json{{"path", graph_path.string()}, {"fnv1a64", file_hash(graph_path)}};
        }
    }
    return finish(cfg, std::move(results), Json::array(), Json::array(), start);
}

Report cmd_minimize(const RunConfig& cfg) {
    const auto start = Clock::now();
    const Json& p = cfg.params;
    const double h = get_or(p, "h", 0.125);
    const GridSpec grid = GridSpec::centered_box(cfg.n, get_or(p, "half_z", 1.0), get_or(p, "half_t", 1.0), h);
    const double bv = get_or(p, "boundary_value", 0.0);
    const double noise = get_or(p, "noise", 0.05);
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> u(-noise, noise);
    GridFunction init = GridFunction::constant(grid, bv);
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (!grid.on_edge(i)) init[i] += u(rng);
    SolverConfig sc;
    sc.max_iter = get_or(p, "max_iter", sc.max_iter);
    sc.tol = get_or(p, "tol", sc.tol);
    const SolveReport rep = solve(make_dirichlet_problem(std::move(init)), sc);

    bool monotone = true;
    double worst_rise = 0.0;
    for (std::size_t k = 1; k < rep.energy_trace.size(); ++k) {
        const double rise = rep.energy_trace[k] - rep.energy_trace[k - 1];
        worst_rise = std::max(worst_rise, rise);
        if (rise > 0.0) monotone = false;
    }
    Json results{{"iterations", rep.iterations},
                 {"converged", rep.converged},
                 {"line_search_failed", rep.line_search_failed},
                 {"initial_energy", rep.energy_trace.empty() ? 0.0 : rep.energy_trace.front()},
                 {"final_energy", rep.energy_trace.empty() ? 0.0 : rep.energy_trace.back()},
                 {"calibration_gap", rep.calibration_gap},
                 {"final_gradient", rep.gradient_trace.empty() ? 0.0 : rep.gradient_trace.back()}};
    Json checks = Json::array();
    checks.push_back(check("calibration_gap", rep.calibration_gap, 1e-6, 0.0, rep.calibration_gap < 1e-6));
    checks.push_back(check("energy_non_increasing", worst_rise, 0.0, 0.0, monotone));
    if (!cfg.out.empty()) {
        prepare_out(cfg);
        write_grid(cfg.out / "minimizer.hlg", rep.phi);
        results["output"] = (cfg.out / "minimizer.hlg").string();
    }
    return finish(cfg, std::move(results), std::move(checks), Json::array(), start);
}

Report cmd_excess(const RunConfig& cfg) {
    const auto start = Clock::now();
    const Instance inst = load_instance(cfg);
    const int n = inst.cloud.n();
    const auto scales = get_or(cfg.params, "scales", std::vector<double>{0.25, 0.5, 1.0});
    const int orientation = get_or(cfg.params, "orientation", 1);
    HPoint centre = HPoint::zero(n);
    if (cfg.params.contains("center"))
        centre = HPoint::from_coords(n, cfg.params.at("center").get<std::vector<double>>());
    const CloudIndex index = CloudIndex::build(inst.cloud);
    const auto profile = excess_profile(index, centre, scales, orientation);
    Json rows = Json::array();
    for (const ExcessReport& e : profile)
        rows.push_back(Json{{"radius", e.radius}, {"excess", e.value}, {"samples", e.count}, {"empty", e.empty}});
    Json results{{"instance", inst.kind}, {"samples", inst.cloud.size()}, {"profile", rows}};
    return finish(cfg, std::move(results), Json::array(), Json::array(), start);
}

Report cmd_approx(const RunConfig& cfg) {
    const auto start = Clock::now();
    const Instance inst = load_instance(cfg);
    const PipelineConfig pc = pipeline_config(cfg.params, cfg.seed);
    const CloudIndex index = CloudIndex::build(inst.cloud);
    const ApproxResult a = lipschitz_approximation(index, inst.grid, pc);
    Json results = approx_json(a);
    results["instance"] = inst.kind;
    if (inst.graph) results["max_error_d1"] = max_error_on_d1(a.phi, *inst.graph);
    if (!cfg.out.empty()) {
        prepare_out(cfg);
        write_grid(cfg.out / "phi.hlg", a.phi);
        const std::vector<CsvColumn> cols{{"phi", a.phi.values()}};
        write_nodes_csv(cfg.out / "phi.csv", a.phi.spec(), cols);
    }
    return finish(cfg, std::move(results), approx_checks(a), Json::array(), start);
}

Report cmd_truncate(const RunConfig& cfg) {
    const auto start = Clock::now();
    const Instance inst = load_instance(cfg);
    const PipelineConfig pc = pipeline_config(cfg.params, cfg.seed);
    const bool corollary = get_or(cfg.params, "corollary", false);

    CorollaryReport cr;
    if (corollary) {
        cr = corollary_report(inst.cloud, inst.grid, pc);
    } else {
        const CloudIndex index = CloudIndex::build(inst.cloud);
        cr.approx = lipschitz_approximation(index, inst.grid, pc);
        cr.truncation = truncate(index, cr.approx, pc);
    }
    const ApproxResult& a = cr.approx;
    const TruncationResult& t = cr.truncation;
    Json results{{"instance", inst.kind},
                 {"approx", approx_json(a)},
                 {"k_cells", t.k_cells},
                 {"d1_cells", mask_count(t.d1)},
                 {"d1_measure", t.d1_measure},
                 {"complement_measure", t.complement_measure},
                 {"excess", t.excess},
                 {"eta", t.eta},
                 {"zero_excess", t.zero_excess},
                 {"mu_total", t.mu.mu.total()},
                 {"mu_sample_term", t.mu.sample_term},
                 {"mu_graph_term", t.mu.graph_term},
                 {"disk_lemma", Json{{"status", to_string(t.disk_lemma.status)},
                                     {"lhs", t.disk_lemma.lhs},
                                     {"rhs", t.disk_lemma.rhs},
                                     {"hypothesis_lhs", t.disk_lemma.hypothesis_lhs},
                                     {"hypothesis_rhs", t.disk_lemma.hypothesis_rhs}}},
                 {"coincidence", Json{{"residual", t.coincidence_residual},
                                      {"samples", t.coincidence_samples},
                                      {"uncovered", t.coincidence_uncovered},
                                      {"holds", t.coincidence_holds}}},
                 {"lip_on_k", lip_json(t.lip_on_k)},
                 {"theta", t.theta},
                 {"c_phi", t.c_phi},
                 {"lip_certified", t.lip_certified},
                 {"phi_pairs", t.phi_pairs},
                 {"phi_regime_ok", t.phi_regime_ok},
                 {"phi_lip_estimate", t.phi_lip_estimate}};
    Json constants = Json::array();
    constants.push_back(empirical("c_sq", t.c_sq));
    constants.push_back(empirical("c_phi_measured", t.c_phi_measured));
    if (corollary) {
        Json qs = Json::array();
        for (const CorollaryQuantity& q : cr.quantities) {
            qs.push_back(Json{{"name", q.name}, {"value", q.value}, {"power", q.power}, {"ratio", q.ratio}});
            constants.push_back(empirical("C3_" + q.name, q.ratio));
        }
        results["corollary"] = Json{{"lip", lip_json(cr.lip)},
                                    {"symdiff", symdiff_json(cr.symdiff)},
                                    {"l2_gradient", cr.l2_gradient},
                                    {"quantities", qs}};
    }
    Json checks = approx_checks(a);
    checks.push_back(check("coincidence_residual", t.coincidence_residual, a.tau, 0.0, t.coincidence_holds, true));
    checks.push_back(check("disk_lemma", t.disk_lemma.lhs, t.disk_lemma.rhs, t.disk_lemma.slack,
                           t.disk_lemma.status != LemmaStatus::fail, true));
    if (!cfg.out.empty()) {
        prepare_out(cfg);
        const std::vector<double> k = mask_values(t.K);
        std::vector<CsvColumn> cols{{"phi", a.phi.values()}, {"K", k}};
        if (t.mu.mu.spec().same_layout(a.phi.spec())) cols.push_back({"mu", t.mu.mu.mass()});
        write_nodes_csv(cfg.out / "truncate.csv", a.phi.spec(), cols);
        write_grid(cfg.out / "phi.hlg", corollary ? cr.phi : a.phi);
    }
    return finish(cfg, std::move(results), std::move(checks), std::move(constants), start);
}

Report cmd_verify(const RunConfig& cfg) {
    const auto start = Clock::now();
    const Json& p = cfg.params;
    const std::uint64_t s = cfg.seed;
    std::vector<BatteryItem> items;
    items.push_back(bv_random(get_or<std::size_t>(p, "bv_cases", 50), s));
    items.push_back(bv_tight({0.05, 0.1, 0.5, 1.0}));
    items.push_back(disk_lemma_random(get_or<std::size_t>(p, "disk_cases", 50), s + 1));
    items.push_back(vitali_random(get_or<std::size_t>(p, "vitali_cases", 100), s + 2));
    items.push_back(sandwich_random(get_or<std::size_t>(p, "sandwich_cases", 100), get_or(p, "sandwich_eps", 0.1), s + 3));
    items.push_back(poincare_probe(get_or<std::size_t>(p, "poincare_cases", 10), s + 4));
    items.push_back(height_bound_probe(get_or(p, "height_eps", 0.1)));
    Json results = Json::array();
    Json checks = Json::array();
    Json constants = Json::array();
    for (const BatteryItem& b : items) {
        results.push_back(battery_json(b));
        checks.push_back(check(b.name, b.worst_lhs, b.worst_rhs, b.slack, b.pass(), b.conditional));
        if (b.conditional) constants.push_back(empirical(b.name + "_worst_ratio", b.worst_ratio));
    }
    return finish(cfg, Json{{"battery", results}}, std::move(checks), std::move(constants), start);
}

Report run(const RunConfig& cfg) {
    try {
        require_dimension(cfg.n);
        if (cfg.command == "constants") return cmd_constants(cfg);
        if (cfg.command == "gen") return cmd_gen(cfg);
        if (cfg.command == "minimize") return cmd_minimize(cfg);
        if (cfg.command == "excess") return cmd_excess(cfg);
        if (cfg.command == "approx") return cmd_approx(cfg);
        if (cfg.command == "truncate") return cmd_truncate(cfg);
        if (cfg.command == "verify") return cmd_verify(cfg);
        throw PreconditionError("unknown command: " + cfg.command);
    } catch (const PreconditionError& e) {
        return Report{Json{{"command", cfg.command}, {"error", e.what()}}, kPrecondition, ""};
    } catch (const FormatError& e) {
        return Report{Json{{"command", cfg.command}, {"error", e.what()}}, kPrecondition, ""};
    } catch (const Json::exception& e) {
        return Report{Json{{"command", cfg.command}, {"error", std::string("bad parameter: ") + e.what()}},
                      kPrecondition, ""};
    }
}

}  // namespace hlip::cli
