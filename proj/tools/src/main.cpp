#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "hlip/io.hpp"
#include "hlip_cli/commands.hpp"

#ifdef HLIP_HAVE_OPENMP
#include <omp.h>
#endif

int main(int argc, char** argv) {
    using hlip::cli::Json;
    CLI::App app{"Intrinsic Lipschitz approximation toolkit for the Heisenberg group"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::string out;
    std::uint64_t seed = 0;
    int n = 0;
    int threads = 0;
    std::vector<std::string> params;
    std::vector<std::string> inputs;
    app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
    app.add_option("--out", out, "Output directory");
    auto* seed_opt = app.add_option("--seed", seed, "Random seed");
    auto* n_opt = app.add_option("--n", n, "Dimension n of H^n");
    app.add_option("--threads", threads, "Worker threads (0: runtime default)");
    app.add_option("--param", params, "Parameter override key=<json value>");
    app.add_option("--input", inputs, "Input file");

    for (const char* name : {"constants", "gen", "minimize", "excess", "approx", "truncate", "verify"})
        app.add_subcommand(name);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : hlip::cli::kPrecondition;
    }

    hlip::cli::RunConfig cfg;
    try {
        if (!config_path.empty()) cfg = hlip::cli::load_config(config_path);
        for (const std::string& kv : params) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw hlip::FormatError("--param needs key=value: " + kv);
            cfg.params[kv.substr(0, eq)] = Json::parse(kv.substr(eq + 1));
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return hlip::cli::kPrecondition;
    }
    cfg.command = app.get_subcommands().front()->get_name();
    if (!out.empty()) cfg.out = out;
    if (*seed_opt) cfg.seed = seed;
    if (*n_opt) cfg.n = n;
    if (threads > 0) cfg.threads = threads;
    for (const auto& in : inputs) cfg.inputs.emplace_back(in);
#ifdef HLIP_HAVE_OPENMP
    if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
#endif

    const hlip::cli::Report rep = hlip::cli::run(cfg);
    const std::string text = rep.body.dump(2);
    std::cout << text << "\n";
    if (rep.exit_code == hlip::cli::kPrecondition) std::cerr << "error: " << rep.body.value("error", "") << "\n";
    if (!cfg.out.empty() && rep.exit_code != hlip::cli::kPrecondition) {
        std::ofstream f(cfg.out / "report.json");
        f << text << "\n";
    }
    return rep.exit_code;
}
