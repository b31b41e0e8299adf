#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "tlab/expcli.hpp"

namespace {

unsigned env_threads() {
    const char* v = std::getenv("TRANSMON_LAB_THREADS");
    if (!v || !*v) return 0;
    char* end = nullptr;
    const unsigned long n = std::strtoul(v, &end, 10);
    if (*end != '\0') throw tlab::cli::ConfigError("TRANSMON_LAB_THREADS must be a non-negative integer");
    return static_cast<unsigned>(n);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Driven transmon chaos and TLS relaxation experiments"};
    app.set_version_flag("--version", tlab::cli::kVersion);
    app.require_subcommand(1);

    std::string config_path, out_dir;
    int threads = -1;
    for (const auto& name : tlab::cli::experiments()) {
        CLI::App* sub = app.add_subcommand(name, "Run the " + name + " experiment");
        sub->add_option("--config", config_path, "JSON configuration file")->required();
        sub->add_option("--threads", threads, "Worker threads, 0 = all cores")->check(CLI::NonNegativeNumber);
        sub->add_option("--out", out_dir, "Output directory (overrides output_dir)");
        sub->footer("Output files:\n" + tlab::cli::schema_help(name) + "\nAlso writes manifest.json.");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        const tlab::cli::ConfigError err(e.what());
        std::cerr << tlab::cli::error_json(err) << "\n";
        return 2;
    }

    try {
        const std::string sub = app.get_subcommands().front()->get_name();
        tlab::cli::ExperimentConfig config = tlab::cli::load_config(config_path, sub);
        if (!out_dir.empty()) config.output_dir = out_dir;
        const unsigned n_threads = threads >= 0 ? static_cast<unsigned>(threads) : env_threads();
        const auto result = tlab::cli::run(config, n_threads);
        for (const auto& f : result.files) std::cout << f << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << tlab::cli::error_json(e) << "\n";
        return tlab::cli::exit_code_for(e);
    }
}
