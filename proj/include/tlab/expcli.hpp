#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tlab/errors.hpp"
#include "tlab/params.hpp"

namespace tlab::cli {

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error("invalid-config", what) {}
};

inline constexpr const char* kVersion = "0.1.0";

// Subcommand names in help order.
const std::vector<std::string>& experiments();

// Files and CSV columns written by an experiment, for --help.
std::string schema_help(const std::string& experiment);

struct Sweep {
    std::string variable;
    double from = 0.0;
    double to = 0.0;
    int count = 1;

    std::vector<double> values() const;
};

struct Numerics {
    int D = 0;
    int d = 0;
    int steps_per_period = 256;
    double dt = 0.0;
    int n_periods = 0;
    int n_g_count = 0;
    int samples_per_period = 1;
    int bins = 0;
    int k_max = 0;
    int n_t = 0;
    double min_r_sq = 0.0;
    int record_stride = 0;
};

struct ExperimentConfig {
    std::string experiment;
    std::optional<CircuitParams> circuit;
    ModelParams model;  // resolved (rescaled when circuit is given)
    std::optional<Sweep> sweep;
    std::size_t n_traj = 1;
    std::uint64_t seed = 0;
    Numerics numerics;
    double tls_theta = 0.0, tls_phi = 0.0;
    std::optional<double> rbm_D, rbm_p_bar;
    double initial_theta = 0.0, initial_p = 0.0;
    std::string output_dir = ".";

    // Fully resolved configuration, defaults included. Holds the circuit
    // block instead of the model when one was given.
    nlohmann::json to_json() const;
};

// `subcommand` may be empty; when given, it must match "experiment" if that
// key is present. Throws ConfigError.
ExperimentConfig parse_config(const nlohmann::json& j, const std::string& subcommand = "");
ExperimentConfig load_config(const std::string& path, const std::string& subcommand = "");

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<bool> integer;
    std::vector<std::vector<double>> rows;

    Table(std::string n, std::vector<std::string> cols, std::vector<bool> ints = {});
    void add(std::vector<double> row);
};

// Header row, comma separated, "%.16e" for reals.
std::string to_csv(const Table& t);

struct RunResult {
    std::vector<std::string> files;
    nlohmann::json manifest;
};

// Runs the experiment, writes CSVs and manifest.json into output_dir.
RunResult run(const ExperimentConfig& config, unsigned threads = 1);

// Exit status for an exception escaping run(): 2 invalid config,
// 3 convergence failure, 1 otherwise.
int exit_code_for(const std::exception& e);
std::string error_json(const std::exception& e);

}  // namespace tlab::cli
