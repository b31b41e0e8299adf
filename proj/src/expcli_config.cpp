#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>

#include "tlab/expcli.hpp"
#include "tlab/quantum/basis.hpp"

namespace tlab::cli {

using nlohmann::json;

namespace {

struct Defaults {
    double xi_d;
    int n_periods;
    std::size_t n_traj;
    const char* axis;  // sweep variable the experiment is built around, or ""
    double from, to;
    int count;
};

const std::map<std::string, Defaults>& defaults() {
    static const std::map<std::string, Defaults> d = {
        {"chaotic-layer", {2.5, 0, 1, "xi_d", 0.0, 6.0, 61}},
        {"poincare", {2.5, 500, 40, "", 0, 0, 0}},
        {"pdist", {2.5, 200, 5000, "", 0, 0, 0}},
        {"sigma-p", {2.5, 500, 1000, "xi_d", 0.0, 6.0, 25}},
        {"crossings", {2.5, 20, 1, "", 0, 0, 0}},
        {"relax", {2.5, 200, 5000, "", 0, 0, 0}},
        {"rates", {2.5, 200, 5000, "omega_q_t", 0.25, 2.25, 21}},
        {"plateau", {1.5, 0, 1, "g_t", 0.005, 0.05, 10}},
        {"dephase", {2.5, 200, 5000, "", 0, 0, 0}},
        {"rmatrix", {1.5, 0, 1, "", 0, 0, 0}},
        {"rbm-psd", {2.5, 0, 1, "omega", 0.0, 3.0, 301}},
        {"rbm-path", {2.5, 100, 1, "", 0, 0, 0}},
        {"floquet-spectrum", {1.5, 0, 1, "", 0, 0, 0}},
    };
    return d;
}

const std::set<std::string> kModelVariables = {"lambda", "xi_d", "hbar_eff", "omega_q_t", "g_t", "n_g"};

void check_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
    if (!j.is_object()) throw ConfigError(where + " must be an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) throw ConfigError("unknown key '" + it.key() + "' in " + where);
}

double get_number(const json& j, const char* key, double fallback, const std::string& where) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number()) throw ConfigError(where + "." + key + " must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(where + "." + key + " must be finite");
    return x;
}

long long get_int(const json& j, const char* key, long long fallback, const std::string& where) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number_integer()) throw ConfigError(where + "." + key + " must be an integer");
    return v.get<long long>();
}

int positive(long long v, const std::string& name) {
    if (v < 1) throw ConfigError(name + " must be >= 1");
    if (v > 1000000000LL) throw ConfigError(name + " is too large");
    return static_cast<int>(v);
}

bool is_seed(const json& v) {
    return v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0);
}

}  // namespace

const std::vector<std::string>& experiments() {
    static const std::vector<std::string> e = {
        "chaotic-layer", "poincare", "pdist",   "sigma-p", "crossings", "relax",           "rates",
        "plateau",       "dephase",  "rmatrix", "rbm-psd", "rbm-path",  "floquet-spectrum"};
    return e;
}

std::vector<double> Sweep::values() const {
    std::vector<double> v;
    for (int i = 0; i < count; ++i) v.push_back(count == 1 ? from : from + (to - from) * i / (count - 1));
    return v;
}

ExperimentConfig parse_config(const json& j, const std::string& subcommand) {
    check_keys(j, "config",
               {"experiment", "model", "circuit", "sweep", "ensemble", "numerics", "output_dir", "seed",
                "tls", "rbm", "initial"});
    ExperimentConfig c;
    if (j.contains("experiment")) {
        if (!j.at("experiment").is_string()) throw ConfigError("experiment must be a string");
        c.experiment = j.at("experiment").get<std::string>();
        if (!subcommand.empty() && subcommand != c.experiment)
            throw ConfigError("config experiment '" + c.experiment + "' does not match subcommand '" +
                              subcommand + "'");
    } else {
        c.experiment = subcommand;
    }
    const auto dit = defaults().find(c.experiment);
    if (dit == defaults().end()) throw ConfigError("unknown experiment '" + c.experiment + "'");
    const Defaults& def = dit->second;

    if (j.contains("model") && j.contains("circuit"))
        throw ConfigError("give exactly one of 'model' and 'circuit'");
    ModelParams m;
    m.xi_d = def.xi_d;
    m.omega_q_t = 1.0 / std::sqrt(2.0);
    m.g_t = 0.01;
    if (j.contains("circuit")) {
        const json& cj = j.at("circuit");
        check_keys(cj, "circuit", {"E_J", "E_C", "eps_d", "omega_d", "omega_q", "g", "n_g"});
        CircuitParams cp;
        cp.E_J = get_number(cj, "E_J", 0, "circuit");
        cp.E_C = get_number(cj, "E_C", 0, "circuit");
        cp.eps_d = get_number(cj, "eps_d", 0, "circuit");
        cp.omega_d = get_number(cj, "omega_d", 0, "circuit");
        cp.omega_q = get_number(cj, "omega_q", 0, "circuit");
        cp.g = get_number(cj, "g", 0, "circuit");
        cp.n_g = get_number(cj, "n_g", 0, "circuit");
        try {
            m = rescale(cp);
        } catch (const Error& e) {
            throw ConfigError(std::string("circuit: ") + e.what());
        }
        c.circuit = cp;
    } else if (j.contains("model")) {
        const json& mj = j.at("model");
        check_keys(mj, "model", kModelVariables);
        m.lambda = get_number(mj, "lambda", m.lambda, "model");
        m.xi_d = get_number(mj, "xi_d", m.xi_d, "model");
        m.hbar_eff = get_number(mj, "hbar_eff", m.hbar_eff, "model");
        m.omega_q_t = get_number(mj, "omega_q_t", m.omega_q_t, "model");
        m.g_t = get_number(mj, "g_t", m.g_t, "model");
        m.n_g = get_number(mj, "n_g", m.n_g, "model");
    }
    try {
        validate(m);
    } catch (const Error& e) {
        throw ConfigError(std::string("model: ") + e.what());
    }
    c.model = m;

    if (j.contains("sweep") && !j.at("sweep").is_null()) {
        const json& sj = j.at("sweep");
        check_keys(sj, "sweep", {"variable", "from", "to", "count"});
        if (!sj.contains("variable") || !sj.at("variable").is_string())
            throw ConfigError("sweep.variable must be a string");
        Sweep s;
        s.variable = sj.at("variable").get<std::string>();
        s.from = get_number(sj, "from", 0, "sweep");
        s.to = get_number(sj, "to", s.from, "sweep");
        s.count = positive(get_int(sj, "count", 1, "sweep"), "sweep.count");
        const std::string axis = def.axis;
        if (!axis.empty() && s.variable != axis)
            throw ConfigError(c.experiment + " sweeps over '" + axis + "' only");
        if (axis.empty() && !kModelVariables.count(s.variable))
            throw ConfigError("cannot sweep over '" + s.variable + "'");
        c.sweep = s;
    } else if (def.axis[0] != '\0' && j.contains("sweep")) {
        // explicit null: single point at the model value
        const std::string axis = def.axis;
        double v = m.omega_q_t;
        if (axis == "xi_d") v = m.xi_d;
        else if (axis == "g_t") v = m.g_t;
        c.sweep = Sweep{axis, v, v, 1};
    } else if (def.axis[0] != '\0') {
        c.sweep = Sweep{def.axis, def.from, def.to, def.count};
    }

    if (j.contains("seed")) {
        if (!is_seed(j.at("seed"))) throw ConfigError("seed must be a non-negative integer");
        c.seed = j.at("seed").get<std::uint64_t>();
    }
    c.n_traj = def.n_traj;
    if (j.contains("ensemble")) {
        const json& ej = j.at("ensemble");
        check_keys(ej, "ensemble", {"n_traj", "seed"});
        c.n_traj = positive(get_int(ej, "n_traj", static_cast<long long>(def.n_traj), "ensemble"), "ensemble.n_traj");
        if (ej.contains("seed")) {
            if (!is_seed(ej.at("seed")))
                throw ConfigError("ensemble.seed must be a non-negative integer");
            c.seed = ej.at("seed").get<std::uint64_t>();
        }
    }

    Numerics& n = c.numerics;
    const quantum::BasisSize bs = quantum::default_basis_size(m.hbar_eff);
    n.D = bs.D;
    n.d = bs.d;
    n.dt = kPeriod / 1000.0;
    n.n_periods = def.n_periods;
    n.n_g_count = 50;
    n.samples_per_period = c.experiment == "dephase" ? 8 : 1;
    n.bins = 100;
    n.k_max = 3;
    n.n_t = 64;
    n.min_r_sq = 1e-8;
    n.record_stride = 10;
    if (c.experiment == "rbm-path") n.dt = kPeriod / 200.0;
    if (j.contains("numerics")) {
        const json& nj = j.at("numerics");
        check_keys(nj, "numerics",
                   {"D", "d", "steps_per_period", "dt", "n_periods", "n_g_count", "samples_per_period", "bins",
                    "k_max", "n_t", "min_r_sq", "record_stride"});
        n.D = positive(get_int(nj, "D", n.D, "numerics"), "numerics.D");
        n.d = positive(get_int(nj, "d", n.d, "numerics"), "numerics.d");
        n.steps_per_period = positive(get_int(nj, "steps_per_period", n.steps_per_period, "numerics"),
                                      "numerics.steps_per_period");
        n.dt = get_number(nj, "dt", n.dt, "numerics");
        n.n_periods = static_cast<int>(get_int(nj, "n_periods", n.n_periods, "numerics"));
        if (nj.contains("n_periods")) positive(n.n_periods, "numerics.n_periods");
        n.n_g_count = positive(get_int(nj, "n_g_count", n.n_g_count, "numerics"), "numerics.n_g_count");
        n.samples_per_period = positive(get_int(nj, "samples_per_period", n.samples_per_period, "numerics"),
                                        "numerics.samples_per_period");
        n.bins = positive(get_int(nj, "bins", n.bins, "numerics"), "numerics.bins");
        n.k_max = static_cast<int>(get_int(nj, "k_max", n.k_max, "numerics"));
        if (n.k_max < 0) throw ConfigError("numerics.k_max must be >= 0");
        n.n_t = positive(get_int(nj, "n_t", n.n_t, "numerics"), "numerics.n_t");
        n.min_r_sq = get_number(nj, "min_r_sq", n.min_r_sq, "numerics");
        n.record_stride = positive(get_int(nj, "record_stride", n.record_stride, "numerics"),
                                   "numerics.record_stride");
    }
    if (n.d > 2 * n.D + 1) throw ConfigError("numerics.d must not exceed 2 D + 1");
    if (n.steps_per_period % 4 != 0) throw ConfigError("numerics.steps_per_period must be a multiple of 4");
    if (!(n.dt > 0)) throw ConfigError("numerics.dt must be positive");
    if (n.min_r_sq < 0) throw ConfigError("numerics.min_r_sq must be >= 0");

    if (c.experiment == "dephase") c.tls_theta = kPi / 2;
    if (j.contains("tls")) {
        const json& tj = j.at("tls");
        check_keys(tj, "tls", {"theta", "phi"});
        c.tls_theta = get_number(tj, "theta", c.tls_theta, "tls");
        c.tls_phi = get_number(tj, "phi", c.tls_phi, "tls");
        if (c.tls_theta < 0 || c.tls_theta > kPi) throw ConfigError("tls.theta must be in [0, pi]");
        if (c.tls_phi < 0 || c.tls_phi >= 2 * kPi) throw ConfigError("tls.phi must be in [0, 2 pi)");
    }
    if (j.contains("rbm")) {
        const json& rj = j.at("rbm");
        check_keys(rj, "rbm", {"D", "p_bar"});
        if (rj.contains("D")) c.rbm_D = get_number(rj, "D", 0, "rbm");
        if (rj.contains("p_bar")) c.rbm_p_bar = get_number(rj, "p_bar", 0, "rbm");
        if ((c.rbm_D && !(*c.rbm_D > 0)) || (c.rbm_p_bar && !(*c.rbm_p_bar > 0)))
            throw ConfigError("rbm.D and rbm.p_bar must be positive");
    }
    if (j.contains("initial")) {
        const json& ij = j.at("initial");
        check_keys(ij, "initial", {"theta", "p"});
        c.initial_theta = get_number(ij, "theta", 0, "initial");
        c.initial_p = get_number(ij, "p", 0, "initial");
    }
    if (j.contains("output_dir")) {
        if (!j.at("output_dir").is_string()) throw ConfigError("output_dir must be a string");
        c.output_dir = j.at("output_dir").get<std::string>();
    }
    return c;
}

ExperimentConfig load_config(const std::string& path, const std::string& subcommand) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
    try {
        return parse_config(j, subcommand);
    } catch (const json::exception& e) {
        throw ConfigError(e.what());
    }
}

json ExperimentConfig::to_json() const {
    json j;
    j["experiment"] = experiment;
    if (!circuit)
        j["model"] = {{"lambda", model.lambda},       {"xi_d", model.xi_d}, {"hbar_eff", model.hbar_eff},
                      {"omega_q_t", model.omega_q_t}, {"g_t", model.g_t},   {"n_g", model.n_g}};
    else
        j["circuit"] = {{"E_J", circuit->E_J},         {"E_C", circuit->E_C},         {"eps_d", circuit->eps_d},
                        {"omega_d", circuit->omega_d}, {"omega_q", circuit->omega_q}, {"g", circuit->g},
                        {"n_g", circuit->n_g}};
    if (sweep)
        j["sweep"] = {{"variable", sweep->variable}, {"from", sweep->from}, {"to", sweep->to}, {"count", sweep->count}};
    else
        j["sweep"] = nullptr;
    j["ensemble"] = {{"n_traj", n_traj}, {"seed", seed}};
    j["seed"] = seed;
    j["numerics"] = {{"D", numerics.D},
                     {"d", numerics.d},
                     {"steps_per_period", numerics.steps_per_period},
                     {"dt", numerics.dt},
                     {"n_periods", numerics.n_periods},
                     {"n_g_count", numerics.n_g_count},
                     {"samples_per_period", numerics.samples_per_period},
                     {"bins", numerics.bins},
                     {"k_max", numerics.k_max},
                     {"n_t", numerics.n_t},
                     {"min_r_sq", numerics.min_r_sq},
                     {"record_stride", numerics.record_stride}};
    j["tls"] = {{"theta", tls_theta}, {"phi", tls_phi}};
    j["rbm"] = json::object();
    if (rbm_D) j["rbm"]["D"] = *rbm_D;
    if (rbm_p_bar) j["rbm"]["p_bar"] = *rbm_p_bar;
    j["initial"] = {{"theta", initial_theta}, {"p", initial_p}};
    j["output_dir"] = output_dir;
    return j;
}

Table::Table(std::string n, std::vector<std::string> cols, std::vector<bool> ints)
    : name(std::move(n)), columns(std::move(cols)), integer(std::move(ints)) {
    integer.resize(columns.size(), false);
}

void Table::add(std::vector<double> row) {
    if (row.size() != columns.size()) throw std::logic_error("row width mismatch in " + name);
    rows.push_back(std::move(row));
}

std::string to_csv(const Table& t) {
    std::string out;
    for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i];
    out += '\n';
    char buf[64];
    for (const auto& r : t.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i) out += ',';
            if (t.integer[i] && std::isfinite(r[i]))
                std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(std::llround(r[i])));
            else if (std::isnan(r[i]))
                std::snprintf(buf, sizeof buf, "nan");
            else
                std::snprintf(buf, sizeof buf, "%.16e", r[i]);
            out += buf;
        }
        out += '\n';
    }
    return out;
}

int exit_code_for(const std::exception& e) {
    if (const auto* err = dynamic_cast<const Error*>(&e)) {
        if (err->kind() == "invalid-config") return 2;
        if (err->kind() == "accuracy-error" || err->kind() == "integration-failure") return 3;
    }
    return 1;
}

std::string error_json(const std::exception& e) {
    const auto* err = dynamic_cast<const Error*>(&e);
    json j = {{"error", err ? err->kind() : std::string("internal-error")}, {"message", e.what()}};
    return j.dump();
}

}  // namespace tlab::cli
