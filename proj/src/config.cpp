#include "axisym/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace axisym {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<double> parse_list(const std::string& v, const std::string& where) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError("config: bad number '" + item + "' in " + where);
        }
    }
    return out;
}

double parse_num(const std::string& v, const std::string& where) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config: bad number '" + v + "' in " + where);
    }
}

int parse_int(const std::string& v, const std::string& where) {
    const double x = parse_num(v, where);
    if (x != std::floor(x)) throw ConfigError("config: expected integer in " + where);
    return static_cast<int>(x);
}

bool parse_bool(const std::string& v, const std::string& where) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("config: bad boolean '" + v + "' in " + where);
}

} // namespace

SimConfig parse_config_text(const std::string& text) {
    SimConfig cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config: malformed section header at line " +
                                  std::to_string(lineno));
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: expected key = value at line " + std::to_string(lineno));
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        const std::string where = "[" + section + "] " + key;

        if (section == "grid") {
            if (key == "n_rho") cfg.grid.n_rho = parse_int(val, where);
            else if (key == "n_beta") cfg.grid.n_beta = parse_int(val, where);
            else if (key == "cluster_rho") cfg.grid.cluster_rho = parse_num(val, where);
            else if (key == "cluster_beta") cfg.grid.cluster_beta = parse_num(val, where);
            else if (key == "symmetry") {
                if (val == "odd") cfg.grid.symmetry = Symmetry::OddInZ;
                else if (val == "none") cfg.grid.symmetry = Symmetry::None;
                else throw ConfigError("config: symmetry must be odd|none in " + where);
            } else throw ConfigError("config: unknown key " + where);
        } else if (section == "time") {
            if (key == "t_end") cfg.t_end = parse_num(val, where);
            else if (key == "dt") cfg.dt = parse_num(val, where);
            else if (key == "cfl_limit") cfg.cfl_limit = parse_num(val, where);
            else if (key == "monotone_clip") cfg.monotone_clip = parse_bool(val, where);
            else if (key == "integrator") {
                if (val == "rk2") cfg.integrator = TimeStepSpec::Integrator::RK2;
                else if (val == "rk4") cfg.integrator = TimeStepSpec::Integrator::RK4;
                else throw ConfigError("config: integrator must be rk2|rk4 in " + where);
            } else throw ConfigError("config: unknown key " + where);
        } else if (section == "quadrature") {
            if (key == "gauss_order") cfg.quad.gauss_order = parse_int(val, where);
            else if (key == "refine") cfg.quad.refine = parse_bool(val, where);
            else throw ConfigError("config: unknown key " + where);
        } else if (section == "scenario") {
            if (key == "eps") cfg.scenario_params.eps = parse_num(val, where);
            else if (key == "delta") cfg.scenario_params.delta = parse_num(val, where);
            else if (key == "big_n") cfg.scenario_params.big_n = parse_num(val, where);
            else if (key == "gamma") cfg.scenario_params.gamma = parse_num(val, where);
            else if (key == "inner_exponent")
                cfg.scenario_params.inner_exponent = parse_int(val, where);
            else if (key == "initial_snapshot") {
                cfg.initial_snapshot = val;
                cfg.use_scenario = false;
            } else throw ConfigError("config: unknown key " + where);
        } else if (section == "diagnostics") {
            if (key == "cadence") cfg.diag_cadence = parse_int(val, where);
            else if (key == "kato_in_loop") cfg.kato_in_loop = parse_bool(val, where);
            else if (key == "kato_radii") cfg.kato_radii = parse_list(val, where);
            else if (key == "kato_samples") cfg.kato_samples = parse_int(val, where);
            else if (key == "q_probes") cfg.q_probe_dists = parse_list(val, where);
            else if (key == "particles") {
                cfg.particles.clear();
                std::stringstream ss(val);
                std::string pair;
                while (std::getline(ss, pair, ',')) {
                    pair = trim(pair);
                    if (pair.empty()) continue;
                    const auto colon = pair.find(':');
                    if (colon == std::string::npos)
                        throw ConfigError("config: particles need r:z pairs in " + where);
                    cfg.particles.push_back({parse_num(trim(pair.substr(0, colon)), where),
                                             parse_num(trim(pair.substr(colon + 1)), where)});
                }
            } else throw ConfigError("config: unknown key " + where);
        } else if (section == "output") {
            if (key == "directory") cfg.output_dir = val;
            else if (key == "snapshots") cfg.write_snapshots = parse_bool(val, where);
            else if (key == "rng_seed") cfg.rng_seed = static_cast<unsigned>(parse_int(val, where));
            else throw ConfigError("config: unknown key " + where);
        } else {
            throw ConfigError("config: unknown section [" + section + "]");
        }
    }
    cfg.validate();
    return cfg;
}

SimConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

void SimConfig::validate() const {
    if (grid.n_rho < 5 || grid.n_beta < 5) throw ConfigError("config: grid too small");
    if (!(t_end >= 0.0)) throw ConfigError("config: t_end must be nonnegative");
    if (!(cfl_limit > 0.0)) throw ConfigError("config: cfl_limit must be positive");
    if (diag_cadence < 1) throw ConfigError("config: cadence must be >= 1");
    if (quad.gauss_order < 1 || quad.gauss_order > 16)
        throw ConfigError("config: gauss_order in [1, 16]");
    if (use_scenario) scenario_params.validate();
    for (double d : q_probe_dists)
        if (!(d > 0.0) || d >= 0.5) throw ConfigError("config: q_probes must sit in (0, 0.5)");
    for (const PointRZ& p : particles)
        if (!in_closed_ball(p) || p.r < 0.0)
            throw ConfigError("config: particle outside the half-disk");
}

std::string SimConfig::echo() const {
    std::ostringstream os;
    os.precision(17);
    os << "[grid]\n"
       << "n_rho = " << grid.n_rho << "\nn_beta = " << grid.n_beta
       << "\ncluster_rho = " << grid.cluster_rho << "\ncluster_beta = " << grid.cluster_beta
       << "\nsymmetry = " << (grid.symmetry == Symmetry::OddInZ ? "odd" : "none") << "\n\n";
    os << "[time]\n"
       << "t_end = " << t_end << "\ndt = " << dt << "\nintegrator = "
       << (integrator == TimeStepSpec::Integrator::RK2 ? "rk2" : "rk4")
       << "\ncfl_limit = " << cfl_limit
       << "\nmonotone_clip = " << (monotone_clip ? "true" : "false") << "\n\n";
    os << "[quadrature]\n"
       << "gauss_order = " << quad.gauss_order
       << "\nrefine = " << (quad.refine ? "true" : "false") << "\n\n";
    os << "[scenario]\n";
    if (use_scenario) {
        os << "eps = " << scenario_params.eps << "\ndelta = " << scenario_params.delta
           << "\nbig_n = " << scenario_params.big_n << "\ngamma = " << scenario_params.gamma
           << "\ninner_exponent = " << scenario_params.inner_exponent << "\n";
    } else {
        os << "initial_snapshot = " << initial_snapshot << "\n";
    }
    os << "\n[diagnostics]\ncadence = " << diag_cadence
       << "\nkato_in_loop = " << (kato_in_loop ? "true" : "false") << "\nkato_radii = ";
    for (std::size_t i = 0; i < kato_radii.size(); ++i) os << (i ? "," : "") << kato_radii[i];
    os << "\nkato_samples = " << kato_samples << "\nq_probes = ";
    for (std::size_t i = 0; i < q_probe_dists.size(); ++i)
        os << (i ? "," : "") << q_probe_dists[i];
    os << "\nparticles = ";
    for (std::size_t i = 0; i < particles.size(); ++i)
        os << (i ? "," : "") << particles[i].r << ":" << particles[i].z;
    os << "\n\n[output]\ndirectory = " << output_dir
       << "\nsnapshots = " << (write_snapshots ? "true" : "false") << "\nrng_seed = " << rng_seed
       << "\n";
    return os.str();
}

} // namespace axisym
