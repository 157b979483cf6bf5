#pragma once

#include <string>
#include <vector>

#include "axisym/scenario.hpp"

namespace axisym {

/// Full run configuration. Parsed from an INI-style file with [section]
/// headers and key = value lines; every physical and numerical parameter
/// lives here, none are hard-coded in the solver.
struct SimConfig {
    GridSpec grid{129, 129, 2.0, 2.0, Symmetry::OddInZ};

    double t_end = 1.0;
    double dt = 0.0; // <= 0: from CFL each step
    TimeStepSpec::Integrator integrator = TimeStepSpec::Integrator::RK2;
    double cfl_limit = 3.0;
    bool monotone_clip = true;

    BiotSavartOptions quad;

    bool use_scenario = true;
    scenario::ScenarioParams scenario_params;
    std::string initial_snapshot; // alternative to the scenario data

    int diag_cadence = 5;         // steps between diagnostics rows/snapshots
    bool kato_in_loop = true;     // per-R gradient sups in the CSV
    std::vector<double> kato_radii{0.1, 0.2, 0.4, 0.8};
    int kato_samples = 8;
    std::vector<double> q_probe_dists{0.01, 0.03};
    std::vector<PointRZ> particles{{0.1, 0.2}, {0.2, 0.1}};

    std::string output_dir = "out";
    bool write_snapshots = true;
    unsigned rng_seed = 2024;

    void validate() const;
    /// Canonical serialization echoed into the manifest (and reparseable).
    std::string echo() const;
};

SimConfig parse_config_text(const std::string& text);
SimConfig load_config(const std::string& path);

} // namespace axisym
