// Temporary step-cost benchmark (not registered with ctest).
#include <chrono>
#include <cstdio>

#include "axisym/scenario.hpp"

using namespace axisym;

int main(int argc, char** argv) {
    const int n = argc > 1 ? std::atoi(argv[1]) : 129;
    scenario::ScenarioParams p;
    p.eps = 0.15;
    p.delta = 0.3;
    p.inner_exponent = 2;
    auto grid = make_grid({n, n, 1.5, 1.5, Symmetry::OddInZ});
    ScalarFieldRZ w0 = scenario::ks_initial_data(p, grid);
    SimState s{0.0, w0, {}};
    TimeStepSpec ts;
    ts.dt = 0.0;
    ts.cfl_limit = 12.0;
    auto t0 = std::chrono::steady_clock::now();
    s = advect_step(s, ts);
    auto t1 = std::chrono::steady_clock::now();
    s = advect_step(s, ts);
    auto t2 = std::chrono::steady_clock::now();
    auto secs = [](auto a, auto b) {
        return std::chrono::duration_cast<std::chrono::milliseconds>(b - a).count() / 1000.0;
    };
    std::printf("n=%d first step %.1f s, second %.1f s, dt=%.5f, hmin=%.2e\n", n, secs(t0, t1),
                secs(t1, t2), s.prev_dt, grid->min_cell_size());
    return 0;
}
