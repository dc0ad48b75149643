// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.
//
//   nlsvqa_acceptance [--only 1,5,9]

#include "nlsvqa/circuits.hpp"
#include "nlsvqa/classical.hpp"
#include "nlsvqa/cost.hpp"
#include "nlsvqa/driver.hpp"
#include "nlsvqa/optimizer.hpp"
#include "nlsvqa/verify.hpp"
#include "unit/oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <iomanip>
#include <iostream>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace nlsvqa;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double x) {
    std::ostringstream s;
    s << std::setprecision(4) << std::scientific << x;
    return s.str();
}

std::vector<double> random_lambda(int n, int d, std::mt19937_64& rng) {
    return oracle::random_angles(AnsatzParams::parameter_count(n, d), rng);
}

Outcome circuit_cost_equivalence() {
    std::mt19937_64 rng(1001);
    const double dt = 3e-3;
    double worst = 0.0;
    int count = 0;
    for (int n : {2, 3, 4}) {
        const double p = CostContext::prefactor_for(1.0, dt, 2.0, Grid::for_qubits(n).dx());
        for (int i = 0; i < 100; ++i) {
            const int d = 1 + i % 3;
            const auto lt = random_lambda(n, d, rng);
            const auto trial = random_lambda(n, d, rng);
            worst = std::max(worst, cost_circuit_deviation(n, d, lt, trial, dt, p));
            ++count;
        }
    }
    return {worst < 1e-9, std::to_string(count) + " instances, max |circuit - direct| = " + fmt(worst)};
}

Outcome tilde_u_matches_fft() {
    std::mt19937_64 rng(1002);
    double worst = 0.0;
    for (int n = 3; n <= 6; ++n) {
        for (int i = 0; i < 20; ++i) {
            const int d = n == 6 ? 12 : n;
            worst = std::max(worst, tilde_u_fft_deviation(n, d, random_lambda(n, d, rng), 3e-3));
        }
    }
    return {worst < 1e-10, "80 instances, max elementwise deviation = " + fmt(worst)};
}

Outcome qft_is_dft() {
    double worst = 0.0;
    for (int n = 1; n <= 5; ++n) worst = std::max(worst, qft_dft_deviation(n));
    return {worst < 1e-12, "n = 1..5, max deviation = " + fmt(worst)};
}

Outcome plane_wave_exactness() {
    const Grid g(64);
    double worst = 0.0;
    for (double dt : {1e-4, 1e-3, 3e-3, 1e-2}) {
        for (int k = -31; k <= 31; k += 3) {
            std::vector<Complex> psi(64);
            for (int j = 0; j < 64; ++j) psi[j] = std::polar(1.0, k * g.x(j));
            WaveField f(psi, g);
            for (int s = 0; s < 100; ++s) f = step(std::move(f), dt, 0.0);
            for (int j = 0; j < 64; ++j) {
                const Complex want = psi[j] * std::polar(1.0, -0.5 * k * k * dt * 100);
                worst = std::max(worst, std::abs(f.psi[j] - want));
            }
        }
    }
    return {worst < 1e-10, "100 steps, dt <= 0.01, max error = " + fmt(worst)};
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double classical_slope(const std::vector<int>& step_counts, std::string* detail) {
    const Grid g(64);
    const SolitonSpec spec;
    std::vector<double> log_dt, log_err;
    for (int steps : step_counts) {
        const double dt = 0.3 / steps;
        WaveField f = initial_condition(spec, g);
        for (int s = 0; s < steps; ++s) f = step(std::move(f), dt, 1.0);
        const double err = rmse(f, analytic_solution(spec, g, 0.3));
        log_dt.push_back(std::log(dt));
        log_err.push_back(std::log(err));
        if (detail) *detail += " " + std::to_string(steps) + "->" + fmt(err);
    }
    return least_squares_slope(log_dt, log_err);
}

// Evaluated over the step counts of the step-count sweep. Below dt ~ 2e-3 the
// RMSE reaches the ~1.4e-3 floor set by the periodized reference, which the
// second, finer fit reports.
Outcome classical_convergence_slope() {
    std::string detail;
    const double slope = classical_slope({10, 20, 40, 80, 150}, &detail);
    const double fine = classical_slope({100, 200, 400, 800}, nullptr);
    return {std::abs(slope - 1.0) <= 0.15, "slope = " + fmt(slope) + " over steps {10..150}, C-RMSE at t=0.3:" +
                                               detail + "; finer dt {100..800} slope " + fmt(fine)};
}

// Shortest signed distance on the periodic domain.
double wrap_distance(double a, double b) {
    const double period = 2 * std::numbers::pi;
    double d = std::fmod(a - b, period);
    if (d > period / 2) d -= period;
    if (d < -period / 2) d += period;
    return d;
}

const RunRecord& paper_run() {
    static const RunRecord record = [] {
        RunConfig c;  // n=6, d=12, dt=3e-3, 100 steps, s=1, a=2, v=10, x0=-1
        return run_vqa(c);
    }();
    return record;
}

Outcome soliton_shape_and_position() {
    const RunRecord& r = paper_run();
    const Grid g = Grid::for_qubits(r.config.n);
    double worst_peak = 0.0;
    double worst_cells = 0.0;
    for (const auto& snap : r.snapshots) {
        const auto it = std::max_element(snap.modulus.begin(), snap.modulus.end());
        const double peak = *it;
        const double x_peak = r.x[static_cast<std::size_t>(it - snap.modulus.begin())];
        const double centre = r.config.x0 + r.config.v * snap.t;
        worst_peak = std::max(worst_peak, std::abs(peak - r.config.a) / r.config.a);
        worst_cells = std::max(worst_cells, std::abs(wrap_distance(x_peak, centre)) / g.dx());
    }
    const bool pass = worst_peak <= 0.10 && worst_cells <= 2.0;
    return {pass, std::to_string(r.snapshots.size()) + " snapshots, max peak deviation " +
                      fmt(100 * worst_peak) + "%, max position offset " + fmt(worst_cells) + " cells"};
}

Outcome rmse_ordering() {
    const RunRecord& r = paper_run();
    int nc_le_c = 0, q_ge_nc = 0, total = 0;
    for (std::size_t m = 1; m < r.steps.size(); ++m) {
        const auto& s = r.steps[m];
        nc_le_c += s.rmse_nc <= s.rmse_c;
        q_ge_nc += s.rmse_q >= s.rmse_nc;
        ++total;
    }
    const double f1 = static_cast<double>(nc_le_c) / total;
    const double f2 = static_cast<double>(q_ge_nc) / total;
    const auto& last = r.steps.back();
    return {f1 >= 0.9 && f2 >= 0.9,
            "NC<=C at " + fmt(100 * f1) + "%, Q>=NC at " + fmt(100 * f2) + "% of " + std::to_string(total) +
                " steps; final Q/C/NC = " + fmt(last.rmse_q) + "/" + fmt(last.rmse_c) + "/" + fmt(last.rmse_nc)};
}

Outcome step_sweep_interior_minimum(int n) {
    RunConfig base;
    base.n = n;
    const std::vector<int> counts{10, 20, 40, 80, 150};
    const auto rows = sweep_timesteps(base, counts);
    std::string detail = "n=" + std::to_string(n) + " Q-RMSE:";
    for (const auto& row : rows) detail += " " + std::to_string(row.steps) + "->" + fmt(row.rmse_q);
    double best_interior = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i + 1 < rows.size(); ++i) best_interior = std::min(best_interior, rows[i].rmse_q);
    const bool pass = best_interior < rows.front().rmse_q && best_interior < rows.back().rmse_q;
    return {pass, detail};
}

Outcome depth_plateau(double v) {
    RunConfig base;
    base.n = 4;
    base.num_steps = 50;
    base.v = v;
    const auto sweep = sweep_depth(base, {1, 2, 3, 4, 5});
    const double c_rmse = sweep.runs.front().steps.back().rmse_c;
    bool pass = true;
    std::string detail = "v=" + fmt(v) + ", final C-RMSE " + fmt(c_rmse) + "; Q/C:";
    for (std::size_t i = 0; i < sweep.runs.size(); ++i) {
        const int d = sweep.depths[i];
        const double ratio = sweep.runs[i].steps.back().rmse_q / c_rmse;
        detail += " d=" + std::to_string(d) + "->" + fmt(ratio);
        if (d >= 3) pass = pass && ratio <= 2.0;
        if (d == 1) pass = pass && ratio >= 5.0;
    }
    return {pass, detail};
}

Outcome optimizer_sanity() {
    OptimizerConfig box;
    bool pass = true;
    std::string detail;

    auto quad = [](std::span<const double> x) { return (x[0] - 3.0) * (x[0] - 3.0); };
    box.bounds = {0.0, 10.0};
    const auto inner = minimize(quad, {0.0}, box);
    pass = pass && std::abs(inner.lambda_star[0] - 3.0) < 1e-6;
    box.bounds = {0.0, 2.0};
    const auto active = minimize(quad, {0.0}, box);
    pass = pass && active.lambda_star[0] == 2.0;

    auto rosen = [](std::span<const double> x) {
        return (1 - x[0]) * (1 - x[0]) + 100 * (x[1] - x[0] * x[0]) * (x[1] - x[0] * x[0]);
    };
    box.bounds = {-5.0, 5.0};
    bool feasible = true;
    Objective obj{rosen, {}};
    const auto observe = [&](std::span<const double> x, double) {
        for (double xi : x) feasible = feasible && box.bounds.contains(xi);
    };
    const auto a = minimize(obj, {-1.2, 1.0}, box, observe);
    const auto b = minimize(obj, {-1.2, 1.0}, box, observe);
    pass = pass && std::abs(a.lambda_star[0] - 1) < 1e-4 && std::abs(a.lambda_star[1] - 1) < 1e-4 &&
           a.cost_star < 1e-8;
    const bool deterministic = a.lambda_star == b.lambda_star && a.cost_star == b.cost_star &&
                               a.iterations == b.iterations && a.cost_evals == b.cost_evals &&
                               seed_parameters(6, 12, SeedMode::RANDOM, std::nullopt, 7) ==
                                   seed_parameters(6, 12, SeedMode::RANDOM, std::nullopt, 7);
    pass = pass && feasible && deterministic;
    detail = "quadratic x*=" + fmt(inner.lambda_star[0]) + ", bound x*=" + fmt(active.lambda_star[0]) +
             ", rosenbrock f*=" + fmt(a.cost_star) + (feasible ? ", feasible" : ", INFEASIBLE") +
             (deterministic ? ", deterministic" : ", NONDETERMINISTIC");
    return {pass, detail};
}

std::set<int> parse_only(int argc, char** argv) {
    std::set<int> only;
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::strcmp(argv[i], "--only") == 0) {
            std::stringstream s(argv[i + 1]);
            for (std::string item; std::getline(s, item, ',');) only.insert(std::stoi(item));
        }
    }
    return only;
}

} // namespace

int main(int argc, char** argv) {
    const std::set<int> only = parse_only(argc, argv);
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"circuit cost equals direct cost", circuit_cost_equivalence},
        {"U~ circuit equals FFT implicit step", tilde_u_matches_fft},
        {"QFT equals DFT", qft_is_dft},
        {"plane waves exact in the linear case", plane_wave_exactness},
        {"classical first-order convergence", classical_convergence_slope},
        {"soliton shape and position (n=6, d=12)", soliton_shape_and_position},
        {"RMSE ordering NC<=C and Q>=NC", rmse_ordering},
        {"step-count sweep has an interior minimum", [] { return step_sweep_interior_minimum(6); }},
        {"depth plateau at n=4", [] { return depth_plateau(2.0); }},
        {"optimizer sanity", optimizer_sanity},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!only.empty() && !only.contains(id)) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failures += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << criteria[i].first << " | "
                  << o.detail << " | " << std::fixed << std::setprecision(1) << secs << " s" << std::endl;
        std::cout.unsetf(std::ios::floatfield);
    }
    return failures == 0 ? 0 : 1;
}
