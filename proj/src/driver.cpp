#include "nlsvqa/driver.hpp"

#include "nlsvqa/circuits.hpp"
#include "nlsvqa/cost.hpp"
#include "nlsvqa/error.hpp"
#include "nlsvqa/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <optional>
#include <thread>

namespace nlsvqa {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<int> snapshot_steps(const RunConfig& config) {
    std::vector<int> out = config.output_times;
    if (out.empty()) {
        for (int k = 0; k <= 10; ++k) {
            out.push_back(static_cast<int>(std::lround(k * config.num_steps / 10.0)));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Snapshot make_snapshot(int step, double t, const WaveField& field) {
    Snapshot snap{step, t, {}};
    snap.modulus.reserve(field.psi.size());
    for (const auto& z : field.psi) {
        snap.modulus.push_back(std::abs(z));
    }
    return snap;
}

// Classical trajectory RMSE per step (index = step), NaN when no oracle exists.
std::vector<double> classical_rmse_series(const RunConfig& config, bool normalized,
                                          std::vector<WaveField>* fields = nullptr) {
    const SolitonSpec soliton = config.soliton();
    const Grid grid = Grid::for_qubits(config.n);
    const double target = 2.0 * config.a;
    WaveField field = initial_condition(soliton, grid);
    std::vector<double> out(config.num_steps + 1, kNaN);
    const bool oracle = config.s == 1.0;
    for (int m = 0; m <= config.num_steps; ++m) {
        if (m > 0) {
            field = normalized ? step_normalized(std::move(field), config.dt, config.s, target)
                               : step(std::move(field), config.dt, config.s);
            field.time = m * config.dt;
        }
        if (oracle) {
            out[m] = rmse(field, analytic_solution(soliton, grid, field.time));
        }
        if (fields) {
            fields->push_back(field);
        }
    }
    return out;
}

template <typename T, typename F>
auto parallel_map(const std::vector<T>& inputs, F&& fn) {
    using R = decltype(fn(inputs.front()));
    std::vector<R> out;
    out.reserve(inputs.size());
    const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
    for (std::size_t begin = 0; begin < inputs.size(); begin += workers) {
        const std::size_t end = std::min(inputs.size(), begin + workers);
        std::vector<std::future<R>> batch;
        for (std::size_t i = begin; i < end; ++i) {
            batch.push_back(std::async(workers > 1 ? std::launch::async : std::launch::deferred,
                                       [&fn, &inputs, i] { return fn(inputs[i]); }));
        }
        for (auto& f : batch) {
            out.push_back(f.get());
        }
    }
    return out;
}

bool same_double(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

} // namespace

std::string to_string(RunMode mode) {
    switch (mode) {
    case RunMode::VQA: return "VQA";
    case RunMode::CLASSICAL: return "CLASSICAL";
    case RunMode::CLASSICAL_NORMALIZED: return "CLASSICAL_NORMALIZED";
    }
    return "?";
}

std::string to_string(GradientSource source) {
    return source == GradientSource::ADJOINT ? "adjoint" : "finite_difference";
}

std::string to_string(ImplicitStep step) {
    return step == ImplicitStep::CIRCUIT ? "circuit" : "fft";
}

void RunConfig::validate() const {
    auto fail = [](const std::string& what) { throw ConfigurationError(what); };
    if (n < 2 || n > 20) fail("n must be in [2, 20]");
    if (d < 0) fail("d must be non-negative");
    if (!(dt > 0.0) || !std::isfinite(dt)) fail("dt must be positive");
    if (num_steps < 1) fail("num_steps must be at least 1");
    if (!(a > 0.0) || !std::isfinite(a)) fail("a must be positive");
    if (!std::isfinite(v) || !std::isfinite(x0) || !std::isfinite(s)) fail("v, x0, s must be finite");
    if (!(ftol > 0.0)) fail("ftol must be positive");
    if (!(bounds.lower < bounds.upper)) fail("bounds must satisfy lower < upper");
    if (max_evals < 1) fail("max_evals must be positive");
    if (implicit_step == ImplicitStep::CIRCUIT && n > 12) fail("circuit implicit step limited to n <= 12");
    for (int t : output_times) {
        if (t < 0 || t > num_steps) fail("output_times entries must lie in [0, num_steps]");
    }
}

Reconstruction Reconstruction::for_grid(double a, const Grid& grid) {
    return {std::sqrt(2.0 * a / grid.dx())};
}

WaveField Reconstruction::to_field(const StateVector& state, const Grid& grid, double t) const {
    std::vector<Complex> psi(state.amplitudes().begin(), state.amplitudes().end());
    for (auto& z : psi) {
        z *= amplitude_scale;
    }
    return WaveField(std::move(psi), grid, t);
}

StateVector Reconstruction::to_state(const WaveField& field) const {
    std::vector<Complex> amps(field.psi.begin(), field.psi.end());
    for (auto& z : amps) {
        z /= amplitude_scale;
    }
    return StateVector::from_amplitudes(std::move(amps), 1e-9);
}

StepRecord::StepRecord()
    : rmse_q(kNaN), rmse_c(kNaN), rmse_nc(kNaN), cost(kNaN), fidelity(kNaN), norm(kNaN) {}

bool same_record(const RunRecord& a, const RunRecord& b) {
    if (!(a.config == b.config) || a.x != b.x || a.steps.size() != b.steps.size() ||
        a.snapshots.size() != b.snapshots.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.steps.size(); ++i) {
        const auto& p = a.steps[i];
        const auto& q = b.steps[i];
        if (p.step != q.step || !same_double(p.t, q.t) || !same_double(p.rmse_q, q.rmse_q) ||
            !same_double(p.rmse_c, q.rmse_c) || !same_double(p.rmse_nc, q.rmse_nc) ||
            !same_double(p.cost, q.cost) || p.iters != q.iters || p.cost_evals != q.cost_evals ||
            p.termination != q.termination || p.flagged != q.flagged ||
            !same_double(p.fidelity, q.fidelity) || !same_double(p.norm, q.norm) ||
            p.lambda_star != q.lambda_star) {
            return false;
        }
    }
    for (std::size_t i = 0; i < a.snapshots.size(); ++i) {
        const auto& p = a.snapshots[i];
        const auto& q = b.snapshots[i];
        if (p.step != q.step || p.t != q.t || p.modulus != q.modulus) {
            return false;
        }
    }
    return true;
}

RunRecord run_vqa(const RunConfig& config) {
    config.validate();
    if (config.mode != RunMode::VQA) {
        throw ConfigurationError("run_vqa needs mode VQA");
    }
    const int n = config.n;
    const int d = config.d;
    const Grid grid = Grid::for_qubits(n);
    const SolitonSpec soliton = config.soliton();
    const Reconstruction recon = Reconstruction::for_grid(config.a, grid);
    const bool oracle = config.s == 1.0;
    const double prefactor = CostContext::prefactor_for(config.s, config.dt, config.a, grid.dx());
    const auto snapshots = snapshot_steps(config);

    OptimizerConfig opt;
    opt.ftol = config.ftol;
    opt.bounds = config.bounds;
    opt.max_evals = config.max_evals;

    RunRecord record;
    record.config = config;
    record.x = grid.xs();

    const std::vector<double> rmse_c = oracle ? classical_rmse_series(config, false) : std::vector<double>{};
    const std::vector<double> rmse_nc = oracle ? classical_rmse_series(config, true) : std::vector<double>{};

    const WaveField initial = initial_condition(soliton, grid);
    StateVector current = StateVector::normalized(initial.psi);
    std::optional<std::vector<double>> lambda;

    auto record_field = [&](StepRecord& row, const WaveField& field) {
        row.norm = field.l2_norm_squared();
        if (oracle) {
            row.rmse_q = rmse(field, analytic_solution(soliton, grid, row.t));
            row.rmse_c = rmse_c[row.step];
            row.rmse_nc = rmse_nc[row.step];
        }
        if (std::binary_search(snapshots.begin(), snapshots.end(), row.step)) {
            record.snapshots.push_back(make_snapshot(row.step, row.t, field));
        }
    };

    {
        StepRecord row;
        row.step = 0;
        row.t = 0.0;
        record_field(row, initial);
        record.steps.push_back(std::move(row));
    }

    for (int m = 0; m < config.num_steps; ++m) {
        std::vector<Complex> tilde;
        if (lambda && config.implicit_step == ImplicitStep::CIRCUIT) {
            const StateVector s = apply_circuit(zero_state(n), build_tilde_u(n, d, *lambda, config.dt));
            tilde.assign(s.amplitudes().begin(), s.amplitudes().end());
        } else {
            tilde.assign(current.amplitudes().begin(), current.amplitudes().end());
            kinetic_propagate(tilde, config.dt);
        }
        const CostContext ctx(StateVector::from_amplitudes(std::move(tilde), 1e-10), prefactor, d);

        const auto seed = seed_parameters(n, d, lambda ? SeedMode::WARM : SeedMode::RANDOM, lambda,
                                          config.seed, config.bounds);
        Objective objective;
        objective.value = [&ctx](std::span<const double> x) { return cost_direct(ctx, x); };
        if (config.gradient == GradientSource::ADJOINT) {
            objective.value_and_gradient = [&ctx](std::span<const double> x, std::span<double> g) {
                return cost_and_gradient(ctx, x, g);
            };
        }
        OptimizationResult result = minimize(objective, seed, opt);

        StepRecord row;
        row.step = m + 1;
        row.t = (m + 1) * config.dt;
        row.cost = result.cost_star;
        row.iters = result.iterations;
        row.cost_evals = result.cost_evals;
        row.termination = to_string(result.termination);
        row.flagged = result.flagged;
        row.fidelity = cost_minimizer_consistency(ctx, result.lambda_star);
        row.lambda_star = result.lambda_star;

        current = ansatz_state(n, d, result.lambda_star);
        lambda = std::move(result.lambda_star);
        record_field(row, recon.to_field(current, grid, row.t));
        record.steps.push_back(std::move(row));
    }
    return record;
}

RunRecord run_classical(const RunConfig& config) {
    config.validate();
    if (config.mode == RunMode::VQA) {
        throw ConfigurationError("run_classical needs a classical mode");
    }
    const bool normalized = config.mode == RunMode::CLASSICAL_NORMALIZED;
    std::vector<WaveField> fields;
    const auto series = classical_rmse_series(config, normalized, &fields);
    const auto snapshots = snapshot_steps(config);

    RunRecord record;
    record.config = config;
    record.x = Grid::for_qubits(config.n).xs();
    for (int m = 0; m <= config.num_steps; ++m) {
        StepRecord row;
        row.step = m;
        row.t = m * config.dt;
        row.norm = fields[m].l2_norm_squared();
        (normalized ? row.rmse_nc : row.rmse_c) = series[m];
        if (std::binary_search(snapshots.begin(), snapshots.end(), m)) {
            record.snapshots.push_back(make_snapshot(m, row.t, fields[m]));
        }
        record.steps.push_back(std::move(row));
    }
    return record;
}

RunRecord run(const RunConfig& config) {
    return config.mode == RunMode::VQA ? run_vqa(config) : run_classical(config);
}

std::vector<StepSweepRow> sweep_timesteps(const RunConfig& base, const std::vector<int>& step_counts,
                                          double total_time) {
    if (base.s != 1.0) {
        throw ConfigurationError("time-step sweep needs s = 1 for the analytic reference");
    }
    std::vector<RunConfig> configs;
    for (int count : step_counts) {
        if (count < 1) {
            throw ConfigurationError("step counts must be positive");
        }
        RunConfig c = base;
        c.mode = RunMode::VQA;
        c.num_steps = count;
        c.dt = total_time / count;
        c.output_times = {0, count};
        configs.push_back(std::move(c));
    }
    return parallel_map(configs, [](const RunConfig& c) {
        const RunRecord r = run_vqa(c);
        const StepRecord& last = r.steps.back();
        return StepSweepRow{c.num_steps, c.dt, last.rmse_q, last.rmse_c, last.rmse_nc};
    });
}

DepthSweep sweep_depth(const RunConfig& base, const std::vector<int>& depths) {
    std::vector<RunConfig> configs;
    for (int depth : depths) {
        if (depth < 0) {
            throw ConfigurationError("depths must be non-negative");
        }
        RunConfig c = base;
        c.mode = RunMode::VQA;
        c.d = depth;
        c.dt = 1e-3;
        c.x0 = 0.0;
        c.ftol = 1e-13;
        configs.push_back(std::move(c));
    }
    DepthSweep out;
    out.depths = depths;
    out.runs = parallel_map(configs, [](const RunConfig& c) { return run_vqa(c); });
    return out;
}

} // namespace nlsvqa
