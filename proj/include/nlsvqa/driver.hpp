// Time-stepping orchestration for the variational solver, its classical
// baselines, and the parameter sweeps.
#pragma once

#include "nlsvqa/bounds.hpp"
#include "nlsvqa/classical.hpp"
#include "nlsvqa/statevector.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace nlsvqa {

enum class RunMode : std::uint8_t { VQA, CLASSICAL, CLASSICAL_NORMALIZED };
enum class GradientSource : std::uint8_t { FINITE_DIFFERENCE, ADJOINT };
enum class ImplicitStep : std::uint8_t { FFT, CIRCUIT };

std::string to_string(RunMode mode);
std::string to_string(GradientSource source);
std::string to_string(ImplicitStep step);

struct RunConfig {
    int n = 6;
    int d = 12;
    double dt = 3e-3;
    int num_steps = 100;
    double s = 1.0;
    double a = 2.0;
    double v = 10.0;
    double x0 = -1.0;
    std::uint64_t seed = 1;
    double ftol = 1e-14;
    Bounds bounds;
    RunMode mode = RunMode::VQA;
    /// Step indices to snapshot; empty means 11 evenly spaced snapshots.
    std::vector<int> output_times;
    GradientSource gradient = GradientSource::FINITE_DIFFERENCE;
    ImplicitStep implicit_step = ImplicitStep::FFT;
    /// Objective-evaluation budget per time step.
    int max_evals = 15000;

    /// Throws ConfigurationError on an invalid field.
    void validate() const;

    SolitonSpec soliton() const { return {a, v, x0, s}; }

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Maps unit statevectors to physical fields: Psi = sqrt(2a/dx) psi.
struct Reconstruction {
    double amplitude_scale = 1.0;

    static Reconstruction for_grid(double a, const Grid& grid);

    WaveField to_field(const StateVector& state, const Grid& grid, double t) const;
    StateVector to_state(const WaveField& field) const;
};

/// One row per time index; absent quantities are NaN.
struct StepRecord {
    int step = 0;
    double t = 0.0;
    double rmse_q;
    double rmse_c;
    double rmse_nc;
    double cost;
    int iters = 0;
    int cost_evals = 0;
    std::string termination;
    bool flagged = false;
    /// |<psi(lambda*)| F psi~ / |F psi~|>|^2 of the optimization that produced this step.
    double fidelity;
    /// sum |Psi|^2 dx of the field this row describes.
    double norm;
    std::vector<double> lambda_star;

    StepRecord();
};

struct Snapshot {
    int step = 0;
    double t = 0.0;
    std::vector<double> modulus;
};

struct RunRecord {
    RunConfig config;
    std::vector<double> x;
    std::vector<StepRecord> steps;
    std::vector<Snapshot> snapshots;
};

/// NaN-aware structural equality (two NaNs compare equal).
bool same_record(const RunRecord& a, const RunRecord& b);

/// Variational run. Step 0 is the initial condition; each later step
/// minimizes the cost seeded randomly (first step) or from the previous
/// optimum. When s == 1 the classical C and NC RMSE series are filled in
/// alongside the Q series.
RunRecord run_vqa(const RunConfig& config);

/// Classical split-step run (CLASSICAL or CLASSICAL_NORMALIZED); fills its own RMSE column.
RunRecord run_classical(const RunConfig& config);

/// Dispatches on config.mode.
RunRecord run(const RunConfig& config);

struct StepSweepRow {
    int steps = 0;
    double dt = 0.0;
    double rmse_q = 0.0;
    double rmse_c = 0.0;
    double rmse_nc = 0.0;
};

/// For each step count, runs VQA (with classical companions) over [0, total_time]
/// and reports the final-time RMSE of every mode.
std::vector<StepSweepRow> sweep_timesteps(const RunConfig& base, const std::vector<int>& step_counts,
                                          double total_time = 0.3);

struct DepthSweep {
    std::vector<int> depths;
    std::vector<RunRecord> runs;
};

/// Runs VQA per depth with dt = 1e-3, x0 = 0 and ftol = 1e-13 overriding the base.
DepthSweep sweep_depth(const RunConfig& base, const std::vector<int>& depths);

} // namespace nlsvqa
