// Box-constrained limited-memory BFGS.
//
// Search directions come from the two-loop recursion restricted to the free
// variables (those not pinned at a bound by the gradient); steps are
// projected onto the box and accepted by a backtracking Armijo search.
#pragma once

#include "nlsvqa/bounds.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nlsvqa {

struct OptimizerConfig {
    int memory = 10;
    /// Stop when f_k - f_{k+1} <= ftol * max(|f_k|, |f_{k+1}|, 1).
    double ftol = 1e-14;
    /// Stop when the projected gradient's infinity norm is <= gtol.
    double gtol = 1e-10;
    int max_iters = 15000;
    /// Budget of objective evaluations, finite-difference probes included.
    /// Only the evaluations at x0 may exceed it.
    int max_evals = 15000;
    /// Central finite-difference step used when no gradient is supplied.
    double fd_step = 1e-7;
    Bounds bounds;

    /// Throws UsageError when a field violates its invariant.
    void validate() const;
};

enum class Termination : std::uint8_t {
    FTOL,
    GTOL,
    MAX_ITERS,
    /// No Armijo step found even along steepest descent.
    LINE_SEARCH,
    /// The objective returned a non-finite value mid-run.
    NON_FINITE,
};

std::string to_string(Termination t);

struct OptimizationResult {
    std::vector<double> lambda_star;
    double cost_star = 0.0;
    int iterations = 0;
    Termination termination = Termination::MAX_ITERS;
    int cost_evals = 0;
    /// Set when the run ended abnormally (NON_FINITE) or x0 had to be clamped.
    bool flagged = false;
    std::vector<std::string> warnings;
};

/// Objective value, optionally with an exact gradient written into `grad`.
struct Objective {
    std::function<double(std::span<const double>)> value;
    std::function<double(std::span<const double>, std::span<double>)> value_and_gradient;
};

/// Called with every accepted iterate (x_0 included) and its objective value.
using IterateObserver = std::function<void(std::span<const double>, double)>;

OptimizationResult minimize(const Objective& objective, std::vector<double> x0,
                            const OptimizerConfig& config, const IterateObserver& observer = {});

/// Convenience overload: central finite-difference gradients.
OptimizationResult minimize(const std::function<double(std::span<const double>)>& cost,
                            std::vector<double> x0, const OptimizerConfig& config);

enum class SeedMode : std::uint8_t { RANDOM, WARM };

/// RANDOM: 2n(d+1) components drawn uniformly from the bounds with a
/// seeded mt19937_64. WARM: `previous` returned verbatim (length checked).
std::vector<double> seed_parameters(int n, int d, SeedMode mode,
                                    const std::optional<std::vector<double>>& previous,
                                    std::uint64_t rng_seed, Bounds bounds = {});

} // namespace nlsvqa
