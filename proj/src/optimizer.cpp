#include "nlsvqa/optimizer.hpp"

#include "nlsvqa/circuits.hpp"
#include "nlsvqa/error.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <random>

namespace nlsvqa {

namespace {

constexpr double kArmijo = 1e-4;
constexpr int kMaxBacktracks = 40;

double dot(std::span<const double> a, std::span<const double> b) {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

bool all_finite(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

struct CorrectionPair {
    std::vector<double> s;
    std::vector<double> y;
    double rho;
};

class Evaluator {
public:
    Evaluator(const Objective& objective, const OptimizerConfig& config)
        : objective_(objective), config_(config) {}

    double value(std::span<const double> x) {
        ++evals_;
        return objective_.value(x);
    }

    // `known_value` skips re-evaluating f at x for finite differences.
    double value_and_gradient(std::span<const double> x, std::span<double> grad,
                              std::optional<double> known_value = std::nullopt) {
        if (objective_.value_and_gradient) {
            ++evals_;
            return objective_.value_and_gradient(x, grad);
        }
        const double f = known_value ? *known_value : value(x);
        std::vector<double> probe(x.begin(), x.end());
        const double h = config_.fd_step;
        for (std::size_t i = 0; i < probe.size(); ++i) {
            const double xi = probe[i];
            probe[i] = xi + h;
            const double fp = value(probe);
            probe[i] = xi - h;
            const double fm = value(probe);
            probe[i] = xi;
            grad[i] = (fp - fm) / (2.0 * h);
        }
        return f;
    }

    int evals() const { return evals_; }

private:
    const Objective& objective_;
    const OptimizerConfig& config_;
    int evals_ = 0;
};

// Components pinned at a bound with the gradient pushing outward.
std::vector<bool> fixed_set(std::span<const double> x, std::span<const double> g, const Bounds& b) {
    std::vector<bool> fixed(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        fixed[i] = (x[i] <= b.lower && g[i] > 0.0) || (x[i] >= b.upper && g[i] < 0.0);
    }
    return fixed;
}

double projected_gradient_norm(std::span<const double> x, std::span<const double> g, const Bounds& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        worst = std::max(worst, std::abs(b.clamp(x[i] - g[i]) - x[i]));
    }
    return worst;
}

std::vector<double> lbfgs_direction(std::span<const double> g, const std::vector<bool>& fixed,
                                    const std::deque<CorrectionPair>& memory) {
    const std::size_t n = g.size();
    std::vector<double> q(n);
    for (std::size_t i = 0; i < n; ++i) {
        q[i] = fixed[i] ? 0.0 : g[i];
    }
    std::vector<double> alpha(memory.size());
    for (std::size_t k = memory.size(); k-- > 0;) {
        alpha[k] = memory[k].rho * dot(memory[k].s, q);
        for (std::size_t i = 0; i < n; ++i) {
            q[i] -= alpha[k] * memory[k].y[i];
        }
    }
    if (!memory.empty()) {
        const auto& last = memory.back();
        const double gamma = dot(last.s, last.y) / dot(last.y, last.y);
        for (auto& v : q) {
            v *= gamma;
        }
    }
    for (std::size_t k = 0; k < memory.size(); ++k) {
        const double beta = memory[k].rho * dot(memory[k].y, q);
        for (std::size_t i = 0; i < n; ++i) {
            q[i] += (alpha[k] - beta) * memory[k].s[i];
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        q[i] = fixed[i] ? 0.0 : -q[i];
    }
    return q;
}

// One quadratic-interpolation step along an unclamped accepted segment:
// fits phi(a) = f + slope a + c a^2 through phi(alpha) = f_trial and moves
// to the model minimizer when that lowers the objective further. Returns
// false when the evaluation budget is exhausted.
bool refine_step(Evaluator& eval, const OptimizerConfig& config, std::span<const double> x, double f,
                 std::span<const double> g, std::span<const double> direction, double alpha,
                 std::vector<double>& trial, double& f_trial) {
    const double slope = dot(g, direction);
    const double curvature = (f_trial - f - slope * alpha) / (alpha * alpha);
    if (!(curvature > 0.0) || !(slope < 0.0)) {
        return true;
    }
    const double best = -slope / (2.0 * curvature);
    if (std::abs(best - alpha) <= 1e-3 * alpha) {
        return true;
    }
    std::vector<double> candidate(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        candidate[i] = x[i] + best * direction[i];
        if (!config.bounds.contains(candidate[i])) {
            return true;
        }
    }
    if (eval.evals() >= config.max_evals) {
        return false;
    }
    const double f_candidate = eval.value(candidate);
    if (std::isfinite(f_candidate) && f_candidate < f_trial && f_candidate <= f + kArmijo * best * slope) {
        trial.swap(candidate);
        f_trial = f_candidate;
    }
    return true;
}

} // namespace

void OptimizerConfig::validate() const {
    if (memory < 1) {
        throw UsageError("optimizer memory must be positive");
    }
    if (!(ftol > 0.0) || !(gtol > 0.0) || !(fd_step > 0.0)) {
        throw UsageError("ftol, gtol and fd_step must be positive");
    }
    if (max_iters < 1 || max_evals < 1) {
        throw UsageError("iteration and evaluation budgets must be positive");
    }
    if (!(bounds.lower < bounds.upper)) {
        throw UsageError("optimizer bounds must satisfy lower < upper");
    }
}

std::string to_string(Termination t) {
    switch (t) {
    case Termination::FTOL: return "FTOL";
    case Termination::GTOL: return "GTOL";
    case Termination::MAX_ITERS: return "MAX_ITERS";
    case Termination::LINE_SEARCH: return "LINE_SEARCH";
    case Termination::NON_FINITE: return "NON_FINITE";
    }
    return "?";
}

OptimizationResult minimize(const Objective& objective, std::vector<double> x0,
                            const OptimizerConfig& config, const IterateObserver& observer) {
    config.validate();
    if (!objective.value) {
        throw UsageError("objective has no value function");
    }
    if (x0.empty()) {
        throw UsageError("cannot minimize over an empty parameter vector");
    }
    const Bounds& box = config.bounds;
    const std::size_t n = x0.size();

    OptimizationResult result;
    for (auto& xi : x0) {
        if (!box.contains(xi)) {
            result.warnings.emplace_back("x0 clamped into bounds");
            result.flagged = true;
            xi = box.clamp(xi);
        }
    }

    Evaluator eval(objective, config);
    std::vector<double> x = std::move(x0);
    std::vector<double> g(n);
    double f = eval.value_and_gradient(x, g);
    if (!std::isfinite(f)) {
        throw InputError("objective is not finite at the starting point");
    }
    if (observer) {
        observer(x, f);
    }

    auto finish = [&](Termination why) {
        result.lambda_star = x;
        result.cost_star = f;
        result.termination = why;
        result.cost_evals = eval.evals();
        if (why == Termination::NON_FINITE) {
            result.flagged = true;
        }
        return result;
    };

    if (!all_finite(g)) {
        result.warnings.emplace_back("non-finite gradient at the starting point");
        return finish(Termination::NON_FINITE);
    }
    if (projected_gradient_norm(x, g, box) <= config.gtol) {
        return finish(Termination::GTOL);
    }

    std::deque<CorrectionPair> memory;
    std::vector<double> trial(n);
    std::vector<double> g_new(n);

    while (true) {
        if (result.iterations >= config.max_iters || eval.evals() >= config.max_evals) {
            return finish(Termination::MAX_ITERS);
        }

        const auto fixed = fixed_set(x, g, box);
        auto direction = lbfgs_direction(g, fixed, memory);
        double slope = dot(g, direction);
        if (!(slope < 0.0)) {
            memory.clear();
            direction = lbfgs_direction(g, fixed, memory);
            slope = dot(g, direction);
        }

        // Backtracking along the projected path P(x + alpha d).
        bool accepted = false;
        bool clamped = false;
        double alpha = 1.0;
        double f_trial = f;
        for (int attempt = 0; attempt < 2 && !accepted; ++attempt) {
            alpha = 1.0;
            if (memory.empty()) {
                alpha = std::min(1.0, 1.0 / std::sqrt(dot(direction, direction)));
            }
            for (int k = 0; k < kMaxBacktracks; ++k, alpha *= 0.5) {
                bool moved = false;
                clamped = false;
                for (std::size_t i = 0; i < n; ++i) {
                    const double free_step = x[i] + alpha * direction[i];
                    trial[i] = box.clamp(free_step);
                    clamped = clamped || trial[i] != free_step;
                    moved = moved || trial[i] != x[i];
                }
                if (!moved) {
                    break;
                }
                double decrease = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    decrease += g[i] * (trial[i] - x[i]);
                }
                if (eval.evals() >= config.max_evals) {
                    return finish(Termination::MAX_ITERS);
                }
                f_trial = eval.value(trial);
                if (std::isfinite(f_trial) && f_trial <= f + kArmijo * decrease) {
                    accepted = true;
                    break;
                }
            }
            if (accepted || memory.empty()) {
                break;
            }
            memory.clear();
            direction = lbfgs_direction(g, fixed, memory);
        }
        if (!accepted) {
            return finish(Termination::LINE_SEARCH);
        }
        if (!clamped && !refine_step(eval, config, x, f, g, direction, alpha, trial, f_trial)) {
            return finish(Termination::MAX_ITERS);
        }

        const int gradient_cost = objective.value_and_gradient ? 1 : 2 * static_cast<int>(n);
        if (eval.evals() + gradient_cost > config.max_evals) {
            // No budget left for a gradient: keep the accepted point and stop.
            x.swap(trial);
            f = f_trial;
            ++result.iterations;
            if (observer) {
                observer(x, f);
            }
            return finish(Termination::MAX_ITERS);
        }
        f_trial = eval.value_and_gradient(trial, g_new, f_trial);
        ++result.iterations;
        if (!std::isfinite(f_trial) || !all_finite(g_new)) {
            result.warnings.emplace_back("non-finite objective or gradient mid-run");
            return finish(Termination::NON_FINITE);
        }

        CorrectionPair pair{std::vector<double>(n), std::vector<double>(n), 0.0};
        for (std::size_t i = 0; i < n; ++i) {
            pair.s[i] = trial[i] - x[i];
            pair.y[i] = g_new[i] - g[i];
        }
        const double sy = dot(pair.s, pair.y);
        if (sy > std::numeric_limits<double>::epsilon() * dot(pair.y, pair.y)) {
            pair.rho = 1.0 / sy;
            memory.push_back(std::move(pair));
            if (static_cast<int>(memory.size()) > config.memory) {
                memory.pop_front();
            }
        }

        const double f_prev = f;
        x.swap(trial);
        g.swap(g_new);
        f = f_trial;
        if (observer) {
            observer(x, f);
        }

        if (f_prev - f <= config.ftol * std::max({std::abs(f_prev), std::abs(f), 1.0})) {
            return finish(Termination::FTOL);
        }
        if (projected_gradient_norm(x, g, box) <= config.gtol) {
            return finish(Termination::GTOL);
        }
    }
}

OptimizationResult minimize(const std::function<double(std::span<const double>)>& cost,
                            std::vector<double> x0, const OptimizerConfig& config) {
    return minimize(Objective{cost, {}}, std::move(x0), config);
}

std::vector<double> seed_parameters(int n, int d, SeedMode mode,
                                    const std::optional<std::vector<double>>& previous,
                                    std::uint64_t rng_seed, Bounds bounds) {
    const std::size_t count = AnsatzParams::parameter_count(n, d);
    if (mode == SeedMode::WARM) {
        if (!previous || previous->size() != count) {
            throw UsageError("warm start needs a previous parameter vector of length " +
                             std::to_string(count));
        }
        return *previous;
    }
    if (!(bounds.lower < bounds.upper)) {
        throw UsageError("seed bounds must satisfy lower < upper");
    }
    std::mt19937_64 rng(rng_seed);
    std::uniform_real_distribution<double> uniform(bounds.lower, bounds.upper);
    std::vector<double> out(count);
    for (auto& v : out) {
        v = uniform(rng);
    }
    return out;
}

} // namespace nlsvqa
