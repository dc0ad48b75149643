#include "nlsvqa/cost.hpp"

#include "nlsvqa/error.hpp"

#include <cmath>
#include <string>

namespace nlsvqa {

namespace {

constexpr Complex kI{0.0, 1.0};

void check_trial(const CostContext& ctx, std::size_t length) {
    if (length != AnsatzParams::parameter_count(ctx.n(), ctx.d())) {
        throw UsageError("trial vector has " + std::to_string(length) + " entries, expected " +
                         std::to_string(AnsatzParams::parameter_count(ctx.n(), ctx.d())));
    }
}

void check_pair(const CostContext& ctx, const AnsatzParams& lambda_t, const AnsatzParams& trial) {
    lambda_t.validate();
    trial.validate();
    if (lambda_t.n != ctx.n() || trial.n != ctx.n()) {
        throw UsageError("parameter register width does not match the cost context");
    }
}

double real_overlap(std::span<const Complex> a, std::span<const Complex> b) {
    double sum = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        sum += a[j].real() * b[j].real() + a[j].imag() * b[j].imag();
    }
    return sum;
}

} // namespace

CostContext::CostContext(StateVector psi_tilde, double prefactor, int d)
    : psi_tilde_(std::move(psi_tilde)), prefactor_(prefactor), d_(d) {
    if (std::abs(psi_tilde_.norm() - 1.0) > 1e-10) {
        throw UsageError("psi_tilde must have unit norm");
    }
    if (d < 0) {
        throw UsageError("ansatz depth must be non-negative");
    }
    if (!std::isfinite(prefactor)) {
        throw UsageError("cost prefactor must be finite");
    }
    target_.resize(psi_tilde_.size());
    for (std::size_t j = 0; j < target_.size(); ++j) {
        const Complex z = psi_tilde_[j];
        target_[j] = -z - kI * prefactor_ * std::norm(z) * z;
    }
}

std::vector<Complex> CostContext::normalized_step() const {
    std::vector<Complex> out(psi_tilde_.size());
    double sum = 0.0;
    for (std::size_t j = 0; j < out.size(); ++j) {
        const Complex z = psi_tilde_[j];
        out[j] = z * (1.0 + kI * prefactor_ * std::norm(z));
        sum += std::norm(out[j]);
    }
    const double scale = 1.0 / std::sqrt(sum);
    for (auto& z : out) {
        z *= scale;
    }
    return out;
}

double cost_direct(const CostContext& ctx, std::span<const double> trial) {
    check_trial(ctx, trial.size());
    const StateVector psi = ansatz_state(ctx.n(), ctx.d(), trial);
    return real_overlap(psi.amplitudes(), ctx.target());
}

double cost_direct(const CostContext& ctx, const AnsatzParams& trial) {
    trial.validate();
    return cost_direct(ctx, std::span<const double>(trial.lambda));
}

double cost_and_gradient(const CostContext& ctx, std::span<const double> trial,
                         std::span<double> gradient) {
    check_trial(ctx, trial.size());
    if (gradient.size() != trial.size()) {
        throw UsageError("gradient buffer length mismatch");
    }
    const int n = ctx.n();
    const CircuitSpec circuit = build_ansatz(n, ctx.d(), trial);
    StateVector forward = apply_circuit(zero_state(n), circuit);
    std::vector<Complex> phi(forward.amplitudes().begin(), forward.amplitudes().end());
    std::vector<Complex> mu(ctx.target().begin(), ctx.target().end());
    const double value = real_overlap(phi, mu);

    // Walk the circuit backwards. At parametric gate k, phi is the state
    // right after gate k and mu = (gates after k)^dagger b, so
    // dC/dtheta_k = Re <(-i sigma / 2) phi | mu> = -Im <sigma phi | mu> / 2.
    std::size_t param = trial.size();
    const auto& gates = circuit.gates();
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
        const Gate& g = *it;
        if (g.kind() == GateKind::RX || g.kind() == GateKind::RZ) {
            const std::uint64_t tbit = std::uint64_t{1} << g.qubits()[0];
            Complex overlap{};
            if (g.kind() == GateKind::RX) {
                for (std::uint64_t j = 0; j < phi.size(); ++j) {
                    overlap += std::conj(phi[j ^ tbit]) * mu[j];
                }
            } else {
                for (std::uint64_t j = 0; j < phi.size(); ++j) {
                    const Complex term = std::conj(phi[j]) * mu[j];
                    overlap += (j & tbit) ? -term : term;
                }
            }
            gradient[--param] = -0.5 * overlap.imag();
        }
        const Gate inverse = g.adjoint();
        apply_gate(phi, n, inverse);
        apply_gate(mu, n, inverse);
    }
    return value;
}

double cost_minimizer_consistency(const CostContext& ctx, std::span<const double> lambda_star) {
    check_trial(ctx, lambda_star.size());
    const StateVector psi = ansatz_state(ctx.n(), ctx.d(), lambda_star);
    const auto target = ctx.normalized_step();
    return std::norm(inner_product(psi.amplitudes(), target));
}

CircuitSpec build_hadamard_test(const AnsatzParams& lambda_t, const AnsatzParams& trial, double dt) {
    const int n = lambda_t.n;
    const int width = n + 1;
    CircuitSpec c(width);
    c.append(Gate::h(0));
    c.append(build_tilde_u(lambda_t, dt).embedded(1, width).controlled(0));
    c.append(build_ansatz(trial).adjoint().embedded(1, width).controlled(0));
    c.append(Gate::h(0));
    return c;
}

CircuitSpec build_qnpu(const AnsatzParams& lambda_t, const AnsatzParams& trial, double dt) {
    const int n = lambda_t.n;
    const int width = 3 * n + 1;
    if (width > kMaxQubits) {
        throw ConfigurationError("QNPU needs " + std::to_string(width) + " qubits, limit is " +
                                 std::to_string(kMaxQubits));
    }
    const int reg_a = 1;
    const int reg_b = 1 + n;
    const int reg_c = 1 + 2 * n;
    const CircuitSpec tilde_u = build_tilde_u(lambda_t, dt);

    CircuitSpec c(width);
    c.append(Gate::h(0));
    c.append(Gate::sdg(0));
    c.append(tilde_u.embedded(reg_a, width));
    c.append(tilde_u.embedded(reg_b, width).controlled(0));
    c.append(build_ansatz_conjugate(trial).embedded(reg_c, width).controlled(0));
    for (int q = 0; q < n; ++q) {
        c.append(Gate::toffoli(0, reg_a + q, reg_b + q));
    }
    for (int q = 0; q < n; ++q) {
        c.append(Gate::toffoli(0, reg_a + q, reg_c + q));
    }
    c.append(Gate::h(0));
    return c;
}

double linear_term_hadamard(const CostContext& ctx, const AnsatzParams& lambda_t,
                            const AnsatzParams& trial, double dt) {
    check_pair(ctx, lambda_t, trial);
    const CircuitSpec circuit = build_hadamard_test(lambda_t, trial, dt);
    return ancilla_z_expectation(apply_circuit(zero_state(circuit.qubit_count()), circuit), 0);
}

double nonlinear_term_qnpu(const CostContext& ctx, const AnsatzParams& lambda_t,
                           const AnsatzParams& trial, double dt) {
    check_pair(ctx, lambda_t, trial);
    const CircuitSpec circuit = build_qnpu(lambda_t, trial, dt);
    return ancilla_z_expectation(apply_circuit(zero_state(circuit.qubit_count()), circuit), 0);
}

double assemble_cost_from_circuits(const CostContext& ctx, const AnsatzParams& lambda_t,
                                   const AnsatzParams& trial, double dt) {
    const double linear = linear_term_hadamard(ctx, lambda_t, trial, dt);
    if (ctx.prefactor() == 0.0) {
        return -linear;
    }
    return ctx.prefactor() * nonlinear_term_qnpu(ctx, lambda_t, trial, dt) - linear;
}

} // namespace nlsvqa
