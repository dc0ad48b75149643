#include "nlsvqa/circuits.hpp"

#include "nlsvqa/error.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace nlsvqa {

namespace {

void check_shape(int n, int d, std::size_t length) {
    if (n < 1 || n > kMaxQubits) {
        throw UsageError("ansatz qubit count " + std::to_string(n) + " out of range");
    }
    if (d < 0) {
        throw UsageError("ansatz depth must be non-negative");
    }
    if (length != AnsatzParams::parameter_count(n, d)) {
        throw UsageError("ansatz with n=" + std::to_string(n) + ", d=" + std::to_string(d) +
                         " needs " + std::to_string(AnsatzParams::parameter_count(n, d)) +
                         " parameters, got " + std::to_string(length));
    }
}

CircuitSpec ansatz_with_sign(int n, int d, std::span<const double> lambda, double sign) {
    check_shape(n, d, lambda.size());
    CircuitSpec c(n);
    c.reserve(lambda.size() + static_cast<std::size_t>(d) * n);
    std::size_t next = 0;
    auto rotation_layer = [&] {
        for (int q = 0; q < n; ++q) {
            c.append(Gate::rx(q, sign * lambda[next++]));
        }
        for (int q = 0; q < n; ++q) {
            c.append(Gate::rz(q, sign * lambda[next++]));
        }
    };
    rotation_layer();
    for (int layer = 0; layer < d; ++layer) {
        if (n > 1) {
            for (int q = 0; q + 1 < n; ++q) {
                c.append(Gate::cnot(q, q + 1));
            }
            // Ring closure: bottom wire back onto the top wire. A 2-qubit ring
            // therefore has CNOT(0,1) followed by CNOT(1,0).
            c.append(Gate::cnot(n - 1, 0));
        }
        rotation_layer();
    }
    return c;
}

} // namespace

AnsatzParams::AnsatzParams(int n_, int d_, std::vector<double> lambda_, Bounds bounds_)
    : n(n_), d(d_), lambda(std::move(lambda_)), bounds(bounds_) {
    validate();
}

AnsatzParams AnsatzParams::zeros(int n, int d, Bounds bounds) {
    return AnsatzParams(n, d, std::vector<double>(parameter_count(n, d), 0.0), bounds);
}

void AnsatzParams::validate() const {
    check_shape(n, d, lambda.size());
    if (!(bounds.lower < bounds.upper)) {
        throw UsageError("ansatz bounds must satisfy lower < upper");
    }
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        if (!bounds.contains(lambda[i])) {
            throw UsageError("lambda[" + std::to_string(i) + "] = " + std::to_string(lambda[i]) +
                             " outside bounds");
        }
    }
}

CircuitSpec build_ansatz(int n, int d, std::span<const double> lambda) {
    return ansatz_with_sign(n, d, lambda, 1.0);
}

CircuitSpec build_ansatz(const AnsatzParams& params) {
    params.validate();
    return build_ansatz(params.n, params.d, params.lambda);
}

CircuitSpec build_ansatz_conjugate(int n, int d, std::span<const double> lambda) {
    return ansatz_with_sign(n, d, lambda, -1.0);
}

CircuitSpec build_ansatz_conjugate(const AnsatzParams& params) {
    params.validate();
    return build_ansatz_conjugate(params.n, params.d, params.lambda);
}

StateVector ansatz_state(int n, int d, std::span<const double> lambda) {
    return apply_circuit(zero_state(n), build_ansatz(n, d, lambda));
}

CircuitSpec build_qft(int n) {
    CircuitSpec c(n);
    for (int target = n - 1; target >= 0; --target) {
        c.append(Gate::h(target));
        for (int control = target - 1; control >= 0; --control) {
            c.append(Gate::cphase(control, target, std::numbers::pi / std::ldexp(1.0, target - control)));
        }
    }
    for (int q = 0; q < n / 2; ++q) {
        c.append(Gate::swap(q, n - 1 - q));
    }
    return c;
}

CircuitSpec build_kinetic_phase(const KineticPhaseSpec& spec) {
    if (!std::isfinite(spec.gamma)) {
        throw UsageError("kinetic phase gamma must be finite");
    }
    const int n = spec.n;
    CircuitSpec c(n);
    c.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) {
                c.append(Gate::phase(i, spec.gamma * (std::ldexp(1.0, 2 * i) - std::ldexp(1.0, n + i))));
            } else {
                c.append(Gate::cphase(i, j, spec.gamma * std::ldexp(1.0, i + j)));
            }
        }
    }
    return c;
}

CircuitSpec build_tilde_u(int n, int d, std::span<const double> lambda, double dt) {
    if (!(dt >= 0.0) || !std::isfinite(dt)) {
        throw UsageError("time step must be finite and non-negative");
    }
    const CircuitSpec qft = build_qft(n);
    CircuitSpec c = build_ansatz(n, d, lambda);
    c.append(qft);
    c.append(Gate::x(n - 1));
    c.append(build_kinetic_phase(KineticPhaseSpec::from_timestep(n, dt)));
    c.append(Gate::x(n - 1));
    c.append(qft.adjoint());
    return c;
}

CircuitSpec build_tilde_u(const AnsatzParams& params, double dt) {
    params.validate();
    return build_tilde_u(params.n, params.d, params.lambda, dt);
}

} // namespace nlsvqa
