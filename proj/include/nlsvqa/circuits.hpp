// Circuit builders: the hardware-efficient ansatz, its conjugate, the QFT,
// the kinetic phase unitary and the composite implicit-substep circuit.
#pragma once

#include "nlsvqa/bounds.hpp"
#include "nlsvqa/statevector.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace nlsvqa {

/// Rotation angles of the ansatz: 2n(d+1) radians, consumed as an RX layer
/// then an RZ layer for the initial block and for each of the d entangling
/// blocks, with the angle index increasing with the qubit index.
struct AnsatzParams {
    int n = 0;
    int d = 0;
    std::vector<double> lambda;
    Bounds bounds;

    AnsatzParams() = default;
    AnsatzParams(int n, int d, std::vector<double> lambda, Bounds bounds = {});

    static std::size_t parameter_count(int n, int d) {
        return 2 * static_cast<std::size_t>(n) * static_cast<std::size_t>(d + 1);
    }

    /// All-zero angles; the identity preparation.
    static AnsatzParams zeros(int n, int d, Bounds bounds = {});

    /// Throws UsageError on a length mismatch or an out-of-bounds component.
    void validate() const;
};

/// Parameters of the diagonal kinetic phase: gamma = -dt/2.
struct KineticPhaseSpec {
    int n = 0;
    double gamma = 0.0;

    static KineticPhaseSpec from_timestep(int n, double dt) { return {n, -0.5 * dt}; }
};

/// U(lambda). Only the length of `lambda` is checked, which lets finite
/// difference probes step slightly past the box.
CircuitSpec build_ansatz(int n, int d, std::span<const double> lambda);
CircuitSpec build_ansatz(const AnsatzParams& params);

/// U*(lambda): the ansatz with every rotation angle negated.
CircuitSpec build_ansatz_conjugate(int n, int d, std::span<const double> lambda);
CircuitSpec build_ansatz_conjugate(const AnsatzParams& params);

/// U(lambda)|0...0>.
StateVector ansatz_state(int n, int d, std::span<const double> lambda);

/// Unitary DFT with kernel e^{+2 pi i jk / 2^n}, including the final qubit reversal.
CircuitSpec build_qft(int n);

/// Product of n PHASE and n(n-1) CPHASE gates; multiplies |m> by
/// exp(i gamma ((m - 2^{n-1})^2 - 2^{2n-2})).
CircuitSpec build_kinetic_phase(const KineticPhaseSpec& spec);

/// QFT^dagger X_{n-1} U_ph X_{n-1} QFT U(lambda), applied right to left.
CircuitSpec build_tilde_u(const AnsatzParams& params, double dt);
CircuitSpec build_tilde_u(int n, int d, std::span<const double> lambda, double dt);

} // namespace nlsvqa
