// Cost function of one variational time step,
//
//   C(lambda') = p Im{ sum_j conj(psi'_j) |psi~_j|^2 psi~_j } - Re{ <psi'|psi~> },
//
// with p = s dt 2a/dx, evaluated three ways: directly on statevectors, and
// term by term on a Hadamard-test circuit and on the QNPU circuit.
#pragma once

#include "nlsvqa/circuits.hpp"
#include "nlsvqa/statevector.hpp"

#include <span>
#include <vector>

namespace nlsvqa {

/// Everything fixed during one time step's optimization.
class CostContext {
public:
    /// `psi_tilde` must be unit-norm; `d` is the ansatz depth used for trials.
    CostContext(StateVector psi_tilde, double prefactor, int d);

    /// prefactor = s dt 2a / dx.
    static double prefactor_for(double s, double dt, double a, double dx) {
        return s * dt * 2.0 * a / dx;
    }

    const StateVector& psi_tilde() const { return psi_tilde_; }
    double prefactor() const { return prefactor_; }
    int n() const { return psi_tilde_.qubit_count(); }
    int d() const { return d_; }

    /// C(lambda') = Re <psi'|b> with b = -psi~ - i p |psi~|^2 psi~.
    std::span<const Complex> target() const { return target_; }

    /// F psi~ / |F psi~|, with F = diag(1 + i p |psi~_j|^2): the exact minimizer over unit vectors.
    std::vector<Complex> normalized_step() const;

private:
    StateVector psi_tilde_;
    double prefactor_;
    int d_;
    std::vector<Complex> target_;
};

/// Direct statevector evaluation of the cost. Only the length of `trial` is checked.
double cost_direct(const CostContext& ctx, std::span<const double> trial);
double cost_direct(const CostContext& ctx, const AnsatzParams& trial);

/// Cost and its exact gradient by adjoint differentiation through the ansatz.
double cost_and_gradient(const CostContext& ctx, std::span<const double> trial,
                         std::span<double> gradient);

/// |<psi(lambda*)| F psi~ / |F psi~|>|^2, in [0, 1].
double cost_minimizer_consistency(const CostContext& ctx, std::span<const double> lambda_star);

/// Ancilla <Z> of H; controlled-(U(trial)^dagger U~(lambda_t)); H on n+1 qubits.
/// Equals Re <psi(trial)|psi~(lambda_t)>.
double linear_term_hadamard(const CostContext& ctx, const AnsatzParams& lambda_t,
                            const AnsatzParams& trial, double dt);

/// Ancilla <Z> of the 3n+1 qubit QNPU circuit. Equals
/// Im{ sum_j conj(psi(trial)_j) |psi~_j|^2 psi~_j } with psi~ = U~(lambda_t)|0>.
/// Throws ConfigurationError when 3n+1 exceeds kMaxQubits.
double nonlinear_term_qnpu(const CostContext& ctx, const AnsatzParams& lambda_t,
                           const AnsatzParams& trial, double dt);

/// prefactor * nonlinear_term_qnpu - linear_term_hadamard.
double assemble_cost_from_circuits(const CostContext& ctx, const AnsatzParams& lambda_t,
                                   const AnsatzParams& trial, double dt);

/// The QNPU circuit itself (ancilla on qubit 0, registers A, B, C after it).
CircuitSpec build_qnpu(const AnsatzParams& lambda_t, const AnsatzParams& trial, double dt);

/// The Hadamard-test circuit for the linear term (ancilla on qubit 0).
CircuitSpec build_hadamard_test(const AnsatzParams& lambda_t, const AnsatzParams& trial, double dt);

} // namespace nlsvqa
