#include "nlsvqa/verify.hpp"

#include "nlsvqa/circuits.hpp"
#include "nlsvqa/classical.hpp"
#include "nlsvqa/cost.hpp"
#include "nlsvqa/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nlsvqa {

namespace {

// Column j of the circuit unitary is circuit|j>.
std::vector<std::vector<Complex>> dense_columns(const CircuitSpec& circuit) {
    const std::size_t dim = std::size_t{1} << circuit.qubit_count();
    std::vector<std::vector<Complex>> cols;
    cols.reserve(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        std::vector<Complex> basis(dim);
        basis[j] = 1.0;
        auto s = apply_circuit(StateVector::from_amplitudes(std::move(basis)), circuit);
        cols.emplace_back(s.amplitudes().begin(), s.amplitudes().end());
    }
    return cols;
}

} // namespace

std::vector<Complex> align_global_phase(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.size() != b.size()) {
        throw UsageError("phase alignment of vectors with different lengths");
    }
    std::size_t pivot = 0;
    for (std::size_t i = 1; i < a.size(); ++i) {
        if (std::abs(a[i]) > std::abs(a[pivot])) {
            pivot = i;
        }
    }
    Complex rotation{1.0, 0.0};
    if (std::abs(b[pivot]) > 0.0 && std::abs(a[pivot]) > 0.0) {
        rotation = (a[pivot] / std::abs(a[pivot])) / (b[pivot] / std::abs(b[pivot]));
    }
    std::vector<Complex> out(b.begin(), b.end());
    for (auto& z : out) {
        z *= rotation;
    }
    return out;
}

double qft_dft_deviation(int n) {
    const auto cols = dense_columns(build_qft(n));
    const std::size_t dim = cols.size();
    const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
    double worst = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t k = 0; k < dim; ++k) {
            const double angle = 2.0 * std::numbers::pi * static_cast<double>((j * k) % dim) / dim;
            worst = std::max(worst, std::abs(cols[j][k] - std::polar(scale, angle)));
        }
    }
    return worst;
}

double kinetic_phase_deviation(int n, double gamma) {
    const auto cols = dense_columns(build_kinetic_phase({n, gamma}));
    const std::size_t dim = cols.size();
    std::vector<Complex> diag(dim);
    std::vector<Complex> expected(dim);
    double worst = 0.0;
    for (std::size_t m = 0; m < dim; ++m) {
        for (std::size_t k = 0; k < dim; ++k) {
            if (k != m) {
                worst = std::max(worst, std::abs(cols[m][k]));
            }
        }
        diag[m] = cols[m][m];
        const double shifted = static_cast<double>(m) - static_cast<double>(dim / 2);
        expected[m] = std::polar(1.0, gamma * shifted * shifted);
    }
    const auto aligned = align_global_phase(expected, diag);
    for (std::size_t m = 0; m < dim; ++m) {
        worst = std::max(worst, std::abs(aligned[m] - expected[m]));
    }
    return worst;
}

double tilde_u_fft_deviation(int n, int d, std::span<const double> lambda, double dt) {
    const auto circuit_state = apply_circuit(zero_state(n), build_tilde_u(n, d, lambda, dt));
    const auto ansatz = ansatz_state(n, d, lambda);
    std::vector<Complex> classical(ansatz.amplitudes().begin(), ansatz.amplitudes().end());
    kinetic_propagate(classical, dt);
    const auto aligned = align_global_phase(classical, circuit_state.amplitudes());
    double worst = 0.0;
    for (std::size_t i = 0; i < classical.size(); ++i) {
        worst = std::max(worst, std::abs(aligned[i] - classical[i]));
    }
    return worst;
}

double cost_circuit_deviation(int n, int d, std::span<const double> lambda_t,
                              std::span<const double> trial, double dt, double prefactor) {
    const AnsatzParams pt(n, d, {lambda_t.begin(), lambda_t.end()});
    const AnsatzParams pp(n, d, {trial.begin(), trial.end()});
    const CostContext ctx(apply_circuit(zero_state(n), build_tilde_u(pt, dt)), prefactor, d);
    return std::abs(assemble_cost_from_circuits(ctx, pt, pp, dt) - cost_direct(ctx, pp));
}

} // namespace nlsvqa
