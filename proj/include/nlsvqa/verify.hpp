// Cross-checks between the circuit constructions and their classical
// counterparts. Each returns the largest elementwise deviation found.
#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace nlsvqa {

/// Dense unitary of build_qft(n) against e^{2 pi i jk/M}/sqrt(M).
double qft_dft_deviation(int n);

/// Diagonal of build_kinetic_phase against exp(i gamma (m - M/2)^2) modulo
/// one global phase; off-diagonal leakage is included in the maximum.
double kinetic_phase_deviation(int n, double gamma);

/// U~(lambda)|0> against the FFT pipeline applied to U(lambda)|0>, after
/// aligning the global phase on the largest-modulus amplitude.
double tilde_u_fft_deviation(int n, int d, std::span<const double> lambda, double dt);

/// |assemble_cost_from_circuits - cost_direct| for one instance, where the
/// cost context's psi~ is U~(lambda_t)|0>.
double cost_circuit_deviation(int n, int d, std::span<const double> lambda_t,
                              std::span<const double> trial, double dt, double prefactor);

/// Rotates `b` by the global phase that best aligns it with `a` at the
/// largest-modulus entry of `a`.
std::vector<std::complex<double>> align_global_phase(std::span<const std::complex<double>> a,
                                                     std::span<const std::complex<double>> b);

} // namespace nlsvqa
