// Test-only reference computations, deliberately independent of the
// library's kernels: dense Kronecker-product gate matrices, an O(M^2) DFT,
// and a DFT-based implicit substep.
#pragma once

#include "nlsvqa/statevector.hpp"

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

using C = std::complex<double>;

struct Dense {
    std::size_t dim = 0;
    std::vector<C> m;  // row-major

    C& at(std::size_t r, std::size_t c) { return m[r * dim + c]; }
    C at(std::size_t r, std::size_t c) const { return m[r * dim + c]; }
};

Dense identity(std::size_t dim);
Dense multiply(const Dense& a, const Dense& b);
Dense kron(const Dense& a, const Dense& b);
std::vector<C> apply(const Dense& u, const std::vector<C>& v);

/// Full 2^q x 2^q matrix of a gate, built from Kronecker products of
/// single-qubit operators (qubit 0 is the rightmost factor).
Dense gate_matrix(const nlsvqa::Gate& gate, int q);

/// Product of gate matrices in circuit order.
Dense circuit_matrix(const nlsvqa::CircuitSpec& circuit);

/// X_k = sum_j x_j exp(sign 2 pi i jk/M), unscaled.
std::vector<C> dft(const std::vector<C>& x, int sign);

/// IDFT(exp(-i k^2 dt/2) DFT(x)) with k_j = j - M/2 after the shift.
std::vector<C> implicit_step(const std::vector<C>& x, double dt);

/// Uniform angles in [-pi, pi).
std::vector<double> random_angles(std::size_t count, std::mt19937_64& rng);

/// Haar-ish random unit vector (normalized complex Gaussian).
std::vector<C> random_unit_vector(std::size_t dim, std::mt19937_64& rng);

double max_abs_diff(const std::vector<C>& a, const std::vector<C>& b);

/// Largest |a_i - e^{i phi} b_i| after aligning phases on the largest |a_i|.
double max_diff_up_to_phase(const std::vector<C>& a, const std::vector<C>& b);

} // namespace oracle
