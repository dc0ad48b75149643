// Classical split-step solver for the 1D NLSE
//
//     i dPsi/dt = -1/2 d^2Psi/dx^2 - s |Psi|^2 Psi
//
// on the periodic domain [-pi, pi), plus the closed-form bright soliton
// (s = 1) used as the reference solution and the modulus RMSE metric.
#pragma once

#include <complex>
#include <span>
#include <vector>

namespace nlsvqa {

/// Periodic grid x_j = -pi + 2 pi j / M on M = 2^n points.
class Grid {
public:
    /// M must be a power of two >= 2.
    explicit Grid(int points);
    static Grid for_qubits(int n);

    int points() const { return points_; }
    double dx() const { return dx_; }
    double x(int j) const;
    const std::vector<double>& xs() const { return xs_; }

    /// Wavenumber attached to centered (fftshifted) index j: k_j = j - M/2.
    double centered_wavenumber(int j) const { return j - points_ / 2; }

    /// Wavenumber of unshifted FFT bin f, in [-M/2, M/2).
    double fft_wavenumber(int f) const { return f < points_ / 2 ? f : f - points_; }

    friend bool operator==(const Grid& a, const Grid& b) { return a.points_ == b.points_; }

private:
    int points_;
    double dx_;
    std::vector<double> xs_;
};

struct WaveField {
    std::vector<std::complex<double>> psi;
    Grid grid;
    double time = 0.0;

    WaveField(std::vector<std::complex<double>> psi, Grid grid, double time = 0.0);

    /// sum_j |psi_j|^2 dx
    double l2_norm_squared() const;
};

/// Bright soliton a sech(a(x - x0 - vt)) e^{i v (x - x0) + i (a^2 - v^2) t / 2}.
struct SolitonSpec {
    double a = 2.0;
    double v = 10.0;
    double x0 = -1.0;
    double s = 1.0;

    /// Throws DomainError unless a > 0 and all fields are finite.
    void validate() const;
};

/// Soliton value at x, periodized on [-pi, pi): among the images x + kL
/// (L = 2 pi) the one of largest modulus is returned. Valid for any s since
/// it only evaluates the closed form.
std::complex<double> periodic_soliton(const SolitonSpec& spec, double x, double t);

/// Samples of the periodized soliton at t = 0.
WaveField initial_condition(const SolitonSpec& spec, const Grid& grid);

/// Samples of the periodized soliton at time t. Requires s == 1.
WaveField analytic_solution(const SolitonSpec& spec, const Grid& grid, double t);

/// In-place exp(-i k^2 dt / 2) propagation in Fourier space on raw samples.
void kinetic_propagate(std::span<std::complex<double>> samples, double dt);

/// Psi~ = IFFT(exp(-i k^2 dt/2) FFT(Psi)).
WaveField implicit_substep(WaveField field, double dt);

/// Psi <- Psi~ (1 + i s dt |Psi~|^2).
WaveField explicit_substep(WaveField field, double dt, double s);

/// One split step; the returned time is field.time + dt.
WaveField step(WaveField field, double dt, double s);

/// One split step followed by a rescale to sum |Psi|^2 dx = target_norm.
WaveField step_normalized(WaveField field, double dt, double s, double target_norm);

/// sqrt(mean_j (|numerical_j| - |reference_j|)^2). Throws UsageError on a grid mismatch.
double rmse(const WaveField& numerical, const WaveField& reference);

} // namespace nlsvqa
