#include "nlsvqa/classical.hpp"

#include "nlsvqa/error.hpp"
#include "nlsvqa/fft.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

namespace nlsvqa {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPeriod = 2.0 * kPi;

std::complex<double> soliton(const SolitonSpec& p, double x, double t) {
    const double envelope = p.a / std::cosh(p.a * (x - p.x0 - p.v * t));
    const double phase = p.v * (x - p.x0) + 0.5 * (p.a * p.a - p.v * p.v) * t;
    return std::polar(envelope, phase);
}

WaveField sample(const SolitonSpec& spec, const Grid& grid, double t) {
    std::vector<std::complex<double>> psi(grid.points());
    for (int j = 0; j < grid.points(); ++j) {
        psi[j] = periodic_soliton(spec, grid.x(j), t);
    }
    return WaveField(std::move(psi), grid, t);
}

} // namespace

Grid::Grid(int points) : points_(points) {
    if (points < 2 || !std::has_single_bit(static_cast<unsigned>(points))) {
        throw UsageError("grid point count must be a power of two >= 2, got " +
                         std::to_string(points));
    }
    dx_ = kPeriod / points;
    xs_.resize(points);
    for (int j = 0; j < points; ++j) {
        xs_[j] = x(j);
    }
}

Grid Grid::for_qubits(int n) {
    if (n < 1 || n > 30) {
        throw UsageError("grid qubit count out of range");
    }
    return Grid(1 << n);
}

double Grid::x(int j) const { return -kPi + kPeriod * j / points_; }

WaveField::WaveField(std::vector<std::complex<double>> psi_, Grid grid_, double time_)
    : psi(std::move(psi_)), grid(std::move(grid_)), time(time_) {
    if (static_cast<int>(psi.size()) != grid.points()) {
        throw UsageError("wave field length " + std::to_string(psi.size()) +
                         " does not match grid of " + std::to_string(grid.points()));
    }
}

double WaveField::l2_norm_squared() const {
    double sum = 0.0;
    for (const auto& z : psi) {
        sum += std::norm(z);
    }
    return sum * grid.dx();
}

void SolitonSpec::validate() const {
    if (!std::isfinite(a) || !std::isfinite(v) || !std::isfinite(x0) || !std::isfinite(s)) {
        throw DomainError("soliton parameters must be finite");
    }
    if (!(a > 0.0)) {
        throw DomainError("soliton amplitude a must be positive");
    }
}

std::complex<double> periodic_soliton(const SolitonSpec& spec, double x, double t) {
    spec.validate();
    const int window = static_cast<int>(std::ceil((std::abs(spec.x0) + std::abs(spec.v * t)) / kPeriod)) + 1;
    std::complex<double> best = soliton(spec, x, t);
    double best_modulus = std::abs(best);
    for (int k = -window; k <= window; ++k) {
        if (k == 0) {
            continue;
        }
        const auto value = soliton(spec, x + k * kPeriod, t);
        const double modulus = std::abs(value);
        if (modulus > best_modulus) {
            best = value;
            best_modulus = modulus;
        }
    }
    return best;
}

WaveField initial_condition(const SolitonSpec& spec, const Grid& grid) {
    return sample(spec, grid, 0.0);
}

WaveField analytic_solution(const SolitonSpec& spec, const Grid& grid, double t) {
    if (spec.s != 1.0) {
        throw DomainError("analytic oracle defined for s=1 only");
    }
    return sample(spec, grid, t);
}

void kinetic_propagate(std::span<std::complex<double>> samples, double dt) {
    const int m = static_cast<int>(samples.size());
    fft_inplace(samples, false);
    for (int f = 0; f < m; ++f) {
        const double k = f < m / 2 ? f : f - m;
        samples[f] *= std::polar(1.0, -0.5 * k * k * dt);
    }
    fft_inplace(samples, true);
}

WaveField implicit_substep(WaveField field, double dt) {
    if (!(dt >= 0.0)) {
        throw UsageError("time step must be non-negative");
    }
    kinetic_propagate(field.psi, dt);
    return field;
}

WaveField explicit_substep(WaveField field, double dt, double s) {
    const std::complex<double> coupling{0.0, s * dt};
    for (auto& z : field.psi) {
        z *= 1.0 + coupling * std::norm(z);
    }
    return field;
}

WaveField step(WaveField field, double dt, double s) {
    const double t = field.time + dt;
    field = explicit_substep(implicit_substep(std::move(field), dt), dt, s);
    field.time = t;
    return field;
}

WaveField step_normalized(WaveField field, double dt, double s, double target_norm) {
    field = step(std::move(field), dt, s);
    const double scale = std::sqrt(target_norm / field.l2_norm_squared());
    for (auto& z : field.psi) {
        z *= scale;
    }
    return field;
}

double rmse(const WaveField& numerical, const WaveField& reference) {
    if (!(numerical.grid == reference.grid)) {
        throw UsageError("rmse requires fields on the same grid");
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < numerical.psi.size(); ++j) {
        const double diff = std::abs(numerical.psi[j]) - std::abs(reference.psi[j]);
        sum += diff * diff;
    }
    return std::sqrt(sum / static_cast<double>(numerical.psi.size()));
}

} // namespace nlsvqa
