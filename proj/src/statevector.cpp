#include "nlsvqa/statevector.hpp"

#include "nlsvqa/error.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace nlsvqa {

namespace {

constexpr Complex kI{0.0, 1.0};

std::uint64_t bit(int q) { return std::uint64_t{1} << q; }

// Inserts a zero at bit position `q` of `k`.
std::uint64_t insert_zero(std::uint64_t k, int q) {
    const std::uint64_t low = k & (bit(q) - 1);
    return ((k >> q) << (q + 1)) | low;
}

struct Matrix2 {
    Complex m00, m01, m10, m11;
};

template <typename Op>
void for_each_pair(std::span<Complex> amps, int target, std::uint64_t controls, Op&& op) {
    const std::uint64_t half = amps.size() >> 1;
    const std::uint64_t tbit = bit(target);
    if (controls == 0) {
        for (std::uint64_t k = 0; k < half; ++k) {
            const std::uint64_t i0 = insert_zero(k, target);
            op(amps[i0], amps[i0 | tbit]);
        }
        return;
    }
    for (std::uint64_t k = 0; k < half; ++k) {
        const std::uint64_t i0 = insert_zero(k, target);
        if ((i0 & controls) == controls) {
            op(amps[i0], amps[i0 | tbit]);
        }
    }
}

void apply_matrix(std::span<Complex> amps, int target, std::uint64_t controls, const Matrix2& u) {
    for_each_pair(amps, target, controls, [&u](Complex& a0, Complex& a1) {
        const Complex b0 = u.m00 * a0 + u.m01 * a1;
        const Complex b1 = u.m10 * a0 + u.m11 * a1;
        a0 = b0;
        a1 = b1;
    });
}

void apply_diagonal(std::span<Complex> amps, int target, std::uint64_t controls, Complex d0,
                    Complex d1) {
    if (d0 == Complex{1.0, 0.0}) {
        for_each_pair(amps, target, controls, [d1](Complex&, Complex& a1) { a1 *= d1; });
        return;
    }
    for_each_pair(amps, target, controls, [d0, d1](Complex& a0, Complex& a1) {
        a0 *= d0;
        a1 *= d1;
    });
}

void apply_swap(std::span<Complex> amps, int a, int b, std::uint64_t controls) {
    const std::uint64_t abit = bit(a);
    const std::uint64_t bbit = bit(b);
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if ((i & abit) == 0 && (i & bbit) != 0 && (i & controls) == controls) {
            std::swap(amps[i], amps[i ^ abit ^ bbit]);
        }
    }
}

double norm_of(std::span<const Complex> amps) {
    double sum = 0.0;
    for (const auto& a : amps) {
        sum += std::norm(a);
    }
    return std::sqrt(sum);
}

int qubits_for_length(std::size_t length) {
    if (length < 2 || !std::has_single_bit(length)) {
        throw UsageError("amplitude count must be a power of two >= 2, got " +
                         std::to_string(length));
    }
    const int q = std::countr_zero(length);
    if (q > kMaxQubits) {
        throw ConfigurationError("register of " + std::to_string(q) + " qubits exceeds limit " +
                                 std::to_string(kMaxQubits));
    }
    return q;
}

} // namespace

std::string to_string(GateKind kind) {
    switch (kind) {
    case GateKind::RX: return "RX";
    case GateKind::RZ: return "RZ";
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::S: return "S";
    case GateKind::SDG: return "SDG";
    case GateKind::PHASE: return "PHASE";
    case GateKind::CNOT: return "CNOT";
    case GateKind::CPHASE: return "CPHASE";
    case GateKind::TOFFOLI: return "TOFFOLI";
    case GateKind::SWAP: return "SWAP";
    }
    return "?";
}

int arity(GateKind kind) {
    switch (kind) {
    case GateKind::CNOT:
    case GateKind::CPHASE:
    case GateKind::SWAP: return 2;
    case GateKind::TOFFOLI: return 3;
    default: return 1;
    }
}

bool is_parametric(GateKind kind) {
    return kind == GateKind::RX || kind == GateKind::RZ || kind == GateKind::PHASE ||
           kind == GateKind::CPHASE;
}

Gate::Gate(GateKind kind, std::span<const int> qubits, double angle)
    : kind_(kind), angle_(is_parametric(kind) ? angle : 0.0) {
    if (static_cast<int>(qubits.size()) != arity(kind)) {
        throw UsageError(to_string(kind) + " expects " + std::to_string(arity(kind)) +
                         " qubits, got " + std::to_string(qubits.size()));
    }
    std::uint64_t seen = 0;
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        const int q = qubits[i];
        if (q < 0 || q >= 64) {
            throw UsageError("qubit index " + std::to_string(q) + " out of range");
        }
        if (seen & bit(q)) {
            throw UsageError(to_string(kind) + " qubit indices must be distinct");
        }
        seen |= bit(q);
        wires_[i] = q;
    }
    arity_ = static_cast<std::uint8_t>(qubits.size());
    if (!std::isfinite(angle_)) {
        throw UsageError("gate angle must be finite");
    }
}

int Gate::max_qubit() const {
    int m = *std::max_element(wires_.begin(), wires_.begin() + arity_);
    if (control_mask_ != 0) {
        m = std::max(m, 63 - std::countl_zero(control_mask_));
    }
    return m;
}

Gate Gate::adjoint() const {
    Gate g = *this;
    if (kind_ == GateKind::S) {
        g.kind_ = GateKind::SDG;
    } else if (kind_ == GateKind::SDG) {
        g.kind_ = GateKind::S;
    } else if (is_parametric(kind_)) {
        g.angle_ = -angle_;
    }
    return g;
}

Gate Gate::controlled(int control) const {
    if (control < 0 || control >= 64) {
        throw UsageError("control index " + std::to_string(control) + " out of range");
    }
    for (int w : qubits()) {
        if (w == control) {
            throw UsageError("control qubit coincides with a gate wire");
        }
    }
    if (control_mask_ & bit(control)) {
        throw UsageError("qubit is already a control of this gate");
    }
    Gate g = *this;
    g.control_mask_ |= bit(control);
    return g;
}

Gate Gate::shifted(int offset) const {
    Gate g = *this;
    for (int i = 0; i < arity_; ++i) {
        g.wires_[i] += offset;
        if (g.wires_[i] < 0 || g.wires_[i] >= 64) {
            throw UsageError("shifted qubit index out of range");
        }
    }
    if (offset >= 0) {
        g.control_mask_ = control_mask_ << offset;
    } else {
        g.control_mask_ = control_mask_ >> -offset;
    }
    return g;
}

CircuitSpec::CircuitSpec(int qubit_count) : qubit_count_(qubit_count) {
    if (qubit_count < 1 || qubit_count > kMaxQubits) {
        throw ConfigurationError("circuit width " + std::to_string(qubit_count) +
                                 " outside [1, " + std::to_string(kMaxQubits) + "]");
    }
}

CircuitSpec& CircuitSpec::append(const Gate& gate) {
    if (gate.max_qubit() >= qubit_count_) {
        throw UsageError(to_string(gate.kind()) + " addresses qubit " +
                         std::to_string(gate.max_qubit()) + " of a " +
                         std::to_string(qubit_count_) + "-qubit circuit");
    }
    gates_.push_back(gate);
    return *this;
}

CircuitSpec& CircuitSpec::append(const CircuitSpec& other) {
    if (other.qubit_count_ > qubit_count_) {
        throw UsageError("cannot append a wider circuit");
    }
    gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
    return *this;
}

CircuitSpec CircuitSpec::adjoint() const {
    CircuitSpec out(qubit_count_);
    out.gates_.reserve(gates_.size());
    for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
        out.gates_.push_back(it->adjoint());
    }
    return out;
}

CircuitSpec CircuitSpec::controlled(int control) const {
    if (control < 0 || control >= qubit_count_) {
        throw UsageError("control qubit outside the register");
    }
    CircuitSpec out(qubit_count_);
    out.gates_.reserve(gates_.size());
    for (const auto& g : gates_) {
        out.gates_.push_back(g.controlled(control));
    }
    return out;
}

CircuitSpec CircuitSpec::embedded(int offset, int total_qubits) const {
    if (offset < 0 || offset + qubit_count_ > total_qubits) {
        throw UsageError("embedding does not fit in the target register");
    }
    CircuitSpec out(total_qubits);
    out.gates_.reserve(gates_.size());
    for (const auto& g : gates_) {
        out.gates_.push_back(g.shifted(offset));
    }
    return out;
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes, double norm_tolerance) {
    const int q = qubits_for_length(amplitudes.size());
    const double n = norm_of(amplitudes);
    if (std::abs(n - 1.0) > norm_tolerance) {
        throw UsageError("amplitudes are not unit-normalized (norm " + std::to_string(n) + ")");
    }
    return StateVector(q, std::move(amplitudes));
}

StateVector StateVector::normalized(std::vector<Complex> amplitudes) {
    const int q = qubits_for_length(amplitudes.size());
    const double n = norm_of(amplitudes);
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw UsageError("cannot normalize a zero or non-finite vector");
    }
    for (auto& a : amplitudes) {
        a /= n;
    }
    return StateVector(q, std::move(amplitudes));
}

double StateVector::norm() const { return norm_of(amplitudes_); }

void StateVector::apply(const Gate& gate) { apply_gate(amplitudes_, qubit_count_, gate); }

void StateVector::apply(const CircuitSpec& circuit) {
    if (circuit.qubit_count() != qubit_count_) {
        throw UsageError("circuit width " + std::to_string(circuit.qubit_count()) +
                         " does not match state width " + std::to_string(qubit_count_));
    }
    for (const auto& g : circuit.gates()) {
        apply_gate(amplitudes_, qubit_count_, g);
    }
}

StateVector zero_state(int q) {
    if (q < 1 || q > kMaxQubits) {
        throw ConfigurationError("qubit count " + std::to_string(q) + " outside [1, " +
                                 std::to_string(kMaxQubits) + "]");
    }
    std::vector<Complex> amps(std::size_t{1} << q);
    amps[0] = 1.0;
    return StateVector(q, std::move(amps));
}

void apply_gate(std::span<Complex> amps, int qubit_count, const Gate& gate) {
    if (gate.max_qubit() >= qubit_count) {
        throw UsageError(to_string(gate.kind()) + " addresses qubit " +
                         std::to_string(gate.max_qubit()) + " of a " +
                         std::to_string(qubit_count) + "-qubit state");
    }
    const auto wires = gate.qubits();
    std::uint64_t controls = gate.control_mask();

    if (gate.kind() == GateKind::SWAP) {
        apply_swap(amps, wires[0], wires[1], controls);
        return;
    }
    const int target = wires.back();
    for (std::size_t i = 0; i + 1 < wires.size(); ++i) {
        controls |= bit(wires[i]);
    }

    const double theta = gate.angle();
    switch (gate.kind()) {
    case GateKind::RX: {
        const double c = std::cos(0.5 * theta);
        const double s = std::sin(0.5 * theta);
        apply_matrix(amps, target, controls, {c, -kI * s, -kI * s, c});
        break;
    }
    case GateKind::RZ:
        apply_diagonal(amps, target, controls, std::polar(1.0, -0.5 * theta),
                       std::polar(1.0, 0.5 * theta));
        break;
    case GateKind::H: {
        const double r = 1.0 / std::sqrt(2.0);
        apply_matrix(amps, target, controls, {r, r, r, -r});
        break;
    }
    case GateKind::X:
    case GateKind::CNOT:
    case GateKind::TOFFOLI:
        for_each_pair(amps, target, controls, [](Complex& a0, Complex& a1) { std::swap(a0, a1); });
        break;
    case GateKind::S: apply_diagonal(amps, target, controls, 1.0, kI); break;
    case GateKind::SDG: apply_diagonal(amps, target, controls, 1.0, -kI); break;
    case GateKind::PHASE:
    case GateKind::CPHASE:
        apply_diagonal(amps, target, controls, 1.0, std::polar(1.0, theta));
        break;
    case GateKind::SWAP: break;
    }
}

StateVector apply_gate(StateVector state, const Gate& gate) {
    state.apply(gate);
    return state;
}

StateVector apply_circuit(StateVector state, const CircuitSpec& circuit) {
    state.apply(circuit);
    return state;
}

Complex inner_product(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.size() != b.size()) {
        throw UsageError("inner product of vectors with different lengths");
    }
    Complex sum{};
    for (std::size_t i = 0; i < a.size(); ++i) {
        sum += std::conj(a[i]) * b[i];
    }
    return sum;
}

Complex inner_product(const StateVector& a, const StateVector& b) {
    if (a.qubit_count() != b.qubit_count()) {
        throw UsageError("inner product of states with different qubit counts");
    }
    return inner_product(a.amplitudes(), b.amplitudes());
}

double ancilla_z_expectation(const StateVector& state, int ancilla) {
    if (ancilla < 0 || ancilla >= state.qubit_count()) {
        throw UsageError("ancilla index " + std::to_string(ancilla) + " out of range");
    }
    const std::uint64_t abit = bit(ancilla);
    double z = 0.0;
    const auto amps = state.amplitudes();
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        const double p = std::norm(amps[i]);
        z += (i & abit) ? -p : p;
    }
    return z;
}

} // namespace nlsvqa
