// Dense statevector simulation of small quantum registers.
//
// Bit order: qubit 0 is the least significant bit of a basis index, so the
// basis state |b_{q-1} ... b_1 b_0> lives at index sum_i b_i 2^i.
//
// Gate conventions:
//   RX(t)    = exp(-i t X / 2)
//   RZ(t)    = exp(-i t Z / 2)
//   PHASE(t) = diag(1, e^{i t})
//   S        = diag(1, i),  SDG = diag(1, -i)
// CNOT, CPHASE and TOFFOLI list their controls before the target.
#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace nlsvqa {

using Complex = std::complex<double>;

/// Largest register the simulator accepts (2^24 amplitudes, 256 MiB).
inline constexpr int kMaxQubits = 24;

enum class GateKind : std::uint8_t {
    RX,
    RZ,
    H,
    X,
    S,
    SDG,
    PHASE,
    CNOT,
    CPHASE,
    TOFFOLI,
    SWAP,
};

std::string to_string(GateKind kind);

/// Number of wires a gate kind acts on, not counting added controls.
int arity(GateKind kind);

/// True for kinds that carry a rotation angle.
bool is_parametric(GateKind kind);

/// One gate application. Extra controls added by `controlled()` live in
/// `control_mask` and are not part of `qubits()`.
class Gate {
public:
    Gate(GateKind kind, std::span<const int> qubits, double angle = 0.0);

    static Gate rx(int q, double theta) { return Gate(GateKind::RX, wires(q), theta); }
    static Gate rz(int q, double theta) { return Gate(GateKind::RZ, wires(q), theta); }
    static Gate h(int q) { return Gate(GateKind::H, wires(q)); }
    static Gate x(int q) { return Gate(GateKind::X, wires(q)); }
    static Gate s(int q) { return Gate(GateKind::S, wires(q)); }
    static Gate sdg(int q) { return Gate(GateKind::SDG, wires(q)); }
    static Gate phase(int q, double theta) { return Gate(GateKind::PHASE, wires(q), theta); }
    static Gate cnot(int control, int target) {
        return Gate(GateKind::CNOT, wires(control, target));
    }
    static Gate cphase(int control, int target, double theta) {
        return Gate(GateKind::CPHASE, wires(control, target), theta);
    }
    static Gate toffoli(int c0, int c1, int target) {
        return Gate(GateKind::TOFFOLI, wires(c0, c1, target));
    }
    static Gate swap(int a, int b) { return Gate(GateKind::SWAP, wires(a, b)); }

    GateKind kind() const { return kind_; }
    double angle() const { return angle_; }
    std::span<const int> qubits() const { return {wires_.data(), static_cast<std::size_t>(arity_)}; }
    std::uint64_t control_mask() const { return control_mask_; }

    /// Highest qubit index touched, including added controls.
    int max_qubit() const;

    /// The inverse gate: negated angle, S <-> SDG, self-inverse kinds unchanged.
    Gate adjoint() const;

    /// The same gate conditioned on one more control qubit.
    Gate controlled(int control) const;

    /// The same gate with every index (wires and added controls) moved up by `offset`.
    Gate shifted(int offset) const;

    friend bool operator==(const Gate&, const Gate&) = default;

private:
    template <typename... Q>
    static std::array<int, sizeof...(Q)> wires(Q... q) { return {q...}; }

    GateKind kind_;
    std::uint8_t arity_ = 0;
    std::array<int, 3> wires_{};
    double angle_ = 0.0;
    std::uint64_t control_mask_ = 0;
};

/// Ordered gate list acting on a fixed-width register.
class CircuitSpec {
public:
    explicit CircuitSpec(int qubit_count);

    int qubit_count() const { return qubit_count_; }
    const std::vector<Gate>& gates() const { return gates_; }
    std::size_t size() const { return gates_.size(); }
    bool empty() const { return gates_.empty(); }

    /// Appends a gate; throws UsageError if it addresses a qubit outside the register.
    CircuitSpec& append(const Gate& gate);

    /// Appends every gate of `other`, which must be no wider than this circuit.
    CircuitSpec& append(const CircuitSpec& other);

    void reserve(std::size_t n) { gates_.reserve(n); }

    /// Reversed gate order with every gate inverted.
    CircuitSpec adjoint() const;

    /// Every gate conditioned on `control`, which must lie inside the register.
    CircuitSpec controlled(int control) const;

    /// Re-homes the circuit onto qubits [offset, offset + qubit_count) of a wider register.
    CircuitSpec embedded(int offset, int total_qubits) const;

    friend bool operator==(const CircuitSpec&, const CircuitSpec&) = default;

private:
    int qubit_count_;
    std::vector<Gate> gates_;
};

class StateVector {
public:
    /// Wraps explicit amplitudes. The length must be a power of two and the
    /// L2 norm must be one within `norm_tolerance`.
    static StateVector from_amplitudes(std::vector<Complex> amplitudes,
                                       double norm_tolerance = 1e-10);

    /// Same as from_amplitudes but rescales to unit norm first.
    static StateVector normalized(std::vector<Complex> amplitudes);

    int qubit_count() const { return qubit_count_; }
    std::size_t size() const { return amplitudes_.size(); }
    std::span<const Complex> amplitudes() const { return amplitudes_; }
    const Complex& operator[](std::size_t i) const { return amplitudes_[i]; }

    double norm() const;

    /// Applies a gate in place; throws UsageError on out-of-range qubits.
    void apply(const Gate& gate);

    /// Applies gates in list order; throws UsageError on a width mismatch.
    void apply(const CircuitSpec& circuit);

private:
    friend StateVector zero_state(int);
    StateVector(int qubit_count, std::vector<Complex> amplitudes)
        : qubit_count_(qubit_count), amplitudes_(std::move(amplitudes)) {}

    int qubit_count_;
    std::vector<Complex> amplitudes_;
};

/// |0...0> on `q` qubits; 1 <= q <= kMaxQubits or ConfigurationError.
StateVector zero_state(int q);

/// Applies a single gate to raw amplitudes of a `qubit_count`-qubit register.
void apply_gate(std::span<Complex> amplitudes, int qubit_count, const Gate& gate);

StateVector apply_gate(StateVector state, const Gate& gate);
StateVector apply_circuit(StateVector state, const CircuitSpec& circuit);

/// <a|b>, conjugate-linear in `a`.
Complex inner_product(const StateVector& a, const StateVector& b);
Complex inner_product(std::span<const Complex> a, std::span<const Complex> b);

/// Sum_j (+1 if bit `ancilla` of j is 0 else -1) |amp_j|^2.
double ancilla_z_expectation(const StateVector& state, int ancilla);

} // namespace nlsvqa
