// register.hpp
// Dense state-vector engine: n-qubit registers, single-qubit and
// controlled-phase gates applied via tensor-product index arithmetic,
// measurement sampling, and gate/oracle counters.
//
// Bit convention: basis index i encodes the bit string x_{n-1}...x_1 x_0
// with x_0 the least significant bit of i.

#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "qsim/rng.hpp"

namespace qsim {

using Amplitude = std::complex<double>;

struct GateCounts {
    std::uint64_t single_qubit = 0;
    std::uint64_t controlled_phase = 0;
    std::uint64_t swaps = 0;
    std::uint64_t oracle = 0;

    std::uint64_t total() const {
        return single_qubit + controlled_phase + swaps + oracle;
    }
    GateCounts& operator+=(const GateCounts& other) {
        single_qubit += other.single_qubit;
        controlled_phase += other.controlled_phase;
        swaps += other.swaps;
        oracle += other.oracle;
        return *this;
    }
};

struct MeasurementOutcome {
    std::uint64_t basis_index = 0;
    double probability = 0.0;
};

// 2x2 unitary. Unitarity is checked at construction (within 1e-12
// elementwise), so a constructed gate is always safe to apply.
class SingleQubitGate {
public:
    SingleQubitGate(Amplitude a00, Amplitude a01, Amplitude a10, Amplitude a11);

    Amplitude at(int row, int col) const { return m_[row * 2 + col]; }

    static const SingleQubitGate& hadamard();
    static const SingleQubitGate& identity();
    static const SingleQubitGate& pauli_x();
    static SingleQubitGate phase(double angle); // diag(1, e^{i angle})

private:
    std::array<Amplitude, 4> m_;
};

class QuantumRegister {
public:
    // Desk-scale guard: 2^24 amplitudes (~256 MB as complex doubles).
    static constexpr int kMaxQubits = 24;

    // |0...0> on num_qubits qubits.
    explicit QuantumRegister(int num_qubits);

    // Adopts an amplitude vector of length 2^n, normalized within 1e-10.
    static QuantumRegister from_amplitudes(std::vector<Amplitude> amps);

    int num_qubits() const { return num_qubits_; }
    std::uint64_t dim() const { return amps_.size(); }
    Amplitude amplitude(std::uint64_t index) const { return amps_[index]; }
    std::span<const Amplitude> amplitudes() const { return amps_; }
    double norm_squared() const;
    const GateCounts& counts() const { return counts_; }
    void add_counts(const GateCounts& other) { counts_ += other; }

    void apply_gate(const SingleQubitGate& gate, int target);
    void apply_controlled_phase(int control, int target, double angle);
    void apply_swap(int a, int b);

    // Sign flip of one basis amplitude, counted as an oracle query.
    void oracle_phase_flip(std::uint64_t index);

    // 2|index><index| - I: negates every amplitude except the given one.
    // Not a counted gate kind; used by the register-backed search path.
    void reflect_about_basis_state(std::uint64_t index);

    // Samples a basis index from |amp|^2 by inverse CDF over cumulative
    // sums; ties on a floating boundary resolve to the lower index. Does
    // not collapse the state. Rejects norm drift beyond 1e-6.
    MeasurementOutcome measure_all(CounterRng& rng) const;
    MeasurementOutcome measure_all(std::uint64_t seed) const;

    // Measures the lowest `count` qubits, collapses and renormalizes the
    // register, and returns the observed low-bit value.
    std::uint64_t measure_low_qubits(int count, CounterRng& rng);

private:
    int num_qubits_;
    std::vector<Amplitude> amps_;
    GateCounts counts_;

    void check_qubit(int q, const char* what) const;
};

// Applies one Hadamard per qubit to the all-zero register, producing the
// uniform superposition 2^{-n/2} over all 2^n basis states. The counter
// records exactly n single-qubit gates.
void uniform_superposition(QuantumRegister& reg);

} // namespace qsim
