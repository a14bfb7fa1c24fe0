// qft.hpp
// Discrete Fourier transform three ways, all using the same forward
// convention out_y = (1/sqrt(N)) sum_x e^{+2 pi i x y / N} in_x:
//
//   dft_bruteforce  - direct O(N^2) matrix application
//   fft_classical   - radix-2 butterflies, O(N log2 N)
//   qft_factorized  - Hadamard + controlled-phase ladder on a register,
//                     O((log2 N)^2) gates, bit-reversal undone by a final
//                     swap network so outputs are in natural index order
//
// Operation counters: complex multiply-adds for the classical transforms,
// gate applications for the quantum circuit (different units, reported
// side by side).

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qsim/register.hpp"

namespace qsim::qft {

struct PlanStep {
    enum class Kind { hadamard, controlled_phase, swap_pair };
    Kind kind;
    int target = 0;
    int control = 0;  // controlled_phase: control qubit; swap_pair: partner
    double angle = 0.0;
};

// Gate sequence realizing the QFT on n qubits: exactly n Hadamards,
// n(n-1)/2 controlled phases with angles pi/2^k (k in [1, n-1]), and
// floor(n/2) final swaps.
struct PhaseLadderPlan {
    int num_qubits = 0;
    std::vector<PlanStep> steps;

    std::uint64_t hadamard_count() const;
    std::uint64_t controlled_phase_count() const;
    std::uint64_t swap_count() const;
    std::uint64_t gate_count() const { return steps.size(); }
};

PhaseLadderPlan build_qft_plan(int num_qubits);

// 2 pi times the binary fraction .x_k x_{k-1} ... x_0 of the given bits.
double fractional_phase(std::uint64_t x_bits, int k, int num_bits);

struct TransformResult {
    std::vector<Amplitude> spectrum;
    std::uint64_t ops = 0;
};

TransformResult dft_bruteforce(std::span<const Amplitude> input);

// Requires power-of-two length; ops counts radix-2 butterflies,
// (N/2) log2 N in total.
TransformResult fft_classical(std::span<const Amplitude> input);

// Executes a plan against a register; qubit_offset shifts every qubit
// index, so a plan for k qubits can act on bits [offset, offset + k).
void apply_plan(QuantumRegister& reg, const PhaseLadderPlan& plan,
                int qubit_offset = 0);

void qft_factorized(QuantumRegister& reg);

struct ComplexityRow {
    int n = 0;
    std::uint64_t naive_ops = 0;
    std::uint64_t fft_ops = 0;
    std::uint64_t qft_gates = 0;
};

// Measured counters (each transform actually executed) for n in
// [n_min, n_max]. The naive transform keeps this desk-scale: n_max <= 14.
std::vector<ComplexityRow> complexity_table(int n_min, int n_max);

std::string complexity_table_csv(const std::vector<ComplexityRow>& rows);

} // namespace qsim::qft
