#include "qsim/qft.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qsim/errors.hpp"

namespace qsim::qft {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

std::uint64_t PhaseLadderPlan::hadamard_count() const {
    return std::count_if(steps.begin(), steps.end(), [](const PlanStep& s) {
        return s.kind == PlanStep::Kind::hadamard;
    });
}

std::uint64_t PhaseLadderPlan::controlled_phase_count() const {
    return std::count_if(steps.begin(), steps.end(), [](const PlanStep& s) {
        return s.kind == PlanStep::Kind::controlled_phase;
    });
}

std::uint64_t PhaseLadderPlan::swap_count() const {
    return std::count_if(steps.begin(), steps.end(), [](const PlanStep& s) {
        return s.kind == PlanStep::Kind::swap_pair;
    });
}

PhaseLadderPlan build_qft_plan(int num_qubits) {
    if (num_qubits < 1 || num_qubits > QuantumRegister::kMaxQubits) {
        throw resource_limit_error("qft plan size out of range");
    }
    PhaseLadderPlan plan;
    plan.num_qubits = num_qubits;
    // Working down from the top qubit keeps every control untouched until
    // its own turn as a target, so qubit t accumulates the binary fraction
    // .x_t x_{t-1} ... x_0 on its |1> component.
    for (int target = num_qubits - 1; target >= 0; --target) {
        plan.steps.push_back({PlanStep::Kind::hadamard, target, 0, 0.0});
        for (int control = target - 1; control >= 0; --control) {
            const double angle =
                std::numbers::pi / static_cast<double>(std::uint64_t{1} << (target - control));
            plan.steps.push_back(
                {PlanStep::Kind::controlled_phase, target, control, angle});
        }
    }
    // Output bit y_k lands on qubit n-1-k; swaps restore natural order.
    for (int i = 0; i < num_qubits / 2; ++i) {
        plan.steps.push_back(
            {PlanStep::Kind::swap_pair, i, num_qubits - 1 - i, 0.0});
    }
    return plan;
}

double fractional_phase(std::uint64_t x_bits, int k, int num_bits) {
    if (k < 0 || k >= num_bits) {
        throw std::out_of_range("fractional phase bit index out of range");
    }
    double fraction = 0.0;
    for (int j = 0; j <= k; ++j) {
        if ((x_bits >> j) & 1u) {
            fraction += std::ldexp(1.0, j - k - 1); // x_j / 2^{k+1-j}
        }
    }
    return kTwoPi * fraction;
}

TransformResult dft_bruteforce(std::span<const Amplitude> input) {
    const std::uint64_t n = input.size();
    if (n == 0) throw validation_error("empty transform input");
    TransformResult result;
    result.spectrum.assign(n, Amplitude{0, 0});
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::uint64_t y = 0; y < n; ++y) {
        Amplitude acc{0, 0};
        for (std::uint64_t x = 0; x < n; ++x) {
            const double angle = kTwoPi * static_cast<double>((x * y) % n) /
                                 static_cast<double>(n);
            acc += std::polar(1.0, angle) * input[x];
            ++result.ops;
        }
        result.spectrum[y] = scale * acc;
    }
    return result;
}

TransformResult fft_classical(std::span<const Amplitude> input) {
    const std::uint64_t n = input.size();
    if (n == 0 || (n & (n - 1)) != 0) {
        throw validation_error("fft length must be a power of two");
    }
    TransformResult result;
    result.spectrum.assign(input.begin(), input.end());
    auto& a = result.spectrum;

    // bit-reversal permutation
    for (std::uint64_t i = 1, j = 0; i < n; ++i) {
        std::uint64_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    for (std::uint64_t len = 2; len <= n; len <<= 1) {
        const double angle = kTwoPi / static_cast<double>(len);
        const Amplitude wlen = std::polar(1.0, angle);
        for (std::uint64_t base = 0; base < n; base += len) {
            Amplitude w{1, 0};
            for (std::uint64_t k = 0; k < len / 2; ++k) {
                const Amplitude u = a[base + k];
                const Amplitude v = a[base + k + len / 2] * w;
                a[base + k] = u + v;
                a[base + k + len / 2] = u - v;
                w *= wlen;
                ++result.ops;
            }
        }
    }

    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (auto& value : a) value *= scale;
    return result;
}

void apply_plan(QuantumRegister& reg, const PhaseLadderPlan& plan,
                int qubit_offset) {
    for (const auto& step : plan.steps) {
        switch (step.kind) {
            case PlanStep::Kind::hadamard:
                reg.apply_gate(SingleQubitGate::hadamard(),
                               qubit_offset + step.target);
                break;
            case PlanStep::Kind::controlled_phase:
                reg.apply_controlled_phase(qubit_offset + step.control,
                                           qubit_offset + step.target,
                                           step.angle);
                break;
            case PlanStep::Kind::swap_pair:
                reg.apply_swap(qubit_offset + step.target,
                               qubit_offset + step.control);
                break;
        }
    }
}

void qft_factorized(QuantumRegister& reg) {
    apply_plan(reg, build_qft_plan(reg.num_qubits()));
}

std::vector<ComplexityRow> complexity_table(int n_min, int n_max) {
    if (n_min < 1 || n_min > n_max) {
        throw validation_error("bad complexity table range");
    }
    if (n_max > 14) {
        throw resource_limit_error(
            "complexity table capped at n = 14 (naive transform is O(4^n))");
    }
    std::vector<ComplexityRow> rows;
    for (int n = n_min; n <= n_max; ++n) {
        ComplexityRow row;
        row.n = n;
        std::vector<Amplitude> basis(std::uint64_t{1} << n, Amplitude{0, 0});
        basis[0] = Amplitude{1, 0};
        row.naive_ops = dft_bruteforce(basis).ops;
        row.fft_ops = fft_classical(basis).ops;
        QuantumRegister reg(n);
        qft_factorized(reg);
        row.qft_gates = reg.counts().total();
        rows.push_back(row);
    }
    return rows;
}

std::string complexity_table_csv(const std::vector<ComplexityRow>& rows) {
    std::ostringstream out;
    out << "n,naive_ops,fft_ops,qft_gates\n";
    for (const auto& row : rows) {
        out << row.n << ',' << row.naive_ops << ',' << row.fft_ops << ','
            << row.qft_gates << '\n';
    }
    return out.str();
}

} // namespace qsim::qft
