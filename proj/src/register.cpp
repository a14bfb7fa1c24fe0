#include "qsim/register.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qsim/errors.hpp"

namespace qsim {

namespace {

constexpr double kUnitaryTol = 1e-12;
constexpr double kNormTol = 1e-10;
constexpr double kMeasureNormTol = 1e-6;

bool finite(Amplitude a) {
    return std::isfinite(a.real()) && std::isfinite(a.imag());
}

} // namespace

SingleQubitGate::SingleQubitGate(Amplitude a00, Amplitude a01, Amplitude a10,
                                 Amplitude a11)
    : m_{a00, a01, a10, a11} {
    for (const auto& a : m_) {
        if (!finite(a)) throw validation_error("gate entries must be finite");
    }
    // G * G^dagger == I elementwise
    const Amplitude g[2][2] = {{a00, a01}, {a10, a11}};
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            Amplitude e = g[r][0] * std::conj(g[c][0]) + g[r][1] * std::conj(g[c][1]);
            if (r == c) e -= 1.0;
            if (std::abs(e) > kUnitaryTol) {
                throw validation_error("gate is not unitary within 1e-12");
            }
        }
    }
}

const SingleQubitGate& SingleQubitGate::hadamard() {
    static const double s = 1.0 / std::sqrt(2.0);
    static const SingleQubitGate g{{s, 0}, {s, 0}, {s, 0}, {-s, 0}};
    return g;
}

const SingleQubitGate& SingleQubitGate::identity() {
    static const SingleQubitGate g{{1, 0}, {0, 0}, {0, 0}, {1, 0}};
    return g;
}

const SingleQubitGate& SingleQubitGate::pauli_x() {
    static const SingleQubitGate g{{0, 0}, {1, 0}, {1, 0}, {0, 0}};
    return g;
}

SingleQubitGate SingleQubitGate::phase(double angle) {
    return SingleQubitGate{{1, 0}, {0, 0}, {0, 0}, std::polar(1.0, angle)};
}

QuantumRegister::QuantumRegister(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw resource_limit_error("qubit count must be in [1, " +
                                   std::to_string(kMaxQubits) + "], got " +
                                   std::to_string(num_qubits));
    }
    amps_.assign(std::uint64_t{1} << num_qubits, Amplitude{0, 0});
    amps_[0] = Amplitude{1, 0};
}

QuantumRegister QuantumRegister::from_amplitudes(std::vector<Amplitude> amps) {
    const auto size = amps.size();
    if (size == 0 || (size & (size - 1)) != 0) {
        throw validation_error("amplitude vector length must be a power of two");
    }
    int n = 0;
    while ((std::uint64_t{1} << n) < size) ++n;
    QuantumRegister reg(n);
    reg.amps_ = std::move(amps);
    const double norm = reg.norm_squared();
    if (std::abs(norm - 1.0) > kNormTol) {
        throw validation_error("amplitude vector is not normalized");
    }
    return reg;
}

double QuantumRegister::norm_squared() const {
    double total = 0.0;
    for (const auto& a : amps_) total += std::norm(a);
    return total;
}

void QuantumRegister::check_qubit(int q, const char* what) const {
    if (q < 0 || q >= num_qubits_) {
        throw std::out_of_range(std::string(what) + " qubit index " +
                                std::to_string(q) + " out of range [0, " +
                                std::to_string(num_qubits_) + ")");
    }
}

void QuantumRegister::apply_gate(const SingleQubitGate& gate, int target) {
    check_qubit(target, "target");
    const std::uint64_t bit = std::uint64_t{1} << target;
    const Amplitude g00 = gate.at(0, 0), g01 = gate.at(0, 1);
    const Amplitude g10 = gate.at(1, 0), g11 = gate.at(1, 1);
    const std::uint64_t n = amps_.size();
    for (std::uint64_t base = 0; base < n; base += bit << 1) {
        for (std::uint64_t i = base; i < base + bit; ++i) {
            const Amplitude a0 = amps_[i];
            const Amplitude a1 = amps_[i | bit];
            amps_[i] = g00 * a0 + g01 * a1;
            amps_[i | bit] = g10 * a0 + g11 * a1;
        }
    }
    ++counts_.single_qubit;
}

void QuantumRegister::apply_controlled_phase(int control, int target,
                                             double angle) {
    check_qubit(control, "control");
    check_qubit(target, "target");
    if (control == target) {
        throw validation_error("controlled phase requires control != target");
    }
    if (!std::isfinite(angle)) {
        throw validation_error("controlled phase angle must be finite");
    }
    const std::uint64_t mask =
        (std::uint64_t{1} << control) | (std::uint64_t{1} << target);
    const Amplitude factor = std::polar(1.0, angle);
    const std::uint64_t n = amps_.size();
    for (std::uint64_t i = 0; i < n; ++i) {
        if ((i & mask) == mask) amps_[i] *= factor;
    }
    ++counts_.controlled_phase;
}

void QuantumRegister::apply_swap(int a, int b) {
    check_qubit(a, "swap");
    check_qubit(b, "swap");
    if (a == b) throw validation_error("swap requires distinct qubits");
    const std::uint64_t bit_a = std::uint64_t{1} << a;
    const std::uint64_t bit_b = std::uint64_t{1} << b;
    const std::uint64_t n = amps_.size();
    for (std::uint64_t i = 0; i < n; ++i) {
        // visit each (01, 10) pair once
        if ((i & bit_a) && !(i & bit_b)) {
            std::swap(amps_[i], amps_[(i & ~bit_a) | bit_b]);
        }
    }
    ++counts_.swaps;
}

void QuantumRegister::oracle_phase_flip(std::uint64_t index) {
    if (index >= amps_.size()) {
        throw std::out_of_range("basis index out of range");
    }
    amps_[index] = -amps_[index];
    ++counts_.oracle;
}

void QuantumRegister::reflect_about_basis_state(std::uint64_t index) {
    if (index >= amps_.size()) {
        throw std::out_of_range("basis index out of range");
    }
    for (auto& a : amps_) a = -a;
    amps_[index] = -amps_[index];
}

MeasurementOutcome QuantumRegister::measure_all(CounterRng& rng) const {
    const double norm = norm_squared();
    if (std::abs(norm - 1.0) > kMeasureNormTol) {
        throw state_corruption_error("register norm drifted by " +
                                     std::to_string(std::abs(norm - 1.0)));
    }
    const double u = rng.next_double();
    double cumulative = 0.0;
    std::uint64_t last_support = 0;
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
        const double p = std::norm(amps_[i]);
        if (p > 0.0) last_support = i;
        cumulative += p;
        if (u <= cumulative && p > 0.0) {
            return {i, p};
        }
    }
    // u fell past the accumulated total (norm slightly below 1).
    return {last_support, std::norm(amps_[last_support])};
}

MeasurementOutcome QuantumRegister::measure_all(std::uint64_t seed) const {
    CounterRng rng(seed);
    return measure_all(rng);
}

std::uint64_t QuantumRegister::measure_low_qubits(int count, CounterRng& rng) {
    if (count < 1 || count > num_qubits_) {
        throw std::out_of_range("low-qubit count out of range");
    }
    const std::uint64_t values = std::uint64_t{1} << count;
    const std::uint64_t mask = values - 1;
    std::vector<double> marginal(values, 0.0);
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
        marginal[i & mask] += std::norm(amps_[i]);
    }
    const double u = rng.next_double();
    double cumulative = 0.0;
    std::uint64_t outcome = 0;
    bool found = false;
    std::uint64_t last_support = 0;
    for (std::uint64_t v = 0; v < values; ++v) {
        if (marginal[v] > 0.0) last_support = v;
        cumulative += marginal[v];
        if (u <= cumulative && marginal[v] > 0.0) {
            outcome = v;
            found = true;
            break;
        }
    }
    if (!found) outcome = last_support;

    const double scale = 1.0 / std::sqrt(marginal[outcome]);
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
        if ((i & mask) == outcome) {
            amps_[i] *= scale;
        } else {
            amps_[i] = Amplitude{0, 0};
        }
    }
    return outcome;
}

void uniform_superposition(QuantumRegister& reg) {
    if (std::abs(reg.amplitude(0) - Amplitude{1, 0}) > 1e-12) {
        throw validation_error("uniform superposition expects the all-zero register");
    }
    for (std::uint64_t i = 1; i < reg.dim(); ++i) {
        if (std::abs(reg.amplitude(i)) > 1e-12) {
            throw validation_error("uniform superposition expects the all-zero register");
        }
    }
    for (int q = 0; q < reg.num_qubits(); ++q) {
        reg.apply_gate(SingleQubitGate::hadamard(), q);
    }
}

} // namespace qsim
