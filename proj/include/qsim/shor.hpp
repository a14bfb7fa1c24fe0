// shor.hpp
// Shor's algorithm at simulation scale: the classical reduction from
// factoring to period finding, a simulated modular-exponentiation oracle
// (built directly at the amplitude level and counted as one oracle call),
// QFT-based period extraction, and continued-fraction post-processing.
// brute_force_order serves as the independent verification oracle.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qsim/register.hpp"
#include "qsim/rng.hpp"

namespace qsim::shor {

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exponent,
                      std::uint64_t modulus);

// Smallest r >= 1 with a^r == 1 (mod modulus), by direct iteration.
std::uint64_t brute_force_order(std::uint64_t a, std::uint64_t modulus);

bool is_prime(std::uint64_t m);

// If m == p^k for a prime p and k >= 2, returns (p, k).
std::optional<std::pair<std::uint64_t, unsigned>> prime_power_root(std::uint64_t m);

struct FactoringInstance {
    std::uint64_t modulus = 0;
    std::uint64_t base = 0;
    std::uint64_t gcd_with_modulus = 1;
};

// Joint state (1/sqrt(2^{n_x})) sum_x |x>|a^x mod M>, with the x register
// on the high n_x qubits and the function register on the low n_f qubits.
struct PeriodOracleState {
    int x_qubits = 0;
    int f_qubits = 0;
    std::uint64_t base = 0;
    std::uint64_t modulus = 0;
    QuantumRegister joint;
};

PeriodOracleState build_period_state(std::uint64_t a, std::uint64_t modulus,
                                     int x_qubits);

// Measures the function register (collapsing x support to an arithmetic
// progression of stride r), applies the factorized QFT to the x register,
// and measures it. With measure_f_first = false the function register is
// left unmeasured until the end; the y statistics are identical.
std::uint64_t extract_period_sample(PeriodOracleState& state, CounterRng& rng,
                                    bool measure_f_first = true);
std::uint64_t extract_period_sample(PeriodOracleState& state,
                                    std::uint64_t seed,
                                    bool measure_f_first = true);

struct Convergent {
    std::uint64_t numerator = 0;
    std::uint64_t denominator = 1;
};

// Continued-fraction convergents of y / q_range with denominators
// 1 <= q <= modulus, in increasing denominator order. Empty for y = 0
// (uninformative sample; the caller retries).
std::vector<Convergent> continued_fraction_candidates(std::uint64_t y,
                                                      std::uint64_t q_range,
                                                      std::uint64_t modulus);

struct ShorRunRecord {
    std::uint64_t modulus = 0;
    std::uint64_t seed = 0;
    std::vector<std::uint64_t> a_values_tried;
    std::vector<std::uint64_t> y_samples;
    std::uint64_t period = 0; // 0 while no period recovered
    std::pair<std::uint64_t, std::uint64_t> factors{0, 0};
    std::uint64_t oracle_calls = 0;
    std::uint64_t retries = 0;
    bool classical_shortcut = false;
    std::string shortcut_kind; // "even", "prime_power" or "lucky_gcd"
};

// Retries exhausted without finding a factor pair; carries the run log.
class probabilistic_failure : public std::runtime_error {
public:
    probabilistic_failure(const std::string& message, ShorRunRecord run)
        : std::runtime_error(message), record(std::move(run)) {}
    ShorRunRecord record;
};

// Full pipeline. Even moduli and prime powers are handled classically and
// flagged; primes are rejected; gcd(a, M) > 1 draws count as lucky
// classical successes. Base values are drawn uniformly from [2, M-2].
ShorRunRecord shor_factor(std::uint64_t modulus, std::uint64_t seed,
                          unsigned max_retries = 32);

} // namespace qsim::shor
