#include "qsim/shor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qsim/errors.hpp"
#include "qsim/qft.hpp"

namespace qsim::shor {

namespace {

int ceil_log2(std::uint64_t value) {
    int bits = 0;
    while ((std::uint64_t{1} << bits) < value) ++bits;
    return bits;
}

// Smallest divisor d of q with a^d == 1 (mod m). Any q with a^q == 1 is a
// multiple of the order, so the minimum is the order itself.
std::uint64_t minimal_order_divisor(std::uint64_t a, std::uint64_t q,
                                    std::uint64_t m) {
    for (std::uint64_t d = 1; d <= q; ++d) {
        if (q % d == 0 && mod_pow(a, d, m) == 1) return d;
    }
    return q;
}

} // namespace

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exponent,
                      std::uint64_t modulus) {
    if (modulus == 0) throw validation_error("zero modulus");
    std::uint64_t result = 1 % modulus;
    base %= modulus;
    while (exponent > 0) {
        if (exponent & 1u) result = result * base % modulus;
        base = base * base % modulus;
        exponent >>= 1;
    }
    return result;
}

std::uint64_t brute_force_order(std::uint64_t a, std::uint64_t modulus) {
    if (modulus < 2) throw validation_error("modulus must be at least 2");
    if (std::gcd(a, modulus) != 1) {
        throw validation_error("order undefined: gcd(a, M) > 1");
    }
    std::uint64_t value = a % modulus;
    std::uint64_t r = 1;
    while (value != 1) {
        value = value * (a % modulus) % modulus;
        ++r;
    }
    return r;
}

bool is_prime(std::uint64_t m) {
    if (m < 2) return false;
    for (std::uint64_t d = 2; d * d <= m; ++d) {
        if (m % d == 0) return false;
    }
    return true;
}

std::optional<std::pair<std::uint64_t, unsigned>> prime_power_root(std::uint64_t m) {
    for (std::uint64_t p = 2; p * p <= m; ++p) {
        if (m % p != 0 || !is_prime(p)) continue;
        std::uint64_t v = m;
        unsigned k = 0;
        while (v % p == 0) {
            v /= p;
            ++k;
        }
        if (v == 1 && k >= 2) return std::make_pair(p, k);
        return std::nullopt; // first prime factor does not exhaust m
    }
    return std::nullopt;
}

PeriodOracleState build_period_state(std::uint64_t a, std::uint64_t modulus,
                                     int x_qubits) {
    if (modulus < 2) throw validation_error("modulus must be at least 2");
    if (std::gcd(a, modulus) != 1) {
        throw validation_error("period state requires gcd(a, M) = 1");
    }
    const int f_qubits = ceil_log2(modulus);
    if (x_qubits < 1 ||
        x_qubits + f_qubits > QuantumRegister::kMaxQubits) {
        throw resource_limit_error("period state exceeds the register budget");
    }
    const std::uint64_t x_count = std::uint64_t{1} << x_qubits;
    std::vector<Amplitude> amps(std::uint64_t{1} << (x_qubits + f_qubits),
                                Amplitude{0, 0});
    const double amp = 1.0 / std::sqrt(static_cast<double>(x_count));
    std::uint64_t f = 1 % modulus;
    for (std::uint64_t x = 0; x < x_count; ++x) {
        amps[(x << f_qubits) | f] = Amplitude{amp, 0};
        f = f * a % modulus;
    }
    PeriodOracleState state{x_qubits, f_qubits, a, modulus,
                            QuantumRegister::from_amplitudes(std::move(amps))};
    // The whole arithmetic map counts as a single oracle invocation.
    state.joint.add_counts(GateCounts{0, 0, 0, 1});
    return state;
}

std::uint64_t extract_period_sample(PeriodOracleState& state, CounterRng& rng,
                                    bool measure_f_first) {
    const auto plan = qft::build_qft_plan(state.x_qubits);
    if (measure_f_first) {
        const std::uint64_t f =
            state.joint.measure_low_qubits(state.f_qubits, rng);
        // Pull the surviving x amplitudes into a standalone register.
        const std::uint64_t x_count = std::uint64_t{1} << state.x_qubits;
        std::vector<Amplitude> xamps(x_count);
        for (std::uint64_t x = 0; x < x_count; ++x) {
            xamps[x] = state.joint.amplitude((x << state.f_qubits) | f);
        }
        QuantumRegister xreg = QuantumRegister::from_amplitudes(std::move(xamps));
        qft::apply_plan(xreg, plan);
        const auto outcome = xreg.measure_all(rng);
        state.joint.add_counts(xreg.counts());
        return outcome.basis_index;
    }
    qft::apply_plan(state.joint, plan, state.f_qubits);
    const auto outcome = state.joint.measure_all(rng);
    return outcome.basis_index >> state.f_qubits;
}

std::uint64_t extract_period_sample(PeriodOracleState& state,
                                    std::uint64_t seed, bool measure_f_first) {
    CounterRng rng(seed);
    return extract_period_sample(state, rng, measure_f_first);
}

std::vector<Convergent> continued_fraction_candidates(std::uint64_t y,
                                                      std::uint64_t q_range,
                                                      std::uint64_t modulus) {
    if (q_range == 0 || y >= q_range) {
        throw validation_error("continued fraction requires 0 <= y < q_range");
    }
    std::vector<Convergent> candidates;
    if (y == 0) return candidates;

    std::uint64_t num = y, den = q_range;
    std::uint64_t h_prev = 1, h_prev2 = 0; // numerators
    std::uint64_t k_prev = 0, k_prev2 = 1; // denominators
    while (den != 0) {
        const std::uint64_t term = num / den;
        const std::uint64_t rem = num % den;
        const std::uint64_t h = term * h_prev + h_prev2;
        const std::uint64_t k = term * k_prev + k_prev2;
        h_prev2 = h_prev;
        h_prev = h;
        k_prev2 = k_prev;
        k_prev = k;
        num = den;
        den = rem;
        if (k >= 1 && k <= modulus) {
            // successive convergents can repeat q=1; keep the later one
            if (!candidates.empty() && candidates.back().denominator == k) {
                candidates.back() = {h, k};
            } else {
                candidates.push_back({h, k});
            }
        } else if (k > modulus) {
            break;
        }
    }
    return candidates;
}

ShorRunRecord shor_factor(std::uint64_t modulus, std::uint64_t seed,
                          unsigned max_retries) {
    if (modulus < 4) throw validation_error("modulus must be at least 4");
    if (modulus > 64) {
        throw resource_limit_error(
            "factoring capped at M = 64 by the 24-qubit budget");
    }
    ShorRunRecord record;
    record.modulus = modulus;
    record.seed = seed;

    if (modulus % 2 == 0) {
        record.classical_shortcut = true;
        record.shortcut_kind = "even";
        record.factors = {2, modulus / 2};
        return record;
    }
    if (is_prime(modulus)) {
        throw validation_error("modulus is prime; nothing to factor");
    }
    if (auto power = prime_power_root(modulus)) {
        record.classical_shortcut = true;
        record.shortcut_kind = "prime_power";
        record.factors = {power->first, modulus / power->first};
        return record;
    }

    const int x_qubits = 2 * ceil_log2(modulus);
    const std::uint64_t q_range = std::uint64_t{1} << x_qubits;
    CounterRng rng(seed);

    for (unsigned attempt = 0; attempt < max_retries; ++attempt) {
        record.retries = attempt;
        const std::uint64_t a = 2 + rng.next_below(modulus - 3);
        record.a_values_tried.push_back(a);

        const std::uint64_t g = std::gcd(a, modulus);
        if (g > 1) {
            record.classical_shortcut = true;
            record.shortcut_kind = "lucky_gcd";
            record.factors = {std::min(g, modulus / g), std::max(g, modulus / g)};
            return record;
        }

        PeriodOracleState state = build_period_state(a, modulus, x_qubits);
        record.oracle_calls += 1;
        const std::uint64_t y = extract_period_sample(state, rng);
        record.y_samples.push_back(y);

        std::uint64_t r = 0;
        for (const auto& candidate :
             continued_fraction_candidates(y, q_range, modulus)) {
            if (mod_pow(a, candidate.denominator, modulus) == 1) {
                r = minimal_order_divisor(a, candidate.denominator, modulus);
                break;
            }
        }
        if (r == 0) continue;
        record.period = r;

        if (r % 2 != 0) continue;
        const std::uint64_t half = mod_pow(a, r / 2, modulus);
        if (half == modulus - 1) continue; // a^{r/2} == -1: uninformative
        for (const std::uint64_t candidate :
             {std::gcd(half - 1, modulus), std::gcd(half + 1, modulus)}) {
            if (candidate > 1 && candidate < modulus) {
                record.factors = {std::min(candidate, modulus / candidate),
                                  std::max(candidate, modulus / candidate)};
                return record;
            }
        }
    }

    record.retries = max_retries;
    throw probabilistic_failure(
        "no factor found for M = " + std::to_string(modulus) + " within " +
            std::to_string(max_retries) + " retries",
        record);
}

} // namespace qsim::shor
