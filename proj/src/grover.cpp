#include "qsim/grover.hpp"

#include <cmath>
#include <numbers>

#include "qsim/errors.hpp"
#include "qsim/register.hpp"

namespace qsim::grover {

SearchState uniform_state(std::size_t n, std::size_t target) {
    if (n < 2) throw validation_error("search needs at least 2 items");
    if (target >= n) throw std::out_of_range("target index out of range");
    SearchState state;
    state.amplitudes.assign(n, 1.0 / std::sqrt(static_cast<double>(n)));
    state.target = target;
    return state;
}

void oracle_reflect(SearchState& state) {
    state.amplitudes[state.target] = -state.amplitudes[state.target];
    ++state.oracle_calls;
}

void diffusion_reflect(SearchState& state) {
    double mean = 0.0;
    for (const double a : state.amplitudes) mean += a;
    mean /= static_cast<double>(state.amplitudes.size());
    for (double& a : state.amplitudes) a = 2.0 * mean - a;
}

QuerySchedule optimal_queries(std::size_t n) {
    if (n < 2) throw validation_error("query schedule needs N >= 2");
    QuerySchedule schedule;
    schedule.database_size = n;
    schedule.theta = std::asin(1.0 / std::sqrt(static_cast<double>(n)));
    const double exact = std::numbers::pi / (4.0 * schedule.theta) - 0.5;
    schedule.q_star =
        static_cast<std::uint64_t>(std::floor(exact + 0.5)); // ties round up
    const double s =
        std::sin((2.0 * static_cast<double>(schedule.q_star) + 1.0) *
                 schedule.theta);
    schedule.predicted_success = s * s;
    return schedule;
}

SearchResult grover_search(std::size_t n, std::size_t target,
                           std::uint64_t queries, CounterRng& rng) {
    SearchState state = uniform_state(n, target);
    for (std::uint64_t q = 0; q < queries; ++q) {
        oracle_reflect(state);
        diffusion_reflect(state);
    }
    SearchResult result;
    const double ta = state.amplitudes[target];
    result.final_probability = ta * ta;
    result.oracle_calls = state.oracle_calls;

    // one measurement: inverse CDF over squared amplitudes
    const double u = rng.next_double();
    double cumulative = 0.0;
    std::size_t sampled = n - 1;
    for (std::size_t i = 0; i < n; ++i) {
        const double p = state.amplitudes[i] * state.amplitudes[i];
        cumulative += p;
        if (u <= cumulative && p > 0.0) {
            sampled = i;
            break;
        }
    }
    result.sampled_index = sampled;
    result.success = sampled == target;
    return result;
}

SearchResult grover_search(std::size_t n, std::size_t target,
                           std::uint64_t queries, std::uint64_t seed) {
    CounterRng rng(seed);
    return grover_search(n, target, queries, rng);
}

std::vector<std::vector<double>> grover_trace(std::size_t n,
                                              std::size_t target,
                                              std::uint64_t queries) {
    SearchState state = uniform_state(n, target);
    std::vector<std::vector<double>> snapshots;
    snapshots.push_back(state.amplitudes);
    for (std::uint64_t q = 0; q < queries; ++q) {
        oracle_reflect(state);
        snapshots.push_back(state.amplitudes);
        diffusion_reflect(state);
        snapshots.push_back(state.amplitudes);
    }
    return snapshots;
}

std::uint64_t classical_random_search(std::size_t n, std::size_t target,
                                      CounterRng& rng) {
    if (n < 1) throw validation_error("empty database");
    if (target >= n) throw std::out_of_range("target index out of range");
    std::uint64_t queries = 0;
    while (true) {
        ++queries;
        if (rng.next_below(n) == target) return queries;
    }
}

std::uint64_t classical_random_search(std::size_t n, std::size_t target,
                                      std::uint64_t seed) {
    CounterRng rng(seed);
    return classical_random_search(n, target, rng);
}

SortedSearchResult classical_sorted_search(std::size_t n, std::size_t target) {
    if (n < 1) throw validation_error("empty database");
    if (target >= n) throw std::out_of_range("target index out of range");
    SortedSearchResult result;
    std::uint64_t log2_ceil = 0;
    while ((std::size_t{1} << log2_ceil) < n) ++log2_ceil;
    result.sort_operations = static_cast<std::uint64_t>(n) * log2_ceil;

    // Uniform bisection over a virtual power-of-two range: every target
    // costs exactly ceil(log2 N) comparisons.
    std::size_t lo = 0;
    for (std::uint64_t shift = log2_ceil; shift > 0; --shift) {
        const std::size_t width = std::size_t{1} << (shift - 1);
        ++result.queries;
        if (lo + width < n && target >= lo + width) lo += width;
    }
    return result;
}

WaveSearchResult wave_analogue_search(std::size_t n, std::size_t target) {
    const QuerySchedule schedule = optimal_queries(n);
    SearchState state = uniform_state(n, target); // N explicit real cells
    WaveSearchResult result;
    result.spatial_cells = n;
    const double threshold = schedule.predicted_success - 1e-9;
    const std::uint64_t step_cap = 2 * schedule.q_star + 2;
    for (std::uint64_t step = 0; step <= step_cap; ++step) {
        const double p = state.amplitudes[target] * state.amplitudes[target];
        if (p >= threshold) {
            result.steps = step;
            return result;
        }
        oracle_reflect(state);
        diffusion_reflect(state);
    }
    throw state_corruption_error(
        "wave analogue never reached the predicted success level");
}

HybridPlan hybrid_factorized_search(std::size_t n, std::size_t target,
                                    unsigned branching) {
    if (branching != 4) {
        throw validation_error(
            "hybrid descent requires branching 4 (the one-query exact case)");
    }
    if (target >= n) throw std::out_of_range("target index out of range");
    std::size_t check = n;
    while (check > 1 && check % branching == 0) check /= branching;
    if (check != 1) {
        throw validation_error("database size must be a power of 4");
    }

    HybridPlan plan;
    std::size_t block_begin = 0;
    std::size_t block_size = n;
    while (block_size > 1) {
        const std::size_t quadrant_size = block_size / branching;
        const std::size_t wanted = (target - block_begin) / quadrant_size;
        // exact four-item search over the quadrants of this block
        SearchState stage = uniform_state(branching, wanted);
        oracle_reflect(stage);
        diffusion_reflect(stage);
        std::size_t best = 0;
        for (std::size_t i = 1; i < branching; ++i) {
            if (stage.amplitudes[i] * stage.amplitudes[i] >
                stage.amplitudes[best] * stage.amplitudes[best]) {
                best = i;
            }
        }
        plan.stages.push_back({block_size, stage.oracle_calls});
        plan.total_queries += stage.oracle_calls;
        block_begin += best * quadrant_size;
        block_size = quadrant_size;
    }
    plan.located_index = block_begin;
    return plan;
}

double register_search_probability(int num_qubits, std::uint64_t target,
                                   std::uint64_t queries) {
    QuantumRegister reg(num_qubits);
    if (target >= reg.dim()) throw std::out_of_range("target index out of range");
    uniform_superposition(reg);
    for (std::uint64_t q = 0; q < queries; ++q) {
        reg.oracle_phase_flip(target);
        for (int b = 0; b < num_qubits; ++b) {
            reg.apply_gate(SingleQubitGate::hadamard(), b);
        }
        reg.reflect_about_basis_state(0);
        for (int b = 0; b < num_qubits; ++b) {
            reg.apply_gate(SingleQubitGate::hadamard(), b);
        }
    }
    return std::norm(reg.amplitude(target));
}

} // namespace qsim::grover
