// grover.hpp
// Unstructured search as two alternating reflections over a real amplitude
// vector: the oracle sign flip on the marked item and the reflection about
// the average. Includes the exact query-count schedule, classical baselines
// (random probing, sorted bisection), the classical-wave analogue with its
// explicit N-cell spatial cost, the factorized-oracle hybrid descent, and a
// register-backed cross-check path through the state-vector engine.

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qsim/rng.hpp"

namespace qsim::grover {

// Real amplitudes: both reflections preserve realness from a real start.
struct SearchState {
    std::vector<double> amplitudes;
    std::size_t target = 0;
    std::uint64_t oracle_calls = 0;
};

// Normalized uniform state over n items with the given marked index.
SearchState uniform_state(std::size_t n, std::size_t target);

// Negates the marked amplitude; counts one oracle query. The algorithm
// only ever touches the target through this flip.
void oracle_reflect(SearchState& state);

// a_i -> 2 * mean(a) - a_i.
void diffusion_reflect(SearchState& state);

struct QuerySchedule {
    std::size_t database_size = 0;
    std::uint64_t q_star = 0;
    double theta = 0.0;             // arcsin(1 / sqrt(N))
    double predicted_success = 0.0; // sin^2((2 Q* + 1) theta)
};

// Nearest integer to the exact solution of (2Q+1) theta = pi/2, ties
// rounding up. N = 2 is the documented anomaly: success stays 1/2 at
// every Q.
QuerySchedule optimal_queries(std::size_t n);

struct SearchResult {
    bool success = false;
    double final_probability = 0.0;
    std::uint64_t oracle_calls = 0;
    std::size_t sampled_index = 0;
};

// Runs queries rounds of oracle + diffusion from the uniform state, then
// samples once. final_probability is the exact target probability.
SearchResult grover_search(std::size_t n, std::size_t target,
                           std::uint64_t queries, std::uint64_t seed);
SearchResult grover_search(std::size_t n, std::size_t target,
                           std::uint64_t queries, CounterRng& rng);

// Amplitude snapshots: the initial state, then the state after each
// oracle flip and each diffusion (2 * queries + 1 snapshots).
std::vector<std::vector<double>> grover_trace(std::size_t n,
                                              std::size_t target,
                                              std::uint64_t queries);

// Uniform probing with replacement until the target is hit.
std::uint64_t classical_random_search(std::size_t n, std::size_t target,
                                      CounterRng& rng);
std::uint64_t classical_random_search(std::size_t n, std::size_t target,
                                      std::uint64_t seed);

struct SortedSearchResult {
    std::uint64_t queries = 0;
    std::uint64_t sort_operations = 0; // one-time N ceil(log2 N) charge
};

// Bisection over a pre-sorted database: ceil(log2 N) queries for N > 1.
SortedSearchResult classical_sorted_search(std::size_t n, std::size_t target);

struct WaveSearchResult {
    std::uint64_t steps = 0;
    std::size_t spatial_cells = 0; // N explicitly allocated real cells
};

// The same two-reflection iteration run on an explicit length-N array
// (no tensor-product compression); stops once the target probability
// reaches predicted_success - 1e-9.
WaveSearchResult wave_analogue_search(std::size_t n, std::size_t target);

struct HybridStage {
    std::size_t subset_size = 0;
    std::uint64_t queries_used = 0;
};

struct HybridPlan {
    std::vector<HybridStage> stages;
    std::uint64_t total_queries = 0;
    std::size_t located_index = 0;
};

// Factorized-oracle descent N -> N/4 -> N/16 -> ... : each stage locates
// the target's quadrant with the exact one-query four-item search.
HybridPlan hybrid_factorized_search(std::size_t n, std::size_t target,
                                    unsigned branching = 4);

// Cross-check path through quantum-core: uniform superposition, oracle
// sign flip, and the diffusion as H^n (2|0><0| - I) H^n. Returns the
// target probability after the given number of rounds.
double register_search_probability(int num_qubits, std::uint64_t target,
                                   std::uint64_t queries);

} // namespace qsim::grover
