// walk.hpp
// Discrete-time coined quantum walks on d-dimensional periodic lattices.
//
// State slots are indexed (site, direction) with 2d directions per site
// (direction 2a moves +1 along axis a, direction 2a+1 moves -1). The coin
// mixes the direction amplitudes at every site, then the shift moves each
// direction component one site along its axis. Two shift conventions are
// provided: `moving` keeps the direction label (used by the dispersion
// experiments) and `flip_flop` reverses it after the move (used by the
// marked-vertex search, which shows no amplification under the moving
// shift).

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qsim/register.hpp"
#include "qsim/rng.hpp"

namespace qsim::walk {

enum class Coin { hadamard, grover };
enum class Shift { moving, flip_flop };

struct Lattice {
    int dimension = 1;
    int side = 2;

    static Lattice create(int dimension, int side);

    std::uint64_t num_sites() const;
    int num_directions() const { return 2 * dimension; }
    std::uint64_t num_slots() const { return num_sites() * num_directions(); }
    std::uint64_t neighbor(std::uint64_t site, int direction) const;
    // Squared minimal-image Euclidean distance between two sites.
    double distance_squared(std::uint64_t site, std::uint64_t reference) const;
};

class CoinedWalkState {
public:
    static CoinedWalkState localized(const Lattice& lattice,
                                     std::uint64_t site);
    static CoinedWalkState localized_direction(const Lattice& lattice,
                                               std::uint64_t site,
                                               int direction);
    static CoinedWalkState uniform(const Lattice& lattice);

    const Lattice& lattice() const { return lattice_; }
    std::span<const Amplitude> amplitudes() const { return amps_; }
    Amplitude amplitude(std::uint64_t site, int direction) const;
    double site_probability(std::uint64_t site) const;
    double norm_squared() const;
    double rms_displacement(std::uint64_t origin) const;

    void step(Coin coin, Shift shift);
    void step_inverse(Coin coin, Shift shift);

    // Marked-vertex perturbation: negates every direction amplitude at
    // the site.
    void negate_site(std::uint64_t site);

private:
    CoinedWalkState(const Lattice& lattice);
    void apply_coin(Coin coin);

    Lattice lattice_;
    std::vector<Amplitude> amps_;
    std::vector<Amplitude> scratch_;
    std::vector<std::uint32_t> neighbor_; // slot -> destination site
};

struct SpreadRecord {
    std::uint64_t t = 0;
    double sigma = 0.0;
    bool wrap_risk = false;
};

// Simple random walk, one uniformly random axis move per step; sigma(t)
// is the RMS minimal-image displacement over all trials. Trial k draws
// from the (seed, k) substream.
std::vector<SpreadRecord> classical_walk_spread(int dimension, int side,
                                                std::uint64_t t_max,
                                                std::uint64_t trials,
                                                std::uint64_t seed);

// Deterministic: sigma(t) from the exact probability distribution of the
// coined walk started at the origin with uniform direction amplitudes.
// Uses the moving shift.
std::vector<SpreadRecord> quantum_walk_spread(int dimension, int side,
                                              std::uint64_t t_max, Coin coin);

enum class SearchStart {
    uniform, // Grover-style uniform superposition over all slots
    origin   // localized walker; used for the d = 1 ballistic sweep
};

struct SearchTrace {
    std::vector<double> p_marked; // p_marked[t], t = 0..t_max
    std::optional<std::uint64_t> t_peak;
    double p_peak = 0.0;
};

// Marked-vertex search: each step negates the marked site's amplitudes,
// then applies the Grover coin and the flip-flop shift everywhere.
// t_peak is the first local maximum of the marked-site probability
// (tolerance 1e-9 against flat staircase steps); absent if none occurs
// within t_max.
SearchTrace spatial_search(const Lattice& lattice, std::uint64_t marked_site,
                           std::uint64_t t_max,
                           SearchStart start = SearchStart::uniform);

struct SearchScalingPoint {
    std::uint64_t sites = 0;
    std::uint64_t t_peak = 0;
    double p_peak = 0.0;
    double t_eff = 0.0; // t_peak / sqrt(p_peak)
    bool found = false;
};

// One spatial_search per side. For d >= 2 the walk starts uniform with
// the marked site at the origin; for d = 1 it starts localized against
// the antipodal marked site (the uniform start produces a flat 1/N trace
// in one dimension, so the sweep is the meaningful cost there).
std::vector<SearchScalingPoint> scaling_experiment(int dimension,
                                                   std::span<const int> sides,
                                                   std::uint64_t t_max);

} // namespace qsim::walk
