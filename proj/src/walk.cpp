#include "qsim/walk.hpp"

#include <cmath>
#include <cstdlib>

#include "qsim/errors.hpp"

namespace qsim::walk {

namespace {
constexpr std::uint64_t kMaxSlots = std::uint64_t{1} << 24;
constexpr double kPeakTol = 1e-9;
} // namespace

Lattice Lattice::create(int dimension, int side) {
    if (dimension < 1) throw validation_error("lattice dimension must be >= 1");
    if (side < 2) throw validation_error("lattice side must be >= 2");
    std::uint64_t sites = 1;
    for (int k = 0; k < dimension; ++k) {
        if (sites > kMaxSlots / static_cast<std::uint64_t>(side)) {
            throw resource_limit_error("lattice exceeds the 2^24 slot budget");
        }
        sites *= static_cast<std::uint64_t>(side);
    }
    if (sites * static_cast<std::uint64_t>(2 * dimension) > kMaxSlots) {
        throw resource_limit_error("lattice exceeds the 2^24 slot budget");
    }
    return Lattice{dimension, side};
}

std::uint64_t Lattice::num_sites() const {
    std::uint64_t sites = 1;
    for (int k = 0; k < dimension; ++k) sites *= static_cast<std::uint64_t>(side);
    return sites;
}

std::uint64_t Lattice::neighbor(std::uint64_t site, int direction) const {
    const int axis = direction / 2;
    const bool forward = (direction % 2) == 0;
    std::uint64_t stride = 1;
    for (int k = 0; k < axis; ++k) stride *= static_cast<std::uint64_t>(side);
    const std::uint64_t coord = (site / stride) % static_cast<std::uint64_t>(side);
    const std::uint64_t next =
        forward ? (coord + 1) % static_cast<std::uint64_t>(side)
                : (coord + static_cast<std::uint64_t>(side) - 1) %
                      static_cast<std::uint64_t>(side);
    return site + (next - coord) * stride;
}

double Lattice::distance_squared(std::uint64_t site,
                                 std::uint64_t reference) const {
    double total = 0.0;
    std::uint64_t a = site, b = reference;
    for (int axis = 0; axis < dimension; ++axis) {
        const auto ca = static_cast<std::int64_t>(a % side);
        const auto cb = static_cast<std::int64_t>(b % side);
        std::int64_t delta = std::abs(ca - cb);
        delta = std::min(delta, static_cast<std::int64_t>(side) - delta);
        total += static_cast<double>(delta) * static_cast<double>(delta);
        a /= side;
        b /= side;
    }
    return total;
}

CoinedWalkState::CoinedWalkState(const Lattice& lattice) : lattice_(lattice) {
    const std::uint64_t slots = lattice.num_slots();
    amps_.assign(slots, Amplitude{0, 0});
    scratch_.assign(slots, Amplitude{0, 0});
    neighbor_.resize(slots);
    const int dirs = lattice.num_directions();
    for (std::uint64_t site = 0; site < lattice.num_sites(); ++site) {
        for (int dir = 0; dir < dirs; ++dir) {
            neighbor_[site * dirs + dir] =
                static_cast<std::uint32_t>(lattice.neighbor(site, dir));
        }
    }
}

CoinedWalkState CoinedWalkState::localized(const Lattice& lattice,
                                           std::uint64_t site) {
    if (site >= lattice.num_sites()) {
        throw std::out_of_range("lattice site out of range");
    }
    CoinedWalkState state(lattice);
    const int dirs = lattice.num_directions();
    const double amp = 1.0 / std::sqrt(static_cast<double>(dirs));
    for (int dir = 0; dir < dirs; ++dir) {
        state.amps_[site * dirs + dir] = Amplitude{amp, 0};
    }
    return state;
}

CoinedWalkState CoinedWalkState::localized_direction(const Lattice& lattice,
                                                     std::uint64_t site,
                                                     int direction) {
    if (site >= lattice.num_sites()) {
        throw std::out_of_range("lattice site out of range");
    }
    if (direction < 0 || direction >= lattice.num_directions()) {
        throw std::out_of_range("direction out of range");
    }
    CoinedWalkState state(lattice);
    state.amps_[site * lattice.num_directions() + direction] = Amplitude{1, 0};
    return state;
}

CoinedWalkState CoinedWalkState::uniform(const Lattice& lattice) {
    CoinedWalkState state(lattice);
    const double amp =
        1.0 / std::sqrt(static_cast<double>(lattice.num_slots()));
    for (auto& a : state.amps_) a = Amplitude{amp, 0};
    return state;
}

Amplitude CoinedWalkState::amplitude(std::uint64_t site, int direction) const {
    return amps_[site * lattice_.num_directions() + direction];
}

double CoinedWalkState::site_probability(std::uint64_t site) const {
    const int dirs = lattice_.num_directions();
    double p = 0.0;
    for (int dir = 0; dir < dirs; ++dir) {
        p += std::norm(amps_[site * dirs + dir]);
    }
    return p;
}

double CoinedWalkState::norm_squared() const {
    double total = 0.0;
    for (const auto& a : amps_) total += std::norm(a);
    return total;
}

double CoinedWalkState::rms_displacement(std::uint64_t origin) const {
    const int dirs = lattice_.num_directions();
    double total = 0.0;
    for (std::uint64_t site = 0; site < lattice_.num_sites(); ++site) {
        double p = 0.0;
        for (int dir = 0; dir < dirs; ++dir) {
            p += std::norm(amps_[site * dirs + dir]);
        }
        if (p > 0.0) total += p * lattice_.distance_squared(site, origin);
    }
    return std::sqrt(total);
}

void CoinedWalkState::apply_coin(Coin coin) {
    const int dirs = lattice_.num_directions();
    if (coin == Coin::hadamard) {
        if (lattice_.dimension != 1) {
            throw validation_error("hadamard coin is defined for d = 1 only");
        }
        const double s = 1.0 / std::sqrt(2.0);
        for (std::uint64_t site = 0; site < lattice_.num_sites(); ++site) {
            const Amplitude a = amps_[site * 2];
            const Amplitude b = amps_[site * 2 + 1];
            amps_[site * 2] = s * (a + b);
            amps_[site * 2 + 1] = s * (a - b);
        }
        return;
    }
    // Grover coin 2J/(2d) - I: v_j -> 2 mean(v) - v_j at every site.
    const double inv = 1.0 / static_cast<double>(dirs);
    for (std::uint64_t site = 0; site < lattice_.num_sites(); ++site) {
        Amplitude sum{0, 0};
        for (int dir = 0; dir < dirs; ++dir) sum += amps_[site * dirs + dir];
        const Amplitude twice_mean = 2.0 * inv * sum;
        for (int dir = 0; dir < dirs; ++dir) {
            auto& a = amps_[site * dirs + dir];
            a = twice_mean - a;
        }
    }
}

void CoinedWalkState::step(Coin coin, Shift shift) {
    apply_coin(coin);
    const int dirs = lattice_.num_directions();
    const bool flip = shift == Shift::flip_flop;
    for (std::uint64_t site = 0; site < lattice_.num_sites(); ++site) {
        for (int dir = 0; dir < dirs; ++dir) {
            const std::uint64_t slot = site * dirs + dir;
            const int out_dir = flip ? (dir ^ 1) : dir;
            scratch_[static_cast<std::uint64_t>(neighbor_[slot]) * dirs +
                     out_dir] = amps_[slot];
        }
    }
    amps_.swap(scratch_);
}

void CoinedWalkState::step_inverse(Coin coin, Shift shift) {
    const int dirs = lattice_.num_directions();
    const bool flip = shift == Shift::flip_flop;
    for (std::uint64_t site = 0; site < lattice_.num_sites(); ++site) {
        for (int dir = 0; dir < dirs; ++dir) {
            const std::uint64_t slot = site * dirs + dir;
            const int out_dir = flip ? (dir ^ 1) : dir;
            scratch_[slot] =
                amps_[static_cast<std::uint64_t>(neighbor_[slot]) * dirs +
                      out_dir];
        }
    }
    amps_.swap(scratch_);
    apply_coin(coin); // both coins are their own inverse
}

void CoinedWalkState::negate_site(std::uint64_t site) {
    if (site >= lattice_.num_sites()) {
        throw std::out_of_range("lattice site out of range");
    }
    const int dirs = lattice_.num_directions();
    for (int dir = 0; dir < dirs; ++dir) {
        auto& a = amps_[site * dirs + dir];
        a = -a;
    }
}

std::vector<SpreadRecord> classical_walk_spread(int dimension, int side,
                                                std::uint64_t t_max,
                                                std::uint64_t trials,
                                                std::uint64_t seed) {
    if (t_max < 1) throw validation_error("t_max must be >= 1");
    if (trials < 1) throw validation_error("trials must be >= 1");
    Lattice::create(dimension, side); // validates the resource guard

    std::vector<double> sq_sum(t_max, 0.0);
    std::vector<char> wrapped(t_max, 0);
    std::vector<std::int64_t> pos(dimension);
    const std::uint64_t moves = static_cast<std::uint64_t>(2 * dimension);
    const std::int64_t half = side / 2;

    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        CounterRng rng(seed, trial);
        std::fill(pos.begin(), pos.end(), std::int64_t{0});
        for (std::uint64_t t = 0; t < t_max; ++t) {
            const std::uint64_t move = rng.next_below(moves);
            pos[move / 2] += (move % 2 == 0) ? 1 : -1;
            double dist_sq = 0.0;
            for (int axis = 0; axis < dimension; ++axis) {
                std::int64_t delta = pos[axis] % side;
                if (delta < 0) delta += side;
                if (std::abs(pos[axis]) > half) wrapped[t] = 1;
                delta = std::min(delta, static_cast<std::int64_t>(side) - delta);
                dist_sq += static_cast<double>(delta) * static_cast<double>(delta);
            }
            sq_sum[t] += dist_sq;
        }
    }

    std::vector<SpreadRecord> records;
    records.reserve(t_max);
    bool wrap_seen = false;
    for (std::uint64_t t = 0; t < t_max; ++t) {
        wrap_seen = wrap_seen || wrapped[t];
        records.push_back({t + 1,
                           std::sqrt(sq_sum[t] / static_cast<double>(trials)),
                           wrap_seen});
    }
    return records;
}

std::vector<SpreadRecord> quantum_walk_spread(int dimension, int side,
                                              std::uint64_t t_max, Coin coin) {
    if (t_max < 1) throw validation_error("t_max must be >= 1");
    const Lattice lattice = Lattice::create(dimension, side);
    CoinedWalkState state = CoinedWalkState::localized(lattice, 0);

    std::vector<SpreadRecord> records;
    records.reserve(t_max);
    for (std::uint64_t t = 1; t <= t_max; ++t) {
        state.step(coin, Shift::moving);
        // Ballistic fronts from opposite directions meet once 2t reaches
        // the side length; sigma is unreliable past that point.
        records.push_back({t, state.rms_displacement(0),
                           2 * t >= static_cast<std::uint64_t>(side)});
    }
    return records;
}

SearchTrace spatial_search(const Lattice& lattice, std::uint64_t marked_site,
                           std::uint64_t t_max, SearchStart start) {
    if (marked_site >= lattice.num_sites()) {
        throw std::out_of_range("marked site out of range");
    }
    if (t_max < 2) throw validation_error("t_max must be >= 2");

    CoinedWalkState state = start == SearchStart::uniform
                                ? CoinedWalkState::uniform(lattice)
                                : CoinedWalkState::localized(lattice, 0);
    SearchTrace trace;
    trace.p_marked.reserve(t_max + 1);
    trace.p_marked.push_back(state.site_probability(marked_site));
    for (std::uint64_t t = 1; t <= t_max; ++t) {
        state.negate_site(marked_site);
        state.step(Coin::grover, Shift::flip_flop);
        trace.p_marked.push_back(state.site_probability(marked_site));
    }

    const auto& p = trace.p_marked;
    for (std::uint64_t t = 1; t + 1 < p.size(); ++t) {
        if (p[t] >= p[t - 1] - kPeakTol && p[t] >= p[t + 1] + kPeakTol) {
            trace.t_peak = t;
            trace.p_peak = p[t];
            break;
        }
    }
    return trace;
}

std::vector<SearchScalingPoint> scaling_experiment(int dimension,
                                                   std::span<const int> sides,
                                                   std::uint64_t t_max) {
    std::vector<SearchScalingPoint> points;
    points.reserve(sides.size());
    for (const int side : sides) {
        const Lattice lattice = Lattice::create(dimension, side);
        const std::uint64_t sites = lattice.num_sites();
        const bool sweep = dimension == 1;
        const std::uint64_t marked = sweep ? sites / 2 : 0;
        const SearchTrace trace =
            spatial_search(lattice, marked, t_max,
                           sweep ? SearchStart::origin : SearchStart::uniform);
        SearchScalingPoint point;
        point.sites = sites;
        if (trace.t_peak) {
            point.found = true;
            point.t_peak = *trace.t_peak;
            point.p_peak = trace.p_peak;
            point.t_eff =
                static_cast<double>(point.t_peak) / std::sqrt(point.p_peak);
        }
        points.push_back(point);
    }
    return points;
}

} // namespace qsim::walk
