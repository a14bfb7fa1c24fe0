#include <doctest.h>

#include <cmath>
#include <vector>

#include "qsim/errors.hpp"
#include "qsim/fit.hpp"
#include "qsim/rng.hpp"
#include "qsim/walk.hpp"

using qsim::Amplitude;
using qsim::CounterRng;
namespace walk = qsim::walk;

namespace {

qsim::harness::FitResult fit_records(const std::vector<walk::SpreadRecord>& records,
                                     std::uint64_t t_min, std::uint64_t t_max) {
    std::vector<std::pair<double, double>> points;
    for (const auto& r : records) {
        if (r.t >= t_min && r.t <= t_max) {
            points.emplace_back(static_cast<double>(r.t), r.sigma);
        }
    }
    return qsim::harness::fit_power_law(points);
}

} // namespace

TEST_SUITE_BEGIN("walk");

TEST_CASE("lattice guards and geometry") {
    CHECK_THROWS_AS(walk::Lattice::create(0, 4), qsim::validation_error);
    CHECK_THROWS_AS(walk::Lattice::create(1, 1), qsim::validation_error);
    CHECK_THROWS_AS(walk::Lattice::create(3, 256), qsim::resource_limit_error);

    const auto lat = walk::Lattice::create(2, 4);
    CHECK(lat.num_sites() == 16);
    CHECK(lat.num_directions() == 4);
    // site 0 = (0,0): +x -> (1,0)=1, -x -> (3,0)=3, +y -> (0,1)=4, -y -> 12
    CHECK(lat.neighbor(0, 0) == 1);
    CHECK(lat.neighbor(0, 1) == 3);
    CHECK(lat.neighbor(0, 2) == 4);
    CHECK(lat.neighbor(0, 3) == 12);
    // minimal image: (0,0) to (3,3) is distance sqrt(2)
    CHECK(lat.distance_squared(0, 15) == doctest::Approx(2.0));
}

TEST_CASE("single hadamard step from the origin") {
    const auto lat = walk::Lattice::create(1, 64);
    const double s = 1.0 / std::sqrt(2.0);

    // coin vector (1,0): one step puts 1/sqrt2 on sites +1 and -1,
    // direction-resolved
    auto plus = walk::CoinedWalkState::localized_direction(lat, 0, 0);
    plus.step(walk::Coin::hadamard, walk::Shift::moving);
    CHECK(std::abs(plus.amplitude(1, 0) - Amplitude{s, 0}) < 1e-12);
    CHECK(std::abs(plus.amplitude(63, 1) - Amplitude{s, 0}) < 1e-12);
    CHECK(plus.site_probability(1) == doctest::Approx(0.5));
    CHECK(plus.site_probability(63) == doctest::Approx(0.5));

    // uniform coin start (1,1)/sqrt2: H sends it to (1,0), all weight right
    auto state = walk::CoinedWalkState::localized(lat, 0);
    state.step(walk::Coin::hadamard, walk::Shift::moving);
    CHECK(std::abs(state.amplitude(1, 0) - Amplitude{1.0, 0}) < 1e-12);
    CHECK(state.site_probability(1) == doctest::Approx(1.0));
}

TEST_CASE("grover coin fixes the uniform direction vector") {
    const auto lat = walk::Lattice::create(2, 4);
    auto state = walk::CoinedWalkState::uniform(lat);
    const auto before =
        std::vector<Amplitude>(state.amplitudes().begin(),
                               state.amplitudes().end());
    state.step(walk::Coin::grover, walk::Shift::moving);
    for (std::size_t i = 0; i < before.size(); ++i) {
        CHECK(std::abs(state.amplitudes()[i] - before[i]) < 1e-12);
    }
}

TEST_CASE("hadamard coin rejects d > 1") {
    const auto lat = walk::Lattice::create(2, 4);
    auto state = walk::CoinedWalkState::uniform(lat);
    CHECK_THROWS_AS(state.step(walk::Coin::hadamard, walk::Shift::moving),
                    qsim::validation_error);
}

TEST_CASE("norm is preserved over many steps") {
    const auto lat = walk::Lattice::create(2, 8);
    auto state = walk::CoinedWalkState::localized(lat, 5);
    for (int t = 0; t < 1000; ++t) {
        state.step(walk::Coin::grover, walk::Shift::flip_flop);
    }
    CHECK(std::abs(state.norm_squared() - 1.0) <= 1e-9);

    const auto lat1 = walk::Lattice::create(1, 32);
    auto state1 = walk::CoinedWalkState::localized(lat1, 0);
    for (int t = 0; t < 100; ++t) {
        state1.step(walk::Coin::hadamard, walk::Shift::moving);
        CHECK(std::abs(state1.norm_squared() - 1.0) <= 1e-12 * (t + 1));
    }
}

TEST_CASE("inverse steps rewind the walk") {
    CounterRng rng(4);
    for (const auto shift : {walk::Shift::moving, walk::Shift::flip_flop}) {
        const auto lat = walk::Lattice::create(2, 6);
        auto state = walk::CoinedWalkState::localized(lat, 7);
        const auto initial = std::vector<Amplitude>(
            state.amplitudes().begin(), state.amplitudes().end());
        const int steps = 20 + static_cast<int>(rng.next_below(30));
        for (int t = 0; t < steps; ++t) {
            state.step(walk::Coin::grover, shift);
        }
        for (int t = 0; t < steps; ++t) {
            state.step_inverse(walk::Coin::grover, shift);
        }
        for (std::size_t i = 0; i < initial.size(); ++i) {
            CHECK(std::abs(state.amplitudes()[i] - initial[i]) < 1e-10);
        }
    }
}

TEST_CASE("translation invariance of the free walk") {
    const auto lat = walk::Lattice::create(2, 6);
    const std::uint64_t origin_a = 0;
    const std::uint64_t origin_b = 14; // (2,2)
    auto a = walk::CoinedWalkState::localized(lat, origin_a);
    auto b = walk::CoinedWalkState::localized(lat, origin_b);
    for (int t = 0; t < 9; ++t) {
        a.step(walk::Coin::grover, walk::Shift::moving);
        b.step(walk::Coin::grover, walk::Shift::moving);
    }
    // distribution from b equals distribution from a shifted by (2,2)
    for (std::uint64_t x = 0; x < 6; ++x) {
        for (std::uint64_t y = 0; y < 6; ++y) {
            const std::uint64_t site = x + 6 * y;
            const std::uint64_t shifted = ((x + 2) % 6) + 6 * ((y + 2) % 6);
            CHECK(a.site_probability(site) ==
                  doctest::Approx(b.site_probability(shifted)).epsilon(1e-12));
        }
    }
}

TEST_CASE("classical spread: sigma(1)=1 and sigma(400) near 20") {
    const auto records = walk::classical_walk_spread(1, 2050, 400, 10000, 11);
    CHECK(records.front().t == 1);
    CHECK(records.front().sigma == doctest::Approx(1.0));
    CHECK(records.back().t == 400);
    CHECK(std::abs(records.back().sigma - 20.0) < 0.5);
    for (const auto& r : records) CHECK_FALSE(r.wrap_risk);
}

TEST_CASE("classical spread exponent is 1/2") {
    const auto records = walk::classical_walk_spread(1, 2100, 1024, 4000, 3);
    const auto fit = fit_records(records, 16, 1024);
    CHECK(std::abs(fit.exponent - 0.5) < 0.03);
}

TEST_CASE("classical walk flags wrap-around on small lattices") {
    const auto records = walk::classical_walk_spread(1, 8, 200, 50, 1);
    CHECK(records.back().wrap_risk);
}

TEST_CASE("quantum spread: sigma(1)=1, ballistic exponent, doubling ratio") {
    const auto records =
        walk::quantum_walk_spread(1, 1060, 512, walk::Coin::hadamard);
    CHECK(records.front().sigma == doctest::Approx(1.0).epsilon(1e-12));
    for (const auto& r : records) {
        CHECK(r.sigma <= static_cast<double>(r.t) + 1e-9);
        CHECK_FALSE(r.wrap_risk);
    }

    const auto fit = fit_records(records, 16, 512);
    CHECK(std::abs(fit.exponent - 1.0) < 0.03);

    for (const std::uint64_t t : {64ull, 128ull, 256ull}) {
        const double ratio = records[2 * t - 1].sigma / records[t - 1].sigma;
        CHECK(std::abs(ratio - 2.0) < 0.05);
    }
}

TEST_CASE("classical and quantum exponents separate by at least 0.4") {
    const auto classical = walk::classical_walk_spread(1, 1060, 512, 2000, 9);
    const auto quantum =
        walk::quantum_walk_spread(1, 1060, 512, walk::Coin::hadamard);
    const double ce = fit_records(classical, 16, 512).exponent;
    const double qe = fit_records(quantum, 16, 512).exponent;
    CHECK(qe - ce >= 0.4);
}

TEST_CASE("unmarked uniform state keeps p = 1/N at every site") {
    const auto lat = walk::Lattice::create(2, 8);
    auto state = walk::CoinedWalkState::uniform(lat);
    for (int t = 0; t < 25; ++t) {
        state.step(walk::Coin::grover, walk::Shift::flip_flop);
        CHECK(state.site_probability(13) ==
              doctest::Approx(1.0 / 64.0).epsilon(1e-12));
    }
}

TEST_CASE("spatial search amplifies the marked site in d=2") {
    const auto lat = walk::Lattice::create(2, 4);
    const auto trace = walk::spatial_search(lat, 0, 40);
    REQUIRE(trace.t_peak.has_value());
    CHECK(trace.p_peak > 0.35); // well above the 1/16 uniform level
    CHECK(*trace.t_peak <= 10);
}

TEST_CASE("the L=2 torus is degenerate: flat marked-site probability") {
    // Double edges make +x and -x coincide; the perturbed walk never
    // amplifies, so the trace stays at 1/N and no peak is found.
    const auto lat = walk::Lattice::create(2, 2);
    const auto trace = walk::spatial_search(lat, 0, 30);
    for (const double p : trace.p_marked) {
        CHECK(p == doctest::Approx(0.25).epsilon(1e-12));
    }
    CHECK_FALSE(trace.t_peak.has_value());
}

TEST_CASE("d=1 uniform start has no peak; origin start sweeps in N/2") {
    const auto lat = walk::Lattice::create(1, 64);
    const auto uniform_trace =
        walk::spatial_search(lat, 32, 200, walk::SearchStart::uniform);
    for (const double p : uniform_trace.p_marked) {
        CHECK(p == doctest::Approx(1.0 / 64.0).epsilon(1e-9));
    }
    CHECK_FALSE(uniform_trace.t_peak.has_value());

    const auto sweep =
        walk::spatial_search(lat, 32, 200, walk::SearchStart::origin);
    REQUIRE(sweep.t_peak.has_value());
    CHECK(*sweep.t_peak == 32);
    CHECK(sweep.p_peak == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("scaling experiment produces the documented shapes") {
    const std::vector<int> sides1 = {64, 128};
    const auto d1 = walk::scaling_experiment(1, sides1, 300);
    REQUIRE(d1.size() == 2);
    CHECK(d1[0].found);
    CHECK(d1[0].t_peak == 32);
    CHECK(d1[0].t_eff == doctest::Approx(32.0));
    CHECK(d1[1].t_peak == 64);

    const std::vector<int> sides3 = {4, 6};
    const auto d3 = walk::scaling_experiment(3, sides3, 150);
    REQUIRE(d3.size() == 2);
    CHECK(d3[0].found);
    CHECK(d3[0].sites == 64);
    CHECK(d3[1].sites == 216);
    CHECK(d3[0].t_peak < d3[1].t_peak);
}

TEST_SUITE_END();
