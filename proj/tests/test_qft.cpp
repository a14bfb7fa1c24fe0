#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "qsim/errors.hpp"
#include "qsim/qft.hpp"
#include "qsim/register.hpp"
#include "qsim/rng.hpp"

using qsim::Amplitude;
using qsim::CounterRng;
using qsim::QuantumRegister;
namespace qft = qsim::qft;

namespace {

std::vector<Amplitude> random_normalized(std::size_t size, CounterRng& rng) {
    std::vector<Amplitude> v(size);
    double norm = 0.0;
    for (auto& a : v) {
        a = Amplitude{2.0 * rng.next_double() - 1.0,
                      2.0 * rng.next_double() - 1.0};
        norm += std::norm(a);
    }
    for (auto& a : v) a /= std::sqrt(norm);
    return v;
}

double max_deviation(std::span<const Amplitude> a,
                     std::span<const Amplitude> b) {
    double dev = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dev = std::max(dev, std::abs(a[i] - b[i]));
    }
    return dev;
}

} // namespace

TEST_SUITE_BEGIN("qft");

TEST_CASE("brute-force transform small cases") {
    // N=1: identity
    const auto one = qft::dft_bruteforce(std::vector<Amplitude>{{1, 0}});
    CHECK(std::abs(one.spectrum[0] - Amplitude{1, 0}) < 1e-15);
    CHECK(one.ops == 1);

    // N=2 on (1,0): single-qubit QFT is the Hadamard row
    const auto two =
        qft::dft_bruteforce(std::vector<Amplitude>{{1, 0}, {0, 0}});
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(two.spectrum[0] - Amplitude{s, 0}) < 1e-15);
    CHECK(std::abs(two.spectrum[1] - Amplitude{s, 0}) < 1e-15);
    CHECK(two.ops == 4);

    // N=8, 1/sqrt(2) at x in {0,4}: output 1/2 on even y, 0 on odd y
    std::vector<Amplitude> input(8, Amplitude{0, 0});
    input[0] = Amplitude{s, 0};
    input[4] = Amplitude{s, 0};
    const auto eight = qft::dft_bruteforce(input);
    for (int y = 0; y < 8; ++y) {
        if (y % 2 == 0) {
            CHECK(std::abs(eight.spectrum[y] - Amplitude{0.5, 0}) < 1e-12);
        } else {
            CHECK(std::abs(eight.spectrum[y]) < 1e-12);
        }
    }
}

TEST_CASE("fractional phase values") {
    constexpr double pi = std::numbers::pi;
    CHECK(qft::fractional_phase(0b1, 0, 1) == doctest::Approx(pi));
    CHECK(qft::fractional_phase(0b01, 1, 2) == doctest::Approx(pi / 2.0));
    CHECK(qft::fractional_phase(0b101, 2, 3) ==
          doctest::Approx(2.0 * pi * 0.625));
    CHECK_THROWS_AS(qft::fractional_phase(1, 3, 3), std::out_of_range);
    CHECK_THROWS_AS(qft::fractional_phase(1, -1, 3), std::out_of_range);
}

TEST_CASE("plan structure for n=1 and n=2") {
    const auto plan1 = qft::build_qft_plan(1);
    REQUIRE(plan1.steps.size() == 1);
    CHECK(plan1.steps[0].kind == qft::PlanStep::Kind::hadamard);
    CHECK(plan1.steps[0].target == 0);

    const auto plan2 = qft::build_qft_plan(2);
    REQUIRE(plan2.steps.size() == 4);
    CHECK(plan2.steps[0].kind == qft::PlanStep::Kind::hadamard);
    CHECK(plan2.steps[0].target == 1);
    CHECK(plan2.steps[1].kind == qft::PlanStep::Kind::controlled_phase);
    CHECK(plan2.steps[1].control == 0);
    CHECK(plan2.steps[1].target == 1);
    CHECK(plan2.steps[1].angle == doctest::Approx(std::numbers::pi / 2.0));
    CHECK(plan2.steps[2].kind == qft::PlanStep::Kind::hadamard);
    CHECK(plan2.steps[2].target == 0);
    CHECK(plan2.steps[3].kind == qft::PlanStep::Kind::swap_pair);
    CHECK(plan2.hadamard_count() == 2);
    CHECK(plan2.controlled_phase_count() == 1);
    CHECK(plan2.swap_count() == 1);
}

TEST_CASE("plan gate counts follow the closed forms") {
    for (int n = 1; n <= 24; ++n) {
        const auto plan = qft::build_qft_plan(n);
        const std::uint64_t un = n;
        CHECK(plan.hadamard_count() == un);
        CHECK(plan.controlled_phase_count() == un * (un - 1) / 2);
        CHECK(plan.swap_count() == un / 2);
        CHECK(plan.gate_count() == un + un * (un - 1) / 2 + un / 2);
    }
    const auto plan5 = qft::build_qft_plan(5);
    CHECK(plan5.hadamard_count() == 5);
    CHECK(plan5.controlled_phase_count() == 10);
    CHECK(plan5.swap_count() == 2);
}

TEST_CASE("every plan angle is pi / 2^k with k in [1, n-1]") {
    for (int n = 2; n <= 12; ++n) {
        const auto plan = qft::build_qft_plan(n);
        for (const auto& step : plan.steps) {
            if (step.kind != qft::PlanStep::Kind::controlled_phase) continue;
            bool matched = false;
            for (int k = 1; k < n; ++k) {
                if (std::abs(step.angle -
                             std::numbers::pi / std::pow(2.0, k)) < 1e-15) {
                    matched = true;
                    break;
                }
            }
            CHECK(matched);
        }
    }
}

TEST_CASE("factorized qft maps |0> to the uniform superposition") {
    for (int n : {1, 3, 6}) {
        QuantumRegister reg(n);
        qft::qft_factorized(reg);
        const double expected = std::pow(2.0, -0.5 * n);
        for (std::uint64_t i = 0; i < reg.dim(); ++i) {
            CHECK(std::abs(reg.amplitude(i) - Amplitude{expected, 0}) < 1e-12);
        }
    }
}

TEST_CASE("factorized qft of |1> is the Hadamard row") {
    std::vector<Amplitude> amps(2, Amplitude{0, 0});
    amps[1] = Amplitude{1, 0};
    QuantumRegister reg = QuantumRegister::from_amplitudes(amps);
    qft::qft_factorized(reg);
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(reg.amplitude(0) - Amplitude{s, 0}) < 1e-12);
    CHECK(std::abs(reg.amplitude(1) - Amplitude{-s, 0}) < 1e-12);
}

TEST_CASE("triple equivalence on random states up to n=10") {
    CounterRng rng(99);
    for (int n = 1; n <= 10; ++n) {
        const int reps = n <= 8 ? 5 : 2;
        for (int rep = 0; rep < reps; ++rep) {
            const auto input = random_normalized(std::size_t{1} << n, rng);
            const auto naive = qft::dft_bruteforce(input);
            const auto fast = qft::fft_classical(input);
            QuantumRegister reg = QuantumRegister::from_amplitudes(input);
            qft::qft_factorized(reg);
            CHECK(max_deviation(naive.spectrum, fast.spectrum) < 1e-9);
            CHECK(max_deviation(naive.spectrum, reg.amplitudes()) < 1e-9);
        }
    }
}

TEST_CASE("factorized qft assembled column by column is unitary (n<=6)") {
    for (int n = 2; n <= 6; ++n) {
        const std::uint64_t dim = std::uint64_t{1} << n;
        std::vector<std::vector<Amplitude>> columns;
        for (std::uint64_t basis = 0; basis < dim; ++basis) {
            std::vector<Amplitude> amps(dim, Amplitude{0, 0});
            amps[basis] = Amplitude{1, 0};
            QuantumRegister reg = QuantumRegister::from_amplitudes(amps);
            qft::qft_factorized(reg);
            columns.emplace_back(reg.amplitudes().begin(),
                                 reg.amplitudes().end());
        }
        // column orthonormality == unitarity
        for (std::uint64_t a = 0; a < dim; ++a) {
            for (std::uint64_t b = a; b < dim; ++b) {
                Amplitude dot{0, 0};
                for (std::uint64_t r = 0; r < dim; ++r) {
                    dot += std::conj(columns[a][r]) * columns[b][r];
                }
                const Amplitude expect = a == b ? Amplitude{1, 0} : Amplitude{0, 0};
                CHECK(std::abs(dot - expect) < 1e-10);
            }
        }
    }
}

TEST_CASE("periodic support maps to multiples of N/r") {
    CounterRng rng(5);
    for (const auto& [n, r] : std::vector<std::pair<int, int>>{
             {4, 4}, {5, 8}, {6, 2}, {8, 16}, {8, 1}}) {
        const std::uint64_t dim = std::uint64_t{1} << n;
        const std::uint64_t offset = rng.next_below(r);
        const std::uint64_t support = dim / r;
        std::vector<Amplitude> input(dim, Amplitude{0, 0});
        const double amp = 1.0 / std::sqrt(static_cast<double>(support));
        for (std::uint64_t k = 0; k < support; ++k) {
            input[offset + k * r] = Amplitude{amp, 0};
        }
        const auto spectrum = qft::dft_bruteforce(input).spectrum;
        for (std::uint64_t y = 0; y < dim; ++y) {
            if (y % (dim / r) == 0) continue;
            CHECK(std::abs(spectrum[y]) <= 1e-10);
        }
        double on_peaks = 0.0;
        for (std::uint64_t y = 0; y < dim; y += dim / r) {
            on_peaks += std::norm(spectrum[y]);
        }
        CHECK(on_peaks == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("classical fft requires a power-of-two length") {
    CHECK_THROWS_AS(qft::fft_classical(std::vector<Amplitude>(6)),
                    qsim::validation_error);
    CHECK_THROWS_AS(qft::fft_classical(std::vector<Amplitude>{}),
                    qsim::validation_error);
}

TEST_CASE("fft butterfly count is (N/2) log2 N") {
    CounterRng rng(3);
    const auto input = random_normalized(1024, rng);
    const auto result = qft::fft_classical(input);
    CHECK(result.ops == 5120);
    const auto naive = qft::dft_bruteforce(input);
    CHECK(max_deviation(result.spectrum, naive.spectrum) < 1e-9);
}

TEST_CASE("complexity table measured counters") {
    const auto rows = qft::complexity_table(1, 10);
    REQUIRE(rows.size() == 10);
    CHECK(rows[0].n == 1);
    CHECK(rows[0].naive_ops == 4); // N^2 with N=2
    CHECK(rows[0].fft_ops == 1);
    CHECK(rows[0].qft_gates == 1);
    const auto& r10 = rows[9];
    CHECK(r10.n == 10);
    CHECK(r10.naive_ops == std::uint64_t{1} << 20);
    CHECK(r10.fft_ops == 5120);
    CHECK(r10.qft_gates == 60);

    const std::string csv = qft::complexity_table_csv(rows);
    CHECK(csv.rfind("n,naive_ops,fft_ops,qft_gates\n", 0) == 0);
}

TEST_CASE("complexity table range validation") {
    CHECK_THROWS_AS(qft::complexity_table(0, 4), qsim::validation_error);
    CHECK_THROWS_AS(qft::complexity_table(5, 4), qsim::validation_error);
    CHECK_THROWS_AS(qft::complexity_table(1, 15), qsim::resource_limit_error);
}

TEST_SUITE_END();
