#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qfin/markov/chain.hpp"
#include "qfin/sim/execute.hpp"
#include "qfin/sim/rng.hpp"
#include "test_util.hpp"

using namespace qfin;
using markov::Generator;
using markov::TransitionMatrix;

namespace {
constexpr double kPi = std::numbers::pi;
const TransitionMatrix k1986{0.0097, 0.11};
const TransitionMatrix k1854{0.024, 0.059};
const TransitionMatrix kSynthetic{0.3, 0.4};
}  // namespace

TEST_CASE("generator exponential") {
    SUBCASE("zero generator gives the identity") {
        Generator g;
        auto tm = markov::generator_to_transition(g, 1.0);
        CHECK(tm.p_gb == doctest::Approx(0.0));
        CHECK(tm.p_bg == doctest::Approx(0.0));
    }
    SUBCASE("unit rates at dt = ln 2") {
        Generator g;
        g.lambda << -1.0, 1.0, 1.0, -1.0;
        auto tm = markov::generator_to_transition(g, std::log(2.0));
        auto a = tm.matrix();
        CHECK(a(0, 0) == doctest::Approx(0.625).epsilon(1e-12));
        CHECK(a(0, 1) == doctest::Approx(0.375).epsilon(1e-12));
        CHECK(a(1, 0) == doctest::Approx(0.375).epsilon(1e-12));
        CHECK(a(1, 1) == doctest::Approx(0.625).epsilon(1e-12));
        CHECK(a.row(0).sum() == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("long horizon converges to the steady state") {
        Generator g;
        g.lambda << -0.2, 0.2, 0.7, -0.7;
        auto tm = markov::generator_to_transition(g, 1e6);
        auto a = tm.matrix();
        const Eigen::Vector2d pi(0.7 / 0.9, 0.2 / 0.9);
        CHECK(std::abs(a(0, 0) - pi(0)) < 1e-9);
        CHECK(std::abs(a(1, 0) - pi(0)) < 1e-9);
    }
    SUBCASE("invalid generators throw") {
        Generator g;
        g.lambda << -1.0, 1.0, -0.5, 0.5;
        CHECK_THROWS(markov::generator_to_transition(g, 1.0));
    }
}

TEST_CASE("rotation angles") {
    SUBCASE("symmetric chain") {
        auto a = markov::compute_angles(TransitionMatrix{0.5, 0.5});
        CHECK(a.theta0 == doctest::Approx(kPi / 2).epsilon(1e-12));
        CHECK(a.theta_from_good == doctest::Approx(kPi / 2).epsilon(1e-12));
        CHECK(a.theta_from_bad == doctest::Approx(kPi / 2).epsilon(1e-12));
    }
    SUBCASE("1986 parameters") {
        auto a = markov::compute_angles(k1986);
        CHECK(a.theta0 == doctest::Approx(0.5761).epsilon(1e-3));
        CHECK(a.theta_from_good == doctest::Approx(0.1972).epsilon(1e-3));
        CHECK(a.theta_from_bad == doctest::Approx(2.4655).epsilon(1e-3));
        // direct formula evaluation
        CHECK(a.theta0 ==
              doctest::Approx(2 * std::acos(std::sqrt(0.11 / 0.1197))).epsilon(1e-14));
    }
    SUBCASE("synthetic parameters") {
        auto a = markov::compute_angles(kSynthetic);
        CHECK(a.theta0 == doctest::Approx(1.4274).epsilon(1e-3));
        CHECK(a.theta_from_good == doctest::Approx(1.1593).epsilon(1e-3));
        // 2 acos(sqrt(0.4)); the chain-distribution property suite pins the
        // convention against the Chapman-Kolmogorov oracle.
        CHECK(a.theta_from_bad == doctest::Approx(1.7722).epsilon(1e-3));
        CHECK(a.theta_from_bad ==
              doctest::Approx(2 * std::acos(std::sqrt(0.4))).epsilon(1e-14));
    }
    SUBCASE("degenerate chain throws") {
        CHECK_THROWS(markov::compute_angles(TransitionMatrix{0.0, 0.0}));
    }
}

TEST_CASE("chain circuit distributions") {
    SUBCASE("T = 1 symmetric chain is uniform") {
        auto c = markov::build_chain_circuit(TransitionMatrix{0.5, 0.5}, 1);
        auto probs = sim::run(c, 1).state.probabilities();
        for (int b = 0; b < 4; ++b) {
            CHECK(probs(b) == doctest::Approx(0.25).epsilon(1e-12));
        }
    }
    SUBCASE("T = 1 with 1986 parameters") {
        auto c = markov::build_chain_circuit(k1986, 1);
        auto probs = sim::run(c, 1).state.probabilities();
        // path index bit0 = initial state, bit1 = state after one month
        CHECK(probs(0) == doctest::Approx(0.91005).epsilon(1e-4));    // G,G
        CHECK(probs(2) == doctest::Approx(0.008914).epsilon(1e-3));   // G,B
        CHECK(probs(1) == doctest::Approx(0.008914).epsilon(1e-3));   // B,G
        CHECK(probs(3) == doctest::Approx(0.072122).epsilon(1e-3));   // B,B
        auto marg = sim::probabilities(sim::run(c, 1).state, sim::QubitRange{0, 1});
        CHECK(marg(0) == doctest::Approx(0.918964).epsilon(1e-5));
        CHECK(marg(1) == doctest::Approx(0.081036).epsilon(1e-4));
    }
    SUBCASE("T = 0 rejected") {
        CHECK_THROWS(markov::build_chain_circuit(k1986, 0));
    }
}

TEST_CASE("exact distribution oracle") {
    SUBCASE("symmetric T = 2 is uniform over 8 paths") {
        auto p = markov::exact_chain_distribution(TransitionMatrix{0.5, 0.5}, 2);
        for (int b = 0; b < 8; ++b) CHECK(p(b) == doctest::Approx(0.125).epsilon(1e-12));
    }
    SUBCASE("normalization") {
        auto p = markov::exact_chain_distribution(kSynthetic, 5);
        CHECK(std::abs(p.sum() - 1.0) < 1e-12);
    }
    SUBCASE("T = 1 1986 values match the circuit example") {
        auto p = markov::exact_chain_distribution(k1986, 1);
        CHECK(p(0) == doctest::Approx(0.91005).epsilon(1e-4));
        CHECK(p(2) == doctest::Approx(0.008914).epsilon(1e-3));
        CHECK(p(1) == doctest::Approx(0.008914).epsilon(1e-3));
        CHECK(p(3) == doctest::Approx(0.072122).epsilon(1e-3));
    }
    SUBCASE("general-M oracle agrees with the two-state one") {
        auto p2 = markov::exact_chain_distribution(k1986, 3);
        auto pm = markov::exact_chain_distribution(k1986.matrix(), k1986.steady_state(), 3);
        CHECK(test::max_abs_diff(p2, pm) < 1e-14);
    }
    SUBCASE("detailed balance at the steady state") {
        for (const auto& tm : {k1986, k1854, kSynthetic}) {
            auto p = markov::exact_chain_distribution(tm, 3);
            for (int t = 1; t <= 3; ++t) {
                double gb = 0.0, bg = 0.0;
                for (std::uint64_t path = 0; path < 16; ++path) {
                    const bool prev = (path >> (t - 1)) & 1;
                    const bool cur = (path >> t) & 1;
                    if (!prev && cur) gb += p(static_cast<Eigen::Index>(path));
                    if (prev && !cur) bg += p(static_cast<Eigen::Index>(path));
                }
                CHECK(gb == doctest::Approx(bg).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("circuit matches the oracle for random chains up to T = 8") {
    std::mt19937_64 gen(123);
    std::uniform_real_distribution<double> prob(0.01, 0.99);
    for (int trial = 0; trial < 10; ++trial) {
        const TransitionMatrix tm{prob(gen), prob(gen)};
        const int T = 1 + static_cast<int>(gen() % 8);
        for (bool optimized : {false, true}) {
            auto c = markov::build_chain_circuit(tm, T, optimized);
            auto probs = sim::run(c, 1).state.probabilities();
            auto exact = markov::exact_chain_distribution(tm, T);
            CHECK(test::max_abs_diff(probs, exact) < 1e-9);
        }
        // optimized and unoptimized agree as statevectors
        auto a = sim::run(markov::build_chain_circuit(tm, T, true), 1).state.amplitudes();
        auto b = sim::run(markov::build_chain_circuit(tm, T, false), 1).state.amplitudes();
        CHECK(test::max_abs_diff(a, b) < 1e-10);
    }
}

TEST_CASE("optimized chain uses exactly T controlled rotations") {
    const int T = 5;
    auto c = markov::build_chain_circuit(k1986, T, true);
    int controlled = 0;
    for (const auto& op : c.ops()) {
        if (!op.controls.empty()) ++controlled;
    }
    CHECK(controlled == T);
}

TEST_CASE("non-homogeneous chain") {
    std::vector<TransitionMatrix> steps{k1986, kSynthetic, k1854};
    auto c = markov::build_chain_circuit(k1986, steps);
    auto probs = sim::run(c, 1).state.probabilities();
    auto exact = markov::exact_chain_distribution(k1986, steps);
    CHECK(test::max_abs_diff(probs, exact) < 1e-9);
}

TEST_CASE("mse definition") {
    SUBCASE("exact frequencies give zero") {
        Eigen::VectorXd p(4);
        p << 0.25, 0.25, 0.25, 0.25;
        markov::Histogram h{{0, 25}, {1, 25}, {2, 25}, {3, 25}};
        CHECK(markov::mse({h}, p, 100) == doctest::Approx(0.0).epsilon(1e-15));
    }
    SUBCASE("forced arithmetic with all shots in the wrong bin") {
        Eigen::VectorXd p(2);
        p << 1.0, 0.0;
        markov::Histogram h{{1, 50}};
        CHECK(markov::mse({h}, p, 50) == doctest::Approx(1.0).epsilon(1e-15));
    }
    SUBCASE("matches the multinomial expectation (N = 256)") {
        auto exact = markov::exact_chain_distribution(kSynthetic, 3);
        const std::uint64_t S = 512;
        const int N = 256;
        std::vector<markov::Histogram> runs;
        std::vector<double> per_run;
        for (int n = 0; n < N; ++n) {
            runs.push_back(sim::sample_distribution(exact, S, sim::child_seed(91, n)));
            per_run.push_back(markov::mse({runs.back()}, exact, S));
        }
        const double measured = markov::mse(runs, exact, S);
        const double expect = markov::expected_multinomial_mse(exact, S);
        double var = 0.0;
        for (double v : per_run) var += (v - measured) * (v - measured);
        var /= (N - 1);
        const double se = std::sqrt(var / N);
        CHECK(std::abs(measured - expect) < 3.0 * se);

        // doubling S halves the expectation; measured follows within 3 sigma
        const std::uint64_t S2 = 2 * S;
        std::vector<markov::Histogram> runs2;
        std::vector<double> per_run2;
        for (int n = 0; n < N; ++n) {
            runs2.push_back(sim::sample_distribution(exact, S2, sim::child_seed(171, n)));
            per_run2.push_back(markov::mse({runs2.back()}, exact, S2));
        }
        const double measured2 = markov::mse(runs2, exact, S2);
        CHECK(markov::expected_multinomial_mse(exact, S2) ==
              doctest::Approx(expect / 2.0).epsilon(1e-12));
        double var2 = 0.0;
        for (double v : per_run2) var2 += (v - measured2) * (v - measured2);
        var2 /= (N - 1);
        CHECK(std::abs(measured2 - expect / 2.0) < 3.0 * std::sqrt(var2 / N));
    }
    SUBCASE("mismatched bins throw") {
        Eigen::VectorXd p(2);
        p << 0.5, 0.5;
        markov::Histogram h{{5, 10}};
        CHECK_THROWS(markov::mse({h}, p, 10));
    }
}
