#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "qfin/derivative/circuit.hpp"
#include "qfin/derivative/model.hpp"
#include "qfin/sim/execute.hpp"
#include "test_util.hpp"

using namespace qfin;
using derivative::PriceRegisterSpec;
using derivative::RegimeGBMParams;

namespace {

RegimeGBMParams flat_params(double r, double sigma, int t_steps, double dt) {
    RegimeGBMParams p;
    p.rate_good = p.rate_bad = r;
    p.sigma_good = {sigma, 0.0, 0.0};
    p.sigma_bad = {sigma, 0.0, 0.0};
    p.t_steps = t_steps;
    p.dt = dt;
    return p;
}

// Table-4 configuration: ramped volatility, regime-dependent rates.
RegimeGBMParams table4_params(bool with_regimes, double strike,
                              markov::TransitionMatrix chain = {0.0097, 0.11}) {
    RegimeGBMParams p;
    p.rate_good = with_regimes ? 0.2 : 0.1;
    p.rate_bad = 0.1;
    p.sigma_good = {0.2, 1.2, 0.1};
    p.sigma_bad = {with_regimes ? 0.3 : 0.2, 1.2, 0.1};
    p.strike = strike;
    p.t_steps = 6;
    p.dt = 1.0 / 12.0;
    p.chain = chain;
    return p;
}

}  // namespace

TEST_CASE("step increments") {
    SUBCASE("zero volatility collapses to the drift") {
        auto p = flat_params(0.07, 0.0, 4, 0.5);
        auto inc = derivative::step_increments(p, 2);
        for (double v : {inc.good_up, inc.good_down, inc.bad_up, inc.bad_down}) {
            CHECK(v == doctest::Approx(0.07 * 0.5).epsilon(1e-14));
        }
    }
    SUBCASE("reference values at dt = 1") {
        auto p = flat_params(0.1, 0.2, 1, 1.0);
        auto inc = derivative::step_increments(p, 1);
        CHECK(inc.good_up == doctest::Approx(0.28).epsilon(1e-14));
        CHECK(inc.good_down == doctest::Approx(-0.12).epsilon(1e-14));
    }
    SUBCASE("regime gap follows the formula difference") {
        auto p = table4_params(true, 1.0);
        for (int step = 1; step <= p.t_steps; ++step) {
            auto inc = derivative::step_increments(p, step);
            const double sg = p.sigma(0, step), sb = p.sigma(1, step);
            const double drift_gap =
                ((p.rate_good - p.rate_bad) - 0.5 * (sg * sg - sb * sb)) * p.dt;
            const double diff_up = inc.good_up - inc.bad_up;
            const double diff_dn = inc.good_down - inc.bad_down;
            CHECK(diff_up == doctest::Approx(drift_gap + (sg - sb) * std::sqrt(p.dt))
                                 .epsilon(1e-12));
            CHECK(diff_dn == doctest::Approx(drift_gap - (sg - sb) * std::sqrt(p.dt))
                                 .epsilon(1e-12));
        }
    }
    SUBCASE("volatility ramp caps after the first month") {
        auto p = table4_params(false, 1.0);
        CHECK(p.sigma(0, 1) == doctest::Approx(0.2).epsilon(1e-14));
        for (int step = 2; step <= 6; ++step) {
            CHECK(p.sigma(0, step) == doctest::Approx(0.3).epsilon(1e-14));
        }
    }
}

TEST_CASE("price recovery formula") {
    PriceRegisterSpec spec;
    spec.f_max = 0.8;
    spec.rescale_c = 0.07;
    const double c = spec.rescale_c;
    CHECK(derivative::price_from_prob(0.5 - c * std::numbers::pi / 4.0, spec) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(derivative::price_from_prob(0.5 + c * std::numbers::pi / 4.0, spec) ==
          doctest::Approx(spec.f_max).epsilon(1e-12));
    CHECK(derivative::price_from_prob(0.5, spec) ==
          doctest::Approx(spec.f_max / 2.0).epsilon(1e-12));
}

TEST_CASE("exact option price oracle") {
    SUBCASE("deterministic flat market") {
        auto p = flat_params(0.0, 0.0, 3, 1.0);
        p.strike = 0.7;
        CHECK(derivative::exact_option_price(p, false) ==
              doctest::Approx(0.3).epsilon(1e-12));
        p.strike = 1.4;
        CHECK(derivative::exact_option_price(p, false) ==
              doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("zero strike reports the discounted forward") {
        auto p = flat_params(0.08, 0.25, 6, 1.0 / 12.0);
        p.strike = 1e-12;
        const double price = derivative::exact_option_price(p, false);
        // equals S0 up to the two-point approximation of the Gaussian increment
        CHECK(price == doctest::Approx(1.0).epsilon(5e-3));
    }
    SUBCASE("regime blend sits between the pure-regime prices") {
        auto p = table4_params(true, 1.0);
        const double mixed = derivative::exact_option_price(p, true);
        auto good = p;
        good.rate_bad = p.rate_good;
        good.sigma_bad = p.sigma_good;
        auto bad = p;
        bad.rate_good = p.rate_bad;
        bad.sigma_good = p.sigma_bad;
        const double lo =
            std::min(derivative::exact_option_price(good, false),
                     derivative::exact_option_price(bad, false));
        const double hi =
            std::max(derivative::exact_option_price(good, false),
                     derivative::exact_option_price(bad, false));
        CHECK(mixed >= lo - 1e-12);
        CHECK(mixed <= hi + 1e-12);
    }
}

TEST_CASE("price circuit distributions") {
    SUBCASE("zero volatility is a point mass at the nearest grid point") {
        // r dt = 0.015625 is exactly one grid step at 6 fractional bits
        auto p = flat_params(0.1875, 0.0, 3, 1.0 / 12.0);
        auto spec = derivative::make_register_spec(p, false, 8);
        REQUIRE(spec.fp.n_frac == 6);
        auto c = derivative::build_price_circuit(p, spec, false);
        auto probs = sim::run(c, 1).state.marginal(c.reg("price"));
        const std::uint64_t expect = spec.fp.encode_grid(64 + 3);  // 1 + 3/64
        for (Eigen::Index v = 0; v < probs.size(); ++v) {
            const double want = static_cast<std::uint64_t>(v) == expect ? 1.0 : 0.0;
            CHECK(probs(v) == doctest::Approx(want).epsilon(1e-10));
        }
    }
    SUBCASE("T = 2 single regime matches the path enumeration") {
        auto p = flat_params(0.1, 0.2, 2, 1.0 / 12.0);
        auto spec = derivative::make_register_spec(p, false, 7);
        auto c = derivative::build_price_circuit(p, spec, false);
        auto probs = sim::run(c, 1).state.marginal(c.reg("price"));

        std::map<std::uint64_t, double> enumerated;
        const std::int64_t base = spec.fp.to_grid(std::log(p.s0)) + spec.fp.to_grid(1.0);
        for (std::uint64_t signs = 0; signs < 4; ++signs) {
            std::int64_t g = base;
            for (int t = 1; t <= 2; ++t) {
                auto inc = derivative::step_increments(p, t);
                g += spec.fp.to_grid(inc.get(0, static_cast<int>((signs >> (t - 1)) & 1)));
            }
            enumerated[spec.fp.encode_grid(g)] += 0.25;
        }
        for (Eigen::Index v = 0; v < probs.size(); ++v) {
            const auto it = enumerated.find(static_cast<std::uint64_t>(v));
            const double want = it == enumerated.end() ? 0.0 : it->second;
            CHECK(std::abs(probs(v) - want) < 1e-9);
        }
    }
    SUBCASE("T = 2 with regimes matches the joint enumeration") {
        auto p = table4_params(true, 1.0, {0.3, 0.4});
        p.t_steps = 2;
        auto spec = derivative::make_register_spec(p, true, 7);
        auto c = derivative::build_price_circuit(p, spec, true);
        auto probs = sim::run(c, 1).state.marginal(c.reg("price"));

        std::map<std::uint64_t, double> enumerated;
        const auto chain = markov::exact_chain_distribution(p.chain, 2);
        const std::int64_t base = spec.fp.to_grid(std::log(p.s0)) + spec.fp.to_grid(1.0);
        for (std::uint64_t regimes = 0; regimes < 8; ++regimes) {
            for (std::uint64_t signs = 0; signs < 4; ++signs) {
                std::int64_t g = base;
                for (int t = 1; t <= 2; ++t) {
                    auto inc = derivative::step_increments(p, t);
                    g += spec.fp.to_grid(inc.get(static_cast<int>((regimes >> t) & 1),
                                                 static_cast<int>((signs >> (t - 1)) & 1)));
                }
                enumerated[spec.fp.encode_grid(g)] +=
                    chain(static_cast<Eigen::Index>(regimes)) * 0.25;
            }
        }
        for (Eigen::Index v = 0; v < probs.size(); ++v) {
            const auto it = enumerated.find(static_cast<std::uint64_t>(v));
            const double want = it == enumerated.end() ? 0.0 : it->second;
            CHECK(std::abs(probs(v) - want) < 1e-9);
        }
    }
    SUBCASE("identical regimes match the single-regime register distribution") {
        auto p = flat_params(0.1, 0.25, 3, 1.0 / 12.0);
        p.chain = {0.3, 0.4};
        auto spec = derivative::make_register_spec(p, true, 7);
        auto with = derivative::build_price_circuit(p, spec, true);
        auto without = derivative::build_price_circuit(p, spec, false);
        auto pw = sim::run(with, 1).state.marginal(with.reg("price"));
        auto po = sim::run(without, 1).state.marginal(without.reg("price"));
        CHECK(test::max_abs_diff(pw, po) < 1e-9);
    }
}

TEST_CASE("pricing pipeline") {
    SUBCASE("statevector objective equals the per-state closed form") {
        auto p = table4_params(true, 0.95, {0.3, 0.4});
        p.t_steps = 3;
        auto spec = derivative::make_register_spec(p, true, 7, 0.1);
        const double sv = derivative::objective_probability(p, spec, true);
        auto terms = derivative::price_error_decomposition(p, spec, true);
        // decomposition recomputes the same probability classically
        const double closed =
            derivative::price_from_prob(sv, spec) *
            derivative::expected_discount(p, true);
        CHECK(closed == doctest::Approx(terms.quantum_sv).epsilon(1e-9));
    }
    SUBCASE("error terms add up to the statevector deviation") {
        auto p = table4_params(false, 1.0);
        p.t_steps = 4;
        auto spec = derivative::make_register_spec(p, false, 8);
        auto terms = derivative::price_error_decomposition(p, spec, false);
        CHECK(terms.quantum_sv - terms.exact ==
              doctest::Approx(terms.total_model_error()).epsilon(1e-9));
    }
    SUBCASE("zero-volatility pipeline prices the discounted intrinsic value") {
        auto p = flat_params(0.1875, 0.0, 3, 1.0 / 12.0);
        p.strike = 1.0;
        auto spec = derivative::make_register_spec(p, false, 8, 0.05);
        const double horizon = 3.0 / 12.0;
        const double exact =
            std::exp(-0.1875 * horizon) * (std::exp(0.1875 * horizon) - 1.0);
        auto sv = derivative::quantum_option_price(p, spec, false, 0, 1);
        // only Taylor + small-angle left (grid is exact here)
        CHECK(std::abs(sv.price - exact) < 2e-3);
        auto sampled = derivative::quantum_option_price(p, spec, false, 4096, 7);
        const double se = 2.0 * spec.f_max /
                          (std::numbers::pi * spec.rescale_c) *
                          std::sqrt(0.25 / 4096.0);
        CHECK(std::abs(sampled.price - sv.price) < 4.0 * se);
    }
    SUBCASE("price estimate non-increasing in strike") {
        auto p = table4_params(false, 1.0);
        p.t_steps = 3;
        double prev = 1e9;
        for (double strike : {0.9, 0.95, 1.0, 1.05, 1.1}) {
            p.strike = strike;
            auto spec = derivative::make_register_spec(p, false, 8);
            const double price = derivative::quantum_option_price(p, spec, false, 0, 1).price;
            CHECK(price <= prev + 2e-3);
            prev = price;
        }
    }
    SUBCASE("halving the volatility at a fixed grid shrinks the Taylor term") {
        auto p_full = flat_params(0.1, 0.3, 4, 1.0 / 12.0);
        auto spec = derivative::make_register_spec(p_full, false, 8);
        auto p_half = flat_params(0.1, 0.15, 4, 1.0 / 12.0);
        auto full = derivative::price_error_decomposition(p_full, spec, false);
        auto half = derivative::price_error_decomposition(p_half, spec, false);
        CHECK(std::abs(half.taylor) <= 0.5 * std::abs(full.taylor) + 1e-6);
    }
    SUBCASE("sampled mode is deterministic in the seed") {
        auto p = flat_params(0.1, 0.2, 2, 1.0 / 12.0);
        auto spec = derivative::make_register_spec(p, false, 7);
        auto a = derivative::quantum_option_price(p, spec, false, 128, 5);
        auto b = derivative::quantum_option_price(p, spec, false, 128, 5);
        CHECK(a.price == b.price);
    }
}

TEST_CASE("register overflow is rejected") {
    auto p = flat_params(0.1, 4.0, 6, 1.0);  // wild volatility
    CHECK_THROWS(derivative::make_register_spec(p, false, 5));
}
