#include "qfin/derivative/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qfin::derivative {

double SigmaSchedule::at(double t_years) const {
    return base + std::min(std::max(ramp_rate * t_years, 0.0), ramp_cap);
}

double RegimeGBMParams::sigma(int regime, int step) const {
    const double t_years = static_cast<double>(step - 1) * dt;
    return regime == 0 ? sigma_good.at(t_years) : sigma_bad.at(t_years);
}

void RegimeGBMParams::validate() const {
    if (!(s0 > 0.0) || !(strike > 0.0)) {
        throw std::invalid_argument("RegimeGBMParams: prices must be positive");
    }
    if (t_steps < 1 || !(dt > 0.0)) {
        throw std::invalid_argument("RegimeGBMParams: need t_steps >= 1 and dt > 0");
    }
    for (int step = 1; step <= t_steps; ++step) {
        if (sigma(0, step) < 0.0 || sigma(1, step) < 0.0) {
            throw std::invalid_argument("RegimeGBMParams: negative volatility");
        }
    }
}

double StepIncrements::get(int regime, int brownian_down) const {
    if (regime == 0) return brownian_down ? good_down : good_up;
    return brownian_down ? bad_down : bad_up;
}

StepIncrements step_increments(const RegimeGBMParams& params, int step) {
    if (step < 1 || step > params.t_steps) {
        throw std::out_of_range("step_increments: step outside [1, t_steps]");
    }
    const double sq = std::sqrt(params.dt);
    StepIncrements inc;
    const double sg = params.sigma(0, step);
    const double sb = params.sigma(1, step);
    inc.good_up = (params.rate_good - 0.5 * sg * sg) * params.dt + sg * sq;
    inc.good_down = (params.rate_good - 0.5 * sg * sg) * params.dt - sg * sq;
    inc.bad_up = (params.rate_bad - 0.5 * sb * sb) * params.dt + sb * sq;
    inc.bad_down = (params.rate_bad - 0.5 * sb * sb) * params.dt - sb * sq;
    return inc;
}

namespace {

// Visit every (regime path, probability); the no-regime case is the all-good
// path with probability 1. Regime path bit t (t = 1..T) is the state driving
// step t; bit 0 is the initial state.
template <typename Fn>
void for_each_regime_path(const RegimeGBMParams& params, bool with_regimes, Fn&& fn) {
    const int T = params.t_steps;
    if (!with_regimes) {
        fn(std::uint64_t{0}, 1.0);
        return;
    }
    const Eigen::VectorXd dist = markov::exact_chain_distribution(params.chain, T);
    for (std::uint64_t path = 0; path < (std::uint64_t{1} << (T + 1)); ++path) {
        const double p = dist(static_cast<Eigen::Index>(path));
        if (p > 0.0) fn(path, p);
    }
}

}  // namespace

double exact_option_price(const RegimeGBMParams& params, bool with_regimes) {
    params.validate();
    const int T = params.t_steps;
    if (T > 24) {
        throw std::invalid_argument("exact_option_price: enumeration limited to T <= 24");
    }
    std::vector<StepIncrements> incs;
    for (int t = 1; t <= T; ++t) incs.push_back(step_increments(params, t));

    double price = 0.0;
    const double brownian_w = std::ldexp(1.0, -T);
    for_each_regime_path(params, with_regimes, [&](std::uint64_t regimes, double pw) {
        double rate_sum = 0.0;
        for (int t = 1; t <= T; ++t) {
            rate_sum += params.rate(static_cast<int>((regimes >> t) & 1));
        }
        const double discount = std::exp(-rate_sum * params.dt);
        for (std::uint64_t signs = 0; signs < (std::uint64_t{1} << T); ++signs) {
            double ln_s = std::log(params.s0);
            for (int t = 1; t <= T; ++t) {
                ln_s += incs[static_cast<std::size_t>(t - 1)].get(
                    static_cast<int>((regimes >> t) & 1),
                    static_cast<int>((signs >> (t - 1)) & 1));
            }
            const double payoff = std::max(std::exp(ln_s) - params.strike, 0.0);
            price += pw * brownian_w * discount * payoff;
        }
    });
    return price;
}

double expected_discount(const RegimeGBMParams& params, bool with_regimes) {
    const double horizon = static_cast<double>(params.t_steps) * params.dt;
    if (!with_regimes) {
        return std::exp(-params.rate_good * horizon);
    }
    // started at the steady state, so per-step regime marginals stay there
    const Eigen::Vector2d pi = params.chain.steady_state();
    const double r_bar = pi(0) * params.rate_good + pi(1) * params.rate_bad;
    return std::exp(-r_bar * horizon);
}

PriceRegisterSpec make_register_spec(const RegimeGBMParams& params, bool with_regimes,
                                     int n_qubits, double rescale_c) {
    params.validate();
    PriceRegisterSpec spec;
    spec.rescale_c = rescale_c;

    // Reachable accumulated-value range of 1 + ln S_T.
    double lo = 1.0 + std::log(params.s0);
    double hi = lo;
    for (int t = 1; t <= params.t_steps; ++t) {
        const StepIncrements inc = step_increments(params, t);
        double step_lo = inc.good_down, step_hi = inc.good_up;
        if (with_regimes) {
            step_lo = std::min(step_lo, inc.bad_down);
            step_hi = std::max(step_hi, inc.bad_up);
        }
        lo += step_lo;
        hi += step_hi;
    }

    // Largest fractional precision whose signed range still covers the
    // reachable values and the strike level.
    const double strike_level = 1.0 + std::log(params.strike);
    const double bound =
        std::max({std::abs(lo), std::abs(hi), std::abs(strike_level)}) + 1e-9;
    int n_frac = n_qubits - 1;
    while (n_frac > 0 && std::ldexp(1.0, n_qubits - 1 - n_frac) <= bound) {
        --n_frac;
    }
    spec.fp = blocks::FixedPointSpec{n_qubits, n_frac, true};
    if (spec.fp.max_value() < hi || spec.fp.min_value() > lo) {
        throw std::out_of_range("make_register_spec: price range overflows the register");
    }

    spec.strike_grid = spec.fp.to_grid(strike_level);
    spec.reach_lo_grid = spec.fp.to_grid(lo);
    spec.reach_hi_grid = spec.fp.to_grid(hi);
    const std::int64_t payoff_span = spec.reach_hi_grid - spec.strike_grid;
    spec.f_max = static_cast<double>(std::max<std::int64_t>(payoff_span, 1)) *
                 spec.fp.resolution();
    return spec;
}

double price_from_prob(double prob, const PriceRegisterSpec& spec) {
    if (prob < 0.0 || prob > 1.0) {
        throw std::domain_error("price_from_prob: probability outside [0, 1]");
    }
    const double c = spec.rescale_c;
    return 2.0 * spec.f_max / (std::numbers::pi * c) *
           (prob - 0.5 + c * std::numbers::pi / 4.0);
}

}  // namespace qfin::derivative
