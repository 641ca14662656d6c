#pragma once

#include <Eigen/Dense>

#include "qfin/blocks/fixed_point.hpp"
#include "qfin/markov/chain.hpp"

namespace qfin::derivative {

// Volatility schedule sigma(t) = base + min(max(ramp_rate * t, 0), ramp_cap),
// t in years from contract start.
struct SigmaSchedule {
    double base = 0.2;
    double ramp_rate = 0.0;
    double ramp_cap = 0.0;

    double at(double t_years) const;
};

// Risk-neutral regime-switching GBM and the option contract. Step t of
// {1..t_steps} uses the regime after t transitions (chain qubit t) and the
// volatility at t_years = (t - 1) * dt.
struct RegimeGBMParams {
    double rate_good = 0.1;
    double rate_bad = 0.1;
    SigmaSchedule sigma_good;
    SigmaSchedule sigma_bad;
    double s0 = 1.0;
    double strike = 1.0;
    int t_steps = 6;
    double dt = 1.0 / 12.0;
    markov::TransitionMatrix chain{0.0097, 0.11};

    double rate(int regime) const { return regime == 0 ? rate_good : rate_bad; }
    double sigma(int regime, int step) const;  // step in [1, t_steps]
    void validate() const;
};

// Log-price increments of one step: (r - sigma^2/2) dt +/- sigma sqrt(dt).
struct StepIncrements {
    double good_up = 0.0;
    double good_down = 0.0;
    double bad_up = 0.0;
    double bad_down = 0.0;

    double get(int regime, int brownian_down) const;
};

StepIncrements step_increments(const RegimeGBMParams& params, int step);

// Exact two-point-Brownian enumeration: sum over regime paths (steady-state
// start) and Brownian sign paths of path probability x exp(-sum r(X_t) dt) x
// (S_T - K)^+, with exact exponentials.
double exact_option_price(const RegimeGBMParams& params, bool with_regimes);

// Chain-averaged discount exp(-r_bar T dt) used by the quantum pipeline
// (the enumeration oracle discounts per path instead).
double expected_discount(const RegimeGBMParams& params, bool with_regimes);

// Fixed-point layout of the price register plus the payoff scaling knobs.
struct PriceRegisterSpec {
    blocks::FixedPointSpec fp{8, 6, true};
    double f_max = 1.0;       // payoff value mapped to f_hat = 1
    double rescale_c = 0.05;  // small-angle rescaling constant

    std::int64_t strike_grid = 0;     // grid point of 1 + ln(strike)
    std::int64_t reach_lo_grid = 0;   // reachable register range, grid units
    std::int64_t reach_hi_grid = 0;
};

// Sizes the register from S0, the sigma schedule and T: picks the largest
// fractional precision whose signed range still covers every reachable
// accumulated value, and sets f_max to the highest payout the reachable
// register values allow for this strike.
PriceRegisterSpec make_register_spec(const RegimeGBMParams& params, bool with_regimes,
                                     int n_qubits = 8, double rescale_c = 0.05);

// Price = (2 f_max / (pi c)) (prob - 1/2 + c pi / 4).
double price_from_prob(double prob, const PriceRegisterSpec& spec);

}  // namespace qfin::derivative
