#include "qfin/derivative/circuit.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qfin/blocks/draper.hpp"
#include "qfin/blocks/qft.hpp"
#include "qfin/markov/chain.hpp"
#include "qfin/sim/execute.hpp"

namespace qfin::derivative {

namespace {
constexpr double kPi = std::numbers::pi;
}

PriceCircuitLayout price_layout(const RegimeGBMParams& params, bool with_regimes,
                                const PriceRegisterSpec& spec, bool with_objective) {
    PriceCircuitLayout lay;
    const int T = params.t_steps;
    int next = 0;
    if (with_regimes) {
        lay.mc = {0, T + 1};
        next = T + 1;
    }
    lay.brownian = {next, T};
    next += T;
    lay.price = {next, spec.fp.n_total};
    next += spec.fp.n_total;
    lay.sign_qubit = lay.price.end() - 1;
    if (with_objective) {
        lay.objective = next;
        ++next;
    }
    lay.n_qubits = next;
    return lay;
}

sim::Circuit build_price_circuit(const RegimeGBMParams& params,
                                 const PriceRegisterSpec& spec, bool with_regimes) {
    params.validate();
    const PriceCircuitLayout lay = price_layout(params, with_regimes, spec, false);

    // Reject register layouts the accumulated value can escape.
    if (spec.fp.max_value() < static_cast<double>(spec.reach_hi_grid) * spec.fp.resolution() ||
        spec.fp.min_value() > static_cast<double>(spec.reach_lo_grid) * spec.fp.resolution()) {
        throw std::out_of_range("build_price_circuit: fixed-point overflow");
    }

    sim::Circuit c(lay.n_qubits);
    if (with_regimes) c.add_register("mc", lay.mc.start, lay.mc.size);
    c.add_register("brownian", lay.brownian.start, lay.brownian.size);
    c.add_register("price", lay.price.start, lay.price.size);

    if (with_regimes) {
        c.append(markov::build_chain_circuit(params.chain, params.t_steps));
    }
    for (int t = 0; t < params.t_steps; ++t) {
        c.h(lay.brownian.start + t);
    }

    blocks::append_qft(c, lay.price);
    blocks::append_add_const(c, lay.price, std::log(params.s0), spec.fp);
    for (int t = 1; t <= params.t_steps; ++t) {
        const StepIncrements inc = step_increments(params, t);
        const int b = lay.brownian.start + t - 1;
        if (with_regimes) {
            const int m = lay.mc.start + t;  // first chain qubit never controls
            blocks::append_add_const(c, lay.price, inc.good_up, spec.fp,
                                     {m, b}, {false, false});
            blocks::append_add_const(c, lay.price, inc.bad_up, spec.fp,
                                     {m, b}, {true, false});
            blocks::append_add_const(c, lay.price, inc.good_down, spec.fp,
                                     {m, b}, {false, true});
            blocks::append_add_const(c, lay.price, inc.bad_down, spec.fp,
                                     {m, b}, {true, true});
        } else {
            blocks::append_add_const(c, lay.price, inc.good_up, spec.fp, {b}, {false});
            blocks::append_add_const(c, lay.price, inc.good_down, spec.fp, {b}, {true});
        }
    }
    blocks::append_add_const(c, lay.price, 1.0, spec.fp);  // x ~ 1 + ln x
    blocks::append_iqft(c, lay.price);
    return c;
}

namespace {

blocks::LinearAmplitudeSpec payoff_spec(const PriceRegisterSpec& spec) {
    blocks::LinearAmplitudeSpec payoff;
    payoff.slope = spec.fp.resolution() / spec.f_max;
    payoff.offset = 0.0;
    payoff.domain_lo = 0;
    payoff.domain_hi = std::max<std::int64_t>(spec.reach_hi_grid - spec.strike_grid, 0);
    payoff.rescale_c = spec.rescale_c;
    return payoff;
}

}  // namespace

PricingCircuit build_pricing_circuit(const RegimeGBMParams& params,
                                     const PriceRegisterSpec& spec, bool with_regimes) {
    PricingCircuit out;
    out.layout = price_layout(params, with_regimes, spec, true);
    out.payoff = payoff_spec(spec);

    sim::Circuit c(out.layout.n_qubits);
    if (with_regimes) c.add_register("mc", out.layout.mc.start, out.layout.mc.size);
    c.add_register("brownian", out.layout.brownian.start, out.layout.brownian.size);
    c.add_register("price", out.layout.price.start, out.layout.price.size);
    c.add_register("objective", out.layout.objective, 1);
    c.append(build_price_circuit(params, spec, with_regimes));

    // Strike comparison by Fourier-basis subtraction: the register then holds
    // the signed payoff argument and its two's-complement sign qubit plays the
    // comparator ancilla (|0> means value >= strike).
    blocks::append_qft(c, out.layout.price);
    blocks::append_fourier_add_grid(c, out.layout.price, -spec.strike_grid);
    blocks::append_iqft(c, out.layout.price);

    const sim::QubitRange magnitude{out.layout.price.start, out.layout.price.size - 1};
    blocks::append_payoff_rotation(c, out.payoff, magnitude, out.layout.sign_qubit,
                                   /*ancilla_active=*/false, out.layout.objective);
    out.circuit = std::move(c);
    return out;
}

double objective_probability(const RegimeGBMParams& params, const PriceRegisterSpec& spec,
                             bool with_regimes) {
    const PricingCircuit pc = build_pricing_circuit(params, spec, with_regimes);
    return sim::run(pc.circuit, 1).state.prob_of_one(pc.layout.objective);
}

PriceEstimate quantum_option_price(const RegimeGBMParams& params,
                                   const PriceRegisterSpec& spec, bool with_regimes,
                                   std::uint64_t shots, std::uint64_t seed) {
    const double p_exact = objective_probability(params, spec, with_regimes);
    PriceEstimate est;
    est.shots = shots;
    if (shots == 0) {
        est.prob = p_exact;
    } else {
        Eigen::VectorXd bern(2);
        bern << 1.0 - p_exact, p_exact;
        const auto counts = sim::sample_distribution(bern, shots, seed);
        const auto it = counts.find(1);
        est.prob = it == counts.end()
                       ? 0.0
                       : static_cast<double>(it->second) / static_cast<double>(shots);
    }
    est.price = price_from_prob(est.prob, spec) * expected_discount(params, with_regimes);
    return est;
}

PriceErrorTerms price_error_decomposition(const RegimeGBMParams& params,
                                          const PriceRegisterSpec& spec,
                                          bool with_regimes) {
    params.validate();
    const int T = params.t_steps;
    const double res = spec.fp.resolution();
    const double disc_bar = expected_discount(params, with_regimes);

    std::vector<StepIncrements> incs;
    for (int t = 1; t <= T; ++t) incs.push_back(step_increments(params, t));
    const std::int64_t base_grid =
        spec.fp.to_grid(std::log(params.s0)) + spec.fp.to_grid(1.0);

    const blocks::LinearAmplitudeSpec payoff = payoff_spec(spec);
    const std::uint64_t mod_mask = spec.fp.modulus() - 1;

    // One pass over every (regime, sign) path accumulating the references.
    double p_exact = 0.0, p_taylor = 0.0, p_grid = 0.0, p_grid_bar = 0.0, prob = 0.0;
    const double brownian_w = std::ldexp(1.0, -T);
    auto add_paths = [&](std::uint64_t regimes, double pw) {
        double rate_sum = 0.0;
        for (int t = 1; t <= T; ++t) {
            rate_sum += params.rate(static_cast<int>((regimes >> t) & 1));
        }
        const double disc_path = std::exp(-rate_sum * params.dt);
        for (std::uint64_t signs = 0; signs < (std::uint64_t{1} << T); ++signs) {
            double ln_s = std::log(params.s0);
            std::int64_t grid_sum = base_grid;
            for (int t = 1; t <= T; ++t) {
                const int regime = static_cast<int>((regimes >> t) & 1);
                const int down = static_cast<int>((signs >> (t - 1)) & 1);
                const double inc = incs[static_cast<std::size_t>(t - 1)].get(regime, down);
                ln_s += inc;
                grid_sum += spec.fp.to_grid(inc);
            }
            const double w = pw * brownian_w;

            p_exact += w * disc_path * std::max(std::exp(ln_s) - params.strike, 0.0);
            // Taylor payoff on unrounded values: (1 + lnS) - (1 + lnK)
            p_taylor += w * disc_path *
                        std::max(ln_s - std::log(params.strike), 0.0);

            // circuit arithmetic: modular signed accumulation, strike subtracted
            const std::uint64_t bits =
                (static_cast<std::uint64_t>(grid_sum - spec.strike_grid)) & mod_mask;
            const std::int64_t u = spec.fp.grid_of(bits);
            const double grid_payoff = u > 0 ? static_cast<double>(u) * res : 0.0;
            p_grid += w * disc_path * grid_payoff;
            p_grid_bar += w * disc_bar * grid_payoff;

            // objective probability the payoff rotation produces for this state
            prob += w * payoff.objective_probability(u, u >= 0);
        }
    };
    if (with_regimes) {
        const Eigen::VectorXd dist = markov::exact_chain_distribution(params.chain, T);
        for (std::uint64_t path = 0; path < (std::uint64_t{1} << (T + 1)); ++path) {
            const double p = dist(static_cast<Eigen::Index>(path));
            if (p > 0.0) add_paths(path, p);
        }
    } else {
        add_paths(0, 1.0);
    }

    const double p_formula = price_from_prob(prob, spec) * disc_bar;

    PriceErrorTerms terms;
    terms.exact = p_exact;
    terms.taylor = p_taylor - p_exact;
    terms.grid = p_grid - p_taylor;
    terms.discount = p_grid_bar - p_grid;
    terms.small_angle = p_formula - p_grid_bar;
    terms.quantum_sv =
        quantum_option_price(params, spec, with_regimes, 0, 1).price;
    return terms;
}

}  // namespace qfin::derivative
