#pragma once

#include <cstdint>

#include "qfin/blocks/linear_payoff.hpp"
#include "qfin/derivative/model.hpp"
#include "qfin/sim/circuit.hpp"

namespace qfin::derivative {

struct PriceCircuitLayout {
    sim::QubitRange mc;        // empty when regimes are off
    sim::QubitRange brownian;  // one qubit per step, |0> = up
    sim::QubitRange price;
    int sign_qubit = 0;   // top price bit; doubles as the strike comparator
    int objective = -1;   // present only in the pricing circuit
    int n_qubits = 0;
};

PriceCircuitLayout price_layout(const RegimeGBMParams& params, bool with_regimes,
                                const PriceRegisterSpec& spec, bool with_objective);

// Fig.-3 style accumulation: Markov chain (optional), Hadamards on the
// Brownian register, then Fourier-basis additions of ln S0, the per-step
// increments (controlled on regime and Brownian qubits) and the Taylor
// constant 1, closed by an inverse QFT. The price register ends holding
// 1 + ln S_T on its fixed-point grid.
sim::Circuit build_price_circuit(const RegimeGBMParams& params,
                                 const PriceRegisterSpec& spec, bool with_regimes);

// Full pricing circuit: accumulation, then a Fourier-basis subtraction of the
// strike level so the register holds the signed payoff argument and its sign
// qubit is the x >= strike comparator, then the payoff rotation onto the
// objective qubit.
struct PricingCircuit {
    sim::Circuit circuit;
    PriceCircuitLayout layout;
    blocks::LinearAmplitudeSpec payoff;
};

PricingCircuit build_pricing_circuit(const RegimeGBMParams& params,
                                     const PriceRegisterSpec& spec, bool with_regimes);

// Statevector objective probability of the pricing circuit.
double objective_probability(const RegimeGBMParams& params, const PriceRegisterSpec& spec,
                             bool with_regimes);

struct PriceEstimate {
    double price = 0.0;
    double prob = 0.0;
    std::uint64_t shots = 0;  // 0 = exact statevector mode
};

// Runs the pipeline and recovers the discounted price; shots == 0 uses the
// exact objective probability, otherwise a seeded Bernoulli draw of it.
PriceEstimate quantum_option_price(const RegimeGBMParams& params,
                                   const PriceRegisterSpec& spec, bool with_regimes,
                                   std::uint64_t shots, std::uint64_t seed);

// Classical references that re-walk the pipeline one approximation at a time;
// every term is an enumeration, independent of the simulator.
struct PriceErrorTerms {
    double exact = 0.0;        // path discount, exact exponentials
    double taylor = 0.0;       // 1 + ln x payoff instead of exact
    double grid = 0.0;         // fixed-point rounding of every added constant
    double discount = 0.0;     // chain-averaged discount replacing per-path
    double small_angle = 0.0;  // sin^2 readout through the price formula
    double quantum_sv = 0.0;   // statevector pipeline price

    double total_model_error() const { return taylor + grid + discount + small_angle; }
};

PriceErrorTerms price_error_decomposition(const RegimeGBMParams& params,
                                          const PriceRegisterSpec& spec,
                                          bool with_regimes);

}  // namespace qfin::derivative
