#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "qfin/blocks/fixed_point.hpp"
#include "qfin/markov/chain.hpp"
#include "qfin/sim/circuit.hpp"

namespace qfin::portfolio {

// Classical reduction of the dynamic-portfolio loss model: per-month expected
// growths g_G = wG' muG and g_B = wB' muB, relative growth rg = g_G - g_B, the
// worst-case level L_max = g_B T and the shifted loss L' = L - L_max. When
// g_G < g_B the regimes swap roles so rg stays non-negative.
struct GrowthMapping {
    double g_good = 0.0;
    double g_bad = 0.0;
    double rg = 0.0;
    double l_max = 0.0;
    double l_prime = 0.0;
    bool swapped = false;

    blocks::FixedPointSpec fp;    // signed growth register layout
    std::int64_t rg_grid = 0;     // rg rounded to the register grid
    std::int64_t l_prime_grid = 0;
};

// Register sizing follows the stated rule: fractional bits plus
// ceil(log2(rg T) + 1), the extra high bit acting as the two's-complement sign.
GrowthMapping growth_mapping(const Eigen::VectorXd& weights_good,
                             const Eigen::VectorXd& weights_bad,
                             const Eigen::VectorXd& mu_good,
                             const Eigen::VectorXd& mu_bad, int t_steps,
                             double loss_level, int frac_bits = 4);

struct GrowthCircuitLayout {
    sim::QubitRange mc;
    sim::QubitRange growth;
    int objective = 0;  // sign qubit of the growth register
    int n_qubits = 0;
};

GrowthCircuitLayout growth_layout(const GrowthMapping& mapping, int t_steps);

// Fig.-5 style circuit: Markov chain on T+1 qubits, QFT of the growth
// register, one good-state-controlled addition of rg per month (controls start
// at chain qubit 1), subtraction of L', inverse QFT. The sign qubit then reads
// alpha = P(growth - L' < 0).
sim::Circuit build_growth_circuit(const GrowthMapping& mapping,
                                  const markov::TransitionMatrix& tm, int t_steps);

// Path-count oracle: P(rg * #good-months - L' < 0) over the chain started at
// its steady state, with the same grid rounding the circuit applies.
double exact_alpha_oracle(const GrowthMapping& mapping,
                          const markov::TransitionMatrix& tm, int t_steps);

}  // namespace qfin::portfolio
