#pragma once

#include <cstdint>

#include "qfin/sim/circuit.hpp"

namespace qfin::blocks {

// Payoff-to-amplitude map in the small-angle regime. With f_hat(x) = slope*x +
// offset the normalized payoff on the active branch (x the input register's
// raw integer), the objective qubit is rotated so that
//   P(objective = 1 | x) = sin^2(y(x) + pi/4),
//   y(x) = rescale_c * pi/2 * (f_hat(x) - 1/2)   on the active branch,
//   y    = rescale_c * pi/2 * (0        - 1/2)   otherwise (payoff-zero branch).
// sin^2(y + pi/4) ~ y + 1/2 for small y, which is what the price recovery
// formula inverts.
struct LinearAmplitudeSpec {
    double slope = 0.0;
    double offset = 0.0;
    std::int64_t domain_lo = 0;  // integer range of the input register's active branch
    std::int64_t domain_hi = 0;
    double rescale_c = 0.05;

    double f_hat(std::int64_t x) const { return slope * static_cast<double>(x) + offset; }
    double y(std::int64_t x) const;
    double y_baseline() const;
    double objective_probability(std::int64_t x, bool active) const;

    void validate() const;  // rescale_c in (0,1], map within [0,1] over the domain
};

// Emits the rotations: an unconditional baseline RY plus rotations on the
// objective controlled by `ancilla` (at `ancilla_active` polarity) and the
// input bits. The ancilla must already hold the payoff-active predicate.
void append_payoff_rotation(sim::Circuit& c, const LinearAmplitudeSpec& spec,
                            const sim::QubitRange& input, int ancilla,
                            bool ancilla_active, int objective);

}  // namespace qfin::blocks
