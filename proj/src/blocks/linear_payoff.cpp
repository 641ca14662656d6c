#include "qfin/blocks/linear_payoff.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qfin::blocks {

namespace {
constexpr double kPi = std::numbers::pi;
}

double LinearAmplitudeSpec::y(std::int64_t x) const {
    return rescale_c * kPi / 2.0 * (f_hat(x) - 0.5);
}

double LinearAmplitudeSpec::y_baseline() const {
    return rescale_c * kPi / 2.0 * (-0.5);
}

double LinearAmplitudeSpec::objective_probability(std::int64_t x, bool active) const {
    const double yy = active ? y(x) : y_baseline();
    const double s = std::sin(yy + kPi / 4.0);
    return s * s;
}

void LinearAmplitudeSpec::validate() const {
    if (!(rescale_c > 0.0) || rescale_c > 1.0) {
        throw std::invalid_argument("LinearAmplitudeSpec: rescale_c must lie in (0, 1]");
    }
    const double tol = 1e-9;
    for (std::int64_t x : {domain_lo, domain_hi}) {
        const double f = f_hat(x);
        if (f < -tol || f > 1.0 + tol) {
            throw std::invalid_argument(
                "LinearAmplitudeSpec: affine map leaves [0, 1] on the stated domain");
        }
    }
}

void append_payoff_rotation(sim::Circuit& c, const LinearAmplitudeSpec& spec,
                            const sim::QubitRange& input, int ancilla,
                            bool ancilla_active, int objective) {
    spec.validate();

    // Baseline branch: RY(2(pi/4 + y_base)).
    c.ry(objective, 2.0 * (kPi / 4.0 + spec.y_baseline()));

    // Active branch corrections, all commuting RY rotations on the objective:
    // constant part c*pi/2*offset plus per-bit slope contributions.
    const double scale = spec.rescale_c * kPi / 2.0;
    const double const_angle = 2.0 * scale * spec.offset;
    if (const_angle != 0.0) {
        c.controlled(sim::GateKind::RY, objective, const_angle, {ancilla}, {ancilla_active});
    }
    for (int i = 0; i < input.size; ++i) {
        const double bit_angle =
            2.0 * scale * spec.slope * static_cast<double>(std::uint64_t{1} << i);
        c.controlled(sim::GateKind::RY, objective, bit_angle,
                     {ancilla, input.start + i}, {ancilla_active, true});
    }
}

}  // namespace qfin::blocks
