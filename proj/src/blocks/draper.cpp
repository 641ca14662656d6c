#include "qfin/blocks/draper.hpp"

#include <numbers>
#include <stdexcept>

namespace qfin::blocks {

void append_fourier_add_grid(sim::Circuit& c, const sim::QubitRange& r, std::int64_t grid,
                             const std::vector<int>& controls,
                             const std::vector<bool>& polarities) {
    const std::uint64_t mod = std::uint64_t{1} << r.size;
    const auto k = static_cast<double>(static_cast<std::uint64_t>(grid) & (mod - 1));
    for (int i = 0; i < r.size; ++i) {
        const double lambda = 2.0 * std::numbers::pi * k *
                              static_cast<double>(std::uint64_t{1} << i) /
                              static_cast<double>(mod);
        if (controls.empty()) {
            c.phase(r.start + i, lambda);
        } else {
            c.controlled(sim::GateKind::Phase, r.start + i, lambda, controls, polarities);
        }
    }
}

void append_add_const(sim::Circuit& c, const sim::QubitRange& r, double value,
                      const FixedPointSpec& fp,
                      const std::vector<int>& controls,
                      const std::vector<bool>& polarities,
                      bool modular) {
    if (fp.n_total != r.size) {
        throw std::invalid_argument("append_add_const: register/spec width mismatch");
    }
    append_fourier_add_grid(c, r, fp.to_grid(value, modular), controls, polarities);
}

}  // namespace qfin::blocks
