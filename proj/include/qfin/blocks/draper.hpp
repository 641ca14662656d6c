#pragma once

#include <cstdint>
#include <vector>

#include "qfin/blocks/fixed_point.hpp"
#include "qfin/sim/circuit.hpp"

namespace qfin::blocks {

// Constant addition in the Fourier basis: the register must already be under
// append_qft. Adding k is the diagonal phase exp(2 pi i k y / 2^n), one Phase
// gate per register qubit (multi-controlled when controls are given).
void append_fourier_add_grid(sim::Circuit& c, const sim::QubitRange& r, std::int64_t grid,
                             const std::vector<int>& controls = {},
                             const std::vector<bool>& polarities = {});

// Fixed-point wrapper: rounds `value` to the nearest grid point of `fp` and
// adds it mod 2^n. Values outside the representable range throw unless the
// modular flag marks the wraparound as intentional.
void append_add_const(sim::Circuit& c, const sim::QubitRange& r, double value,
                      const FixedPointSpec& fp,
                      const std::vector<int>& controls = {},
                      const std::vector<bool>& polarities = {},
                      bool modular = false);

}  // namespace qfin::blocks
