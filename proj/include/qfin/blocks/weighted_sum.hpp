#pragma once

#include <cstdint>
#include <vector>

#include "qfin/sim/circuit.hpp"

namespace qfin::blocks {

// sum_register += sum_k weights[k] * input_bits[k], computed by one QFT on the
// sum register, a controlled Fourier addition per input bit, and an inverse
// QFT. Throws when the register cannot hold the worst-case sum.
void append_weighted_sum(sim::Circuit& c, const std::vector<int>& input_bits,
                         const std::vector<std::int64_t>& weights,
                         const sim::QubitRange& sum);

}  // namespace qfin::blocks
