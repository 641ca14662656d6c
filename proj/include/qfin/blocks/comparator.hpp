#pragma once

#include <cstdint>

#include "qfin/sim/circuit.hpp"

namespace qfin::blocks {

// Flips `result` iff the register's unsigned value is >= threshold. Carry chain
// of the ripple addition x + (2^n - threshold) computed into `work` (size-1
// clean ancillas), then uncomputed so the register and work bits are restored.
// Threshold must lie in [0, 2^n - 1].
void append_integer_comparator(sim::Circuit& c, const sim::QubitRange& reg,
                               std::uint64_t threshold, int result,
                               const sim::QubitRange& work);

int comparator_work_qubits(int register_size);

}  // namespace qfin::blocks
