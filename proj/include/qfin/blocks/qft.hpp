#pragma once

#include "qfin/sim/circuit.hpp"

namespace qfin::blocks {

// Exact quantum Fourier transform on a contiguous register (no rotation
// cutoff): |v> -> 2^{-n/2} sum_y exp(2 pi i v y / 2^n) |y>, with v and y the
// register's little-endian integer values. Swaps included so the transform is
// exactly the DFT matrix in this encoding.
void append_qft(sim::Circuit& c, const sim::QubitRange& r);
void append_iqft(sim::Circuit& c, const sim::QubitRange& r);

}  // namespace qfin::blocks
