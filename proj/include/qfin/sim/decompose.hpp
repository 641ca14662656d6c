#pragma once

#include <cstdint>

#include "qfin/sim/circuit.hpp"

namespace qfin::sim {

// Rewrite every multi-controlled gate into single-qubit gates plus CX, with a
// fixed construction so gate counts are reproducible:
//   - 0-polarity controls are X-conjugated into 1-controls.
//   - CX is native; other singly controlled gates use the two-CX identities
//     CRY(t) = RY(t/2) CX RY(-t/2) CX and CP(l) = P(l/2)_c CX P(-l/2)_t CX P(l/2)_t;
//     CH splits as CRY(pi/2) then CX.
//   - CCX is the standard 6-CX Toffoli network.
//   - Multi-controlled X with k >= 3 controls splits across a borrowed qubit
//     (any circuit qubit outside the gate, arbitrary state) into two half-size
//     pieces applied twice; when no borrowed qubit exists it becomes H MCP(pi) H.
//   - Multi-controlled phase/RY recurse through the square-root-of-gate
//     identity C^kU = CV . C^{k-1}X . CV^dag . C^{k-1}X . C^{k-1}V with V^2 = U.
// Measure/reset and classically conditioned single-qubit gates pass through.
Circuit decompose(const Circuit& circuit);

// Number of two-qubit gates (CX) in the decomposed circuit.
std::int64_t two_qubit_gate_count(const Circuit& circuit);

}  // namespace qfin::sim
