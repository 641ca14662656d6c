#include "qfin/blocks/qft.hpp"

#include <numbers>
#include <stdexcept>

namespace qfin::blocks {

namespace {

void swap_qubits(sim::Circuit& c, int a, int b) {
    c.cx(a, b);
    c.cx(b, a);
    c.cx(a, b);
}

sim::Circuit qft_fragment(int n_qubits, const sim::QubitRange& r) {
    if (r.size < 1) {
        throw std::invalid_argument("qft: register must have at least one qubit");
    }
    sim::Circuit frag(n_qubits);
    for (int i = r.size - 1; i >= 0; --i) {
        frag.h(r.start + i);
        for (int j = i - 1; j >= 0; --j) {
            frag.controlled(sim::GateKind::Phase, r.start + i,
                            std::numbers::pi / static_cast<double>(1 << (i - j)),
                            {r.start + j});
        }
    }
    for (int k = 0; k < r.size / 2; ++k) {
        swap_qubits(frag, r.start + k, r.start + r.size - 1 - k);
    }
    return frag;
}

}  // namespace

void append_qft(sim::Circuit& c, const sim::QubitRange& r) {
    c.append(qft_fragment(c.n_qubits(), r));
}

void append_iqft(sim::Circuit& c, const sim::QubitRange& r) {
    c.append(qft_fragment(c.n_qubits(), r).adjoint());
}

}  // namespace qfin::blocks
