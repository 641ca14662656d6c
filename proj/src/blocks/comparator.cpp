#include "qfin/blocks/comparator.hpp"

#include <stdexcept>

namespace qfin::blocks {

int comparator_work_qubits(int register_size) {
    return register_size > 1 ? register_size - 1 : 0;
}

void append_integer_comparator(sim::Circuit& c, const sim::QubitRange& reg,
                               std::uint64_t threshold, int result,
                               const sim::QubitRange& work) {
    const int n = reg.size;
    if (n < 1 || n > 62) {
        throw std::invalid_argument("comparator: bad register size");
    }
    const std::uint64_t top = (std::uint64_t{1} << n) - 1;
    if (threshold > top) {
        throw std::out_of_range("comparator: threshold outside register range");
    }
    if (threshold == 0) {
        c.x(result);  // x >= 0 always
        return;
    }
    if (n == 1) {
        c.cx(reg.start, result);  // threshold == 1: carry is the register bit
        return;
    }
    if (work.size < n - 1) {
        throw std::invalid_argument("comparator: needs size-1 work qubits");
    }

    // Carry chain of x + (2^n - threshold); carry out of the top bit means
    // x >= threshold. With t_i the i-th bit of the two's complement constant:
    // carry_i = x_i           when i == 0 and t_0 = 1
    //         = x_i OR carry  when t_i = 1
    //         = x_i AND carry when t_i = 0
    const std::uint64_t twos = (std::uint64_t{1} << n) - threshold;
    sim::Circuit chain(c.n_qubits());
    auto t_bit = [&](int i) { return ((twos >> i) & 1) != 0; };

    if (t_bit(0)) {
        chain.cx(reg.start, work.start);
    }
    for (int i = 1; i < n - 1; ++i) {
        const int x = reg.start + i;
        const int prev = work.start + i - 1;
        const int out = work.start + i;
        if (t_bit(i)) {
            chain.x(x);
            chain.x(prev);
            chain.controlled(sim::GateKind::X, out, 0.0, {x, prev});
            chain.x(out);
            chain.x(x);
            chain.x(prev);
        } else {
            chain.controlled(sim::GateKind::X, out, 0.0, {x, prev});
        }
    }
    c.append(chain);

    // Top bit writes the comparison into `result` (OR expanded as a XOR sum).
    const int x_top = reg.start + n - 1;
    const int carry = work.start + n - 2;
    if (t_bit(n - 1)) {
        c.cx(x_top, result);
        c.cx(carry, result);
        c.controlled(sim::GateKind::X, result, 0.0, {x_top, carry});
    } else {
        c.controlled(sim::GateKind::X, result, 0.0, {x_top, carry});
    }

    // Uncompute the chain (every op is self-inverse).
    sim::Circuit undo(c.n_qubits());
    for (auto it = chain.ops().rbegin(); it != chain.ops().rend(); ++it) {
        undo.append(*it);
    }
    c.append(undo);
}

}  // namespace qfin::blocks
