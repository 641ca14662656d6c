#include "qfin/sim/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qfin::sim {

Circuit::Circuit(int n_qubits, int n_classical_bits)
    : n_qubits_(n_qubits), n_cbits_(n_classical_bits) {
    if (n_qubits < 1 || n_qubits > 62) {
        throw std::invalid_argument("Circuit: qubit count must be in [1, 62]");
    }
    if (n_classical_bits < 0) {
        throw std::invalid_argument("Circuit: negative classical bit count");
    }
}

void Circuit::add_register(const std::string& name, int start, int size) {
    if (size < 1 || start < 0 || start + size > n_qubits_) {
        throw std::invalid_argument("Circuit: register '" + name + "' out of range");
    }
    if (registers_.count(name) != 0) {
        throw std::invalid_argument("Circuit: duplicate register '" + name + "'");
    }
    for (const auto& [other, r] : registers_) {
        const bool disjoint = start >= r.end() || start + size <= r.start;
        if (!disjoint) {
            throw std::invalid_argument("Circuit: register '" + name + "' overlaps '" + other + "'");
        }
    }
    registers_[name] = QubitRange{start, size};
}

const QubitRange& Circuit::reg(const std::string& name) const {
    auto it = registers_.find(name);
    if (it == registers_.end()) {
        throw std::invalid_argument("Circuit: unknown register '" + name + "'");
    }
    return it->second;
}

bool Circuit::has_register(const std::string& name) const {
    return registers_.count(name) != 0;
}

void Circuit::check(const GateOp& op) const {
    if (op.target < 0 || op.target >= n_qubits_) {
        throw std::out_of_range("GateOp: target qubit out of range");
    }
    if (op.polarities.size() != op.controls.size()) {
        throw std::invalid_argument("GateOp: control/polarity list size mismatch");
    }
    std::uint64_t seen = 0;
    for (int c : op.controls) {
        if (c < 0 || c >= n_qubits_) {
            throw std::out_of_range("GateOp: control qubit out of range");
        }
        if (c == op.target) {
            throw std::invalid_argument("GateOp: control equals target");
        }
        const std::uint64_t bit = std::uint64_t{1} << c;
        if (seen & bit) {
            throw std::invalid_argument("GateOp: duplicate control qubit");
        }
        seen |= bit;
    }
    if (!std::isfinite(op.angle)) {
        throw std::invalid_argument("GateOp: non-finite angle");
    }
    if (op.kind == GateKind::Measure) {
        if (op.cbit < 0 || op.cbit >= n_cbits_) {
            throw std::out_of_range("GateOp: measure classical bit out of range");
        }
        if (!op.controls.empty() || op.conditioned) {
            throw std::invalid_argument("GateOp: measure cannot be controlled");
        }
    }
    if (op.conditioned && (op.cbit < 0 || op.cbit >= n_cbits_)) {
        throw std::out_of_range("GateOp: condition classical bit out of range");
    }
}

void Circuit::h(int q) { append(GateOp{GateKind::H, q}); }
void Circuit::x(int q) { append(GateOp{GateKind::X, q}); }

void Circuit::ry(int q, double theta) {
    GateOp op{GateKind::RY, q};
    op.angle = theta;
    append(op);
}

void Circuit::phase(int q, double lambda) {
    GateOp op{GateKind::Phase, q};
    op.angle = lambda;
    append(op);
}

void Circuit::cx(int control, int target) {
    controlled(GateKind::X, target, 0.0, {control});
}

void Circuit::controlled(GateKind kind, int target, double angle,
                         std::vector<int> controls, std::vector<bool> polarities) {
    GateOp op;
    op.kind = kind;
    op.target = target;
    op.angle = angle;
    op.controls = std::move(controls);
    if (polarities.empty()) {
        op.polarities.assign(op.controls.size(), true);
    } else {
        op.polarities = std::move(polarities);
    }
    append(std::move(op));
}

void Circuit::measure(int q, int cbit) {
    GateOp op{GateKind::Measure, q};
    op.cbit = cbit;
    append(op);
}

void Circuit::reset(int q) { append(GateOp{GateKind::Reset, q}); }

void Circuit::if_bit(int cbit, bool value, GateOp op) {
    op.conditioned = true;
    op.cbit = cbit;
    op.cond_value = value;
    append(std::move(op));
}

void Circuit::append(GateOp op) {
    check(op);
    ops_.push_back(std::move(op));
}

void Circuit::append(const Circuit& other) {
    if (other.n_qubits() > n_qubits_ || other.n_classical_bits() > n_cbits_) {
        throw std::invalid_argument("Circuit::append: appended circuit too wide");
    }
    for (const auto& op : other.ops()) {
        append(op);
    }
}

bool Circuit::has_nonunitary() const {
    return std::any_of(ops_.begin(), ops_.end(),
                       [](const GateOp& op) { return !op.is_unitary(); });
}

Circuit Circuit::adjoint() const {
    if (has_nonunitary()) {
        throw std::invalid_argument("Circuit::adjoint: circuit contains measure/reset");
    }
    Circuit out(n_qubits_, n_cbits_);
    out.registers_ = registers_;
    for (auto it = ops_.rbegin(); it != ops_.rend(); ++it) {
        GateOp op = *it;
        if (op.kind == GateKind::RY || op.kind == GateKind::Phase) {
            op.angle = -op.angle;
        }
        out.append(std::move(op));
    }
    return out;
}

}  // namespace qfin::sim
