#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qfin::sim {

// Gate alphabet. Every unitary kind may carry quantum controls (with per-control
// polarity) and an optional classical condition on one recorded bit.
enum class GateKind { H, X, RY, Phase, Measure, Reset };

struct QubitRange {
    int start = 0;
    int size = 0;

    int end() const { return start + size; }
    bool contains(int q) const { return q >= start && q < end(); }
    std::uint64_t value_mask() const { return ((std::uint64_t{1} << size) - 1); }
};

struct GateOp {
    GateKind kind = GateKind::H;
    int target = 0;
    double angle = 0.0;  // RY / Phase only (radians)

    std::vector<int> controls;
    std::vector<bool> polarities;  // parallel to controls; true = |1> control

    int cbit = -1;            // Measure: destination bit; conditioned gate: source bit
    bool conditioned = false;
    bool cond_value = true;

    bool is_unitary() const { return kind != GateKind::Measure && kind != GateKind::Reset; }
};

// Ordered gate list over n qubits and a classical bit record. Register names map
// to contiguous, mutually disjoint qubit ranges. Qubit 0 is the least-significant
// bit of every basis-state index (little-endian throughout the project).
class Circuit {
public:
    Circuit() = default;
    Circuit(int n_qubits, int n_classical_bits = 0);

    int n_qubits() const { return n_qubits_; }
    int n_classical_bits() const { return n_cbits_; }
    const std::vector<GateOp>& ops() const { return ops_; }

    void add_register(const std::string& name, int start, int size);
    const QubitRange& reg(const std::string& name) const;
    bool has_register(const std::string& name) const;
    const std::map<std::string, QubitRange>& registers() const { return registers_; }

    void h(int q);
    void x(int q);
    void ry(int q, double theta);
    void phase(int q, double lambda);
    void cx(int control, int target);

    // Multi-controlled gate; empty polarity list means all |1> controls.
    void controlled(GateKind kind, int target, double angle,
                    std::vector<int> controls, std::vector<bool> polarities = {});

    void measure(int q, int cbit);
    void reset(int q);

    // Classically conditioned single gate: applied only when recorded bit == value.
    void if_bit(int cbit, bool value, GateOp op);

    void append(GateOp op);
    void append(const Circuit& other);  // other must fit in this circuit's widths

    // Reverse-order adjoint. Throws if the circuit contains measure/reset.
    Circuit adjoint() const;

    bool has_nonunitary() const;

private:
    void check(const GateOp& op) const;

    int n_qubits_ = 0;
    int n_cbits_ = 0;
    std::vector<GateOp> ops_;
    std::map<std::string, QubitRange> registers_;
};

}  // namespace qfin::sim
