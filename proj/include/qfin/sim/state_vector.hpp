#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

#include "qfin/sim/circuit.hpp"
#include "qfin/sim/rng.hpp"

namespace qfin::sim {

using Complex = std::complex<double>;

// Dense statevector over n qubits, little-endian: qubit q is bit q of the
// basis-state index. Gate kernels update amplitude pairs in place.
class StateVector {
public:
    explicit StateVector(int n_qubits);
    static StateVector from_amplitudes(Eigen::VectorXcd amplitudes);

    int n_qubits() const { return n_qubits_; }
    std::uint64_t dim() const { return std::uint64_t{1} << n_qubits_; }
    const Eigen::VectorXcd& amplitudes() const { return amps_; }
    Complex amplitude(std::uint64_t index) const { return amps_(static_cast<Eigen::Index>(index)); }

    double norm() const { return amps_.norm(); }

    // Apply a 2x2 unitary to `target`, restricted to basis states whose bits
    // under `control_mask` equal `polarity_mask`.
    void apply_1q(const Complex u[2][2], int target,
                  std::uint64_t control_mask = 0, std::uint64_t polarity_mask = 0);

    // Diagonal fast path: multiply amplitudes with target bit = 1 (and controls
    // matching) by e^{i lambda}.
    void apply_phase(double lambda, int target,
                     std::uint64_t control_mask = 0, std::uint64_t polarity_mask = 0);

    // Apply any unitary GateOp (controls/polarities honored). Throws on
    // measure/reset kinds.
    void apply(const GateOp& op);

    // Collapse `q`, record outcome, renormalize. Outcome is 1 when the drawn
    // uniform is < P(q = 1).
    int measure(int q, Rng& rng);
    void reset(int q, Rng& rng);

    double prob_of_one(int q) const;
    Eigen::VectorXd probabilities() const;
    Eigen::VectorXd marginal(const QubitRange& range) const;

private:
    int n_qubits_;
    Eigen::VectorXcd amps_;
};

// Mask helpers for a GateOp's control pattern.
std::uint64_t control_mask(const GateOp& op);
std::uint64_t polarity_mask(const GateOp& op);

}  // namespace qfin::sim
