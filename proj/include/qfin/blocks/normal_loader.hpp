#pragma once

#include <Eigen/Dense>

#include "qfin/sim/circuit.hpp"

namespace qfin::blocks {

// Normal pdf evaluated at grid points 0 .. 2^n - 1 and normalized to sum 1.
Eigen::VectorXd discretized_normal(int n_qubits, double mean, double stddev);

// Exact preparation of sqrt(p) amplitudes (all real, non-negative) via a
// binary tree of multi-controlled RY rotations, most-significant qubit first.
void append_distribution_load(sim::Circuit& c, const sim::QubitRange& r,
                              const Eigen::VectorXd& probs);

void append_normal_load(sim::Circuit& c, const sim::QubitRange& r,
                        double mean, double stddev);

}  // namespace qfin::blocks
