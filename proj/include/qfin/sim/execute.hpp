#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qfin/sim/circuit.hpp"
#include "qfin/sim/state_vector.hpp"

namespace qfin::sim {

struct RunResult {
    StateVector state;
    std::vector<int> classical_bits;  // one slot per declared classical bit, 0 until written
};

// Execute all ops in order. Mid-circuit measurements collapse the state with
// the seeded generator and write their classical slot; classically conditioned
// gates read it. Norm is checked after every collapse and at the end.
RunResult run(const Circuit& circuit, std::uint64_t seed);

// Marginal distribution over a named register (or explicit range).
Eigen::VectorXd probabilities(const StateVector& state, const QubitRange& range);
Eigen::VectorXd probabilities(const StateVector& state, const Circuit& circuit,
                              const std::string& register_name);

// Multinomial draw of `shots` basis states from |amplitudes|^2, deterministic
// for a fixed seed. Keys are basis-state indices.
std::map<std::uint64_t, std::uint64_t> sample(const StateVector& state,
                                              std::uint64_t shots, std::uint64_t seed);

// Same draw from an explicit probability vector (used for register marginals).
std::map<std::uint64_t, std::uint64_t> sample_distribution(const Eigen::VectorXd& probs,
                                                           std::uint64_t shots,
                                                           std::uint64_t seed);

}  // namespace qfin::sim
