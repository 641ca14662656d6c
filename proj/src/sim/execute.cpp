#include "qfin/sim/execute.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qfin::sim {

namespace {

void check_norm(const StateVector& state, const char* where) {
    const double err = std::abs(state.norm() - 1.0);
    if (err > 1e-10) {
        throw std::runtime_error(std::string("run: state norm off by ") +
                                 std::to_string(err) + " after " + where);
    }
}

}  // namespace

RunResult run(const Circuit& circuit, std::uint64_t seed) {
    StateVector state(circuit.n_qubits());
    std::vector<int> cbits(static_cast<std::size_t>(circuit.n_classical_bits()), 0);
    Rng rng(seed);

    for (const auto& op : circuit.ops()) {
        if (op.conditioned) {
            const bool bit = cbits[static_cast<std::size_t>(op.cbit)] != 0;
            if (bit != op.cond_value) continue;
        }
        switch (op.kind) {
            case GateKind::Measure:
                cbits[static_cast<std::size_t>(op.cbit)] = state.measure(op.target, rng);
                check_norm(state, "measurement");
                break;
            case GateKind::Reset:
                state.reset(op.target, rng);
                check_norm(state, "reset");
                break;
            default:
                state.apply(op);
                break;
        }
    }
    check_norm(state, "final gate");
    return RunResult{std::move(state), std::move(cbits)};
}

Eigen::VectorXd probabilities(const StateVector& state, const QubitRange& range) {
    return state.marginal(range);
}

Eigen::VectorXd probabilities(const StateVector& state, const Circuit& circuit,
                              const std::string& register_name) {
    return state.marginal(circuit.reg(register_name));
}

std::map<std::uint64_t, std::uint64_t> sample_distribution(const Eigen::VectorXd& probs,
                                                           std::uint64_t shots,
                                                           std::uint64_t seed) {
    if (shots == 0) {
        throw std::invalid_argument("sample: shot count must be >= 1");
    }
    Rng rng(seed);
    std::vector<double> u(shots);
    for (auto& v : u) v = rng.uniform();
    std::sort(u.begin(), u.end());

    // Single cumulative sweep over the distribution against sorted uniforms.
    std::map<std::uint64_t, std::uint64_t> counts;
    double cdf = 0.0;
    std::size_t next = 0;
    const auto bins = static_cast<std::uint64_t>(probs.size());
    for (std::uint64_t b = 0; b < bins && next < u.size(); ++b) {
        cdf += probs(static_cast<Eigen::Index>(b));
        std::uint64_t here = 0;
        while (next < u.size() && u[next] < cdf) {
            ++here;
            ++next;
        }
        if (here > 0) counts[b] += here;
    }
    // Guard against cdf rounding just below 1: pile the stragglers on the top bin.
    if (next < u.size()) {
        counts[bins - 1] += u.size() - next;
    }
    return counts;
}

std::map<std::uint64_t, std::uint64_t> sample(const StateVector& state,
                                              std::uint64_t shots, std::uint64_t seed) {
    return sample_distribution(state.probabilities(), shots, seed);
}

}  // namespace qfin::sim
