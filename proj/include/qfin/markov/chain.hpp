#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <vector>

#include "qfin/sim/circuit.hpp"

namespace qfin::markov {

// Two-state chain over {good = 0, bad = 1}. p_gb is the one-period probability
// of leaving the good state, p_bg of leaving the bad state.
struct TransitionMatrix {
    double p_gb = 0.0;
    double p_bg = 0.0;

    Eigen::Matrix2d matrix() const;        // rows sum to 1
    Eigen::Vector2d steady_state() const;  // (pi_good, pi_bad)
    void validate() const;
};

// Continuous-time generator: off-diagonals >= 0, rows sum to 0.
struct Generator {
    Eigen::Matrix2d lambda = Eigen::Matrix2d::Zero();
    void validate() const;
};

struct MarkovAngles {
    double theta0 = 0.0;       // steady-state preparation of qubit 0
    double theta_from_good = 0.0;  // child rotation when parent is |0> (good)
    double theta_from_bad = 0.0;   // child rotation when parent is |1> (bad)
};

// exp(lambda * dt) through the closed-form two-state solution
// P = Pi + exp(-(l_gb + l_bg) dt) (I - Pi).
TransitionMatrix generator_to_transition(const Generator& g, double dt);

// theta0 = 2 acos(sqrt(p_bg / (p_gb + p_bg)))
// theta_from_good = 2 acos(sqrt(1 - p_gb)), theta_from_bad = 2 acos(sqrt(p_bg))
MarkovAngles compute_angles(const TransitionMatrix& tm);

// T+1 qubits, register "path"; qubit t holds the state after t transitions and
// basis index bit t is 1 in the bad state. The optimized variant replaces each
// controlled pair with an unconditional rotation by theta_from_good plus one
// |1>-controlled rotation by the angle difference.
sim::Circuit build_chain_circuit(const TransitionMatrix& tm, int T, bool optimized = true);

// Non-homogeneous variant: one matrix per step.
sim::Circuit build_chain_circuit(const TransitionMatrix& initial,
                                 const std::vector<TransitionMatrix>& per_step,
                                 bool optimized = true);

// Chapman-Kolmogorov oracle: P(path) = pi(x0) prod_t A[x_t, x_{t+1}], indexed
// by the same bit encoding the circuit uses.
Eigen::VectorXd exact_chain_distribution(const TransitionMatrix& tm, int T);
Eigen::VectorXd exact_chain_distribution(const TransitionMatrix& initial,
                                         const std::vector<TransitionMatrix>& per_step);

// General M-state oracle over M^(T+1) paths (path index in base M, digit t =
// state after t transitions).
Eigen::VectorXd exact_chain_distribution(const Eigen::MatrixXd& transition,
                                         const Eigen::VectorXd& initial, int T);

using Histogram = std::map<std::uint64_t, std::uint64_t>;

// MSE = (1/N) sum_n (1/B) sum_b (pbar_n(b) - p(b))^2 with pbar the empirical
// frequency of run n at `shots` draws.
double mse(const std::vector<Histogram>& runs, const Eigen::VectorXd& exact,
           std::uint64_t shots);

// E[MSE] for multinomial sampling: (1/(B S)) sum_b p(b)(1 - p(b)).
double expected_multinomial_mse(const Eigen::VectorXd& exact, std::uint64_t shots);

}  // namespace qfin::markov
