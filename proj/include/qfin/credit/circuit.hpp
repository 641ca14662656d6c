#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "qfin/credit/model.hpp"
#include "qfin/sim/circuit.hpp"

namespace qfin::credit {

enum class UEncoding { Linearized, ExactRotations };

struct CreditCircuitLayout {
    sim::QubitRange regime;
    sim::QubitRange latent;
    sim::QubitRange groups;
    sim::QubitRange sum;
    sim::QubitRange work;
    int objective = 0;
    int n_qubits = 0;
    std::int64_t max_loss = 0;
};

CreditCircuitLayout credit_layout(const std::vector<CreditGroupParams>& groups,
                                  const LatentGrid& grid);

// A = C S U with a regime qubit extending the uncertainty model: the regime
// qubit carries amplitude sqrt(p_good) on |0>, U's rotations are conditioned on
// it (and on the latent register), S accumulates the weighted loss, and C flips
// the objective when the loss is >= threshold. P(objective = 1) = P(L >= threshold).
sim::Circuit build_A_operator(const std::vector<CreditGroupParams>& groups,
                              const LatentGrid& grid, const RegimePrior& prior,
                              std::int64_t loss_threshold,
                              UEncoding encoding = UEncoding::Linearized,
                              FitKind fit = FitKind::WeightedLeastSquares);

// Smallest integer loss whose CDF estimate reaches alpha, by bisection over
// [0, max_loss]. `votes` > 1 re-evaluates each bisection boundary and takes a
// majority of the (cdf >= alpha) outcomes, for sampled evaluators whose
// estimates are noisy. `evaluations` returns the evaluator call count.
std::int64_t var_search(double alpha, const std::function<double(std::int64_t)>& cdf,
                        std::int64_t max_loss, int* evaluations = nullptr, int votes = 1);

}  // namespace qfin::credit
