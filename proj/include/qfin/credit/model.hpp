#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace qfin::credit {

// Homogeneous obligor group: per-regime (good, bad) unconditional default
// probability and latent-factor sensitivity, and an integer loss given default.
struct CreditGroupParams {
    Eigen::Vector2d p_default;    // (good, bad), each in (0, 1)
    Eigen::Vector2d sensitivity;  // rho per regime, each in [0, 1)
    std::int64_t loss_given_default = 1;

    void validate() const;
};

// Truncated, discretized systematic factor: grid index k in [0, 2^n - 1] maps
// to z = a_w k + b_w, with index probabilities from a discretized normal.
struct LatentGrid {
    int n_qubits = 3;
    double a_w = 0.0;
    double b_w = 0.0;
    double mean = 0.0;    // of the index distribution
    double stddev = 1.0;  // of the index distribution

    // Grid whose index distribution is N(mean, stddev) over 0..2^n-1 and whose
    // z values cover [-z_span, z_span]; with n = 3, mean 3.5, sd 1.5 and
    // z_span 2.33 this is the standard-normal truncation the factor model uses.
    static LatentGrid standardized(int n_qubits, double mean, double stddev,
                                   double z_span = 2.33);

    int points() const { return 1 << n_qubits; }
    double z_of(int k) const { return a_w * static_cast<double>(k) + b_w; }
    Eigen::VectorXd index_probabilities() const;
};

struct RegimePrior {
    double p_good = 1.0;  // probability the next-period regime is good
    void validate() const;
};

// Vasicek conditional default probability
// Phi((Phi^-1(p) - sqrt(rho) z) / sqrt(1 - rho)).
double conditional_default_prob(double p_default, double rho, double z);

// Prior-weighted mixture of the two regime-conditional probabilities.
double regime_mixed_default_prob(const CreditGroupParams& group,
                                 const RegimePrior& prior, double z);

// Affine fit theta(z) ~ a z + b of theta = 2 asin(sqrt(p(z))).
struct ThetaLine {
    double a = 0.0;
    double b = 0.0;
    double max_residual = 0.0;  // over the grid points
};

enum class FitKind { WeightedLeastSquares, TangentAtMean };

// Fit of the prior-mixed default probability curve.
ThetaLine linearize_theta(const CreditGroupParams& group, const RegimePrior& prior,
                          const LatentGrid& grid,
                          FitKind kind = FitKind::WeightedLeastSquares);

// Fit of one regime's curve (what the regime-conditioned circuit rotations use).
ThetaLine linearize_theta_regime(double p_default, double rho, const LatentGrid& grid,
                                 FitKind kind = FitKind::WeightedLeastSquares);

// Exact loss distribution over integer losses 0 .. sum(lambda_g): regimes
// weighted by the prior, grid points by the discretized normal, groups
// defaulting independently at the conditional probability.
Eigen::VectorXd exact_loss_distribution(const std::vector<CreditGroupParams>& groups,
                                        const LatentGrid& grid, const RegimePrior& prior);

// Same enumeration with each group's conditional probability replaced by the
// one its linearized rotation encodes; the gap to the exact distribution is the
// measured linearization error.
Eigen::VectorXd exact_loss_distribution_linearized(
    const std::vector<CreditGroupParams>& groups, const LatentGrid& grid,
    const RegimePrior& prior, FitKind kind = FitKind::WeightedLeastSquares);

}  // namespace qfin::credit
