#pragma once

#include <Eigen/Dense>

#include "qfin/markov/chain.hpp"

namespace qfin::portfolio {

// Per-regime first and second moments of the asset returns plus the chain that
// mixes them, and the investor's risk aversion.
struct RegimeMoments {
    Eigen::VectorXd mu_good;
    Eigen::VectorXd mu_bad;
    Eigen::MatrixXd sigma_good;
    Eigen::MatrixXd sigma_bad;
    double risk_aversion = 1.0;
    markov::TransitionMatrix transition{0.0097, 0.11};

    void validate() const;
};

struct MarkowitzSolution {
    Eigen::VectorXd weights_good;  // stationary weights applied in the good state
    Eigen::VectorXd weights_bad;
    double nu_good = 0.0;  // budget multipliers
    double nu_bad = 0.0;
};

// Closed-form mean-variance weights under regime switching:
//   w(X) = (1/2L) [ SG^-1 (muG + nuG i) p(G|X) + SB^-1 (muB + nuB i) p(B|X) ],
//   nuR  = (2L - i' SR^-1 muR) / (i' SR^-1 i),
// evaluated for both current states; i' w = 1 by construction.
MarkowitzSolution markowitz_weights(const RegimeMoments& moments);

// Risk aversion whose good-state first-asset weight matches `target`, by
// bisection (the weight is monotone in lambda).
double calibrate_risk_aversion(const RegimeMoments& moments, double target_w0_good);

}  // namespace qfin::portfolio
