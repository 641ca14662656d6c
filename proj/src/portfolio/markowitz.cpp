#include "qfin/portfolio/markowitz.hpp"

#include <cmath>
#include <stdexcept>

namespace qfin::portfolio {

void RegimeMoments::validate() const {
    const auto n = mu_good.size();
    if (n < 1 || mu_bad.size() != n || sigma_good.rows() != n || sigma_good.cols() != n ||
        sigma_bad.rows() != n || sigma_bad.cols() != n) {
        throw std::invalid_argument("RegimeMoments: inconsistent dimensions");
    }
    if (!(risk_aversion > 0.0)) {
        throw std::invalid_argument("RegimeMoments: risk aversion must be positive");
    }
    for (const auto* s : {&sigma_good, &sigma_bad}) {
        if (!s->isApprox(s->transpose(), 1e-10)) {
            throw std::invalid_argument("RegimeMoments: covariance not symmetric");
        }
        Eigen::LLT<Eigen::MatrixXd> llt(*s);
        if (llt.info() != Eigen::Success) {
            throw std::invalid_argument("RegimeMoments: covariance not positive definite");
        }
    }
}

namespace {

Eigen::VectorXd state_weights(const RegimeMoments& m, const Eigen::MatrixXd& inv_g,
                              const Eigen::MatrixXd& inv_b, double nu_g, double nu_b,
                              double p_stay_good_row) {
    const auto n = m.mu_good.size();
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
    const double p_g = p_stay_good_row;
    const double p_b = 1.0 - p_stay_good_row;
    return (inv_g * (m.mu_good + nu_g * ones) * p_g +
            inv_b * (m.mu_bad + nu_b * ones) * p_b) /
           (2.0 * m.risk_aversion);
}

}  // namespace

MarkowitzSolution markowitz_weights(const RegimeMoments& m) {
    m.validate();
    const auto n = m.mu_good.size();
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
    const Eigen::MatrixXd inv_g = m.sigma_good.llt().solve(Eigen::MatrixXd::Identity(n, n));
    const Eigen::MatrixXd inv_b = m.sigma_bad.llt().solve(Eigen::MatrixXd::Identity(n, n));

    MarkowitzSolution sol;
    sol.nu_good = (2.0 * m.risk_aversion - ones.dot(inv_g * m.mu_good)) /
                  ones.dot(inv_g * ones);
    sol.nu_bad = (2.0 * m.risk_aversion - ones.dot(inv_b * m.mu_bad)) /
                 ones.dot(inv_b * ones);

    // current state good: p(G|G) = 1 - p_gb; current state bad: p(G|B) = p_bg
    sol.weights_good = state_weights(m, inv_g, inv_b, sol.nu_good, sol.nu_bad,
                                     1.0 - m.transition.p_gb);
    sol.weights_bad = state_weights(m, inv_g, inv_b, sol.nu_good, sol.nu_bad,
                                    m.transition.p_bg);
    return sol;
}

double calibrate_risk_aversion(const RegimeMoments& moments, double target_w0_good) {
    auto w0 = [&](double lambda) {
        RegimeMoments m = moments;
        m.risk_aversion = lambda;
        return markowitz_weights(m).weights_good(0);
    };
    // bracket the target
    double lo = 1e-4, hi = 1e4;
    double w_lo = w0(lo), w_hi = w0(hi);
    if ((w_lo - target_w0_good) * (w_hi - target_w0_good) > 0.0) {
        throw std::domain_error("calibrate_risk_aversion: target weight not bracketed");
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = std::sqrt(lo * hi);  // lambda spans decades
        if ((w0(mid) - target_w0_good) * (w_lo - target_w0_good) > 0.0) {
            lo = mid;
            w_lo = w0(mid);
        } else {
            hi = mid;
        }
    }
    return std::sqrt(lo * hi);
}

}  // namespace qfin::portfolio
