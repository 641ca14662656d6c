#include "qfin/credit/model.hpp"

#include <cmath>
#include <stdexcept>

#include "qfin/blocks/normal_loader.hpp"
#include "qfin/stats/normal.hpp"

namespace qfin::credit {

void CreditGroupParams::validate() const {
    for (int r = 0; r < 2; ++r) {
        if (!(p_default(r) > 0.0) || !(p_default(r) < 1.0)) {
            throw std::invalid_argument("CreditGroupParams: default probability outside (0, 1)");
        }
        if (sensitivity(r) < 0.0 || sensitivity(r) >= 1.0) {
            throw std::invalid_argument("CreditGroupParams: sensitivity outside [0, 1)");
        }
    }
    if (loss_given_default < 1) {
        throw std::invalid_argument("CreditGroupParams: loss given default must be >= 1");
    }
}

void RegimePrior::validate() const {
    if (p_good < 0.0 || p_good > 1.0) {
        throw std::invalid_argument("RegimePrior: p_good outside [0, 1]");
    }
}

LatentGrid LatentGrid::standardized(int n_qubits, double mean, double stddev,
                                    double z_span) {
    LatentGrid g;
    g.n_qubits = n_qubits;
    g.mean = mean;
    g.stddev = stddev;
    const double top = static_cast<double>((1 << n_qubits) - 1);
    g.a_w = 2.0 * z_span / top;
    g.b_w = -z_span;
    return g;
}

Eigen::VectorXd LatentGrid::index_probabilities() const {
    return blocks::discretized_normal(n_qubits, mean, stddev);
}

double conditional_default_prob(double p_default, double rho, double z) {
    if (!(p_default > 0.0) || !(p_default < 1.0)) {
        throw std::domain_error("conditional_default_prob: p outside (0, 1)");
    }
    if (rho < 0.0 || rho >= 1.0) {
        throw std::domain_error("conditional_default_prob: rho outside [0, 1)");
    }
    const double num = stats::normal_quantile(p_default) - std::sqrt(rho) * z;
    return stats::normal_cdf(num / std::sqrt(1.0 - rho));
}

double regime_mixed_default_prob(const CreditGroupParams& group,
                                 const RegimePrior& prior, double z) {
    prior.validate();
    const double pg = conditional_default_prob(group.p_default(0), group.sensitivity(0), z);
    const double pb = conditional_default_prob(group.p_default(1), group.sensitivity(1), z);
    return prior.p_good * pg + (1.0 - prior.p_good) * pb;
}

namespace {

double theta_of(double p) { return 2.0 * std::asin(std::sqrt(p)); }

// d theta / d z at z, for theta(z) = 2 asin(sqrt(p(z))).
double theta_slope(double p_default, double rho, double z) {
    const double p = conditional_default_prob(p_default, rho, z);
    const double arg = (stats::normal_quantile(p_default) - std::sqrt(rho) * z) /
                       std::sqrt(1.0 - rho);
    const double pdf = std::exp(-0.5 * arg * arg) / std::sqrt(2.0 * std::numbers::pi_v<double>);
    const double dp_dz = -pdf * std::sqrt(rho) / std::sqrt(1.0 - rho);
    return dp_dz / std::sqrt(p * (1.0 - p));
}

template <typename ProbFn, typename SlopeFn>
ThetaLine fit_line(const LatentGrid& grid, FitKind kind, ProbFn prob, SlopeFn slope) {
    const Eigen::VectorXd w = grid.index_probabilities();
    const int n = grid.points();
    Eigen::VectorXd z(n), theta(n);
    for (int k = 0; k < n; ++k) {
        z(k) = grid.z_of(k);
        theta(k) = theta_of(prob(z(k)));
    }
    ThetaLine line;
    if (kind == FitKind::TangentAtMean) {
        const double z_bar = w.dot(z);
        line.a = slope(z_bar);
        line.b = theta_of(prob(z_bar)) - line.a * z_bar;
    } else {
        const double zm = w.dot(z);
        const double tm = w.dot(theta);
        double cov = 0.0, var = 0.0;
        for (int k = 0; k < n; ++k) {
            cov += w(k) * (z(k) - zm) * (theta(k) - tm);
            var += w(k) * (z(k) - zm) * (z(k) - zm);
        }
        line.a = var > 0.0 ? cov / var : 0.0;
        line.b = tm - line.a * zm;
    }
    for (int k = 0; k < n; ++k) {
        line.max_residual = std::max(line.max_residual,
                                     std::abs(theta(k) - (line.a * z(k) + line.b)));
    }
    return line;
}

}  // namespace

ThetaLine linearize_theta(const CreditGroupParams& group, const RegimePrior& prior,
                          const LatentGrid& grid, FitKind kind) {
    group.validate();
    return fit_line(
        grid, kind,
        [&](double z) { return regime_mixed_default_prob(group, prior, z); },
        [&](double z) {
            return prior.p_good * theta_slope(group.p_default(0), group.sensitivity(0), z) +
                   (1.0 - prior.p_good) *
                       theta_slope(group.p_default(1), group.sensitivity(1), z);
        });
}

ThetaLine linearize_theta_regime(double p_default, double rho, const LatentGrid& grid,
                                 FitKind kind) {
    return fit_line(
        grid, kind,
        [&](double z) { return conditional_default_prob(p_default, rho, z); },
        [&](double z) { return theta_slope(p_default, rho, z); });
}

namespace {

Eigen::VectorXd loss_distribution_impl(const std::vector<CreditGroupParams>& groups,
                                       const LatentGrid& grid, const RegimePrior& prior,
                                       bool linearized, FitKind kind) {
    prior.validate();
    std::int64_t max_loss = 0;
    for (const auto& g : groups) {
        g.validate();
        max_loss += g.loss_given_default;
    }
    Eigen::VectorXd out = Eigen::VectorXd::Zero(max_loss + 1);
    const Eigen::VectorXd wz = grid.index_probabilities();
    const Eigen::Vector2d regime_w(prior.p_good, 1.0 - prior.p_good);

    std::vector<ThetaLine> lines[2];
    if (linearized) {
        for (int r = 0; r < 2; ++r) {
            for (const auto& g : groups) {
                lines[r].push_back(
                    linearize_theta_regime(g.p_default(r), g.sensitivity(r), grid, kind));
            }
        }
    }

    const auto n_groups = groups.size();
    for (int r = 0; r < 2; ++r) {
        if (regime_w(r) == 0.0) continue;
        for (int k = 0; k < grid.points(); ++k) {
            const double z = grid.z_of(k);
            std::vector<double> p(n_groups);
            for (std::size_t g = 0; g < n_groups; ++g) {
                if (linearized) {
                    const auto& line = lines[r][g];
                    const double half = (line.a * z + line.b) / 2.0;
                    const double s = std::sin(half);
                    p[g] = s * s;
                } else {
                    p[g] = conditional_default_prob(groups[g].p_default(r),
                                                    groups[g].sensitivity(r), z);
                }
            }
            // convolve the independent group defaults into the loss pmf
            Eigen::VectorXd pmf = Eigen::VectorXd::Zero(max_loss + 1);
            pmf(0) = 1.0;
            for (std::size_t g = 0; g < n_groups; ++g) {
                Eigen::VectorXd next = Eigen::VectorXd::Zero(max_loss + 1);
                const std::int64_t lgd = groups[g].loss_given_default;
                for (std::int64_t l = 0; l + lgd <= max_loss; ++l) {
                    if (pmf(l) == 0.0) continue;
                    next(l) += pmf(l) * (1.0 - p[g]);
                    next(l + lgd) += pmf(l) * p[g];
                }
                for (std::int64_t l = max_loss - lgd + 1; l <= max_loss; ++l) {
                    next(l) += pmf(l) * (1.0 - p[g]);
                }
                pmf.swap(next);
            }
            out += regime_w(r) * wz(k) * pmf;
        }
    }
    return out;
}

}  // namespace

Eigen::VectorXd exact_loss_distribution(const std::vector<CreditGroupParams>& groups,
                                        const LatentGrid& grid, const RegimePrior& prior) {
    return loss_distribution_impl(groups, grid, prior, false, FitKind::WeightedLeastSquares);
}

Eigen::VectorXd exact_loss_distribution_linearized(
    const std::vector<CreditGroupParams>& groups, const LatentGrid& grid,
    const RegimePrior& prior, FitKind kind) {
    return loss_distribution_impl(groups, grid, prior, true, kind);
}

}  // namespace qfin::credit
