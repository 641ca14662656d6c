#include "qfin/markov/chain.hpp"

#include <cmath>
#include <stdexcept>

namespace qfin::markov {

Eigen::Matrix2d TransitionMatrix::matrix() const {
    Eigen::Matrix2d a;
    a << 1.0 - p_gb, p_gb,
         p_bg, 1.0 - p_bg;
    return a;
}

Eigen::Vector2d TransitionMatrix::steady_state() const {
    const double total = p_gb + p_bg;
    if (total <= 0.0) {
        throw std::domain_error("TransitionMatrix: steady state needs p_gb + p_bg > 0");
    }
    return Eigen::Vector2d(p_bg / total, p_gb / total);
}

void TransitionMatrix::validate() const {
    if (p_gb < 0.0 || p_gb > 1.0 || p_bg < 0.0 || p_bg > 1.0) {
        throw std::invalid_argument("TransitionMatrix: probabilities outside [0, 1]");
    }
}

void Generator::validate() const {
    if (lambda(0, 1) < 0.0 || lambda(1, 0) < 0.0) {
        throw std::invalid_argument("Generator: off-diagonal rates must be >= 0");
    }
    if (std::abs(lambda.row(0).sum()) > 1e-12 || std::abs(lambda.row(1).sum()) > 1e-12) {
        throw std::invalid_argument("Generator: rows must sum to 0");
    }
}

TransitionMatrix generator_to_transition(const Generator& g, double dt) {
    g.validate();
    if (!(dt > 0.0)) {
        throw std::invalid_argument("generator_to_transition: dt must be positive");
    }
    const double a = g.lambda(0, 1);  // good -> bad rate
    const double b = g.lambda(1, 0);  // bad -> good rate
    const double total = a + b;
    if (total == 0.0) {
        return TransitionMatrix{0.0, 0.0};
    }
    const double decay = std::exp(-total * dt);
    const double pi_g = b / total;
    // P = Pi + decay (I - Pi), row "good": p_gb = (1 - decay) (1 - pi_g).
    return TransitionMatrix{(1.0 - decay) * (1.0 - pi_g), (1.0 - decay) * pi_g};
}

MarkovAngles compute_angles(const TransitionMatrix& tm) {
    tm.validate();
    if (tm.p_gb + tm.p_bg <= 0.0) {
        throw std::domain_error("compute_angles: both transition probabilities are zero");
    }
    MarkovAngles angles;
    angles.theta0 = 2.0 * std::acos(std::sqrt(tm.p_bg / (tm.p_gb + tm.p_bg)));
    angles.theta_from_good = 2.0 * std::acos(std::sqrt(1.0 - tm.p_gb));
    angles.theta_from_bad = 2.0 * std::acos(std::sqrt(tm.p_bg));
    return angles;
}

sim::Circuit build_chain_circuit(const TransitionMatrix& initial,
                                 const std::vector<TransitionMatrix>& per_step,
                                 bool optimized) {
    const int T = static_cast<int>(per_step.size());
    if (T < 1) {
        throw std::invalid_argument("build_chain_circuit: need at least one period");
    }
    sim::Circuit c(T + 1);
    c.add_register("path", 0, T + 1);
    c.ry(0, compute_angles(initial).theta0);
    for (int t = 1; t <= T; ++t) {
        const MarkovAngles a = compute_angles(per_step[static_cast<std::size_t>(t - 1)]);
        if (optimized) {
            c.ry(t, a.theta_from_good);
            c.controlled(sim::GateKind::RY, t, a.theta_from_bad - a.theta_from_good,
                         {t - 1}, {true});
        } else {
            c.controlled(sim::GateKind::RY, t, a.theta_from_good, {t - 1}, {false});
            c.controlled(sim::GateKind::RY, t, a.theta_from_bad, {t - 1}, {true});
        }
    }
    return c;
}

sim::Circuit build_chain_circuit(const TransitionMatrix& tm, int T, bool optimized) {
    if (T < 1) {
        throw std::invalid_argument("build_chain_circuit: T must be >= 1");
    }
    return build_chain_circuit(tm, std::vector<TransitionMatrix>(static_cast<std::size_t>(T), tm),
                               optimized);
}

Eigen::VectorXd exact_chain_distribution(const TransitionMatrix& initial,
                                         const std::vector<TransitionMatrix>& per_step) {
    const int T = static_cast<int>(per_step.size());
    if (T < 1) {
        throw std::invalid_argument("exact_chain_distribution: need at least one period");
    }
    const Eigen::Vector2d pi = initial.steady_state();
    const std::uint64_t paths = std::uint64_t{1} << (T + 1);
    Eigen::VectorXd out(static_cast<Eigen::Index>(paths));
    for (std::uint64_t path = 0; path < paths; ++path) {
        double p = pi(static_cast<Eigen::Index>(path & 1));
        for (int t = 1; t <= T; ++t) {
            const auto from = static_cast<Eigen::Index>((path >> (t - 1)) & 1);
            const auto to = static_cast<Eigen::Index>((path >> t) & 1);
            p *= per_step[static_cast<std::size_t>(t - 1)].matrix()(from, to);
        }
        out(static_cast<Eigen::Index>(path)) = p;
    }
    return out;
}

Eigen::VectorXd exact_chain_distribution(const TransitionMatrix& tm, int T) {
    return exact_chain_distribution(
        tm, std::vector<TransitionMatrix>(static_cast<std::size_t>(T), tm));
}

Eigen::VectorXd exact_chain_distribution(const Eigen::MatrixXd& transition,
                                         const Eigen::VectorXd& initial, int T) {
    const auto m = static_cast<std::uint64_t>(transition.rows());
    if (transition.cols() != transition.rows() || initial.size() != transition.rows()) {
        throw std::invalid_argument("exact_chain_distribution: dimension mismatch");
    }
    std::uint64_t paths = 1;
    for (int t = 0; t <= T; ++t) paths *= m;
    Eigen::VectorXd out(static_cast<Eigen::Index>(paths));
    for (std::uint64_t path = 0; path < paths; ++path) {
        std::uint64_t digits = path;
        auto state = static_cast<Eigen::Index>(digits % m);
        digits /= m;
        double p = initial(state);
        for (int t = 1; t <= T; ++t) {
            const auto next = static_cast<Eigen::Index>(digits % m);
            digits /= m;
            p *= transition(state, next);
            state = next;
        }
        out(static_cast<Eigen::Index>(path)) = p;
    }
    return out;
}

double mse(const std::vector<Histogram>& runs, const Eigen::VectorXd& exact,
           std::uint64_t shots) {
    if (runs.empty() || shots == 0) {
        throw std::invalid_argument("mse: need runs and a positive shot count");
    }
    const auto bins = static_cast<std::uint64_t>(exact.size());
    // Per run: (1/B) [ sum_observed ((c/S - p)^2 - p^2) + sum_all p^2 ].
    const double sum_p2 = exact.squaredNorm();
    double total = 0.0;
    for (const auto& hist : runs) {
        double inner = sum_p2;
        std::uint64_t seen = 0;
        for (const auto& [bin, count] : hist) {
            if (bin >= bins) {
                throw std::invalid_argument("mse: histogram bin outside distribution");
            }
            const double p = exact(static_cast<Eigen::Index>(bin));
            const double freq = static_cast<double>(count) / static_cast<double>(shots);
            inner += (freq - p) * (freq - p) - p * p;
            seen += count;
        }
        if (seen != shots) {
            throw std::invalid_argument("mse: histogram total differs from shot count");
        }
        total += inner / static_cast<double>(bins);
    }
    return total / static_cast<double>(runs.size());
}

double expected_multinomial_mse(const Eigen::VectorXd& exact, std::uint64_t shots) {
    const double sum = (exact.array() * (1.0 - exact.array())).sum();
    return sum / (static_cast<double>(exact.size()) * static_cast<double>(shots));
}

}  // namespace qfin::markov
