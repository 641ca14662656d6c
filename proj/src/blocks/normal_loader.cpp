#include "qfin/blocks/normal_loader.hpp"

#include <cmath>
#include <stdexcept>

namespace qfin::blocks {

Eigen::VectorXd discretized_normal(int n_qubits, double mean, double stddev) {
    if (stddev <= 0.0) {
        throw std::invalid_argument("discretized_normal: stddev must be positive");
    }
    const Eigen::Index n = Eigen::Index{1} << n_qubits;
    Eigen::VectorXd pdf(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const double z = (static_cast<double>(k) - mean) / stddev;
        pdf(k) = std::exp(-0.5 * z * z);
    }
    return pdf / pdf.sum();
}

void append_distribution_load(sim::Circuit& c, const sim::QubitRange& r,
                              const Eigen::VectorXd& probs) {
    const Eigen::Index n = Eigen::Index{1} << r.size;
    if (probs.size() != n) {
        throw std::invalid_argument("distribution_load: probability vector size mismatch");
    }
    if (probs.minCoeff() < 0.0) {
        throw std::invalid_argument("distribution_load: negative probability");
    }

    // One RY per tree node, conditioned on the higher (already-prepared) bits.
    for (int b = r.size - 1; b >= 0; --b) {
        const int n_high = r.size - 1 - b;
        for (std::uint64_t pref = 0; pref < (std::uint64_t{1} << n_high); ++pref) {
            double p0 = 0.0, p1 = 0.0;
            for (std::uint64_t low = 0; low < (std::uint64_t{1} << b); ++low) {
                const std::uint64_t v0 = (pref << (b + 1)) | low;
                p0 += probs(static_cast<Eigen::Index>(v0));
                p1 += probs(static_cast<Eigen::Index>(v0 | (std::uint64_t{1} << b)));
            }
            if (p0 + p1 <= 0.0) continue;
            const double theta = 2.0 * std::atan2(std::sqrt(p1), std::sqrt(p0));
            if (n_high == 0) {
                c.ry(r.start + b, theta);
            } else {
                std::vector<int> controls;
                std::vector<bool> pol;
                for (int h = 0; h < n_high; ++h) {
                    controls.push_back(r.start + b + 1 + h);
                    pol.push_back(((pref >> h) & 1) != 0);
                }
                c.controlled(sim::GateKind::RY, r.start + b, theta, controls, pol);
            }
        }
    }
}

void append_normal_load(sim::Circuit& c, const sim::QubitRange& r,
                        double mean, double stddev) {
    append_distribution_load(c, r, discretized_normal(r.size, mean, stddev));
}

}  // namespace qfin::blocks
