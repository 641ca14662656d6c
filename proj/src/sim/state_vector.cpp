#include "qfin/sim/state_vector.hpp"

#include <cmath>
#include <stdexcept>

namespace qfin::sim {

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > 30) {
        throw std::invalid_argument("StateVector: qubit count must be in [1, 30]");
    }
    amps_ = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim()));
    amps_(0) = Complex{1.0, 0.0};
}

StateVector StateVector::from_amplitudes(Eigen::VectorXcd amplitudes) {
    const auto n = amplitudes.size();
    if (n < 2 || (n & (n - 1)) != 0) {
        throw std::invalid_argument("StateVector: amplitude length is not a power of two");
    }
    int bits = 0;
    while ((Eigen::Index{1} << bits) < n) ++bits;
    StateVector sv(bits);
    sv.amps_ = std::move(amplitudes);
    return sv;
}

std::uint64_t control_mask(const GateOp& op) {
    std::uint64_t m = 0;
    for (int c : op.controls) m |= std::uint64_t{1} << c;
    return m;
}

std::uint64_t polarity_mask(const GateOp& op) {
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < op.controls.size(); ++i) {
        if (op.polarities[i]) m |= std::uint64_t{1} << op.controls[i];
    }
    return m;
}

void StateVector::apply_1q(const Complex u[2][2], int target,
                           std::uint64_t cmask, std::uint64_t pmask) {
    const std::uint64_t tbit = std::uint64_t{1} << target;
    const std::uint64_t n = dim();
    Complex* a = amps_.data();
    const Complex u00 = u[0][0], u01 = u[0][1], u10 = u[1][0], u11 = u[1][1];
    if (cmask == 0) {
        for (std::uint64_t base = 0; base < n; base += (tbit << 1)) {
            for (std::uint64_t off = 0; off < tbit; ++off) {
                const std::uint64_t i0 = base + off;
                const std::uint64_t i1 = i0 | tbit;
                const Complex a0 = a[i0], a1 = a[i1];
                a[i0] = u00 * a0 + u01 * a1;
                a[i1] = u10 * a0 + u11 * a1;
            }
        }
    } else {
        for (std::uint64_t base = 0; base < n; base += (tbit << 1)) {
            for (std::uint64_t off = 0; off < tbit; ++off) {
                const std::uint64_t i0 = base + off;
                if ((i0 & cmask) != pmask) continue;
                const std::uint64_t i1 = i0 | tbit;
                const Complex a0 = a[i0], a1 = a[i1];
                a[i0] = u00 * a0 + u01 * a1;
                a[i1] = u10 * a0 + u11 * a1;
            }
        }
    }
}

void StateVector::apply_phase(double lambda, int target,
                              std::uint64_t cmask, std::uint64_t pmask) {
    const std::uint64_t tbit = std::uint64_t{1} << target;
    const std::uint64_t n = dim();
    const Complex w = std::polar(1.0, lambda);
    Complex* a = amps_.data();
    if (cmask == 0) {
        for (std::uint64_t i = tbit; i < n; i = (i + 1) | tbit) {
            a[i] *= w;
        }
    } else {
        for (std::uint64_t i = tbit; i < n; i = (i + 1) | tbit) {
            if ((i & cmask) == pmask) a[i] *= w;
        }
    }
}

void StateVector::apply(const GateOp& op) {
    if (!op.is_unitary()) {
        throw std::invalid_argument("StateVector::apply: measure/reset is not a unitary");
    }
    const std::uint64_t cmask = control_mask(op);
    const std::uint64_t pmask = polarity_mask(op);
    static const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    switch (op.kind) {
        case GateKind::H: {
            const Complex u[2][2] = {{inv_sqrt2, inv_sqrt2}, {inv_sqrt2, -inv_sqrt2}};
            apply_1q(u, op.target, cmask, pmask);
            break;
        }
        case GateKind::X: {
            const Complex u[2][2] = {{0.0, 1.0}, {1.0, 0.0}};
            apply_1q(u, op.target, cmask, pmask);
            break;
        }
        case GateKind::RY: {
            const double c = std::cos(op.angle / 2.0);
            const double s = std::sin(op.angle / 2.0);
            const Complex u[2][2] = {{c, -s}, {s, c}};
            apply_1q(u, op.target, cmask, pmask);
            break;
        }
        case GateKind::Phase:
            apply_phase(op.angle, op.target, cmask, pmask);
            break;
        default:
            break;
    }
}

double StateVector::prob_of_one(int q) const {
    const std::uint64_t qbit = std::uint64_t{1} << q;
    const std::uint64_t n = dim();
    const Complex* a = amps_.data();
    double p = 0.0;
    for (std::uint64_t i = qbit; i < n; i = (i + 1) | qbit) {
        p += std::norm(a[i]);
    }
    return p;
}

int StateVector::measure(int q, Rng& rng) {
    const double p1 = prob_of_one(q);
    const int outcome = rng.uniform() < p1 ? 1 : 0;
    const double keep = outcome == 1 ? p1 : 1.0 - p1;
    if (keep <= 0.0) {
        throw std::runtime_error("StateVector::measure: collapse onto zero-probability branch");
    }
    const double scale = 1.0 / std::sqrt(keep);
    const std::uint64_t qbit = std::uint64_t{1} << q;
    const std::uint64_t n = dim();
    Complex* a = amps_.data();
    for (std::uint64_t i = 0; i < n; ++i) {
        if (((i & qbit) != 0) == (outcome == 1)) {
            a[i] *= scale;
        } else {
            a[i] = Complex{0.0, 0.0};
        }
    }
    return outcome;
}

void StateVector::reset(int q, Rng& rng) {
    const int outcome = measure(q, rng);
    if (outcome == 1) {
        const Complex u[2][2] = {{0.0, 1.0}, {1.0, 0.0}};
        apply_1q(u, q);
    }
}

Eigen::VectorXd StateVector::probabilities() const {
    return amps_.cwiseAbs2();
}

Eigen::VectorXd StateVector::marginal(const QubitRange& range) const {
    if (range.start < 0 || range.end() > n_qubits_ || range.size < 1) {
        throw std::invalid_argument("StateVector::marginal: range out of bounds");
    }
    Eigen::VectorXd out = Eigen::VectorXd::Zero(Eigen::Index{1} << range.size);
    const std::uint64_t n = dim();
    const std::uint64_t mask = range.value_mask();
    const Complex* a = amps_.data();
    for (std::uint64_t i = 0; i < n; ++i) {
        out(static_cast<Eigen::Index>((i >> range.start) & mask)) += std::norm(a[i]);
    }
    return out;
}

}  // namespace qfin::sim
