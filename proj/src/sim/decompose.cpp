#include "qfin/sim/decompose.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace qfin::sim {

namespace {

constexpr double kPi = std::numbers::pi;

class Emitter {
public:
    explicit Emitter(const Circuit& in)
        : out_(in.n_qubits(), std::max(in.n_classical_bits(), 1)), n_(in.n_qubits()) {}

    Circuit take() { return std::move(out_); }

    void gate1(GateKind kind, int t, double angle = 0.0) {
        GateOp op{kind, t};
        op.angle = angle;
        out_.append(std::move(op));
    }

    void cx(int c, int t) { out_.cx(c, t); }

    void cry(int c, int t, double theta) {
        gate1(GateKind::RY, t, theta / 2.0);
        cx(c, t);
        gate1(GateKind::RY, t, -theta / 2.0);
        cx(c, t);
    }

    void cp(int c, int t, double lambda) {
        gate1(GateKind::Phase, c, lambda / 2.0);
        cx(c, t);
        gate1(GateKind::Phase, t, -lambda / 2.0);
        cx(c, t);
        gate1(GateKind::Phase, t, lambda / 2.0);
    }

    void ch(int c, int t) {
        cry(c, t, kPi / 2.0);
        cx(c, t);
    }

    // Standard 6-CX Toffoli.
    void toffoli(int c1, int c2, int t) {
        const double T = kPi / 4.0;
        gate1(GateKind::H, t);
        cx(c2, t);
        gate1(GateKind::Phase, t, -T);
        cx(c1, t);
        gate1(GateKind::Phase, t, T);
        cx(c2, t);
        gate1(GateKind::Phase, t, -T);
        cx(c1, t);
        gate1(GateKind::Phase, c2, T);
        gate1(GateKind::Phase, t, T);
        gate1(GateKind::H, t);
        cx(c1, c2);
        gate1(GateKind::Phase, c1, T);
        gate1(GateKind::Phase, c2, -T);
        cx(c1, c2);
    }

    void mcx(const std::vector<int>& c, int t) {
        const std::size_t k = c.size();
        if (k == 0) {
            gate1(GateKind::X, t);
        } else if (k == 1) {
            cx(c[0], t);
        } else if (k == 2) {
            toffoli(c[0], c[1], t);
        } else {
            const int borrowed = find_free(c, t);
            if (borrowed >= 0) {
                // Split across the borrowed qubit; applying each half twice
                // cancels its arbitrary initial state.
                const std::size_t m = (k + 1) / 2;
                std::vector<int> first(c.begin(), c.begin() + static_cast<long>(m));
                std::vector<int> second(c.begin() + static_cast<long>(m), c.end());
                second.push_back(borrowed);
                mcx(second, t);
                mcx(first, borrowed);
                mcx(second, t);
                mcx(first, borrowed);
            } else {
                gate1(GateKind::H, t);
                mcp(c, t, kPi);
                gate1(GateKind::H, t);
            }
        }
    }

    void mcp(std::vector<int> c, int t, double lambda) {
        if (c.empty()) {
            gate1(GateKind::Phase, t, lambda);
        } else if (c.size() == 1) {
            cp(c[0], t, lambda);
        } else {
            const int last = c.back();
            c.pop_back();
            cp(last, t, lambda / 2.0);
            mcx(c, last);
            cp(last, t, -lambda / 2.0);
            mcx(c, last);
            mcp(std::move(c), t, lambda / 2.0);
        }
    }

    void mcry(std::vector<int> c, int t, double theta) {
        if (c.empty()) {
            gate1(GateKind::RY, t, theta);
        } else if (c.size() == 1) {
            cry(c[0], t, theta);
        } else {
            const int last = c.back();
            c.pop_back();
            cry(last, t, theta / 2.0);
            mcx(c, last);
            cry(last, t, -theta / 2.0);
            mcx(c, last);
            mcry(std::move(c), t, theta / 2.0);
        }
    }

    void mch(const std::vector<int>& c, int t) {
        mcry(c, t, kPi / 2.0);
        mcx(c, t);
    }

    void passthrough(const GateOp& op) { out_.append(op); }

private:
    int find_free(const std::vector<int>& controls, int t) const {
        std::uint64_t used = std::uint64_t{1} << t;
        for (int c : controls) used |= std::uint64_t{1} << c;
        for (int q = 0; q < n_; ++q) {
            if ((used & (std::uint64_t{1} << q)) == 0) return q;
        }
        return -1;
    }

    Circuit out_;
    int n_;
};

}  // namespace

Circuit decompose(const Circuit& circuit) {
    Emitter em(circuit);
    for (const auto& op : circuit.ops()) {
        if (!op.is_unitary() || op.conditioned) {
            if (!op.controls.empty()) {
                throw std::invalid_argument(
                    "decompose: controlled non-unitary/conditioned gates unsupported");
            }
            em.passthrough(op);
            continue;
        }
        if (op.controls.empty()) {
            em.passthrough(op);
            continue;
        }
        // Fold 0-polarity controls into X conjugation.
        std::vector<int> flips;
        for (std::size_t i = 0; i < op.controls.size(); ++i) {
            if (!op.polarities[i]) flips.push_back(op.controls[i]);
        }
        for (int q : flips) em.gate1(GateKind::X, q);
        switch (op.kind) {
            case GateKind::X:
                em.mcx(op.controls, op.target);
                break;
            case GateKind::Phase:
                em.mcp(op.controls, op.target, op.angle);
                break;
            case GateKind::RY:
                em.mcry(op.controls, op.target, op.angle);
                break;
            case GateKind::H:
                em.mch(op.controls, op.target);
                break;
            default:
                throw std::logic_error("decompose: unexpected gate kind");
        }
        for (int q : flips) em.gate1(GateKind::X, q);
    }
    return em.take();
}

std::int64_t two_qubit_gate_count(const Circuit& circuit) {
    const Circuit flat = decompose(circuit);
    std::int64_t count = 0;
    for (const auto& op : flat.ops()) {
        if (op.is_unitary() && !op.controls.empty()) ++count;
    }
    return count;
}

}  // namespace qfin::sim
