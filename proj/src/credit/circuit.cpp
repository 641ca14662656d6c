#include "qfin/credit/circuit.hpp"

#include <cmath>
#include <stdexcept>

#include "qfin/blocks/comparator.hpp"
#include "qfin/blocks/normal_loader.hpp"
#include "qfin/blocks/weighted_sum.hpp"

namespace qfin::credit {

CreditCircuitLayout credit_layout(const std::vector<CreditGroupParams>& groups,
                                  const LatentGrid& grid) {
    if (groups.empty()) {
        throw std::invalid_argument("credit_layout: need at least one group");
    }
    std::int64_t max_loss = 0;
    for (const auto& g : groups) {
        g.validate();
        max_loss += g.loss_given_default;
    }
    int n_sum = 1;
    while ((std::int64_t{1} << n_sum) - 1 < max_loss) ++n_sum;

    CreditCircuitLayout lay;
    lay.regime = {0, 1};
    lay.latent = {1, grid.n_qubits};
    lay.groups = {lay.latent.end(), static_cast<int>(groups.size())};
    lay.sum = {lay.groups.end(), n_sum};
    lay.objective = lay.sum.end();
    lay.work = {lay.objective + 1, blocks::comparator_work_qubits(n_sum)};
    lay.n_qubits = lay.work.start + lay.work.size;
    lay.max_loss = max_loss;
    return lay;
}

sim::Circuit build_A_operator(const std::vector<CreditGroupParams>& groups,
                              const LatentGrid& grid, const RegimePrior& prior,
                              std::int64_t loss_threshold, UEncoding encoding,
                              FitKind fit) {
    prior.validate();
    const CreditCircuitLayout lay = credit_layout(groups, grid);
    if (loss_threshold < 0 || loss_threshold > lay.max_loss) {
        throw std::out_of_range("build_A_operator: threshold exceeds maximum loss");
    }

    sim::Circuit c(lay.n_qubits);
    c.add_register("regime", lay.regime.start, lay.regime.size);
    c.add_register("latent", lay.latent.start, lay.latent.size);
    c.add_register("groups", lay.groups.start, lay.groups.size);
    c.add_register("sum", lay.sum.start, lay.sum.size);
    c.add_register("objective", lay.objective, 1);
    if (lay.work.size > 0) c.add_register("work", lay.work.start, lay.work.size);

    // Regime qubit: amplitude sqrt(p_good) on |0> (good).
    c.ry(lay.regime.start, 2.0 * std::acos(std::sqrt(prior.p_good)));

    // Latent factor.
    blocks::append_normal_load(c, lay.latent, grid.mean, grid.stddev);

    // U: default-probability rotations per group, conditioned on the regime.
    for (std::size_t g = 0; g < groups.size(); ++g) {
        const int target = lay.groups.start + static_cast<int>(g);
        for (int r = 0; r < 2; ++r) {
            const bool regime_pol = (r == 1);  // |1> = bad
            if (encoding == UEncoding::ExactRotations) {
                for (int k = 0; k < grid.points(); ++k) {
                    const double p = conditional_default_prob(
                        groups[g].p_default(r), groups[g].sensitivity(r), grid.z_of(k));
                    std::vector<int> controls{lay.regime.start};
                    std::vector<bool> pol{regime_pol};
                    for (int i = 0; i < grid.n_qubits; ++i) {
                        controls.push_back(lay.latent.start + i);
                        pol.push_back(((k >> i) & 1) != 0);
                    }
                    c.controlled(sim::GateKind::RY, target,
                                 2.0 * std::asin(std::sqrt(p)), controls, pol);
                }
            } else {
                const ThetaLine line = linearize_theta_regime(
                    groups[g].p_default(r), groups[g].sensitivity(r), grid, fit);
                // theta(k) = slope_idx * k + offset on the index grid
                const double slope_idx = line.a * grid.a_w;
                const double offset = line.a * grid.b_w + line.b;
                c.controlled(sim::GateKind::RY, target, offset,
                             {lay.regime.start}, {regime_pol});
                for (int i = 0; i < grid.n_qubits; ++i) {
                    c.controlled(sim::GateKind::RY, target,
                                 slope_idx * static_cast<double>(1 << i),
                                 {lay.regime.start, lay.latent.start + i},
                                 {regime_pol, true});
                }
            }
        }
    }

    // S: weighted loss.
    std::vector<int> bits;
    std::vector<std::int64_t> weights;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        bits.push_back(lay.groups.start + static_cast<int>(g));
        weights.push_back(groups[g].loss_given_default);
    }
    blocks::append_weighted_sum(c, bits, weights, lay.sum);

    // C: flip the objective when the loss is >= threshold.
    blocks::append_integer_comparator(c, lay.sum,
                                      static_cast<std::uint64_t>(loss_threshold),
                                      lay.objective, lay.work);
    return c;
}

std::int64_t var_search(double alpha, const std::function<double(std::int64_t)>& cdf,
                        std::int64_t max_loss, int* evaluations, int votes) {
    if (evaluations) *evaluations = 0;
    if (alpha <= 0.0) return 0;
    if (alpha > 1.0) {
        throw std::invalid_argument("var_search: alpha above 1");
    }
    auto meets = [&](std::int64_t x) {
        int yes = 0;
        for (int v = 0; v < votes; ++v) {
            if (evaluations) ++*evaluations;
            if (cdf(x) >= alpha) ++yes;
        }
        return 2 * yes > votes;
    };
    std::int64_t lo = 0, hi = max_loss;
    while (lo < hi) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (meets(mid)) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return lo;
}

}  // namespace qfin::credit
