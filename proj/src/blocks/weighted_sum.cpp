#include "qfin/blocks/weighted_sum.hpp"

#include <stdexcept>

#include "qfin/blocks/draper.hpp"
#include "qfin/blocks/qft.hpp"

namespace qfin::blocks {

void append_weighted_sum(sim::Circuit& c, const std::vector<int>& input_bits,
                         const std::vector<std::int64_t>& weights,
                         const sim::QubitRange& sum) {
    if (input_bits.size() != weights.size()) {
        throw std::invalid_argument("weighted_sum: inputs/weights size mismatch");
    }
    std::int64_t total = 0;
    for (std::int64_t w : weights) {
        if (w < 0) throw std::invalid_argument("weighted_sum: negative weight");
        total += w;
    }
    if (total > (std::int64_t{1} << sum.size) - 1) {
        throw std::out_of_range("weighted_sum: sum register overflow");
    }
    append_qft(c, sum);
    for (std::size_t k = 0; k < input_bits.size(); ++k) {
        append_fourier_add_grid(c, sum, weights[k], {input_bits[k]});
    }
    append_iqft(c, sum);
}

}  // namespace qfin::blocks
