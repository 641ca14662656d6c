#include "qfin/blocks/fixed_point.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qfin::blocks {

double FixedPointSpec::resolution() const {
    return std::ldexp(1.0, -n_frac);
}

double FixedPointSpec::min_value() const {
    if (!is_signed) return 0.0;
    return -std::ldexp(1.0, n_total - 1 - n_frac);
}

double FixedPointSpec::max_value() const {
    const std::int64_t top = is_signed ? (std::int64_t{1} << (n_total - 1)) - 1
                                       : (std::int64_t{1} << n_total) - 1;
    return static_cast<double>(top) * resolution();
}

std::int64_t FixedPointSpec::to_grid(double value, bool modular) const {
    if (n_total < 1 || n_total > 62 || n_frac < 0 || n_frac >= n_total + (is_signed ? 0 : 1)) {
        throw std::invalid_argument("FixedPointSpec: invalid bit layout");
    }
    // nearbyint under the default rounding mode gives round-to-nearest-even;
    // increments accumulate over many steps, so ties must not drift.
    const double scaled = std::ldexp(value, n_frac);
    const auto grid = static_cast<std::int64_t>(std::nearbyint(scaled));
    if (!modular) {
        const std::int64_t lo = is_signed ? -(std::int64_t{1} << (n_total - 1)) : 0;
        const std::int64_t hi = is_signed ? (std::int64_t{1} << (n_total - 1)) - 1
                                          : (std::int64_t{1} << n_total) - 1;
        if (grid < lo || grid > hi) {
            throw std::out_of_range("FixedPointSpec: value " + std::to_string(value) +
                                    " outside representable range");
        }
    }
    return grid;
}

std::uint64_t FixedPointSpec::encode_grid(std::int64_t grid) const {
    const std::uint64_t mod = modulus();
    return static_cast<std::uint64_t>(grid) & (mod - 1);
}

std::int64_t FixedPointSpec::grid_of(std::uint64_t bits) const {
    const std::uint64_t mod = modulus();
    bits &= mod - 1;
    if (is_signed && (bits >> (n_total - 1)) != 0) {
        return static_cast<std::int64_t>(bits) - static_cast<std::int64_t>(mod);
    }
    return static_cast<std::int64_t>(bits);
}

double FixedPointSpec::decode(std::uint64_t bits) const {
    return static_cast<double>(grid_of(bits)) * resolution();
}

}  // namespace qfin::blocks
