#pragma once

#include <cstdint>

namespace qfin::blocks {

// Fixed-point encoding of a register: n_total bits, n_frac of them fractional,
// two's complement when signed. Register integer x encodes value x * 2^-n_frac
// (sign-extended from bit n_total-1 when signed).
struct FixedPointSpec {
    int n_total = 0;
    int n_frac = 0;
    bool is_signed = false;

    double resolution() const;
    double min_value() const;  // inclusive
    double max_value() const;  // inclusive (top grid point)

    // Nearest grid point as a (signed) integer multiple of the resolution;
    // ties round to even. Throws when the value is outside the representable
    // range unless `modular` is set.
    std::int64_t to_grid(double value, bool modular = false) const;

    // Register bit pattern for a grid integer (two's complement reduction).
    std::uint64_t encode_grid(std::int64_t grid) const;

    // Value of a register bit pattern.
    double decode(std::uint64_t bits) const;

    // Signed grid integer of a register bit pattern.
    std::int64_t grid_of(std::uint64_t bits) const;

    std::uint64_t modulus() const { return std::uint64_t{1} << n_total; }
};

}  // namespace qfin::blocks
