#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cpsotfs/types.hpp"

namespace cpsotfs {

/// Square Gray-coded QAM with unit average energy.
///
/// The first half of each symbol's bits selects the in-phase level, the second
/// half the quadrature level. Per axis, level index i (0 = most positive)
/// carries the Gray label i ^ (i >> 1). For 4-QAM this gives
/// 00 -> (+1+j)/sqrt2, 01 -> (+1-j)/sqrt2, 10 -> (-1+j)/sqrt2, 11 -> (-1-j)/sqrt2.
class QamConstellation {
public:
    explicit QamConstellation(unsigned order);

    unsigned order() const { return order_; }
    unsigned bits_per_symbol() const { return bits_; }
    double min_distance() const { return 2.0 * scale_; }

    /// Point for a bit label (MSB first, in-phase bits first).
    cplx point(unsigned label) const;

    /// bits.size() must be a multiple of bits_per_symbol(); bits are 0/1.
    CVector map(std::span<const std::uint8_t> bits) const;
    /// Nearest-point hard decision.
    std::vector<std::uint8_t> demap(const CVector& symbols) const;

private:
    double level(unsigned gray) const;
    unsigned decide(double coordinate) const;

    unsigned order_;
    unsigned bits_;
    unsigned levels_;  // per axis
    double scale_;
    std::vector<unsigned> gray_to_index_;
};

}  // namespace cpsotfs
