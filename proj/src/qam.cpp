#include "cpsotfs/qam.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace cpsotfs {

QamConstellation::QamConstellation(unsigned order) : order_(order) {
    if (order != 4 && order != 16 && order != 64) throw std::invalid_argument("unsupported QAM order");
    bits_ = static_cast<unsigned>(std::countr_zero(order));
    levels_ = 1u << (bits_ / 2);
    const double l = levels_;
    scale_ = 1.0 / std::sqrt(2.0 * (l * l - 1.0) / 3.0);
    gray_to_index_.resize(levels_);
    for (unsigned i = 0; i < levels_; ++i) gray_to_index_[i ^ (i >> 1)] = i;
}

double QamConstellation::level(unsigned gray) const {
    const unsigned i = gray_to_index_[gray];
    return scale_ * (static_cast<double>(levels_) - 1.0 - 2.0 * i);
}

unsigned QamConstellation::decide(double coordinate) const {
    const double pos = ((static_cast<double>(levels_) - 1.0) - coordinate / scale_) / 2.0;
    const double clamped = std::clamp(std::round(pos), 0.0, static_cast<double>(levels_ - 1));
    const auto i = static_cast<unsigned>(clamped);
    return i ^ (i >> 1);
}

cplx QamConstellation::point(unsigned label) const {
    const unsigned half = bits_ / 2;
    return {level(label >> half), level(label & (levels_ - 1))};
}

CVector QamConstellation::map(std::span<const std::uint8_t> bits) const {
    if (bits.size() % bits_ != 0) throw std::invalid_argument("bit count is not a multiple of bits per symbol");
    CVector out(static_cast<Eigen::Index>(bits.size() / bits_));
    for (Eigen::Index s = 0; s < out.size(); ++s) {
        unsigned label = 0;
        for (unsigned b = 0; b < bits_; ++b) label = (label << 1) | (bits[static_cast<std::size_t>(s) * bits_ + b] & 1u);
        out[s] = point(label);
    }
    return out;
}

std::vector<std::uint8_t> QamConstellation::demap(const CVector& symbols) const {
    const unsigned half = bits_ / 2;
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(symbols.size()) * bits_);
    for (Eigen::Index s = 0; s < symbols.size(); ++s) {
        const unsigned label = (decide(symbols[s].real()) << half) | decide(symbols[s].imag());
        for (unsigned b = 0; b < bits_; ++b)
            bits[static_cast<std::size_t>(s) * bits_ + b] = static_cast<std::uint8_t>((label >> (bits_ - 1 - b)) & 1u);
    }
    return bits;
}

}  // namespace cpsotfs
