#include "cpsotfs/fft.hpp"

#include <bit>
#include <stdexcept>

namespace cpsotfs {

FftPlan::FftPlan(std::size_t length) : length_(length) {
    if (length == 0) throw std::invalid_argument("FFT length must be positive");

    if (std::has_single_bit(length)) {
        twiddles_.resize(length / 2);
        for (std::size_t k = 0; k < length / 2; ++k)
            twiddles_[k] = unit_phasor(-static_cast<double>(k) / static_cast<double>(length));
        const int bits = std::countr_zero(length);
        bit_reverse_.resize(length);
        for (std::size_t i = 0; i < length; ++i) {
            std::size_t r = 0;
            for (int b = 0; b < bits; ++b)
                if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (bits - 1 - b);
            bit_reverse_[i] = r;
        }
        return;
    }

    const std::size_t padded = std::bit_ceil(2 * length - 1);
    bluestein_inner_ = std::make_shared<FftPlan>(padded);

    // n^2 reduced mod 2L keeps the chirp argument small for long transforms.
    chirp_.resize(length);
    const auto two_l = 2 * static_cast<std::uint64_t>(length);
    for (std::size_t n = 0; n < length; ++n) {
        const auto n2 = (static_cast<std::uint64_t>(n) * n) % two_l;
        chirp_[n] = unit_phasor(-static_cast<double>(n2) / static_cast<double>(two_l));
    }

    chirp_filter_.assign(padded, cplx{0.0, 0.0});
    chirp_filter_[0] = std::conj(chirp_[0]);
    for (std::size_t n = 1; n < length; ++n) {
        chirp_filter_[n] = std::conj(chirp_[n]);
        chirp_filter_[padded - n] = std::conj(chirp_[n]);
    }
    bluestein_inner_->forward(chirp_filter_);
    const double scale = 1.0 / static_cast<double>(padded);
    for (auto& c : chirp_filter_) c *= scale;
}

std::uint64_t FftPlan::multiplies_per_transform() const {
    if (is_radix2()) {
        const auto log2l = static_cast<std::uint64_t>(std::countr_zero(length_));
        return static_cast<std::uint64_t>(length_ / 2) * log2l;
    }
    const auto p = static_cast<std::uint64_t>(bluestein_inner_->size());
    return 2 * static_cast<std::uint64_t>(length_) + p + 2 * bluestein_inner_->multiplies_per_transform();
}

void FftPlan::forward(std::span<cplx> x, CmCounter* counter) const {
    if (x.size() != length_) throw std::invalid_argument("FFT input length does not match plan");
    if (is_radix2())
        radix2(x, false, counter);
    else
        bluestein(x, counter);
}

void FftPlan::inverse(std::span<cplx> x, CmCounter* counter) const {
    if (x.size() != length_) throw std::invalid_argument("FFT input length does not match plan");
    if (is_radix2()) {
        radix2(x, true, counter);
        return;
    }
    // IDFT(x) = conj(DFT(conj(x))); conjugation is free.
    for (auto& v : x) v = std::conj(v);
    bluestein(x, counter);
    for (auto& v : x) v = std::conj(v);
}

void FftPlan::radix2(std::span<cplx> x, bool inverse, CmCounter* counter) const {
    const std::size_t n = length_;
    for (std::size_t i = 0; i < n; ++i)
        if (i < bit_reverse_[i]) std::swap(x[i], x[bit_reverse_[i]]);

    std::uint64_t multiplies = 0;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len / 2;
        const std::size_t step = n / len;
        for (std::size_t base = 0; base < n; base += len) {
            for (std::size_t j = 0; j < half; ++j) {
                const cplx w = inverse ? std::conj(twiddles_[j * step]) : twiddles_[j * step];
                const cplx u = x[base + j];
                const cplx v = x[base + j + half] * w;
                ++multiplies;
                x[base + j] = u + v;
                x[base + j + half] = u - v;
            }
        }
    }
    if (counter) counter->complex_multiplies += multiplies;
}

void FftPlan::bluestein(std::span<cplx> x, CmCounter* counter) const {
    const std::size_t padded = bluestein_inner_->size();
    std::vector<cplx> work(padded, cplx{0.0, 0.0});
    for (std::size_t n = 0; n < length_; ++n) work[n] = x[n] * chirp_[n];
    bluestein_inner_->forward(work, counter);
    for (std::size_t k = 0; k < padded; ++k) work[k] *= chirp_filter_[k];
    bluestein_inner_->inverse(work, counter);
    for (std::size_t k = 0; k < length_; ++k) x[k] = work[k] * chirp_[k];
    if (counter) counter->complex_multiplies += 2 * static_cast<std::uint64_t>(length_) + padded;
}

}  // namespace cpsotfs
