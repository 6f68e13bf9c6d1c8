#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "cpsotfs/types.hpp"

namespace cpsotfs {

/// Running tally of complex multiplications performed by the fast kernels.
/// Multiplications by real constants (normalization) are not counted.
struct CmCounter {
    std::uint64_t complex_multiplies = 0;
};

/// Unnormalized DFT of arbitrary length. Powers of two use an iterative
/// radix-2 kernel costing exactly (L/2)*log2(L) complex multiplies; other
/// lengths go through Bluestein's chirp-z algorithm on a power-of-two grid.
class FftPlan {
public:
    explicit FftPlan(std::size_t length);

    std::size_t size() const { return length_; }
    bool is_radix2() const { return bluestein_inner_ == nullptr; }

    /// x[k] <- sum_n x[n] exp(-j 2 pi n k / L)
    void forward(std::span<cplx> x, CmCounter* counter = nullptr) const;
    /// x[k] <- sum_n x[n] exp(+j 2 pi n k / L)
    void inverse(std::span<cplx> x, CmCounter* counter = nullptr) const;

    /// Complex multiplies one transform of this plan performs.
    std::uint64_t multiplies_per_transform() const;

private:
    void radix2(std::span<cplx> x, bool inverse, CmCounter* counter) const;
    void bluestein(std::span<cplx> x, CmCounter* counter) const;

    std::size_t length_;
    std::vector<cplx> twiddles_;  // exp(-j 2 pi k / L), k < L/2 (radix-2 only)
    std::vector<std::size_t> bit_reverse_;

    std::shared_ptr<const FftPlan> bluestein_inner_;
    std::vector<cplx> chirp_;         // exp(-j pi n^2 / L)
    std::vector<cplx> chirp_filter_;  // FFT of conj chirp, pre-scaled by 1/P
};

}  // namespace cpsotfs
