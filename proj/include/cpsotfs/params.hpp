#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cpsotfs/types.hpp"

namespace cpsotfs {

inline constexpr double kSpeedOfLight = 299'792'458.0;

/// Frame and link parameters. The symbol duration is always 1/delta_f.
struct OtfsParams {
    std::size_t M = 64;                 // subcarriers
    std::size_t N = 16;                 // time slots
    double delta_f = 15e3;              // subcarrier spacing [Hz]
    std::size_t alpha_prime = 8;        // CP / postfix length [samples]
    unsigned qam_order = 4;
    std::vector<std::size_t> guard_set; // null subcarriers, 0-based, sorted unique
    double carrier_freq = 4e9;          // [Hz]
    double speed = 500.0 / 3.6;         // [m/s]

    GridShape shape() const { return {M, N}; }
    double symbol_duration() const { return 1.0 / delta_f; }
    double sample_rate() const { return static_cast<double>(M) * delta_f; }
    double max_doppler_hz() const { return speed * carrier_freq / kSpeedOfLight; }
    /// ceil(nu_max * N * T): largest Doppler bin magnitude a path may have.
    int max_doppler_bin() const;
    bool is_guard(std::size_t m) const;

    /// Throws ConfigError on any violated invariant.
    void validate() const;

    /// Desk-scale defaults: M=64, N=16, alpha'=8, guards scaled from the full profile.
    static OtfsParams desk();
    /// Full-scale profile: M=512, N=127, alpha'=64, 15 kHz, 4 GHz, 500 km/h.
    static OtfsParams full_scale();
};

// Delay-Doppler vector ordering: i = l*N + k (Doppler index k runs fastest).
std::size_t dd_index(std::size_t k, std::size_t l, const GridShape& shape);
std::pair<std::size_t, std::size_t> dd_coords(std::size_t i, const GridShape& shape);

// Time-frequency vector ordering: j = n*M + m (subcarrier m runs fastest within slot n).
std::size_t tf_index(std::size_t n, std::size_t m, const GridShape& shape);
std::pair<std::size_t, std::size_t> tf_coords(std::size_t j, const GridShape& shape);

enum class PermutationRule {
    Transpose,  // q = (s mod M)*N + floor(s/M): the M x N stride permutation
    Printed,    // q = (s mod M)*(N-1) + floor(s/M): not a bijection in general
};

/// pi with P(s, pi[s]) = 1, i.e. (P v)[s] = v[pi[s]].
std::vector<std::size_t> permutation_indices(std::size_t M, std::size_t N,
                                             PermutationRule rule = PermutationRule::Transpose);

bool is_bijection(std::span<const std::size_t> pi);

/// out = P v
CVector apply_permutation(std::span<const std::size_t> pi, const CVector& v);
/// out = P^T v
CVector apply_permutation_transpose(std::span<const std::size_t> pi, const CVector& v);

/// Grid with a fixed flat ordering. Tag distinguishes delay-Doppler from time-frequency.
template <class Tag>
struct Grid {
    GridShape shape;
    CVector data;

    Grid() = default;
    Grid(GridShape s, CVector d) : shape(s), data(std::move(d)) {
        if (static_cast<std::size_t>(data.size()) != shape.size())
            throw std::invalid_argument("grid data length does not equal M*N");
    }
    explicit Grid(GridShape s) : shape(s), data(CVector::Zero(static_cast<Eigen::Index>(s.size()))) {}
};

struct DelayDopplerTag {};
struct TimeFrequencyTag {};

/// data[l*N + k] = d(k, l)
struct DelayDopplerGrid : Grid<DelayDopplerTag> {
    using Grid::Grid;
    cplx& at(std::size_t k, std::size_t l) { return data[static_cast<Eigen::Index>(dd_index(k, l, shape))]; }
    cplx at(std::size_t k, std::size_t l) const { return data[static_cast<Eigen::Index>(dd_index(k, l, shape))]; }
};

/// data[n*M + m] = X(n, m)
struct TimeFrequencyGrid : Grid<TimeFrequencyTag> {
    using Grid::Grid;
    cplx& at(std::size_t n, std::size_t m) { return data[static_cast<Eigen::Index>(tf_index(n, m, shape))]; }
    cplx at(std::size_t n, std::size_t m) const { return data[static_cast<Eigen::Index>(tf_index(n, m, shape))]; }
};

}  // namespace cpsotfs
