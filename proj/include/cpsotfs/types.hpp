#pragma once

#include <complex>
#include <cstddef>
#include <numbers>

#include <Eigen/Dense>

namespace cpsotfs {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kPi = std::numbers::pi;

// Largest MN for which dense MN x MN operators are materialized.
inline constexpr std::size_t kDenseLimit = 4096;

/// Frame geometry: M subcarriers (delay bins) by N time slots (Doppler bins).
struct GridShape {
    std::size_t M = 1;
    std::size_t N = 1;

    constexpr std::size_t size() const { return M * N; }
    friend constexpr bool operator==(const GridShape&, const GridShape&) = default;
};

inline cplx unit_phasor(double turns) {
    return std::polar(1.0, 2.0 * kPi * turns);
}

}  // namespace cpsotfs
