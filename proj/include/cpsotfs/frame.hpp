#pragma once

#include <vector>

#include "cpsotfs/types.hpp"

namespace cpsotfs {

enum class EdgeWindow {
    Rectangular,
    MeyerRrc,  // Meyer root-raised-cosine ramp, roll-off 1
};

/// Rising edge of length `length`: w(i) = sin(pi/2 * nu((i + 1/2) / length)) with
/// the Meyer polynomial nu(x) = x^4 (35 - 84x + 70x^2 - 20x^3). Satisfies
/// w(i)^2 + w(length - 1 - i)^2 = 1.
std::vector<double> meyer_rrc_ramp(std::size_t length);

/// Window over MN + 2*alpha' samples: ramp up, MN ones, ramp down.
std::vector<double> frame_window(std::size_t core_length, std::size_t alpha_prime, EdgeWindow shape);

/// Core frame plus its cyclically extended, windowed version.
struct FrameSamples {
    CVector core;
    CVector extended;
    std::size_t alpha_prime = 0;
};

/// [last alpha' samples of s, s, first alpha' samples of s] times the frame window.
CVector add_cp_window(const CVector& s, std::size_t alpha_prime, EdgeWindow shape = EdgeWindow::MeyerRrc);
FrameSamples make_frame(CVector core, std::size_t alpha_prime, EdgeWindow shape = EdgeWindow::MeyerRrc);

/// Drops the first and last alpha' samples. Throws unless r_cp has core_length + 2 alpha' samples.
CVector remove_cp(const CVector& r_cp, std::size_t alpha_prime, std::size_t core_length);

}  // namespace cpsotfs
