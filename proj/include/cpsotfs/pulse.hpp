#pragma once

#include <iosfwd>
#include <string_view>
#include <utility>
#include <vector>

#include "cpsotfs/types.hpp"

namespace cpsotfs {

enum class PulseFamily { Rectangular, Dirichlet, Custom };

std::string_view pulse_family_name(PulseFamily family);

/// Length-MN circular prototype pulse, stored in the time domain with unit energy.
class PrototypePulse {
public:
    /// Rescales `samples` to unit energy. Throws on wrong length or zero energy.
    static PrototypePulse from_samples(GridShape shape, CVector samples, PulseFamily family = PulseFamily::Custom);

    const GridShape& shape() const { return shape_; }
    const CVector& samples() const { return samples_; }
    PulseFamily family() const { return family_; }
    double energy() const { return samples_.squaredNorm(); }

    /// Unitary MN-point DFT of the samples.
    CVector spectrum() const;

private:
    PrototypePulse(GridShape shape, CVector samples, PulseFamily family)
        : shape_(shape), samples_(std::move(samples)), family_(family) {}

    GridShape shape_;
    CVector samples_;
    PulseFamily family_;
};

/// One-slot box: (1/sqrt(M)) on samples [0, M-1], zero elsewhere.
PrototypePulse rect_pulse(std::size_t M, std::size_t N);

/// Circulant Dirichlet pulse: unitary MN-point IDFT of a brick wall one
/// subcarrier spacing wide (N bins of the MN-point grid), centred on DC so
/// that subcarrier m occupies [m - 1/2, m + 1/2) in subcarrier units.
PrototypePulse dirichlet_pulse(std::size_t M, std::size_t N);

/// Bins (mod MN) carrying the Dirichlet brick wall, in ascending frequency order.
std::vector<std::size_t> dirichlet_support(std::size_t M, std::size_t N);

/// True iff every entry of the characteristic diagonal has unit magnitude within tol.
bool is_cmcm(const PrototypePulse& g, double tol = 1e-9);

/// CSV with header "index,real,imag"; frequency_domain selects spectrum() over samples().
void write_pulse_csv(std::ostream& os, const PrototypePulse& g, bool frequency_domain = false);

}  // namespace cpsotfs
