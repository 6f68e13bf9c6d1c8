#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "cpsotfs/params.hpp"

namespace cpsotfs {

/// One resolvable path: gain h_p, delay l_p in samples, Doppler k_p in bins of 1/(NT).
struct Path {
    cplx gain;
    std::size_t delay = 0;
    int doppler = 0;
};

using PathSet = std::vector<Path>;

/// Throws std::out_of_range unless every path has delay < MN and |doppler| <= max_doppler_bin.
void validate_paths(const PathSet& paths, std::size_t mn, int max_doppler_bin);

/// H = sum_p h_p Pi^{l_p} Delta^{k_p}, stored sparse (at most one entry per row per distinct delay).
class ChannelMatrix {
public:
    using Sparse = Eigen::SparseMatrix<cplx>;

    explicit ChannelMatrix(Sparse op);
    static ChannelMatrix identity(std::size_t mn);

    std::size_t size() const { return static_cast<std::size_t>(op_.rows()); }
    const Sparse& sparse() const { return op_; }
    CMatrix dense() const;
    CVector apply(const CVector& s) const { return op_ * s; }

private:
    Sparse op_;
};

/// Pi = circ{[0 1 0 ... 0]}, Delta = diag{exp(j 2 pi r / MN)}.
ChannelMatrix build_channel_matrix(const PathSet& paths, std::size_t mn);

/// Matrix-free H s: sum_p h_p exp(j 2 pi k_p ((r - l_p) mod MN) / MN) s((r - l_p) mod MN).
CVector apply_paths(const PathSet& paths, const CVector& s);

/// Tapped-delay-line power profile; powers are relative, in dB.
struct PowerDelayProfile {
    std::string name;
    std::vector<double> delays_s;
    std::vector<double> powers_db;
};

/// Extended Vehicular A (3GPP TS 36.104 Annex B.2).
const PowerDelayProfile& eva_profile();

/// nu_max * cos(theta), theta ~ U[-pi, pi].
double sample_jakes_doppler(double nu_max, std::mt19937_64& rng);

/// One Rayleigh realization of the profile: h_p ~ CN(0, normalized power),
/// l_p = round(tau_p M delta_f), k_p = round(nu_p N T) with Jakes Doppler.
/// Rounding is half-away-from-zero. Throws ConfigError if the largest delay
/// exceeds the CP (tau_max M delta_f > alpha').
PathSet sample_eva(const OtfsParams& params, std::uint64_t seed, const PowerDelayProfile& profile = eva_profile());

/// Circular complex Gaussian noise, E|n|^2 = noise_var per element.
CVector awgn(const CVector& s, double noise_var, std::uint64_t seed);
void add_awgn(CVector& s, double noise_var, std::mt19937_64& rng);

/// CSV with header "path,gain_real,gain_imag,delay,doppler".
void write_paths_csv(std::ostream& os, const PathSet& paths);

}  // namespace cpsotfs
