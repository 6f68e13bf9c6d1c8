#include "cpsotfs/channel.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <stdexcept>

#include "cpsotfs/errors.hpp"

namespace cpsotfs {

void validate_paths(const PathSet& paths, std::size_t mn, int max_doppler_bin) {
    for (const auto& p : paths) {
        if (p.delay >= mn) throw std::out_of_range("path delay " + std::to_string(p.delay) + " is not below MN");
        if (std::abs(p.doppler) > max_doppler_bin)
            throw std::out_of_range("path Doppler bin " + std::to_string(p.doppler) + " exceeds the bound " +
                                    std::to_string(max_doppler_bin));
    }
}

ChannelMatrix::ChannelMatrix(Sparse op) : op_(std::move(op)) {
    if (op_.rows() != op_.cols()) throw std::invalid_argument("channel matrix must be square");
    op_.makeCompressed();
}

ChannelMatrix ChannelMatrix::identity(std::size_t mn) {
    Sparse eye(static_cast<Eigen::Index>(mn), static_cast<Eigen::Index>(mn));
    eye.setIdentity();
    return ChannelMatrix(std::move(eye));
}

CMatrix ChannelMatrix::dense() const {
    if (size() > kDenseLimit) throw std::length_error("dense channel matrix refused above the dense limit");
    return CMatrix(op_);
}

ChannelMatrix build_channel_matrix(const PathSet& paths, std::size_t mn) {
    if (mn == 0) throw std::invalid_argument("channel size must be positive");
    validate_paths(paths, mn, static_cast<int>(mn) - 1);
    std::vector<Eigen::Triplet<cplx>> entries;
    entries.reserve(paths.size() * mn);
    const auto len = static_cast<long long>(mn);
    for (const auto& p : paths) {
        for (std::size_t r = 0; r < mn; ++r) {
            const std::size_t t = (r + mn - p.delay) % mn;
            const long long phase = (static_cast<long long>(p.doppler) * static_cast<long long>(t)) % len;
            entries.emplace_back(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(t),
                                 p.gain * unit_phasor(static_cast<double>(phase) / static_cast<double>(mn)));
        }
    }
    ChannelMatrix::Sparse h(static_cast<Eigen::Index>(mn), static_cast<Eigen::Index>(mn));
    h.setFromTriplets(entries.begin(), entries.end());
    return ChannelMatrix(std::move(h));
}

CVector apply_paths(const PathSet& paths, const CVector& s) {
    const auto mn = static_cast<std::size_t>(s.size());
    CVector out = CVector::Zero(s.size());
    const auto len = static_cast<long long>(mn);
    for (const auto& p : paths) {
        for (std::size_t r = 0; r < mn; ++r) {
            const std::size_t t = (r + mn - p.delay % mn) % mn;
            const long long phase = (static_cast<long long>(p.doppler) * static_cast<long long>(t)) % len;
            out[static_cast<Eigen::Index>(r)] +=
                p.gain * unit_phasor(static_cast<double>(phase) / static_cast<double>(mn)) * s[static_cast<Eigen::Index>(t)];
        }
    }
    return out;
}

const PowerDelayProfile& eva_profile() {
    static const PowerDelayProfile eva{
        "EVA",
        {0e-9, 30e-9, 150e-9, 310e-9, 370e-9, 710e-9, 1090e-9, 1730e-9, 2510e-9},
        {0.0, -1.5, -1.4, -3.6, -0.6, -9.1, -7.0, -12.0, -16.9},
    };
    return eva;
}

double sample_jakes_doppler(double nu_max, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    return nu_max * std::cos(angle(rng));
}

PathSet sample_eva(const OtfsParams& params, std::uint64_t seed, const PowerDelayProfile& profile) {
    if (profile.delays_s.size() != profile.powers_db.size() || profile.delays_s.empty())
        throw ConfigError("power-delay profile needs matching, non-empty delay and power lists");

    double tau_max = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < profile.delays_s.size(); ++i) {
        tau_max = std::max(tau_max, profile.delays_s[i]);
        total += std::pow(10.0, profile.powers_db[i] / 10.0);
    }
    const double sample_rate = params.sample_rate();
    if (tau_max * sample_rate > static_cast<double>(params.alpha_prime) + 1e-9)
        throw ConfigError("CP too short: max delay spans " + std::to_string(tau_max * sample_rate) +
                          " samples but alpha' = " + std::to_string(params.alpha_prime));

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double nu_max = params.max_doppler_hz();
    const double doppler_bins_per_hz = static_cast<double>(params.N) * params.symbol_duration();

    PathSet paths;
    paths.reserve(profile.delays_s.size());
    for (std::size_t i = 0; i < profile.delays_s.size(); ++i) {
        const double power = std::pow(10.0, profile.powers_db[i] / 10.0) / total;
        const double sigma = std::sqrt(power / 2.0);
        const double re = gauss(rng);
        const double im = gauss(rng);
        const double nu = sample_jakes_doppler(nu_max, rng);
        Path p;
        p.gain = sigma * cplx{re, im};
        p.delay = static_cast<std::size_t>(std::lround(profile.delays_s[i] * sample_rate));
        p.doppler = static_cast<int>(std::lround(nu * doppler_bins_per_hz));
        paths.push_back(p);
    }
    return paths;
}

void add_awgn(CVector& s, double noise_var, std::mt19937_64& rng) {
    if (noise_var < 0.0) throw std::invalid_argument("noise variance must be non-negative");
    if (noise_var == 0.0) return;
    std::normal_distribution<double> gauss(0.0, std::sqrt(noise_var / 2.0));
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        s[i] += cplx{re, im};
    }
}

CVector awgn(const CVector& s, double noise_var, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    CVector out = s;
    add_awgn(out, noise_var, rng);
    return out;
}

void write_paths_csv(std::ostream& os, const PathSet& paths) {
    os << "path,gain_real,gain_imag,delay,doppler\n";
    char line[128];
    for (std::size_t i = 0; i < paths.size(); ++i) {
        std::snprintf(line, sizeof line, "%zu,%.17g,%.17g,%zu,%d\n", i, paths[i].gain.real(), paths[i].gain.imag(),
                      paths[i].delay, paths[i].doppler);
        os << line;
    }
}

}  // namespace cpsotfs
