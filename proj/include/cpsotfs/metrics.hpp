#pragma once

#include <cstdint>
#include <vector>

#include "cpsotfs/channel.hpp"
#include "cpsotfs/csv.hpp"
#include "cpsotfs/frame.hpp"
#include "cpsotfs/waveform.hpp"

namespace cpsotfs {

// ---------------------------------------------------------------------------
// Power spectral density / out-of-band emission
// ---------------------------------------------------------------------------

struct PsdOptions {
    std::size_t frames = 500;
    std::size_t nfft = 0;  // 0: next power of two >= 4 (MN + 2 alpha')
    std::uint64_t seed = 1;
    EdgeWindow window = EdgeWindow::MeyerRrc;
    bool tone = false;                // calibration: a pure tone instead of data
    std::size_t tone_subcarrier = 0;
    unsigned threads = 0;
};

struct PsdResult {
    WaveformKind kind{};
    std::size_t frames = 0;
    std::size_t nfft = 0;
    std::vector<double> position;   // bin k at k*M/nfft, in subcarrier units
    std::vector<double> psd_db;     // normalized so the in-band linear mean is 0 dB
    std::vector<bool> guard_bin;
    std::vector<double> raw_power;  // frame-averaged |FFT|^2, unnormalized
    double mean_frame_energy = 0.0;
    /// Arithmetic mean of psd_db over guard bins.
    double guard_mean_db = 0.0;
    /// Linear-power mean over guard bins, expressed in dB.
    double guard_power_db = 0.0;
};

std::size_t default_nfft(std::size_t extended_length);

/// Averaged periodogram of windowed, CP-extended frames with random 4/16/64-QAM
/// data and the guard subcarriers nulled (rectangular analysis window).
/// Bin k is a guard bin when round(k*M/nfft) mod M is in the guard set.
PsdResult measure_psd(const OtfsParams& params, WaveformKind kind, const PsdOptions& options);
std::vector<MetricRecord> psd_records(const PsdResult& result, std::uint64_t seed);

// ---------------------------------------------------------------------------
// PAPR
// ---------------------------------------------------------------------------

/// 10 log10(max |s|^2 / mean |s|^2).
double papr_db(const CVector& s);

struct PaprOptions {
    std::size_t trials = 20000;
    std::uint64_t seed = 1;
    bool include_extension = false;  // measure on the CP-extended, windowed frame
    bool guard_nulls = false;        // null the guard subcarriers first
    unsigned threads = 0;
};

struct PaprResult {
    WaveformKind kind{};
    std::vector<double> papr_db;  // ascending

    /// Fraction of frames with PAPR strictly above threshold.
    double ccdf(double threshold_db) const;
    /// Smallest observed PAPR gamma with ccdf(gamma) <= probability.
    double threshold_at(double probability) const;
};

PaprResult measure_papr(const OtfsParams& params, WaveformKind kind, const PaprOptions& options);
/// CCDF sampled every 0.1 dB from 0 dB to just past the largest observation.
std::vector<MetricRecord> papr_records(const PaprResult& result, std::uint64_t seed);

// ---------------------------------------------------------------------------
// BER
// ---------------------------------------------------------------------------

enum class ChannelModel { Eva, Identity };

struct BerOptions {
    std::vector<double> snr_db{0, 5, 10, 15, 20};
    std::uint64_t target_errors = 200;
    std::uint64_t max_frames = 2000;
    std::size_t batch = 16;  // stopping rule is evaluated between batches
    std::uint64_t seed = 1;
    ChannelModel channel = ChannelModel::Eva;
    PowerDelayProfile profile = eva_profile();
    unsigned threads = 0;
};

struct BerPoint {
    double snr_db = 0.0;
    std::uint64_t bit_errors = 0;
    std::uint64_t bits = 0;
    std::uint64_t frames = 0;
    double ber = 0.0;
    double ci_low = 0.0;   // 95% Wilson interval
    double ci_high = 0.0;
};

/// Wilson score interval for a binomial proportion.
std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.959963984540054);

/// Monte Carlo BER with SNR = sigma_d^2 / sigma_n^2 (sigma_d^2 = 1). Frames
/// use common random numbers across waveforms: frame f draws its bits and
/// channel from (seed, f) and its noise from (seed, snr index, f).
std::vector<BerPoint> run_ber(const OtfsParams& params, WaveformKind kind, const BerOptions& options);
std::vector<MetricRecord> ber_records(WaveformKind kind, const std::vector<BerPoint>& points, std::uint64_t seed);

/// Gray 4-QAM bit error probability on AWGN: Q(sqrt(SNR)).
double qpsk_awgn_ber(double snr_db);

// ---------------------------------------------------------------------------
// Transmitter complexity
// ---------------------------------------------------------------------------

/// MN + (MN/2) log2 N, evaluated with real-valued log2.
double cm_formula(std::size_t M, std::size_t N);

struct CmReport {
    std::size_t M = 0;
    std::size_t N = 0;
    double formula = 0.0;
    std::uint64_t measured_cdps = 0;  // Dirichlet pulse: diagonal stage + IFFTs
    std::uint64_t measured_rps = 0;   // rectangular pulse: IFFTs only
};

CmReport cm_count(std::size_t M, std::size_t N);

}  // namespace cpsotfs
