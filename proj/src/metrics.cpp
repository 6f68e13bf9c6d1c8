#include "cpsotfs/metrics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>

#include "cpsotfs/errors.hpp"
#include "cpsotfs/qam.hpp"
#include "cpsotfs/rng.hpp"
#include "parallel.hpp"

namespace cpsotfs {

namespace {

// Stream identifiers for derive_seed.
constexpr std::uint64_t kDataStream = 1;
constexpr std::uint64_t kChannelStream = 2;
constexpr std::uint64_t kNoiseStream = 3;

std::vector<std::uint8_t> random_bits(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::uint8_t> bits(count);
    for (std::size_t i = 0; i < count; i += 64) {
        const std::uint64_t word = rng();
        for (std::size_t b = 0; b < 64 && i + b < count; ++b) bits[i + b] = static_cast<std::uint8_t>((word >> b) & 1u);
    }
    return bits;
}

CVector tone_frame(const GridShape& shape, std::size_t subcarrier) {
    CVector s(static_cast<Eigen::Index>(shape.size()));
    for (std::size_t r = 0; r < shape.size(); ++r)
        s[static_cast<Eigen::Index>(r)] =
            unit_phasor(static_cast<double>((subcarrier * r) % shape.M) / static_cast<double>(shape.M));
    return s / std::sqrt(static_cast<double>(shape.size()));
}

}  // namespace

std::size_t default_nfft(std::size_t extended_length) { return std::bit_ceil(4 * extended_length); }

PsdResult measure_psd(const OtfsParams& params, WaveformKind kind, const PsdOptions& options) {
    params.validate();
    const GridShape shape = params.shape();
    const std::size_t extended = shape.size() + 2 * params.alpha_prime;
    const std::size_t nfft = options.nfft == 0 ? default_nfft(extended) : options.nfft;
    if (nfft < extended) throw std::invalid_argument("nfft is shorter than the extended frame");
    if (options.frames == 0) throw std::invalid_argument("PSD needs at least one frame");
    if (options.tone && options.tone_subcarrier >= shape.M) throw std::invalid_argument("tone subcarrier out of range");

    const Transceiver tx(shape, kind);
    const QamConstellation qam(params.qam_order);
    const FftPlan plan(nfft);

    PsdResult out;
    out.kind = kind;
    out.frames = options.frames;
    out.nfft = nfft;
    out.raw_power.assign(nfft, 0.0);

    // Periodograms are computed a chunk at a time and summed in frame order,
    // which bounds memory and keeps the sum independent of thread count.
    constexpr std::size_t kChunk = 32;
    std::vector<std::vector<double>> per_frame(std::min(kChunk, options.frames));
    std::vector<double> energy(per_frame.size());
    for (std::size_t first = 0; first < options.frames; first += kChunk) {
        const std::size_t count = std::min(kChunk, options.frames - first);
        detail::parallel_for(count, options.threads, [&](std::size_t slot) {
            const std::size_t f = first + slot;
            CVector core;
            if (options.tone) {
                core = tone_frame(shape, options.tone_subcarrier);
            } else {
                const auto bits = random_bits(shape.size() * qam.bits_per_symbol(),
                                              derive_seed(options.seed, {kDataStream, f}));
                core = tx.transmit_with_guards(qam.map(bits), params.guard_set);
            }
            const CVector ext = add_cp_window(core, params.alpha_prime, options.window);
            std::vector<cplx> buf(nfft, cplx{0.0, 0.0});
            for (Eigen::Index i = 0; i < ext.size(); ++i) buf[static_cast<std::size_t>(i)] = ext[i];
            plan.forward(buf);
            per_frame[slot].resize(nfft);
            for (std::size_t k = 0; k < nfft; ++k) per_frame[slot][k] = std::norm(buf[k]);
            energy[slot] = ext.squaredNorm();
        });
        for (std::size_t slot = 0; slot < count; ++slot) {
            for (std::size_t k = 0; k < nfft; ++k) out.raw_power[k] += per_frame[slot][k];
            out.mean_frame_energy += energy[slot];
    }
    }
    const double inv_frames = 1.0 / static_cast<double>(options.frames);
    for (auto& p : out.raw_power) p *= inv_frames;
    out.mean_frame_energy *= inv_frames;

    out.position.resize(nfft);
    out.guard_bin.resize(nfft);
    double inband = 0.0;
    std::size_t inband_bins = 0;
    for (std::size_t k = 0; k < nfft; ++k) {
        out.position[k] = static_cast<double>(k) * static_cast<double>(shape.M) / static_cast<double>(nfft);
        const auto sub = static_cast<std::size_t>(std::floor(out.position[k] + 0.5)) % shape.M;
        out.guard_bin[k] = params.is_guard(sub);
        if (!out.guard_bin[k]) {
            inband += out.raw_power[k];
            ++inband_bins;
        }
    }
    const double reference = inband / static_cast<double>(inband_bins);
    constexpr double kFloor = 1e-300;

    out.psd_db.resize(nfft);
    double guard_db = 0.0;
    double guard_lin = 0.0;
    std::size_t guard_bins = 0;
    for (std::size_t k = 0; k < nfft; ++k) {
        out.psd_db[k] = 10.0 * std::log10(std::max(out.raw_power[k] / reference, kFloor));
        if (out.guard_bin[k]) {
            guard_db += out.psd_db[k];
            guard_lin += out.raw_power[k] / reference;
            ++guard_bins;
        }
    }
    if (guard_bins > 0) {
        out.guard_mean_db = guard_db / static_cast<double>(guard_bins);
        out.guard_power_db = 10.0 * std::log10(std::max(guard_lin / static_cast<double>(guard_bins), kFloor));
    }
    return out;
}

std::vector<MetricRecord> psd_records(const PsdResult& result, std::uint64_t seed) {
    std::vector<MetricRecord> rows;
    rows.reserve(result.nfft);
    for (std::size_t k = 0; k < result.nfft; ++k)
        rows.push_back({"psd", std::string(waveform_tag(result.kind)), result.position[k], result.psd_db[k],
                        result.frames, seed});
    return rows;
}

double papr_db(const CVector& s) {
    if (s.size() == 0) throw std::invalid_argument("PAPR of an empty frame");
    const Eigen::ArrayXd power = s.array().abs2();
    const double mean = power.mean();
    if (!(mean > 0.0)) throw std::invalid_argument("PAPR of an all-zero frame");
    return 10.0 * std::log10(power.maxCoeff() / mean);
}

double PaprResult::ccdf(double threshold_db) const {
    if (papr_db.empty()) return 0.0;
    const auto above = papr_db.end() - std::upper_bound(papr_db.begin(), papr_db.end(), threshold_db);
    return static_cast<double>(above) / static_cast<double>(papr_db.size());
}

double PaprResult::threshold_at(double probability) const {
    if (papr_db.empty()) throw std::logic_error("no PAPR samples");
    const auto total = static_cast<double>(papr_db.size());
    // ccdf(x_(i)) = (T - i)/T for the i-th smallest (1-based, no ties).
    auto i = static_cast<std::size_t>(std::ceil(total * (1.0 - probability) - 1e-9));
    i = std::clamp<std::size_t>(i, 1, papr_db.size());
    return papr_db[i - 1];
}

PaprResult measure_papr(const OtfsParams& params, WaveformKind kind, const PaprOptions& options) {
    params.validate();
    if (options.trials == 0) throw std::invalid_argument("PAPR needs at least one trial");
    const GridShape shape = params.shape();
    const Transceiver tx(shape, kind);
    const QamConstellation qam(params.qam_order);

    PaprResult out;
    out.kind = kind;
    out.papr_db.resize(options.trials);
    detail::parallel_for(options.trials, options.threads, [&](std::size_t t) {
        const auto bits =
            random_bits(shape.size() * qam.bits_per_symbol(), derive_seed(options.seed, {kDataStream, t}));
        const CVector symbols = qam.map(bits);
        CVector s = options.guard_nulls ? tx.transmit_with_guards(symbols, params.guard_set) : tx.transmit(symbols);
        if (options.include_extension) s = add_cp_window(s, params.alpha_prime);
        out.papr_db[t] = papr_db(s);
    });
    std::sort(out.papr_db.begin(), out.papr_db.end());
    return out;
}

std::vector<MetricRecord> papr_records(const PaprResult& result, std::uint64_t seed) {
    std::vector<MetricRecord> rows;
    const double top = result.papr_db.empty() ? 0.0 : result.papr_db.back();
    const auto steps = static_cast<std::size_t>(std::ceil(top * 10.0)) + 1;
    for (std::size_t i = 0; i <= steps; ++i) {
        const double gamma = 0.1 * static_cast<double>(i);
        rows.push_back({"papr", std::string(waveform_tag(result.kind)), gamma, result.ccdf(gamma),
                        result.papr_db.size(), seed});
    }
    return rows;
}

std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
    if (trials == 0) return {0.0, 1.0};
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / (1.0 + z2 / n);
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

std::vector<BerPoint> run_ber(const OtfsParams& params, WaveformKind kind, const BerOptions& options) {
    params.validate();
    if (options.batch == 0 || options.max_frames == 0) throw std::invalid_argument("BER budget must be positive");
    const GridShape shape = params.shape();
    const std::size_t mn = shape.size();
    if (options.channel == ChannelModel::Eva) (void)sample_eva(params, options.seed, options.profile);

    const Transceiver trx(shape, kind);
    const QamConstellation qam(params.qam_order);
    const std::size_t bits_per_frame = mn * qam.bits_per_symbol();

    std::vector<BerPoint> points;
    for (std::size_t si = 0; si < options.snr_db.size(); ++si) {
        const double snr_db = options.snr_db[si];
        const double noise_var = std::pow(10.0, -snr_db / 10.0);
        BerPoint pt;
        pt.snr_db = snr_db;
        while (pt.bit_errors < options.target_errors && pt.frames < options.max_frames) {
            const std::size_t count =
                static_cast<std::size_t>(std::min<std::uint64_t>(options.batch, options.max_frames - pt.frames));
            const std::uint64_t first = pt.frames;
            std::vector<std::uint64_t> errors(count, 0);
            detail::parallel_for(count, options.threads, [&](std::size_t i) {
                const std::uint64_t f = first + i;
                const auto bits = random_bits(bits_per_frame, derive_seed(options.seed, {kDataStream, f}));
                const CVector s = trx.transmit(qam.map(bits));
                const ChannelMatrix h =
                    options.channel == ChannelModel::Eva
                        ? build_channel_matrix(
                              sample_eva(params, derive_seed(options.seed, {kChannelStream, f}), options.profile), mn)
                        : ChannelMatrix::identity(mn);
                CVector r = h.apply(s);
                std::mt19937_64 noise_rng(derive_seed(options.seed, {kNoiseStream, si, f}));
                add_awgn(r, noise_var, noise_rng);
                const auto decided = qam.demap(trx.receive(r, h, noise_var));
                std::uint64_t e = 0;
                for (std::size_t b = 0; b < bits_per_frame; ++b) e += decided[b] != bits[b];
                errors[i] = e;
            });
            for (auto e : errors) pt.bit_errors += e;
            pt.frames += count;
        }
        pt.bits = pt.frames * bits_per_frame;
        pt.ber = static_cast<double>(pt.bit_errors) / static_cast<double>(pt.bits);
        std::tie(pt.ci_low, pt.ci_high) = wilson_interval(pt.bit_errors, pt.bits);
        points.push_back(pt);
    }
    return points;
}

std::vector<MetricRecord> ber_records(WaveformKind kind, const std::vector<BerPoint>& points, std::uint64_t seed) {
    std::vector<MetricRecord> rows;
    for (const auto& p : points) rows.push_back({"ber", std::string(waveform_tag(kind)), p.snr_db, p.ber, p.frames, seed});
    return rows;
}

double qpsk_awgn_ber(double snr_db) {
    const double snr = std::pow(10.0, snr_db / 10.0);
    return 0.5 * std::erfc(std::sqrt(snr) / std::sqrt(2.0));
}

double cm_formula(std::size_t M, std::size_t N) {
    const double mn = static_cast<double>(M * N);
    return mn + mn / 2.0 * std::log2(static_cast<double>(N));
}

CmReport cm_count(std::size_t M, std::size_t N) {
    CmReport report;
    report.M = M;
    report.N = N;
    report.formula = cm_formula(M, N);
    const GridShape shape{M, N};
    const DelayDopplerGrid d(shape, CVector::Ones(static_cast<Eigen::Index>(shape.size())));
    CmCounter cdps;
    CpsOtfsModulator(dirichlet_pulse(M, N)).modulate(d, &cdps);
    CmCounter rps;
    CpsOtfsModulator(rect_pulse(M, N)).modulate(d, &rps);
    report.measured_cdps = cdps.complex_multiplies;
    report.measured_rps = rps.complex_multiplies;
    return report;
}

}  // namespace cpsotfs
