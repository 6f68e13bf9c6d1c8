// Acceptance suite: one PASS/FAIL line per primary criterion.
// Exit status is the number of failed criteria (0 when all pass).

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "cpsotfs/channel.hpp"
#include "cpsotfs/frame.hpp"
#include "cpsotfs/metrics.hpp"
#include "cpsotfs/modulator.hpp"
#include "cpsotfs/qam.hpp"
#include "cpsotfs/receiver.hpp"
#include "cpsotfs/rng.hpp"
#include "cpsotfs/transforms.hpp"
#include "cpsotfs/verify.hpp"
#include "cpsotfs/waveform.hpp"

using namespace cpsotfs;

namespace {

struct Outcome {
    bool pass = false;
    std::string observed;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

constexpr std::uint64_t kSeed = 20240601;

CVector gaussian(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, std::sqrt(0.5));
    CVector v(static_cast<Eigen::Index>(n));
    for (auto& x : v) x = {g(rng), g(rng)};
    return v;
}

std::vector<std::uint8_t> coin_bits(std::size_t n, std::mt19937_64& rng) {
    std::vector<std::uint8_t> b(n);
    for (std::size_t i = 0; i < n; i += 64) {
        const auto w = rng();
        for (std::size_t j = 0; j < 64 && i + j < n; ++j) b[i + j] = (w >> j) & 1u;
    }
    return b;
}

Outcome unitarity() {
    double worst = 0.0;
    for (const GridShape s : {GridShape{4, 4}, GridShape{8, 4}, GridShape{16, 8}})
        for (const auto& g : {rect_pulse(s.M, s.N), dirichlet_pulse(s.M, s.N)}) {
            const CMatrix a = CpsOtfsModulator(g).dense();
            const auto n = a.rows();
            worst = std::max(worst, (a * a.adjoint() - CMatrix::Identity(n, n)).norm() / std::sqrt(double(n)));
        }
    return {worst < 1e-10, fmt("max ||AA^H - I||_F/||I||_F = %.2e (tol 1e-10)", worst)};
}

Outcome factorization() {
    std::vector<GridShape> shapes;
    for (std::size_t M : {1, 2, 4, 8, 16})
        for (std::size_t N : {1, 2, 4, 8}) shapes.push_back({M, N});
    shapes.push_back({3, 5});
    shapes.push_back({6, 7});
    std::mt19937_64 rng(derive_seed(kSeed, {1}));
    double worst_fact = 0.0;
    for (const auto& s : shapes) {
        const PrototypePulse pulses[] = {rect_pulse(s.M, s.N), dirichlet_pulse(s.M, s.N),
                                         PrototypePulse::from_samples(s, gaussian(s.size(), rng))};
        const auto pun = permuted_doppler_idft(s);
        const auto um = sparse_subcarrier_idft(s);
        for (const auto& g : pulses) {
            const CMatrix ag = gfdm_matrix(g);
            const CVector lambda = characteristic_diagonal(g).lambda;
            const CMatrix factored = pun * (lambda.asDiagonal() * (pun.adjoint() * um));
            worst_fact = std::max(worst_fact, (ag - factored).norm() / ag.norm());
        }
    }
    double worst_fast = 0.0;
    const GridShape s{16, 8};
    for (const auto& g : {rect_pulse(s.M, s.N), dirichlet_pulse(s.M, s.N)}) {
        const CpsOtfsModulator mod(g);
        const CMatrix ag = gfdm_matrix(g);
        for (int f = 0; f < 100; ++f) {
            const DelayDopplerGrid d(s, gaussian(s.size(), rng));
            const CVector fast = modulate_fast(d, mod.diagonal());
            worst_fast = std::max(worst_fast, (fast - ag * isfft(d).data).cwiseAbs().maxCoeff());
        }
    }
    return {worst_fact < 1e-10 && worst_fast < 1e-10,
            fmt("factorization rel err %.2e over %zu shapes x 3 pulses; fast vs direct %.2e on 100 frames (tol 1e-10)",
                worst_fact, shapes.size(), worst_fast)};
}

Outcome cmcm() {
    double worst = 0.0;
    std::size_t count = 0;
    auto test = [&](std::size_t M, std::size_t N) {
        worst = std::max(worst, characteristic_diagonal(dirichlet_pulse(M, N)).max_unit_magnitude_error());
        ++count;
    };
    for (std::size_t M = 1; M <= 16; ++M)
        for (std::size_t N = 1; N <= 16; ++N) test(M, N);
    test(32, 16);
    test(64, 16);
    test(512, 127);
    test(512, 128);
    return {worst < 1e-9, fmt("max ||lambda|-1| = %.2e over %zu sizes (tol 1e-9)", worst, count)};
}

Outcome reconstruction() {
    const GridShape s{16, 8};
    const QamConstellation qam(4);
    const std::size_t alpha = 2;
    std::uint64_t errors = 0;
    std::uint64_t bits_total = 0;
    for (auto kind : {WaveformKind::RpsOtfs, WaveformKind::CdpsOtfs}) {
        const Transceiver trx(s, kind);
        const ChannelMatrix h = ChannelMatrix::identity(s.size());
        std::mt19937_64 rng(derive_seed(kSeed, {2, static_cast<std::uint64_t>(kind)}));
        for (int f = 0; f < 1000; ++f) {
            const auto bits = coin_bits(2 * s.size(), rng);
            const CVector ext = add_cp_window(trx.transmit(qam.map(bits)), alpha, EdgeWindow::MeyerRrc);
            const CVector r = h.apply(remove_cp(ext, alpha, s.size()));
            const auto hat = qam.demap(trx.receive(r, h, 0.0));
            for (std::size_t i = 0; i < bits.size(); ++i) errors += hat[i] != bits[i];
            bits_total += bits.size();
        }
    }
    return {errors == 0, fmt("%llu bit errors in %llu bits (1000 frames per pulse, M=16, N=8)",
                             static_cast<unsigned long long>(errors), static_cast<unsigned long long>(bits_total))};
}

Outcome receiver_equivalence() {
    const GridShape s{8, 8};
    const auto params = eva_style_params(s, 4, 2.0);
    double worst = 0.0;
    int max_delay = 0;
    int max_doppler = 0;
    for (const auto& g : {rect_pulse(s.M, s.N), dirichlet_pulse(s.M, s.N)}) {
        const CpsOtfsModulator mod(g);
        const CMatrix a = mod.dense();
        std::mt19937_64 rng(derive_seed(kSeed, {3}));
        for (std::uint64_t c = 0; c < 50; ++c) {
            const auto paths = sample_eva(params, derive_seed(kSeed, {4, c}));
            for (const auto& p : paths) {
                max_delay = std::max(max_delay, static_cast<int>(p.delay));
                max_doppler = std::max(max_doppler, std::abs(p.doppler));
            }
            const ChannelMatrix h = build_channel_matrix(paths, s.size());
            const DelayDopplerGrid d(s, gaussian(s.size(), rng));
            const double nv = 0.1;
            const CVector r = awgn(h.apply(mod.modulate(d)), nv, derive_seed(kSeed, {5, c}));
            const auto full = lmmse_full(r, h, a, s, nv);
            const auto two = lmmse_two_stage(r, h, mod, nv);
            worst = std::max(worst, (full.data - two.data).cwiseAbs().maxCoeff());
        }
    }
    return {worst < 1e-8, fmt("max |two-stage - full| = %.2e over 50 channels x 2 pulses, delays <= %d, |Doppler| <= %d "
                              "(tol 1e-8)",
                              worst, max_delay, max_doppler)};
}

Outcome complexity() {
    std::string detail;
    bool ok = true;
    for (auto [M, N] : std::vector<std::pair<std::size_t, std::size_t>>{{4, 8}, {16, 8}, {32, 16}, {64, 16}, {512, 128}}) {
        const auto cm = cm_count(M, N);
        ok = ok && static_cast<double>(cm.measured_cdps) == cm.formula;
        detail += fmt("%s(%zu,%zu): %llu vs %.0f", detail.empty() ? "" : "; ", M, N,
                      static_cast<unsigned long long>(cm.measured_cdps), cm.formula);
    }
    return {ok, detail};
}

Outcome oob() {
    OtfsParams p = OtfsParams::desk();
    PsdOptions o;
    o.frames = 500;
    o.seed = kSeed;
    const auto rps = measure_psd(p, WaveformKind::RpsOtfs, o);
    const auto cdps = measure_psd(p, WaveformKind::CdpsOtfs, o);
    const double gap = rps.guard_mean_db - cdps.guard_mean_db;
    return {gap >= 20.0,
            fmt("guard-band mean PSD RPS %.2f dB, CDPS %.2f dB, reduction %.2f dB (need >= 20); "
                "linear-power guard mean RPS %.2f dB, CDPS %.2f dB",
                rps.guard_mean_db, cdps.guard_mean_db, gap, rps.guard_power_db, cdps.guard_power_db)};
}

Outcome papr() {
    const OtfsParams p = OtfsParams::desk();
    PaprOptions o;
    o.trials = 20000;
    o.seed = kSeed;
    const auto rps = measure_papr(p, WaveformKind::RpsOtfs, o);
    const auto cdps = measure_papr(p, WaveformKind::CdpsOtfs, o);
    const double r2 = rps.threshold_at(1e-2);
    const double c2 = cdps.threshold_at(1e-2);
    return {c2 <= r2 - 0.5, fmt("CCDF^-1(1e-2): RPS %.2f dB, CDPS %.2f dB, gain %.2f dB (need >= 0.5); at 1e-3: RPS %.2f, CDPS %.2f",
                                r2, c2, r2 - c2, rps.threshold_at(1e-3), cdps.threshold_at(1e-3))};
}

Outcome ber() {
    OtfsParams p = OtfsParams::desk();
    p.M = 32;
    p.N = 16;
    p.guard_set.clear();
    BerOptions o;
    o.snr_db = {0, 5, 10, 15, 20};
    o.seed = kSeed;
    o.target_errors = 200;
    o.max_frames = 2000;
    const auto rps = run_ber(p, WaveformKind::RpsOtfs, o);
    const auto cdps = run_ber(p, WaveformKind::CdpsOtfs, o);
    const auto ofdm = run_ber(p, WaveformKind::Ofdm, o);
    bool overlap = true;
    std::string detail = fmt("max Doppler bin %d; ", p.max_doppler_bin());
    for (std::size_t i = 0; i < rps.size(); ++i) {
        overlap = overlap && rps[i].ci_low <= cdps[i].ci_high && cdps[i].ci_low <= rps[i].ci_high;
        detail += fmt("%g dB: RPS %.2e CDPS %.2e OFDM %.2e; ", rps[i].snr_db, rps[i].ber, cdps[i].ber, ofdm[i].ber);
    }
    const auto top = rps.size() - 1;
    const bool below = rps[top].ci_high < ofdm[top].ci_low && cdps[top].ci_high < ofdm[top].ci_low;
    detail += fmt("CI overlap at every point: %s; both OTFS below OFDM at top SNR: %s", overlap ? "yes" : "no",
                  below ? "yes" : "no");
    return {overlap && below, detail};
}

Outcome awgn_sanity() {
    // Q(sqrt(SNR)) = 1e-2 at about 7.33 dB
    OtfsParams p = OtfsParams::desk();
    p.M = 32;
    p.N = 16;
    p.guard_set.clear();
    BerOptions o;
    o.snr_db = {7.33};
    o.seed = kSeed;
    o.channel = ChannelModel::Identity;
    o.target_errors = 20000;
    o.max_frames = 4000;
    const auto pts = run_ber(p, WaveformKind::CdpsOtfs, o);
    const double ref = qpsk_awgn_ber(7.33);
    const double rel = std::abs(pts[0].ber - ref) / ref;
    return {rel <= 0.10, fmt("BER %.4e vs Q(sqrt(SNR)) %.4e at 7.33 dB, relative error %.2f%% (tol 10%%, %llu errors)",
                             pts[0].ber, ref, 100.0 * rel, static_cast<unsigned long long>(pts[0].bit_errors))};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"unitarity", unitarity},
        {"factorization", factorization},
        {"cmcm", cmcm},
        {"perfect-reconstruction", reconstruction},
        {"receiver-equivalence", receiver_equivalence},
        {"complexity", complexity},
        {"oob", oob},
        {"papr", papr},
        {"ber", ber},
        {"awgn-sanity", awgn_sanity},
    };
    int failed = 0;
    for (const auto& [name, fn] : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = fn();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s %-24s %s [%.1fs]\n", out.pass ? "PASS" : "FAIL", name, out.observed.c_str(), secs);
        std::fflush(stdout);
        failed += out.pass ? 0 : 1;
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed;
}
