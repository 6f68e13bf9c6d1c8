#include "cpsotfs/waveform.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <string>

#include "cpsotfs/receiver.hpp"

namespace cpsotfs {

std::string_view waveform_tag(WaveformKind kind) {
    switch (kind) {
    case WaveformKind::RpsOtfs: return "RPS-OTFS";
    case WaveformKind::CdpsOtfs: return "CDPS-OTFS";
    case WaveformKind::Ofdm: return "OFDM";
    }
    return "unknown";
}

WaveformKind parse_waveform(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "rps" || lower == "rps-otfs") return WaveformKind::RpsOtfs;
    if (lower == "cdps" || lower == "cdps-otfs") return WaveformKind::CdpsOtfs;
    if (lower == "ofdm") return WaveformKind::Ofdm;
    throw std::invalid_argument("unknown waveform '" + std::string(name) + "'");
}

Transceiver::Transceiver(GridShape shape, WaveformKind kind) : kind_(kind), transforms_(shape) {
    if (kind == WaveformKind::RpsOtfs) modulator_.emplace(rect_pulse(shape.M, shape.N));
    if (kind == WaveformKind::CdpsOtfs) modulator_.emplace(dirichlet_pulse(shape.M, shape.N));
}

CVector Transceiver::transmit(const CVector& symbols, CmCounter* counter) const {
    if (modulator_) return modulator_->modulate(DelayDopplerGrid(shape(), symbols), counter);
    return transforms_.subcarrier_idft(symbols, counter);
}

CVector Transceiver::transmit_with_guards(const CVector& symbols, const std::vector<std::size_t>& guard_set) const {
    TimeFrequencyGrid x = modulator_ ? transforms_.isfft(DelayDopplerGrid(shape(), symbols))
                                     : TimeFrequencyGrid(shape(), symbols);
    for (std::size_t n = 0; n < shape().N; ++n)
        for (auto m : guard_set) x.at(n, m) = 0.0;
    if (modulator_) return modulator_->gfdm_modulate(x);
    return transforms_.subcarrier_idft(x.data);
}

CVector Transceiver::receive(const CVector& r, const ChannelMatrix& h, double noise_var) const {
    if (modulator_) return lmmse_two_stage(r, h, *modulator_, noise_var).data;

    const CVector gains = ofdm_one_tap_gains(h, shape());
    CVector y = transforms_.subcarrier_dft(r);
    for (Eigen::Index j = 0; j < y.size(); ++j) y[j] *= std::conj(gains[j]) / (std::norm(gains[j]) + noise_var);
    return y;
}

CVector ofdm_one_tap_gains(const ChannelMatrix& h, const GridShape& shape) {
    if (h.size() != shape.size()) throw std::invalid_argument("channel size != M*N");
    const std::size_t M = shape.M;
    // Per slot, sum of H(r, t) over in-slot entries with offset t - r; the
    // gain on subcarrier m is then (1/M) sum_offset S(offset) exp(j 2 pi m offset / M).
    std::vector<cplx> by_offset(shape.N * M, cplx{0.0, 0.0});
    const auto& hs = h.sparse();
    for (Eigen::Index c = 0; c < hs.outerSize(); ++c) {
        for (ChannelMatrix::Sparse::InnerIterator it(hs, c); it; ++it) {
            const auto r = static_cast<std::size_t>(it.row());
            const auto t = static_cast<std::size_t>(it.col());
            if (r / M != t / M) continue;
            const std::size_t offset = (t % M + M - r % M) % M;
            by_offset[(r / M) * M + offset] += it.value();
        }
    }
    CVector gains(static_cast<Eigen::Index>(shape.size()));
    for (std::size_t n = 0; n < shape.N; ++n) {
        for (std::size_t m = 0; m < M; ++m) {
            cplx acc{0.0, 0.0};
            for (std::size_t off = 0; off < M; ++off) {
                const cplx s = by_offset[n * M + off];
                if (s != cplx{0.0, 0.0})
                    acc += s * unit_phasor(static_cast<double>((m * off) % M) / static_cast<double>(M));
            }
            gains[static_cast<Eigen::Index>(tf_index(n, m, shape))] = acc / static_cast<double>(M);
        }
    }
    return gains;
}

}  // namespace cpsotfs
