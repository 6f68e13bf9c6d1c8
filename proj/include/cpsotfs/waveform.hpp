#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "cpsotfs/channel.hpp"
#include "cpsotfs/modulator.hpp"

namespace cpsotfs {

enum class WaveformKind { RpsOtfs, CdpsOtfs, Ofdm };

/// "RPS-OTFS", "CDPS-OTFS" or "OFDM".
std::string_view waveform_tag(WaveformKind kind);
/// Accepts the tags above or the short names rps, cdps, ofdm (case-insensitive).
WaveformKind parse_waveform(std::string_view name);

/// Transmit/receive chain for one waveform on a circular MN-sample frame.
///
/// OTFS variants take delay-Doppler symbols and receive with the two-stage
/// LMMSE (MMSE channel equalizer, then A^H). OFDM takes time-frequency
/// symbols, modulates with U_M and equalizes with a perfect-CSI one-tap MMSE
/// per subcarrier and slot.
class Transceiver {
public:
    Transceiver(GridShape shape, WaveformKind kind);

    WaveformKind kind() const { return kind_; }
    const GridShape& shape() const { return transforms_.shape(); }
    const CpsOtfsModulator* modulator() const { return modulator_ ? &*modulator_ : nullptr; }

    CVector transmit(const CVector& symbols, CmCounter* counter = nullptr) const;
    /// As transmit, with the given subcarriers zeroed on the time-frequency grid.
    CVector transmit_with_guards(const CVector& symbols, const std::vector<std::size_t>& guard_set) const;
    CVector receive(const CVector& r, const ChannelMatrix& h, double noise_var) const;

private:
    WaveformKind kind_;
    FrameTransforms transforms_;
    std::optional<CpsOtfsModulator> modulator_;
};

/// Diagonal of U_M^H H U_M: the gain each OFDM subcarrier sees in its own slot.
CVector ofdm_one_tap_gains(const ChannelMatrix& h, const GridShape& shape);

}  // namespace cpsotfs
