#include "cpsotfs/modulator.hpp"

#include <stdexcept>

namespace cpsotfs {

CpsOtfsModulator::CpsOtfsModulator(const PrototypePulse& pulse)
    : CpsOtfsModulator(characteristic_diagonal(pulse)) {}

CpsOtfsModulator::CpsOtfsModulator(CharacteristicDiagonal diagonal)
    : transforms_(diagonal.shape), diagonal_(std::move(diagonal)), identity_(diagonal_.is_identity()) {
    if (static_cast<std::size_t>(diagonal_.lambda.size()) != diagonal_.shape.size())
        throw std::invalid_argument("characteristic diagonal length does not equal M*N");
}

CVector CpsOtfsModulator::modulate(const DelayDopplerGrid& d, CmCounter* counter) const {
    if (!(d.shape == shape()))
        throw std::invalid_argument("delay-Doppler grid does not match the modulator's M*N (stale diagonal?)");
    CVector v = d.data;
    if (!identity_) {
        v.array() *= diagonal_.lambda.array();
        if (counter) counter->complex_multiplies += shape().size();
    }
    return transforms_.permute(transforms_.doppler_idft(std::move(v), counter));
}

DelayDopplerGrid CpsOtfsModulator::matched_filter(const CVector& z, CmCounter* counter) const {
    CVector v = transforms_.doppler_dft(transforms_.permute_transpose(z), counter);
    if (!identity_) {
        v.array() *= diagonal_.lambda.array().conjugate();
        if (counter) counter->complex_multiplies += shape().size();
    }
    return DelayDopplerGrid(shape(), std::move(v));
}

CVector CpsOtfsModulator::gfdm_modulate(const TimeFrequencyGrid& x) const {
    if (!(x.shape == shape())) throw std::invalid_argument("time-frequency grid does not match modulator shape");
    CVector v = transforms_.doppler_dft(transforms_.permute_transpose(transforms_.subcarrier_idft(x.data)));
    if (!identity_) v.array() *= diagonal_.lambda.array();
    return transforms_.permute(transforms_.doppler_idft(std::move(v)));
}

CMatrix CpsOtfsModulator::dense() const {
    const GridShape& s = shape();
    return permuted_doppler_idft(s) * diagonal_.lambda.asDiagonal();
}

CVector modulate_direct(const DelayDopplerGrid& d, const PrototypePulse& g) {
    if (!(d.shape == g.shape())) throw std::invalid_argument("data grid and pulse have different M*N");
    return gfdm_matrix(g) * isfft(d).data;
}

CVector modulate_fast(const DelayDopplerGrid& d, const CharacteristicDiagonal& diagonal, CmCounter* counter) {
    if (!(d.shape == diagonal.shape))
        throw std::invalid_argument("characteristic diagonal was computed for a different M*N");
    return CpsOtfsModulator(diagonal).modulate(d, counter);
}

}  // namespace cpsotfs
