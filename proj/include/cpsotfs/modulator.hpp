#pragma once

#include "cpsotfs/transforms.hpp"

namespace cpsotfs {

/// CPS-OTFS transmitter in factorized form, s = A d with A = P U_N D.
///
/// D is computed once at construction, so a frame costs MN scalar multiplies
/// plus M independent N-point IFFTs. When D is the identity (rectangular
/// pulse) the diagonal stage is skipped entirely.
class CpsOtfsModulator {
public:
    explicit CpsOtfsModulator(const PrototypePulse& pulse);
    explicit CpsOtfsModulator(CharacteristicDiagonal diagonal);

    const GridShape& shape() const { return transforms_.shape(); }
    const CharacteristicDiagonal& diagonal() const { return diagonal_; }
    const FrameTransforms& transforms() const { return transforms_; }
    bool skips_diagonal() const { return identity_; }
    /// A is unitary iff every |lambda| = 1.
    bool is_unitary(double tol = 1e-9) const { return diagonal_.max_unit_magnitude_error() <= tol; }

    /// s = P U_N D d
    CVector modulate(const DelayDopplerGrid& d, CmCounter* counter = nullptr) const;
    /// d = A^H z = D^H U_N^H P^T z
    DelayDopplerGrid matched_filter(const CVector& z, CmCounter* counter = nullptr) const;
    /// s = A_g x = P U_N D U_N^H P^T U_M x, for a time-frequency grid that was
    /// edited after precoding (e.g. guard subcarriers nulled).
    CVector gfdm_modulate(const TimeFrequencyGrid& x) const;

    /// Dense A (MN <= kDenseLimit).
    CMatrix dense() const;

private:
    FrameTransforms transforms_;
    CharacteristicDiagonal diagonal_;
    bool identity_;
};

/// Reference path: dense A_g times the ISFFT of d.
CVector modulate_direct(const DelayDopplerGrid& d, const PrototypePulse& g);

/// Fast path with a precomputed diagonal; counts complex multiplies into counter.
CVector modulate_fast(const DelayDopplerGrid& d, const CharacteristicDiagonal& diagonal, CmCounter* counter = nullptr);

}  // namespace cpsotfs
