#pragma once

#include "cpsotfs/channel.hpp"
#include "cpsotfs/modulator.hpp"

namespace cpsotfs {

/// Solves refusing systems whose condition estimate exceeds this.
inline constexpr double kConditionLimit = 1e12;

/// Single-shot LMMSE for s = A d:
///   d_hat = (HA)^H [(HA)(HA)^H + (noise_var/signal_var) I]^{-1} r.
/// Dense, via LDL^T; throws NumericalError above kConditionLimit.
DelayDopplerGrid lmmse_full(const CVector& r, const ChannelMatrix& h, const CMatrix& a, const GridShape& shape,
                            double noise_var, double signal_var = 1.0);

/// z = H^H [H H^H + rho I]^{-1} r.
///
/// Uses a sparse LDL^T when the Gershgorin bound ||G||_1 / rho already proves
/// the system well conditioned; otherwise falls back to a dense factorization
/// with a reciprocal-condition estimate.
CVector mmse_channel_equalize(const CVector& r, const ChannelMatrix& h, double rho);

/// MMSE channel equalization followed by the matched filter A^H. Only valid
/// for unitary A (CMCM pulses); throws PreconditionError otherwise.
DelayDopplerGrid lmmse_two_stage(const CVector& r, const ChannelMatrix& h, const CpsOtfsModulator& modulator,
                                 double noise_var, double signal_var = 1.0, CmCounter* mf_counter = nullptr);

}  // namespace cpsotfs
