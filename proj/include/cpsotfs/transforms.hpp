#pragma once

#include <vector>

#include <Eigen/SparseCore>

#include "cpsotfs/fft.hpp"
#include "cpsotfs/params.hpp"
#include "cpsotfs/pulse.hpp"

namespace cpsotfs {

/// Dense L x L normalized IDFT, entry (a, b) = exp(+j 2 pi a b / L) / sqrt(L).
CMatrix idft_matrix(std::size_t L);

/// Dense P with P(s, pi[s]) = 1.
CMatrix permutation_matrix(const GridShape& shape, PermutationRule rule = PermutationRule::Transpose);
/// U_N = I_M (x) W_N: an N-point IDFT on each contiguous block of N.
CMatrix doppler_idft_matrix(const GridShape& shape);
/// U_M = I_N (x) W_M: an M-point IDFT on each contiguous block of M.
CMatrix subcarrier_idft_matrix(const GridShape& shape);
/// A_DD = U_M^H P U_N, the delay-Doppler to time-frequency precoder.
CMatrix isfft_matrix(const GridShape& shape);

/// P U_N from the dense factors, stored sparse (N nonzeros per row).
Eigen::SparseMatrix<cplx> permuted_doppler_idft(const GridShape& shape);
/// U_M from the dense factor, stored sparse (M nonzeros per row).
Eigen::SparseMatrix<cplx> sparse_subcarrier_idft(const GridShape& shape);

/// Matrix-free versions of the structured factors, with FFT plans built once.
class FrameTransforms {
public:
    explicit FrameTransforms(GridShape shape);

    const GridShape& shape() const { return shape_; }
    const std::vector<std::size_t>& permutation() const { return pi_; }
    const FftPlan& doppler_plan() const { return plan_n_; }
    const FftPlan& subcarrier_plan() const { return plan_m_; }

    CVector doppler_idft(CVector v, CmCounter* counter = nullptr) const;     // U_N v
    CVector doppler_dft(CVector v, CmCounter* counter = nullptr) const;      // U_N^H v
    CVector subcarrier_idft(CVector v, CmCounter* counter = nullptr) const;  // U_M v
    CVector subcarrier_dft(CVector v, CmCounter* counter = nullptr) const;   // U_M^H v
    CVector permute(const CVector& v) const { return apply_permutation(pi_, v); }
    CVector permute_transpose(const CVector& v) const { return apply_permutation_transpose(pi_, v); }

    TimeFrequencyGrid isfft(const DelayDopplerGrid& d) const;
    DelayDopplerGrid sfft(const TimeFrequencyGrid& x) const;

private:
    void check(const CVector& v) const;

    GridShape shape_;
    std::vector<std::size_t> pi_;
    FftPlan plan_n_;
    FftPlan plan_m_;
};

/// X(n, m) = (1/sqrt(NM)) sum_k sum_l d(k, l) exp(j 2 pi [nk/N - ml/M])
TimeFrequencyGrid isfft(const DelayDopplerGrid& d);
/// Exact inverse of isfft.
DelayDopplerGrid sfft(const TimeFrequencyGrid& x);

/// Dense GFDM modulation matrix; column n*M + m holds
/// g((r - nM) mod MN) exp(j 2 pi m r / M) over rows r.
CMatrix gfdm_matrix(const PrototypePulse& g);

/// Diagonal D with A_g = P U_N D U_N^H P^T U_M.
struct CharacteristicDiagonal {
    GridShape shape;
    CVector lambda;

    bool is_identity(double tol = 1e-12) const;
    double max_unit_magnitude_error() const;
};

/// Closed form: lambda(b*N + q) = sqrt(M) sum_a g[a*M + b] exp(-j 2 pi a q / N).
/// Accepts unnormalized samples (the map is linear in g).
CharacteristicDiagonal characteristic_diagonal(const GridShape& shape, const CVector& g);
CharacteristicDiagonal characteristic_diagonal(const PrototypePulse& g);

/// Dense route: U_N^H P^T A_g U_M^H P U_N. Throws StructuralError if the result
/// has an off-diagonal entry larger than tol (relative to the largest entry).
CharacteristicDiagonal characteristic_diagonal_oracle(const PrototypePulse& g, double tol = 1e-10);

}  // namespace cpsotfs
