#include "cpsotfs/transforms.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "cpsotfs/errors.hpp"

#include <unsupported/Eigen/KroneckerProduct>

namespace cpsotfs {

namespace {

void require_dense(std::size_t mn) {
    if (mn > kDenseLimit)
        throw std::length_error("dense materialization refused for MN = " + std::to_string(mn) + " > " +
                                std::to_string(kDenseLimit));
}

std::string sci(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

// Unnormalized transform on each contiguous block of plan.size(), then real scaling.
void blockwise(CVector& v, const FftPlan& plan, bool inverse, CmCounter* counter) {
    const std::size_t len = plan.size();
    const double scale = 1.0 / std::sqrt(static_cast<double>(len));
    for (std::size_t base = 0; base < static_cast<std::size_t>(v.size()); base += len) {
        std::span<cplx> block(v.data() + base, len);
        if (inverse)
            plan.inverse(block, counter);
        else
            plan.forward(block, counter);
        for (auto& x : block) x *= scale;
    }
}

}  // namespace

CMatrix idft_matrix(std::size_t L) {
    if (L == 0) throw std::invalid_argument("IDFT order must be positive");
    CMatrix w(idx(L), idx(L));
    const double scale = 1.0 / std::sqrt(static_cast<double>(L));
    for (std::size_t a = 0; a < L; ++a)
        for (std::size_t b = 0; b < L; ++b)
            w(idx(a), idx(b)) = scale * unit_phasor(static_cast<double>((a * b) % L) / static_cast<double>(L));
    return w;
}

CMatrix permutation_matrix(const GridShape& shape, PermutationRule rule) {
    require_dense(shape.size());
    const auto pi = permutation_indices(shape.M, shape.N, rule);
    CMatrix p = CMatrix::Zero(idx(shape.size()), idx(shape.size()));
    for (std::size_t s = 0; s < pi.size(); ++s)
        if (pi[s] < pi.size()) p(idx(s), idx(pi[s])) = 1.0;
    return p;
}

CMatrix doppler_idft_matrix(const GridShape& shape) {
    require_dense(shape.size());
    return Eigen::kroneckerProduct(CMatrix::Identity(idx(shape.M), idx(shape.M)), idft_matrix(shape.N));
}

CMatrix subcarrier_idft_matrix(const GridShape& shape) {
    require_dense(shape.size());
    return Eigen::kroneckerProduct(CMatrix::Identity(idx(shape.N), idx(shape.N)), idft_matrix(shape.M));
}

CMatrix isfft_matrix(const GridShape& shape) {
    const Eigen::SparseMatrix<cplx> um_h = sparse_subcarrier_idft(shape).adjoint();
    return CMatrix(um_h * permuted_doppler_idft(shape));
}

// The factors are mostly zeros; sparse copies keep dense-reference products cheap.
Eigen::SparseMatrix<cplx> permuted_doppler_idft(const GridShape& shape) {
    const Eigen::SparseMatrix<cplx> p = permutation_matrix(shape).sparseView();
    const Eigen::SparseMatrix<cplx> un = doppler_idft_matrix(shape).sparseView();
    return p * un;
}

Eigen::SparseMatrix<cplx> sparse_subcarrier_idft(const GridShape& shape) {
    return subcarrier_idft_matrix(shape).sparseView();
}

FrameTransforms::FrameTransforms(GridShape shape)
    : shape_(shape), pi_(permutation_indices(shape.M, shape.N)), plan_n_(shape.N), plan_m_(shape.M) {}

void FrameTransforms::check(const CVector& v) const {
    if (static_cast<std::size_t>(v.size()) != shape_.size())
        throw std::invalid_argument("vector length does not equal M*N");
}

CVector FrameTransforms::doppler_idft(CVector v, CmCounter* counter) const {
    check(v);
    blockwise(v, plan_n_, true, counter);
    return v;
}

CVector FrameTransforms::doppler_dft(CVector v, CmCounter* counter) const {
    check(v);
    blockwise(v, plan_n_, false, counter);
    return v;
}

CVector FrameTransforms::subcarrier_idft(CVector v, CmCounter* counter) const {
    check(v);
    blockwise(v, plan_m_, true, counter);
    return v;
}

CVector FrameTransforms::subcarrier_dft(CVector v, CmCounter* counter) const {
    check(v);
    blockwise(v, plan_m_, false, counter);
    return v;
}

TimeFrequencyGrid FrameTransforms::isfft(const DelayDopplerGrid& d) const {
    if (!(d.shape == shape_)) throw std::invalid_argument("grid shape does not match transform shape");
    // U_M^H P U_N d
    return TimeFrequencyGrid(shape_, subcarrier_dft(permute(doppler_idft(d.data))));
}

DelayDopplerGrid FrameTransforms::sfft(const TimeFrequencyGrid& x) const {
    if (!(x.shape == shape_)) throw std::invalid_argument("grid shape does not match transform shape");
    return DelayDopplerGrid(shape_, doppler_dft(permute_transpose(subcarrier_idft(x.data))));
}

TimeFrequencyGrid isfft(const DelayDopplerGrid& d) { return FrameTransforms(d.shape).isfft(d); }

DelayDopplerGrid sfft(const TimeFrequencyGrid& x) { return FrameTransforms(x.shape).sfft(x); }

CMatrix gfdm_matrix(const PrototypePulse& g) {
    const GridShape& shape = g.shape();
    const std::size_t mn = shape.size();
    require_dense(mn);
    CMatrix a(idx(mn), idx(mn));
    const CVector& samples = g.samples();
    for (std::size_t n = 0; n < shape.N; ++n) {
        for (std::size_t m = 0; m < shape.M; ++m) {
            const auto col = idx(tf_index(n, m, shape));
            for (std::size_t r = 0; r < mn; ++r) {
                const std::size_t shifted = (r + mn - n * shape.M) % mn;
                const double turns = static_cast<double>((m * r) % shape.M) / static_cast<double>(shape.M);
                a(idx(r), col) = samples[idx(shifted)] * unit_phasor(turns);
            }
        }
    }
    return a;
}

bool CharacteristicDiagonal::is_identity(double tol) const {
    for (Eigen::Index i = 0; i < lambda.size(); ++i)
        if (std::abs(lambda[i] - 1.0) > tol) return false;
    return true;
}

double CharacteristicDiagonal::max_unit_magnitude_error() const {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < lambda.size(); ++i) worst = std::max(worst, std::abs(std::abs(lambda[i]) - 1.0));
    return worst;
}

CharacteristicDiagonal characteristic_diagonal(const GridShape& shape, const CVector& g) {
    if (static_cast<std::size_t>(g.size()) != shape.size())
        throw std::invalid_argument("pulse length does not equal M*N");
    const FftPlan plan(shape.N);
    const double scale = std::sqrt(static_cast<double>(shape.M));
    CVector lambda(idx(shape.size()));
    std::vector<cplx> polyphase(shape.N);
    for (std::size_t b = 0; b < shape.M; ++b) {
        for (std::size_t a = 0; a < shape.N; ++a) polyphase[a] = g[idx(a * shape.M + b)];
        plan.forward(polyphase);
        for (std::size_t q = 0; q < shape.N; ++q) lambda[idx(b * shape.N + q)] = scale * polyphase[q];
    }
    return {shape, std::move(lambda)};
}

CharacteristicDiagonal characteristic_diagonal(const PrototypePulse& g) {
    return characteristic_diagonal(g.shape(), g.samples());
}

CharacteristicDiagonal characteristic_diagonal_oracle(const PrototypePulse& g, double tol) {
    const GridShape& shape = g.shape();
    const Eigen::SparseMatrix<cplx> pun = permuted_doppler_idft(shape);
    const Eigen::SparseMatrix<cplx> um_h = sparse_subcarrier_idft(shape).adjoint();
    const CMatrix d = pun.adjoint() * (gfdm_matrix(g) * um_h * pun);

    const double reference = std::max(1.0, d.diagonal().cwiseAbs().maxCoeff());
    double off = 0.0;
    for (Eigen::Index c = 0; c < d.cols(); ++c)
        for (Eigen::Index r = 0; r < d.rows(); ++r)
            if (r != c) off = std::max(off, std::abs(d(r, c)));
    if (off > tol * reference)
        throw StructuralError("characteristic matrix is not diagonal: largest off-diagonal magnitude " +
                              sci(off) + " exceeds tolerance " + sci(tol * reference));
    return {shape, d.diagonal()};
}

}  // namespace cpsotfs
