#include "cpsotfs/receiver.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <Eigen/SparseCholesky>

#include "cpsotfs/errors.hpp"

namespace cpsotfs {

namespace {

double regularization(double noise_var, double signal_var) {
    if (noise_var < 0.0) throw std::invalid_argument("noise variance must be non-negative");
    if (!(signal_var > 0.0)) throw std::invalid_argument("signal variance must be positive");
    return noise_var / signal_var;
}

[[noreturn]] void ill_conditioned(double condition) {
    std::ostringstream os;
    os << "MMSE system is ill-conditioned: condition estimate " << condition << " exceeds " << kConditionLimit;
    throw NumericalError(os.str(), condition);
}

CVector solve_dense_hpd(const CMatrix& g, const CVector& rhs) {
    const Eigen::LDLT<CMatrix> ldlt(g);
    if (ldlt.info() != Eigen::Success) ill_conditioned(std::numeric_limits<double>::infinity());
    const double rcond = ldlt.rcond();
    if (!(rcond > 0.0) || 1.0 / rcond > kConditionLimit) ill_conditioned(rcond > 0.0 ? 1.0 / rcond : INFINITY);
    return ldlt.solve(rhs);
}

double one_norm(const ChannelMatrix::Sparse& g) {
    double worst = 0.0;
    for (Eigen::Index c = 0; c < g.outerSize(); ++c) {
        double sum = 0.0;
        for (ChannelMatrix::Sparse::InnerIterator it(g, c); it; ++it) sum += std::abs(it.value());
        worst = std::max(worst, sum);
    }
    return worst;
}

}  // namespace

DelayDopplerGrid lmmse_full(const CVector& r, const ChannelMatrix& h, const CMatrix& a, const GridShape& shape,
                            double noise_var, double signal_var) {
    const double rho = regularization(noise_var, signal_var);
    const auto mn = static_cast<Eigen::Index>(shape.size());
    if (r.size() != mn || a.rows() != mn || a.cols() != mn || static_cast<Eigen::Index>(h.size()) != mn)
        throw std::invalid_argument("lmmse_full: dimensions of r, H and A must all equal M*N");

    const CMatrix ha = h.sparse() * a;
    CMatrix g = ha * ha.adjoint();
    g.diagonal().array() += rho;
    return DelayDopplerGrid(shape, ha.adjoint() * solve_dense_hpd(g, r));
}

CVector mmse_channel_equalize(const CVector& r, const ChannelMatrix& h, double rho) {
    if (rho < 0.0) throw std::invalid_argument("regularization must be non-negative");
    if (static_cast<std::size_t>(r.size()) != h.size()) throw std::invalid_argument("received vector length != MN");

    const auto& hs = h.sparse();
    ChannelMatrix::Sparse g = hs * ChannelMatrix::Sparse(hs.adjoint());
    ChannelMatrix::Sparse eye(g.rows(), g.cols());
    eye.setIdentity();
    g += rho * eye;

    CVector y;
    if (rho > 0.0 && one_norm(g) / rho <= kConditionLimit) {
        const Eigen::SimplicialLDLT<ChannelMatrix::Sparse> ldlt(g);
        if (ldlt.info() != Eigen::Success) ill_conditioned(std::numeric_limits<double>::infinity());
        y = ldlt.solve(r);
    } else {
        if (h.size() > kDenseLimit) ill_conditioned(rho > 0.0 ? one_norm(g) / rho : INFINITY);
        y = solve_dense_hpd(CMatrix(g), r);
    }
    return hs.adjoint() * y;
}

DelayDopplerGrid lmmse_two_stage(const CVector& r, const ChannelMatrix& h, const CpsOtfsModulator& modulator,
                                 double noise_var, double signal_var, CmCounter* mf_counter) {
    if (!modulator.is_unitary())
        throw PreconditionError("two-stage LMMSE needs a unitary modulation matrix (CMCM pulse)");
    const double rho = regularization(noise_var, signal_var);
    if (h.size() != modulator.shape().size()) throw std::invalid_argument("channel size != M*N");
    return modulator.matched_filter(mmse_channel_equalize(r, h, rho), mf_counter);
}

}  // namespace cpsotfs
