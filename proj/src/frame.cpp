#include "cpsotfs/frame.hpp"

#include <cmath>
#include <stdexcept>

namespace cpsotfs {

std::vector<double> meyer_rrc_ramp(std::size_t length) {
    std::vector<double> ramp(length);
    for (std::size_t i = 0; i < length; ++i) {
        const double x = (static_cast<double>(i) + 0.5) / static_cast<double>(length);
        const double nu = x * x * x * x * (35.0 - 84.0 * x + 70.0 * x * x - 20.0 * x * x * x);
        ramp[i] = std::sin(0.5 * kPi * nu);
    }
    return ramp;
}

std::vector<double> frame_window(std::size_t core_length, std::size_t alpha_prime, EdgeWindow shape) {
    std::vector<double> w(core_length + 2 * alpha_prime, 1.0);
    if (shape == EdgeWindow::Rectangular) return w;
    const auto ramp = meyer_rrc_ramp(alpha_prime);
    for (std::size_t i = 0; i < alpha_prime; ++i) {
        w[i] = ramp[i];
        w[w.size() - 1 - i] = ramp[i];
    }
    return w;
}

CVector add_cp_window(const CVector& s, std::size_t alpha_prime, EdgeWindow shape) {
    const auto mn = static_cast<std::size_t>(s.size());
    if (alpha_prime > mn) throw std::invalid_argument("CP length exceeds the frame length");
    const auto a = static_cast<Eigen::Index>(alpha_prime);
    CVector out(s.size() + 2 * a);
    out.head(a) = s.tail(a);
    out.segment(a, s.size()) = s;
    out.tail(a) = s.head(a);
    const auto w = frame_window(mn, alpha_prime, shape);
    for (Eigen::Index i = 0; i < out.size(); ++i) out[i] *= w[static_cast<std::size_t>(i)];
    return out;
}

FrameSamples make_frame(CVector core, std::size_t alpha_prime, EdgeWindow shape) {
    CVector extended = add_cp_window(core, alpha_prime, shape);
    return {std::move(core), std::move(extended), alpha_prime};
}

CVector remove_cp(const CVector& r_cp, std::size_t alpha_prime, std::size_t core_length) {
    const auto a = static_cast<Eigen::Index>(alpha_prime);
    if (static_cast<std::size_t>(r_cp.size()) != core_length + 2 * alpha_prime)
        throw std::invalid_argument("received frame length is not MN + 2*alpha'");
    return r_cp.segment(a, static_cast<Eigen::Index>(core_length));
}

}  // namespace cpsotfs
