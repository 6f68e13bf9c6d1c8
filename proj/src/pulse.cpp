#include "cpsotfs/pulse.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "cpsotfs/fft.hpp"
#include "cpsotfs/transforms.hpp"

namespace cpsotfs {

std::string_view pulse_family_name(PulseFamily family) {
    switch (family) {
    case PulseFamily::Rectangular: return "rect";
    case PulseFamily::Dirichlet: return "dirichlet";
    case PulseFamily::Custom: return "custom";
    }
    return "unknown";
}

PrototypePulse PrototypePulse::from_samples(GridShape shape, CVector samples, PulseFamily family) {
    if (static_cast<std::size_t>(samples.size()) != shape.size())
        throw std::invalid_argument("pulse must have exactly M*N samples");
    const double energy = samples.squaredNorm();
    if (!(energy > 0.0) || !std::isfinite(energy)) throw std::invalid_argument("pulse has zero or non-finite energy");
    samples /= std::sqrt(energy);
    return PrototypePulse(shape, std::move(samples), family);
}

CVector PrototypePulse::spectrum() const {
    const FftPlan plan(shape_.size());
    CVector out = samples_;
    plan.forward({out.data(), static_cast<std::size_t>(out.size())});
    return out / std::sqrt(static_cast<double>(shape_.size()));
}

PrototypePulse rect_pulse(std::size_t M, std::size_t N) {
    if (M < 1 || N < 1) throw std::invalid_argument("rect_pulse needs M, N >= 1");
    const GridShape shape{M, N};
    CVector g = CVector::Zero(static_cast<Eigen::Index>(shape.size()));
    g.head(static_cast<Eigen::Index>(M)).setConstant(1.0 / std::sqrt(static_cast<double>(M)));
    return PrototypePulse::from_samples(shape, std::move(g), PulseFamily::Rectangular);
}

std::vector<std::size_t> dirichlet_support(std::size_t M, std::size_t N) {
    const std::size_t mn = M * N;
    const auto half = static_cast<std::ptrdiff_t>(N / 2);
    std::vector<std::size_t> bins;
    bins.reserve(N);
    for (std::ptrdiff_t f = -half; f < static_cast<std::ptrdiff_t>(N) - half; ++f)
        bins.push_back(static_cast<std::size_t>((f + static_cast<std::ptrdiff_t>(mn)) % static_cast<std::ptrdiff_t>(mn)));
    return bins;
}

PrototypePulse dirichlet_pulse(std::size_t M, std::size_t N) {
    if (M < 1 || N < 1) throw std::invalid_argument("dirichlet_pulse needs M, N >= 1");
    const GridShape shape{M, N};
    const std::size_t mn = shape.size();
    std::vector<cplx> spectrum(mn, cplx{0.0, 0.0});
    const double amplitude = 1.0 / std::sqrt(static_cast<double>(N));
    for (auto bin : dirichlet_support(M, N)) spectrum[bin] = amplitude;

    const FftPlan plan(mn);
    plan.inverse(spectrum);
    CVector g(static_cast<Eigen::Index>(mn));
    const double scale = 1.0 / std::sqrt(static_cast<double>(mn));
    for (std::size_t r = 0; r < mn; ++r) g[static_cast<Eigen::Index>(r)] = spectrum[r] * scale;
    return PrototypePulse::from_samples(shape, std::move(g), PulseFamily::Dirichlet);
}

bool is_cmcm(const PrototypePulse& g, double tol) {
    return characteristic_diagonal(g).max_unit_magnitude_error() <= tol;
}

void write_pulse_csv(std::ostream& os, const PrototypePulse& g, bool frequency_domain) {
    const CVector values = frequency_domain ? g.spectrum() : g.samples();
    os << "index,real,imag\n";
    char line[96];
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        std::snprintf(line, sizeof line, "%lld,%.17g,%.17g\n", static_cast<long long>(i), values[i].real(),
                      values[i].imag());
        os << line;
    }
}

}  // namespace cpsotfs
