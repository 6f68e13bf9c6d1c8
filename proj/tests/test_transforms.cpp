#include <doctest.h>

#include "cpsotfs/errors.hpp"
#include "cpsotfs/transforms.hpp"
#include "support.hpp"

using namespace cpsotfs;
using testing::expj;
using testing::max_abs;

namespace {

// X(n, m) = (1/sqrt(NM)) sum_k sum_l d(k, l) exp(j 2 pi [nk/N - ml/M]), as a literal double sum.
TimeFrequencyGrid brute_isfft(const DelayDopplerGrid& d) {
    const auto& s = d.shape;
    TimeFrequencyGrid x(s);
    const double norm = 1.0 / std::sqrt(static_cast<double>(s.size()));
    for (std::size_t n = 0; n < s.N; ++n)
        for (std::size_t m = 0; m < s.M; ++m) {
            cplx acc = 0.0;
            for (std::size_t k = 0; k < s.N; ++k)
                for (std::size_t l = 0; l < s.M; ++l)
                    acc += d.at(k, l) * expj(2.0 * kPi * (static_cast<double>(n * k) / static_cast<double>(s.N) -
                                                          static_cast<double>(m * l) / static_cast<double>(s.M)));
            x.at(n, m) = norm * acc;
        }
    return x;
}

// s(r) = sum_n sum_m g((r - nM) mod MN) X(n, m) exp(j 2 pi m r / M), as a literal loop.
CVector brute_gfdm(const TimeFrequencyGrid& x, const CVector& g) {
    const auto& s = x.shape;
    const std::size_t mn = s.size();
    CVector out = CVector::Zero(static_cast<Eigen::Index>(mn));
    for (std::size_t r = 0; r < mn; ++r)
        for (std::size_t n = 0; n < s.N; ++n)
            for (std::size_t m = 0; m < s.M; ++m)
                out[static_cast<Eigen::Index>(r)] +=
                    g[static_cast<Eigen::Index>((r + mn - n * s.M) % mn)] * x.at(n, m) *
                    expj(2.0 * kPi * static_cast<double>(m * r) / static_cast<double>(s.M));
    return out;
}

// Independent dense builders: plain loops, no Kronecker products.
CMatrix loop_block_idft(std::size_t blocks, std::size_t L) {
    CMatrix w = CMatrix::Zero(static_cast<Eigen::Index>(blocks * L), static_cast<Eigen::Index>(blocks * L));
    for (std::size_t b = 0; b < blocks; ++b)
        for (std::size_t i = 0; i < L; ++i)
            for (std::size_t j = 0; j < L; ++j)
                w(static_cast<Eigen::Index>(b * L + i), static_cast<Eigen::Index>(b * L + j)) =
                    expj(2.0 * kPi * static_cast<double>(i * j) / static_cast<double>(L)) / std::sqrt(double(L));
    return w;
}

CMatrix loop_permutation(const GridShape& s) {
    CMatrix p = CMatrix::Zero(static_cast<Eigen::Index>(s.size()), static_cast<Eigen::Index>(s.size()));
    // time-frequency slot (n, m) comes from Doppler block m, position n
    for (std::size_t n = 0; n < s.N; ++n)
        for (std::size_t m = 0; m < s.M; ++m)
            p(static_cast<Eigen::Index>(n * s.M + m), static_cast<Eigen::Index>(m * s.N + n)) = 1.0;
    return p;
}

PrototypePulse random_pulse(const GridShape& s, std::uint64_t seed) {
    return PrototypePulse::from_samples(s, testing::random_cvector(s.size(), seed));
}

}  // namespace

TEST_CASE("ISFFT matches the literal double sum") {
    for (const auto& s : testing::small_shapes()) {
        CAPTURE(s.M);
        CAPTURE(s.N);
        const DelayDopplerGrid d(s, testing::random_cvector(s.size(), 11 * s.size()));
        const auto fast = isfft(d);
        CHECK(max_abs(fast.data - brute_isfft(d).data) < 1e-12);
        CHECK(max_abs(sfft(fast).data - d.data) < 1e-12);
        CHECK(max_abs(isfft_matrix(s) * d.data - fast.data) < 1e-12);
    }
}

TEST_CASE("structured factors match loop-built matrices") {
    for (const auto& s : testing::small_shapes()) {
        CHECK((doppler_idft_matrix(s) - loop_block_idft(s.M, s.N)).norm() < 1e-12);
        CHECK((subcarrier_idft_matrix(s) - loop_block_idft(s.N, s.M)).norm() < 1e-12);
        CHECK((permutation_matrix(s) - loop_permutation(s)).norm() == 0.0);
    }
}

TEST_CASE("ISFFT precoder is unitary") {
    for (const auto& s : testing::small_shapes()) {
        const CMatrix a = isfft_matrix(s);
        const auto n = a.rows();
        CHECK((a * a.adjoint() - CMatrix::Identity(n, n)).norm() < 1e-12);
    }
}

TEST_CASE("FrameTransforms agree with the dense factors") {
    const GridShape s{8, 4};
    const FrameTransforms t(s);
    const CVector v = testing::random_cvector(s.size(), 5);
    CHECK(max_abs(t.doppler_idft(v) - doppler_idft_matrix(s) * v) < 1e-12);
    CHECK(max_abs(t.doppler_dft(v) - doppler_idft_matrix(s).adjoint() * v) < 1e-12);
    CHECK(max_abs(t.subcarrier_idft(v) - subcarrier_idft_matrix(s) * v) < 1e-12);
    CHECK(max_abs(t.subcarrier_dft(v) - subcarrier_idft_matrix(s).adjoint() * v) < 1e-12);
    CHECK(max_abs(t.permute(v) - permutation_matrix(s) * v) == 0.0);
    CHECK_THROWS_AS(t.doppler_idft(CVector::Zero(31)), std::invalid_argument);
}

TEST_CASE("GFDM matrix matches the literal modulation sum") {
    for (const auto& s : testing::small_shapes()) {
        const auto g = random_pulse(s, 3 + s.size());
        const TimeFrequencyGrid x(s, testing::random_cvector(s.size(), 17));
        CHECK(max_abs(gfdm_matrix(g) * x.data - brute_gfdm(x, g.samples())) < 1e-11);
    }
}

TEST_CASE("GFDM matrix factors through the characteristic diagonal for any pulse") {
    for (const auto& s : testing::small_shapes()) {
        CAPTURE(s.M);
        CAPTURE(s.N);
        for (const auto& g : {rect_pulse(s.M, s.N), dirichlet_pulse(s.M, s.N), random_pulse(s, 99)}) {
            const auto d = characteristic_diagonal(g);
            const CMatrix pun = loop_permutation(s) * loop_block_idft(s.M, s.N);
            const CMatrix factored = pun * d.lambda.asDiagonal() * pun.adjoint() * loop_block_idft(s.N, s.M);
            const CMatrix ag = gfdm_matrix(g);
            CHECK((ag - factored).norm() / ag.norm() < 1e-12);
        }
    }
}

TEST_CASE("closed-form diagonal equals the dense oracle") {
    for (const auto& s : testing::small_shapes()) {
        for (const auto& g : {rect_pulse(s.M, s.N), dirichlet_pulse(s.M, s.N), random_pulse(s, 5)}) {
            const auto closed = characteristic_diagonal(g);
            const auto oracle = characteristic_diagonal_oracle(g);
            CHECK(max_abs(closed.lambda - oracle.lambda) < 1e-12);
        }
    }
}

TEST_CASE("closed-form diagonal by hand for M=2, N=2") {
    // lambda(b*N + q) = sqrt(M) sum_a g[a*M + b] exp(-j 2 pi a q / N)
    CVector g(4);
    g << 1.0, 2.0, cplx(0.0, 1.0), -1.0;
    const auto d = characteristic_diagonal(GridShape{2, 2}, g);
    const double r2 = std::sqrt(2.0);
    CHECK(std::abs(d.lambda[0] - r2 * cplx(1.0, 1.0)) < 1e-14);
    CHECK(std::abs(d.lambda[1] - r2 * cplx(1.0, -1.0)) < 1e-14);
    CHECK(std::abs(d.lambda[2] - r2 * cplx(1.0, 0.0)) < 1e-14);
    CHECK(std::abs(d.lambda[3] - r2 * cplx(3.0, 0.0)) < 1e-14);
}

TEST_CASE("rectangular pulse gives the identity diagonal") {
    for (const auto& s : testing::small_shapes()) {
        const auto d = characteristic_diagonal(rect_pulse(s.M, s.N));
        CHECK(d.is_identity());
        CHECK(d.max_unit_magnitude_error() < 1e-14);
    }
}

TEST_CASE("dense builders refuse frames above the cap") {
    CHECK_THROWS_AS(isfft_matrix(GridShape{128, 64}), std::length_error);
}
