#include "cpsotfs/params.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "cpsotfs/errors.hpp"

namespace cpsotfs {

namespace {

std::vector<std::size_t> ranges(std::initializer_list<std::pair<std::size_t, std::size_t>> spans) {
    std::vector<std::size_t> out;
    for (auto [lo, hi] : spans)
        for (auto m = lo; m <= hi; ++m) out.push_back(m);
    return out;
}

}  // namespace

int OtfsParams::max_doppler_bin() const {
    return static_cast<int>(std::ceil(max_doppler_hz() * static_cast<double>(N) * symbol_duration() - 1e-12));
}

bool OtfsParams::is_guard(std::size_t m) const {
    return std::binary_search(guard_set.begin(), guard_set.end(), m);
}

void OtfsParams::validate() const {
    if (M < 1 || N < 1) throw ConfigError("M and N must be at least 1");
    if (!(delta_f > 0.0) || !std::isfinite(delta_f)) throw ConfigError("delta_f must be positive");
    if (qam_order != 4 && qam_order != 16 && qam_order != 64)
        throw ConfigError("qam_order must be one of 4, 16, 64 (got " + std::to_string(qam_order) + ")");
    if (alpha_prime > M * N) throw ConfigError("alpha_prime exceeds the frame length M*N");
    if (!std::is_sorted(guard_set.begin(), guard_set.end()) ||
        std::adjacent_find(guard_set.begin(), guard_set.end()) != guard_set.end())
        throw ConfigError("guard_set must be sorted and free of duplicates");
    if (!guard_set.empty() && guard_set.back() >= M)
        throw ConfigError("guard subcarrier " + std::to_string(guard_set.back()) + " is outside [0, M-1]");
    if (guard_set.size() == M) throw ConfigError("guard_set leaves no active subcarrier");
    if (carrier_freq < 0.0 || speed < 0.0) throw ConfigError("carrier_freq and speed must be non-negative");
}

OtfsParams OtfsParams::desk() {
    OtfsParams p;
    p.M = 64;
    p.N = 16;
    p.alpha_prime = 8;
    // Quarter-band guards on each side, matching the full-scale layout at 1/8 size.
    p.guard_set = ranges({{0, 15}, {48, 63}});
    return p;
}

OtfsParams OtfsParams::full_scale() {
    OtfsParams p;
    p.M = 512;
    p.N = 127;
    p.alpha_prime = 64;
    // Guards given 1-based as [1,128] u [384,512]; stored 0-based.
    p.guard_set = ranges({{0, 127}, {383, 511}});
    return p;
}

std::size_t dd_index(std::size_t k, std::size_t l, const GridShape& shape) {
    if (k >= shape.N || l >= shape.M) throw std::out_of_range("delay-Doppler index out of range");
    return l * shape.N + k;
}

std::pair<std::size_t, std::size_t> dd_coords(std::size_t i, const GridShape& shape) {
    if (i >= shape.size()) throw std::out_of_range("delay-Doppler flat index out of range");
    return {i % shape.N, i / shape.N};
}

std::size_t tf_index(std::size_t n, std::size_t m, const GridShape& shape) {
    if (n >= shape.N || m >= shape.M) throw std::out_of_range("time-frequency index out of range");
    return n * shape.M + m;
}

std::pair<std::size_t, std::size_t> tf_coords(std::size_t j, const GridShape& shape) {
    if (j >= shape.size()) throw std::out_of_range("time-frequency flat index out of range");
    return {j / shape.M, j % shape.M};
}

std::vector<std::size_t> permutation_indices(std::size_t M, std::size_t N, PermutationRule rule) {
    if (M < 1 || N < 1) throw std::invalid_argument("permutation needs M, N >= 1");
    const std::size_t stride = rule == PermutationRule::Transpose ? N : N - 1;
    std::vector<std::size_t> pi(M * N);
    for (std::size_t s = 0; s < pi.size(); ++s) pi[s] = (s % M) * stride + s / M;
    return pi;
}

bool is_bijection(std::span<const std::size_t> pi) {
    std::vector<bool> seen(pi.size(), false);
    for (auto q : pi) {
        if (q >= pi.size() || seen[q]) return false;
        seen[q] = true;
    }
    return true;
}

CVector apply_permutation(std::span<const std::size_t> pi, const CVector& v) {
    if (static_cast<std::size_t>(v.size()) != pi.size()) throw std::invalid_argument("permutation length mismatch");
    CVector out(v.size());
    for (std::size_t s = 0; s < pi.size(); ++s) out[static_cast<Eigen::Index>(s)] = v[static_cast<Eigen::Index>(pi[s])];
    return out;
}

CVector apply_permutation_transpose(std::span<const std::size_t> pi, const CVector& v) {
    if (static_cast<std::size_t>(v.size()) != pi.size()) throw std::invalid_argument("permutation length mismatch");
    CVector out(v.size());
    for (std::size_t s = 0; s < pi.size(); ++s) out[static_cast<Eigen::Index>(pi[s])] = v[static_cast<Eigen::Index>(s)];
    return out;
}

}  // namespace cpsotfs
