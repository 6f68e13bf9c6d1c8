#pragma once

#include <cmath>
#include <random>

#include "cpsotfs/params.hpp"

namespace testing {

using namespace cpsotfs;

inline CVector random_cvector(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, std::sqrt(0.5));
    CVector v(static_cast<Eigen::Index>(n));
    for (auto& x : v) x = {g(rng), g(rng)};
    return v;
}

inline double max_abs(const CVector& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

inline cplx expj(double radians) { return std::polar(1.0, radians); }

// Shapes covering the degenerate corners, odd sizes and M != N.
inline const std::vector<GridShape>& small_shapes() {
    static const std::vector<GridShape> shapes{{1, 1}, {1, 4}, {4, 1}, {2, 3}, {3, 2}, {4, 4}, {8, 4},
                                               {4, 8}, {5, 3}, {6, 7}, {16, 8}, {8, 8}};
    return shapes;
}

}  // namespace testing
