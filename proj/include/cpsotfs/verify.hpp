#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cpsotfs/params.hpp"

namespace cpsotfs {

struct CheckResult {
    std::string name;
    bool passed = false;
    bool skipped = false;
    double observed = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct VerifyReport {
    GridShape shape;
    std::vector<CheckResult> checks;

    bool passed() const;
};

struct VerifyOptions {
    PermutationRule rule = PermutationRule::Transpose;
    std::size_t frames = 100;   // random frames for fast-vs-direct and reconstruction
    std::size_t channels = 3;   // random channels for the receiver comparison
    std::uint64_t seed = 1;
};

/// Structural self-checks for one frame shape. Checks that need a dense MN x MN
/// matrix are reported as skipped above kDenseLimit.
VerifyReport run_verify(const GridShape& shape, const VerifyOptions& options);

/// Parameters whose EVA realizations span `delay_taps` samples and whose
/// Doppler bins reach +-doppler_bins on the given shape. Handy for exercising
/// the receivers on small grids where real EVA delays would all round to 0.
OtfsParams eva_style_params(const GridShape& shape, std::size_t delay_taps, double doppler_bins);

}  // namespace cpsotfs
