#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "cpsotfs/metrics.hpp"
#include "cpsotfs/params.hpp"

namespace cpsotfs {

inline constexpr std::string_view kVersion = "0.1.0";
/// Environment variables CPSOTFS_<KEY> (key upper-cased) override config-file values.
inline constexpr std::string_view kEnvPrefix = "CPSOTFS_";

/// Everything a CLI run needs, resolved from profile -> config file -> env -> flags.
struct ExperimentConfig {
    std::string profile = "desk";
    OtfsParams params = OtfsParams::desk();
    std::vector<WaveformKind> waveforms{WaveformKind::RpsOtfs, WaveformKind::CdpsOtfs, WaveformKind::Ofdm};
    std::uint64_t seed = 1;
    std::string out_dir = "out";
    unsigned threads = 0;

    std::size_t psd_frames = 500;
    std::size_t nfft = 0;
    EdgeWindow psd_window = EdgeWindow::MeyerRrc;
    bool psd_tone = false;
    std::size_t tone_subcarrier = 0;

    std::size_t papr_trials = 20000;
    bool papr_include_extension = false;
    bool papr_guard_nulls = false;

    std::vector<double> snr_db{0, 5, 10, 15, 20};
    std::uint64_t ber_target_errors = 200;
    std::uint64_t ber_max_frames = 2000;
    std::size_t ber_batch = 16;
    ChannelModel channel = ChannelModel::Eva;
    PowerDelayProfile pdp = eva_profile();

    PermutationRule permutation_rule = PermutationRule::Transpose;
    std::size_t verify_frames = 100;
};

/// "desk" or "paper"; anything else is a ConfigError.
ExperimentConfig default_config(std::string_view profile);

/// Sets one key. Unknown keys and unparsable values throw ConfigError.
void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value);

/// Flat "key = value" lines; '#' starts a comment; blank lines ignored.
void apply_config_text(ExperimentConfig& cfg, std::istream& in);
void apply_config_file(ExperimentConfig& cfg, const std::string& path);

/// Applies every CPSOTFS_<KEY> entry of a null-terminated environment block.
void apply_env_overrides(ExperimentConfig& cfg, char** envp);

/// Checks cross-field constraints (params.validate() plus budgets and lists).
void validate(const ExperimentConfig& cfg);

/// Resolved config as config-file text, preceded by comment lines with the
/// software version. Feeding it back through apply_config_text reproduces cfg.
std::string to_manifest(const ExperimentConfig& cfg, std::string_view command);

/// "0-15,48-63" style list, "none" for empty.
std::vector<std::size_t> parse_index_ranges(std::string_view text);
std::string format_index_ranges(const std::vector<std::size_t>& indices);

}  // namespace cpsotfs
