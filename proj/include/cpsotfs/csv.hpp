#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace cpsotfs {

/// One row of experiment output. Column order is fixed:
/// experiment,waveform,x,y,trials,seed
struct MetricRecord {
    std::string experiment;  // psd | papr | ber
    std::string waveform;    // RPS-OTFS | CDPS-OTFS | OFDM
    double x = 0.0;          // subcarrier position | PAPR threshold [dB] | SNR [dB]
    double y = 0.0;          // PSD [dB] | CCDF | BER
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
};

inline constexpr const char* kMetricHeader = "experiment,waveform,x,y,trials,seed";

void write_metric_csv(std::ostream& os, const std::vector<MetricRecord>& rows);
/// Throws std::runtime_error on a missing/wrong header or a malformed row.
std::vector<MetricRecord> read_metric_csv(std::istream& is);

}  // namespace cpsotfs
