#include "cpsotfs/csv.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace cpsotfs {

void write_metric_csv(std::ostream& os, const std::vector<MetricRecord>& rows) {
    os << kMetricHeader << '\n';
    char buf[160];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, ",%.10g,%.10g,%llu,%llu\n", r.x, r.y,
                      static_cast<unsigned long long>(r.trials), static_cast<unsigned long long>(r.seed));
        os << r.experiment << ',' << r.waveform << buf;
    }
}

std::vector<MetricRecord> read_metric_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("metric CSV is empty (header missing)");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kMetricHeader) throw std::runtime_error("metric CSV header mismatch: '" + line + "'");

    std::vector<MetricRecord> rows;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cols;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cols.push_back(cell);
        if (cols.size() != 6) throw std::runtime_error("metric CSV line " + std::to_string(lineno) + ": expected 6 columns");
        MetricRecord r;
        r.experiment = cols[0];
        r.waveform = cols[1];
        try {
            r.x = std::stod(cols[2]);
            r.y = std::stod(cols[3]);
            r.trials = std::stoull(cols[4]);
            r.seed = std::stoull(cols[5]);
        } catch (const std::exception&) {
            throw std::runtime_error("metric CSV line " + std::to_string(lineno) + ": unparsable number");
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace cpsotfs
