#include "cpsotfs/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cpsotfs/errors.hpp"

namespace cpsotfs {

namespace {

std::string trim(std::string_view s) {
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value) {
    throw ConfigError("invalid value '" + std::string(value) + "' for key '" + std::string(key) + "'");
}

std::uint64_t to_u64(std::string_view key, std::string_view value) {
    const std::string v = trim(value);
    if (v.empty() || v[0] == '-') bad_value(key, value);
    try {
        std::size_t pos = 0;
        const auto out = std::stoull(v, &pos, 0);
        if (pos != v.size()) bad_value(key, value);
        return out;
    } catch (const std::exception&) {
        bad_value(key, value);
    }
}

double to_double(std::string_view key, std::string_view value) {
    const std::string v = trim(value);
    try {
        std::size_t pos = 0;
        const double out = std::stod(v, &pos);
        if (pos != v.size() || !std::isfinite(out)) bad_value(key, value);
        return out;
    } catch (const std::exception&) {
        bad_value(key, value);
    }
}

bool to_bool(std::string_view key, std::string_view value) {
    const std::string v = lower(trim(value));
    if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
    if (v == "0" || v == "false" || v == "no" || v == "off") return false;
    bad_value(key, value);
}

std::vector<double> to_doubles(std::string_view key, std::string_view value) {
    std::vector<double> out;
    for (const auto& item : split(value, ',')) out.push_back(to_double(key, item));
    return out;
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// For values that went through a unit conversion: 15 digits drop the
// conversion noise, so a manifest read back prints identically.
std::string fmt_converted(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

template <class T, class F>
std::string join(const std::vector<T>& items, F&& fmt) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ',';
        out += fmt(items[i]);
    }
    return out;
}

}  // namespace

std::vector<std::size_t> parse_index_ranges(std::string_view text) {
    const std::string t = lower(trim(text));
    std::vector<std::size_t> out;
    if (t.empty() || t == "none") return out;
    for (const auto& item : split(t, ',')) {
        const auto dash = item.find('-');
        if (dash == std::string::npos) {
            out.push_back(to_u64("guard_set", item));
        } else {
            const auto lo = to_u64("guard_set", item.substr(0, dash));
            const auto hi = to_u64("guard_set", item.substr(dash + 1));
            if (hi < lo) bad_value("guard_set", item);
            for (auto m = lo; m <= hi; ++m) out.push_back(m);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string format_index_ranges(const std::vector<std::size_t>& indices) {
    if (indices.empty()) return "none";
    std::string out;
    std::size_t i = 0;
    while (i < indices.size()) {
        std::size_t j = i;
        while (j + 1 < indices.size() && indices[j + 1] == indices[j] + 1) ++j;
        if (!out.empty()) out += ',';
        out += std::to_string(indices[i]);
        if (j > i) out += '-' + std::to_string(indices[j]);
        i = j + 1;
    }
    return out;
}

ExperimentConfig default_config(std::string_view profile) {
    ExperimentConfig cfg;
    const std::string p = lower(trim(profile));
    if (p == "desk") {
        cfg.params = OtfsParams::desk();
    } else if (p == "paper") {
        cfg.params = OtfsParams::full_scale();
        cfg.papr_trials = 100000;
        cfg.psd_frames = 200;
    } else {
        throw ConfigError("unknown profile '" + std::string(profile) + "' (expected desk or paper)");
    }
    cfg.profile = p;
    return cfg;
}

void apply_setting(ExperimentConfig& cfg, std::string_view raw_key, std::string_view value) {
    const std::string key = lower(trim(raw_key));
    auto& p = cfg.params;
    if (key == "m") p.M = to_u64(key, value);
    else if (key == "n") p.N = to_u64(key, value);
    else if (key == "delta_f") p.delta_f = to_double(key, value);
    else if (key == "alpha_prime") p.alpha_prime = to_u64(key, value);
    else if (key == "qam_order") p.qam_order = static_cast<unsigned>(to_u64(key, value));
    else if (key == "guard_set") p.guard_set = parse_index_ranges(value);
    else if (key == "carrier_freq") p.carrier_freq = to_double(key, value);
    else if (key == "speed_kmh") p.speed = to_double(key, value) / 3.6;
    else if (key == "waveforms") {
        cfg.waveforms.clear();
        try {
            for (const auto& w : split(value, ',')) cfg.waveforms.push_back(parse_waveform(w));
        } catch (const std::invalid_argument&) {
            bad_value(key, value);
        }
    }
    else if (key == "seed") cfg.seed = to_u64(key, value);
    else if (key == "out_dir") cfg.out_dir = trim(value);
    else if (key == "threads") cfg.threads = static_cast<unsigned>(to_u64(key, value));
    else if (key == "psd_frames") cfg.psd_frames = to_u64(key, value);
    else if (key == "nfft") cfg.nfft = to_u64(key, value);
    else if (key == "psd_window") {
        const auto v = lower(trim(value));
        if (v == "meyer") cfg.psd_window = EdgeWindow::MeyerRrc;
        else if (v == "rect") cfg.psd_window = EdgeWindow::Rectangular;
        else bad_value(key, value);
    }
    else if (key == "psd_tone") cfg.psd_tone = to_bool(key, value);
    else if (key == "tone_subcarrier") cfg.tone_subcarrier = to_u64(key, value);
    else if (key == "papr_trials") cfg.papr_trials = to_u64(key, value);
    else if (key == "papr_include_extension") cfg.papr_include_extension = to_bool(key, value);
    else if (key == "papr_guard_nulls") cfg.papr_guard_nulls = to_bool(key, value);
    else if (key == "snr_db") cfg.snr_db = to_doubles(key, value);
    else if (key == "ber_target_errors") cfg.ber_target_errors = to_u64(key, value);
    else if (key == "ber_max_frames") cfg.ber_max_frames = to_u64(key, value);
    else if (key == "ber_batch") cfg.ber_batch = to_u64(key, value);
    else if (key == "channel") {
        const auto v = lower(trim(value));
        if (v == "eva") cfg.channel = ChannelModel::Eva;
        else if (v == "identity") cfg.channel = ChannelModel::Identity;
        else bad_value(key, value);
    }
    else if (key == "pdp_delays_ns") {
        cfg.pdp.delays_s.clear();
        for (double d : to_doubles(key, value)) cfg.pdp.delays_s.push_back(d * 1e-9);
        cfg.pdp.name = "custom";
    }
    else if (key == "pdp_powers_db") {
        cfg.pdp.powers_db = to_doubles(key, value);
        cfg.pdp.name = "custom";
    }
    else if (key == "permutation_rule") {
        const auto v = lower(trim(value));
        if (v == "transpose") cfg.permutation_rule = PermutationRule::Transpose;
        else if (v == "printed") cfg.permutation_rule = PermutationRule::Printed;
        else bad_value(key, value);
    }
    else if (key == "verify_frames") cfg.verify_frames = to_u64(key, value);
    else if (key == "profile") throw ConfigError("select the profile with --profile, not inside a config file");
    else throw ConfigError("unknown config key '" + std::string(raw_key) + "'");
}

void apply_config_text(ExperimentConfig& cfg, std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string t = trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        apply_setting(cfg, t.substr(0, eq), t.substr(eq + 1));
    }
}

void apply_config_file(ExperimentConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    apply_config_text(cfg, in);
}

void apply_env_overrides(ExperimentConfig& cfg, char** envp) {
    if (!envp) return;
    for (char** e = envp; *e; ++e) {
        const std::string_view entry(*e);
        if (!entry.starts_with(kEnvPrefix)) continue;
        const auto eq = entry.find('=');
        if (eq == std::string_view::npos) continue;
        apply_setting(cfg, entry.substr(kEnvPrefix.size(), eq - kEnvPrefix.size()), entry.substr(eq + 1));
    }
}

void validate(const ExperimentConfig& cfg) {
    cfg.params.validate();
    if (cfg.waveforms.empty()) throw ConfigError("waveforms list is empty");
    if (cfg.psd_frames == 0 || cfg.papr_trials == 0 || cfg.ber_max_frames == 0 || cfg.ber_batch == 0)
        throw ConfigError("trial budgets must be positive");
    if (cfg.snr_db.empty()) throw ConfigError("snr_db list is empty");
    if (cfg.pdp.delays_s.size() != cfg.pdp.powers_db.size() || cfg.pdp.delays_s.empty())
        throw ConfigError("pdp_delays_ns and pdp_powers_db must have the same, non-zero length");
    if (cfg.psd_tone && cfg.tone_subcarrier >= cfg.params.M) throw ConfigError("tone_subcarrier must be below M");
    const std::size_t extended = cfg.params.M * cfg.params.N + 2 * cfg.params.alpha_prime;
    if (cfg.nfft != 0 && cfg.nfft < extended) throw ConfigError("nfft must be at least MN + 2*alpha_prime");
}

std::string to_manifest(const ExperimentConfig& cfg, std::string_view command) {
    const auto& p = cfg.params;
    std::ostringstream os;
    os << "# cpsotfs " << kVersion << " manifest\n";
    os << "# command = " << command << "\n";
    os << "# profile = " << cfg.profile << "\n";
    os << "M = " << p.M << "\n";
    os << "N = " << p.N << "\n";
    os << "delta_f = " << fmt_double(p.delta_f) << "\n";
    os << "alpha_prime = " << p.alpha_prime << "\n";
    os << "qam_order = " << p.qam_order << "\n";
    os << "guard_set = " << format_index_ranges(p.guard_set) << "\n";
    os << "carrier_freq = " << fmt_double(p.carrier_freq) << "\n";
    os << "speed_kmh = " << fmt_converted(p.speed * 3.6) << "\n";
    os << "waveforms = " << join(cfg.waveforms, [](WaveformKind k) { return std::string(waveform_tag(k)); }) << "\n";
    os << "seed = " << cfg.seed << "\n";
    os << "out_dir = " << cfg.out_dir << "\n";
    os << "threads = " << cfg.threads << "\n";
    os << "psd_frames = " << cfg.psd_frames << "\n";
    os << "nfft = " << cfg.nfft << "\n";
    os << "psd_window = " << (cfg.psd_window == EdgeWindow::MeyerRrc ? "meyer" : "rect") << "\n";
    os << "psd_tone = " << (cfg.psd_tone ? "true" : "false") << "\n";
    os << "tone_subcarrier = " << cfg.tone_subcarrier << "\n";
    os << "papr_trials = " << cfg.papr_trials << "\n";
    os << "papr_include_extension = " << (cfg.papr_include_extension ? "true" : "false") << "\n";
    os << "papr_guard_nulls = " << (cfg.papr_guard_nulls ? "true" : "false") << "\n";
    os << "snr_db = " << join(cfg.snr_db, fmt_double) << "\n";
    os << "ber_target_errors = " << cfg.ber_target_errors << "\n";
    os << "ber_max_frames = " << cfg.ber_max_frames << "\n";
    os << "ber_batch = " << cfg.ber_batch << "\n";
    os << "channel = " << (cfg.channel == ChannelModel::Eva ? "eva" : "identity") << "\n";
    os << "pdp_delays_ns = " << join(cfg.pdp.delays_s, [](double d) { return fmt_converted(d * 1e9); }) << "\n";
    os << "pdp_powers_db = " << join(cfg.pdp.powers_db, fmt_double) << "\n";
    os << "permutation_rule = " << (cfg.permutation_rule == PermutationRule::Transpose ? "transpose" : "printed")
       << "\n";
    os << "verify_frames = " << cfg.verify_frames << "\n";
    return os.str();
}

}  // namespace cpsotfs
