// Command-line front end: verify, psd, papr, ber, pulse-dump, channel-dump.
//
// Exit codes: 0 success, 1 invariant or verification failure, 2 bad
// configuration or unwritable output.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cpsotfs/channel.hpp"
#include "cpsotfs/config.hpp"
#include "cpsotfs/csv.hpp"
#include "cpsotfs/errors.hpp"
#include "cpsotfs/metrics.hpp"
#include "cpsotfs/transforms.hpp"
#include "cpsotfs/verify.hpp"

namespace fs = std::filesystem;
using namespace cpsotfs;

namespace {

struct OutputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::ofstream open_output(const ExperimentConfig& cfg, const std::string& name) {
    const fs::path path = fs::path(cfg.out_dir) / name;
    std::ofstream os(path);
    if (!os) throw OutputError("cannot write '" + path.string() + "'");
    return os;
}

void write_manifest(const ExperimentConfig& cfg, const std::string& command) {
    auto os = open_output(cfg, command + "_manifest.txt");
    os << to_manifest(cfg, command);
}

void write_records(const ExperimentConfig& cfg, const std::string& name, const std::vector<MetricRecord>& rows) {
    auto os = open_output(cfg, name);
    write_metric_csv(os, rows);
    if (!os) throw OutputError("write failed for '" + name + "'");
}

int cmd_verify(const ExperimentConfig& cfg) {
    VerifyOptions opt;
    opt.rule = cfg.permutation_rule;
    opt.frames = cfg.verify_frames;
    opt.seed = cfg.seed;
    const auto report = run_verify(cfg.params.shape(), opt);
    auto os = open_output(cfg, "verify.txt");
    for (const auto& c : report.checks) {
        char line[256];
        const char* status = c.skipped ? "SKIP" : (c.passed ? "PASS" : "FAIL");
        std::snprintf(line, sizeof line, "%s %-34s observed=%.3e tol=%.1e %s", status, c.name.c_str(), c.observed,
                      c.tolerance, c.detail.c_str());
        std::cout << line << "\n";
        os << line << "\n";
    }
    std::cout << (report.passed() ? "verify: all checks passed" : "verify: FAILED") << "\n";
    return report.passed() ? 0 : 1;
}

int cmd_psd(const ExperimentConfig& cfg) {
    PsdOptions opt;
    opt.frames = cfg.psd_frames;
    opt.nfft = cfg.nfft;
    opt.seed = cfg.seed;
    opt.window = cfg.psd_window;
    opt.tone = cfg.psd_tone;
    opt.tone_subcarrier = cfg.tone_subcarrier;
    opt.threads = cfg.threads;
    std::vector<MetricRecord> rows;
    std::optional<double> rps, cdps;
    for (auto kind : cfg.waveforms) {
        const auto r = measure_psd(cfg.params, kind, opt);
        const auto rec = psd_records(r, cfg.seed);
        rows.insert(rows.end(), rec.begin(), rec.end());
        std::printf("%-10s guard mean %8.2f dB  guard power %8.2f dB  (%zu frames, nfft %zu)\n",
                    std::string(waveform_tag(kind)).c_str(), r.guard_mean_db, r.guard_power_db, r.frames, r.nfft);
        if (kind == WaveformKind::RpsOtfs) rps = r.guard_mean_db;
        if (kind == WaveformKind::CdpsOtfs) cdps = r.guard_mean_db;
    }
    if (rps && cdps) std::printf("CDPS out-of-band reduction vs RPS: %.2f dB\n", *rps - *cdps);
    write_records(cfg, "psd.csv", rows);
    return 0;
}

int cmd_papr(const ExperimentConfig& cfg) {
    PaprOptions opt;
    opt.trials = cfg.papr_trials;
    opt.seed = cfg.seed;
    opt.include_extension = cfg.papr_include_extension;
    opt.guard_nulls = cfg.papr_guard_nulls;
    opt.threads = cfg.threads;
    std::vector<MetricRecord> rows;
    std::optional<double> rps, cdps;
    for (auto kind : cfg.waveforms) {
        const auto r = measure_papr(cfg.params, kind, opt);
        const auto rec = papr_records(r, cfg.seed);
        rows.insert(rows.end(), rec.begin(), rec.end());
        const double p2 = r.threshold_at(1e-2);
        std::printf("%-10s PAPR at CCDF 1e-2: %6.2f dB", std::string(waveform_tag(kind)).c_str(), p2);
        if (cfg.papr_trials >= 10000) std::printf("   at 1e-3: %6.2f dB", r.threshold_at(1e-3));
        std::printf("  (%zu frames)\n", r.papr_db.size());
        if (kind == WaveformKind::RpsOtfs) rps = p2;
        if (kind == WaveformKind::CdpsOtfs) cdps = p2;
    }
    if (rps && cdps) std::printf("CDPS PAPR reduction vs RPS at 1e-2: %.2f dB\n", *rps - *cdps);
    write_records(cfg, "papr.csv", rows);
    return 0;
}

int cmd_ber(const ExperimentConfig& cfg) {
    BerOptions opt;
    opt.snr_db = cfg.snr_db;
    opt.target_errors = cfg.ber_target_errors;
    opt.max_frames = cfg.ber_max_frames;
    opt.batch = cfg.ber_batch;
    opt.seed = cfg.seed;
    opt.channel = cfg.channel;
    opt.profile = cfg.pdp;
    opt.threads = cfg.threads;
    std::vector<MetricRecord> rows;
    for (auto kind : cfg.waveforms) {
        const auto points = run_ber(cfg.params, kind, opt);
        const auto rec = ber_records(kind, points, cfg.seed);
        rows.insert(rows.end(), rec.begin(), rec.end());
        for (const auto& p : points)
            std::printf("%-10s SNR %5.1f dB  BER %.3e  [%.2e, %.2e]  %llu errors / %llu bits\n",
                        std::string(waveform_tag(kind)).c_str(), p.snr_db, p.ber, p.ci_low, p.ci_high,
                        static_cast<unsigned long long>(p.bit_errors), static_cast<unsigned long long>(p.bits));
    }
    write_records(cfg, "ber.csv", rows);
    return 0;
}

void dump_lambda(const ExperimentConfig& cfg, const std::string& name, const CharacteristicDiagonal& d) {
    auto os = open_output(cfg, name);
    os << "index,real,imag\n";
    char buf[96];
    for (Eigen::Index i = 0; i < d.lambda.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%td,%.17g,%.17g\n", i, d.lambda[i].real(), d.lambda[i].imag());
        os << buf;
    }
}

int cmd_pulse_dump(const ExperimentConfig& cfg) {
    const auto& p = cfg.params;
    for (const auto& g : {rect_pulse(p.M, p.N), dirichlet_pulse(p.M, p.N)}) {
        const std::string fam(pulse_family_name(g.family()));
        auto t = open_output(cfg, "pulse_" + fam + "_time.csv");
        write_pulse_csv(t, g, false);
        auto f = open_output(cfg, "pulse_" + fam + "_freq.csv");
        write_pulse_csv(f, g, true);
        const auto d = characteristic_diagonal(g);
        dump_lambda(cfg, "lambda_" + fam + ".csv", d);
        std::printf("%-12s max ||lambda|-1| = %.3e\n", fam.c_str(), d.max_unit_magnitude_error());
    }
    return 0;
}

int cmd_channel_dump(const ExperimentConfig& cfg) {
    const auto paths = sample_eva(cfg.params, cfg.seed, cfg.pdp);
    auto os = open_output(cfg, "paths.csv");
    write_paths_csv(os, paths);
    std::printf("%zu paths, max Doppler bin %d\n", paths.size(), cfg.params.max_doppler_bin());
    return 0;
}

}  // namespace

int main(int argc, char** argv, char** envp) {
    CLI::App app{"CPS-OTFS link-level simulator"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string profile = "desk";
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    std::optional<unsigned> threads;
    std::vector<std::string> settings;
    app.add_option("--profile", profile, "Parameter profile: desk or paper")->capture_default_str();
    app.add_option("--config", config_path, "Config file with key = value lines");
    app.add_option("--seed", seed, "Master RNG seed");
    app.add_option("--out", out_dir, "Output directory");
    app.add_option("--threads", threads, "Worker threads (0 = all cores)");
    app.add_option("--set", settings, "Override one config key, as key=value (repeatable)");

    auto* verify = app.add_subcommand("verify", "Structural self-checks of the transforms and receivers");
    auto* psd = app.add_subcommand("psd", "Averaged periodogram and out-of-band emission");
    auto* papr = app.add_subcommand("papr", "PAPR CCDF");
    auto* ber = app.add_subcommand("ber", "Uncoded BER over the EVA channel");
    auto* pulse = app.add_subcommand("pulse-dump", "Write prototype pulses and their diagonals");
    auto* channel = app.add_subcommand("channel-dump", "Write one sampled EVA path set");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    ExperimentConfig cfg;
    std::string command;
    try {
        cfg = default_config(profile);
        if (!config_path.empty()) apply_config_file(cfg, config_path);
        apply_env_overrides(cfg, envp);
        for (const auto& s : settings) {
            const auto eq = s.find('=');
            if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + s + "'");
            apply_setting(cfg, s.substr(0, eq), s.substr(eq + 1));
        }
        if (seed) cfg.seed = *seed;
        if (out_dir) cfg.out_dir = *out_dir;
        if (threads) cfg.threads = *threads;
        validate(cfg);

        std::error_code ec;
        fs::create_directories(cfg.out_dir, ec);
        if (ec || !fs::is_directory(cfg.out_dir))
            throw OutputError("cannot create output directory '" + cfg.out_dir + "'");

        for (auto* sub : app.get_subcommands()) command = sub->get_name();
        write_manifest(cfg, command);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const OutputError& e) {
        std::cerr << "output error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (verify->parsed()) return cmd_verify(cfg);
        if (psd->parsed()) return cmd_psd(cfg);
        if (papr->parsed()) return cmd_papr(cfg);
        if (ber->parsed()) return cmd_ber(cfg);
        if (pulse->parsed()) return cmd_pulse_dump(cfg);
        if (channel->parsed()) return cmd_channel_dump(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const OutputError& e) {
        std::cerr << "output error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << command << " failed: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
