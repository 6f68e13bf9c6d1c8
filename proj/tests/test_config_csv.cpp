#include <doctest.h>

#include <sstream>

#include "cpsotfs/config.hpp"
#include "cpsotfs/csv.hpp"
#include "cpsotfs/errors.hpp"

using namespace cpsotfs;

TEST_CASE("metric CSV round trip") {
    const std::vector<MetricRecord> rows{{"psd", "CDPS-OTFS", -1.25, -43.5, 500, 1},
                                         {"ber", "OFDM", 20.0, 1.234567e-5, 2000, 18446744073709551615ULL}};
    std::stringstream ss;
    write_metric_csv(ss, rows);
    CHECK(ss.str().rfind("experiment,waveform,x,y,trials,seed\n", 0) == 0);
    const auto back = read_metric_csv(ss);
    REQUIRE(back.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(back[i].experiment == rows[i].experiment);
        CHECK(back[i].waveform == rows[i].waveform);
        CHECK(back[i].x == doctest::Approx(rows[i].x).epsilon(1e-9));
        CHECK(back[i].y == doctest::Approx(rows[i].y).epsilon(1e-9));
        CHECK(back[i].trials == rows[i].trials);
        CHECK(back[i].seed == rows[i].seed);
    }
}

TEST_CASE("metric CSV rejects malformed input") {
    std::istringstream bad_header("experiment,waveform,x,y\npsd,OFDM,1,2\n");
    CHECK_THROWS_AS(read_metric_csv(bad_header), std::runtime_error);
    std::istringstream bad_row("experiment,waveform,x,y,trials,seed\npsd,OFDM,1,oops,3,4\n");
    CHECK_THROWS_AS(read_metric_csv(bad_row), std::runtime_error);
    std::istringstream short_row("experiment,waveform,x,y,trials,seed\npsd,OFDM,1,2\n");
    CHECK_THROWS_AS(read_metric_csv(short_row), std::runtime_error);
    std::istringstream empty("");
    CHECK_THROWS_AS(read_metric_csv(empty), std::runtime_error);
}

TEST_CASE("index ranges") {
    CHECK(parse_index_ranges("0-3, 7,9-10") == std::vector<std::size_t>{0, 1, 2, 3, 7, 9, 10});
    CHECK(parse_index_ranges("none").empty());
    CHECK(parse_index_ranges("5,1,5").size() == 2);
    CHECK(format_index_ranges({0, 1, 2, 3, 7, 9, 10}) == "0-3,7,9-10");
    CHECK(format_index_ranges({}) == "none");
    CHECK_THROWS_AS(parse_index_ranges("4-2"), ConfigError);
    CHECK_THROWS_AS(parse_index_ranges("a-b"), ConfigError);
}

TEST_CASE("config text parsing") {
    auto cfg = default_config("desk");
    std::istringstream text(R"(# comment line
M = 32
N=16   # trailing comment
guard_set = 0-7, 24-31
speed_kmh = 120
waveforms = cdps, ofdm
snr_db = 0, 10
channel = identity

papr_include_extension = yes
)");
    apply_config_text(cfg, text);
    CHECK(cfg.params.M == 32);
    CHECK(cfg.params.N == 16);
    CHECK(cfg.params.guard_set.size() == 16);
    CHECK(cfg.params.speed == doctest::Approx(120.0 / 3.6));
    CHECK(cfg.waveforms == std::vector<WaveformKind>{WaveformKind::CdpsOtfs, WaveformKind::Ofdm});
    CHECK(cfg.snr_db == std::vector<double>{0.0, 10.0});
    CHECK(cfg.channel == ChannelModel::Identity);
    CHECK(cfg.papr_include_extension);
    CHECK_NOTHROW(validate(cfg));
}

TEST_CASE("config errors") {
    auto cfg = default_config("desk");
    CHECK_THROWS_AS(apply_setting(cfg, "bogus", "1"), ConfigError);
    CHECK_THROWS_AS(apply_setting(cfg, "M", "-4"), ConfigError);
    CHECK_THROWS_AS(apply_setting(cfg, "M", "4x"), ConfigError);
    CHECK_THROWS_AS(apply_setting(cfg, "delta_f", "fast"), ConfigError);
    CHECK_THROWS_AS(apply_setting(cfg, "waveforms", "rps,gfdm"), ConfigError);
    CHECK_THROWS_AS(apply_setting(cfg, "psd_tone", "maybe"), ConfigError);
    CHECK_THROWS_AS(apply_setting(cfg, "profile", "paper"), ConfigError);
    CHECK_THROWS_AS(default_config("huge"), ConfigError);
    std::istringstream no_equals("M 32\n");
    CHECK_THROWS_AS(apply_config_text(cfg, no_equals), ConfigError);

    auto bad = default_config("desk");
    apply_setting(bad, "alpha_prime", "5000");
    CHECK_THROWS_AS(validate(bad), ConfigError);
    bad = default_config("desk");
    apply_setting(bad, "pdp_powers_db", "0,-3");
    CHECK_THROWS_AS(validate(bad), ConfigError);
    bad = default_config("desk");
    apply_setting(bad, "qam_order", "32");
    CHECK_THROWS_AS(validate(bad), ConfigError);
    CHECK_THROWS_AS(apply_config_file(bad, "/nonexistent/config.txt"), ConfigError);
}

TEST_CASE("environment overrides") {
    auto cfg = default_config("desk");
    std::string a = "CPSOTFS_SEED=77";
    std::string b = "CPSOTFS_PSD_FRAMES=12";
    std::string c = "HOME=/root";
    char* env[] = {a.data(), b.data(), c.data(), nullptr};
    apply_env_overrides(cfg, env);
    CHECK(cfg.seed == 77);
    CHECK(cfg.psd_frames == 12);
    std::string d = "CPSOTFS_NOPE=1";
    char* env2[] = {d.data(), nullptr};
    CHECK_THROWS_AS(apply_env_overrides(cfg, env2), ConfigError);
}

TEST_CASE("manifest reproduces the configuration") {
    for (const char* profile : {"desk", "paper"}) {
        auto cfg = default_config(profile);
        apply_setting(cfg, "seed", "123");
        apply_setting(cfg, "snr_db", "1.5,7");
        apply_setting(cfg, "pdp_delays_ns", "0,100");
        apply_setting(cfg, "pdp_powers_db", "0,-3");
        const std::string manifest = to_manifest(cfg, "ber");
        CHECK(manifest.find(std::string(kVersion)) != std::string::npos);
        CHECK(manifest.find("seed = 123") != std::string::npos);

        auto again = default_config("desk");
        std::istringstream in(manifest);
        apply_config_text(again, in);
        again.profile = cfg.profile;
        CHECK(to_manifest(again, "ber") == manifest);
        CHECK(again.params.guard_set == cfg.params.guard_set);
        CHECK(again.params.speed == doctest::Approx(cfg.params.speed).epsilon(1e-15));
    }
}

TEST_CASE("full-scale profile") {
    const auto cfg = default_config("paper");
    CHECK(cfg.params.M == 512);
    CHECK(cfg.params.N == 127);
    CHECK(cfg.params.guard_set.size() == 257);
    CHECK_NOTHROW(validate(cfg));
}
