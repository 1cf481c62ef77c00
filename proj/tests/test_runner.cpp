// Copyright (c) 2026 The rmtq Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <json.hpp>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "rmtq/errors.hpp"
#include "rmtq/runner.hpp"

using namespace rmtq;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir()
    {
        path = fs::temp_directory_path() /
               ("rmtq_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static inline int counter = 0;
};

ExperimentConfig small_alpha_config(const fs::path& dir)
{
    ExperimentConfig cfg;
    cfg.experiment = "alpha";
    cfg.N = 4;
    cfg.s = 0.0;
    cfg.t_max = 1.0;
    cfg.dt = 0.1;
    cfg.realizations = 20;
    cfg.seed = 7;
    cfg.out = (dir / "alpha.csv").string();
    return cfg;
}

}  // namespace

TEST_SUITE_BEGIN("runner");

TEST_CASE("config files parse with comments and flags win by construction")
{
    TempDir dir;
    const fs::path cfg_path = dir.path / "run.cfg";
    {
        std::ofstream out(cfg_path);
        out << "# sample config\n";
        out << "experiment = alpha\n";
        out << "N = 12\n";
        out << "s = 0.25   # strong side\n";
        out << "R = 33\n";
        out << "seed = 99\n";
    }
    const auto cfg = ExperimentConfig::from_file(cfg_path);
    CHECK(cfg.N == 12);
    CHECK(cfg.s == 0.25);
    CHECK(cfg.realizations == 33);
    CHECK(cfg.seed == 99);

    {
        std::ofstream out(cfg_path, std::ios::app);
        out << "bogus line without equals\n";
    }
    CHECK_THROWS_AS(ExperimentConfig::from_file(cfg_path), ConfigError);

    ExperimentConfig bad;
    CHECK_THROWS_AS(bad.apply_key_value("N", "not_a_number"), ConfigError);
    CHECK_THROWS_AS(bad.apply_key_value("nope", "1"), ConfigError);
}

TEST_CASE("validation catches nonsense")
{
    ExperimentConfig cfg;
    cfg.N = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.N = 4;
    cfg.dt = -1.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("alpha run emits csv plus manifest and is deterministic")
{
    TempDir dir;
    auto cfg = small_alpha_config(dir.path);
    run(cfg);
    const auto first = slurp(cfg.csv_path());
    CHECK(first.rfind("t,alpha_mean,alpha_stderr", 0) == 0);

    const auto manifest = nlohmann::json::parse(slurp(cfg.csv_path().string() +
                                                      ".manifest.json"));
    CHECK(manifest.at("config").at("N") == 4);
    CHECK(manifest.at("checksums").size() == 1);
    CHECK(manifest.at("wall_time_seconds").get<double>() >= 0.0);

    run(cfg);  // same config, same bytes
    CHECK(slurp(cfg.csv_path()) == first);
}

TEST_CASE("interrupted runs resume to byte-identical output")
{
    TempDir dir;
    auto cfg = small_alpha_config(dir.path);
    run(cfg);
    const auto reference = slurp(cfg.csv_path());
    fs::remove(cfg.csv_path());

    run_alpha_checkpointed(cfg, 9);  // interrupt after 9 of 20
    CHECK(!fs::exists(cfg.csv_path()));
    resume(cfg.csv_path());
    CHECK(slurp(cfg.csv_path()) == reference);
    // checkpoint files cleaned up after completion
    CHECK(!fs::exists(cfg.csv_path().string() + ".ckpt.json"));
}

TEST_CASE("resume rejects missing, altered, and corrupt checkpoints")
{
    TempDir dir;
    auto cfg = small_alpha_config(dir.path);

    SUBCASE("missing manifest")
    {
        CHECK_THROWS_AS(resume(cfg.csv_path()), IoError);
    }
    SUBCASE("altered config")
    {
        run_alpha_checkpointed(cfg, 5);
        const fs::path meta = cfg.csv_path().string() + ".ckpt.json";
        auto j = nlohmann::json::parse(slurp(meta));
        j["config"]["N"] = 8;  // tamper
        std::ofstream(meta) << j.dump(2);
        CHECK_THROWS_AS(resume(cfg.csv_path()), IoError);
    }
    SUBCASE("corrupt record payload")
    {
        run_alpha_checkpointed(cfg, 5);
        const fs::path rec = cfg.csv_path().string() + ".ckpt.bin";
        auto bytes = slurp(rec);
        REQUIRE(bytes.size() > 40);
        bytes[20] = static_cast<char>(bytes[20] ^ 0x5a);
        std::ofstream(rec, std::ios::binary | std::ios::trunc) << bytes;
        CHECK_THROWS_AS(resume(cfg.csv_path()), IoError);
    }
}

TEST_CASE("weingarten experiment prints exact fractions")
{
    TempDir dir;
    ExperimentConfig cfg;
    cfg.experiment = "weingarten";
    cfg.N = 2;
    cfg.out = (dir.path / "wg.csv").string();
    run(cfg);
    const auto text = slurp(cfg.csv_path());
    CHECK(text.find("nu,C,ctm1,ctm2") == 0);
    CHECK(text.find("8,12,") != std::string::npos);   // C8 = 2N(2N-1) = 12
    CHECK(text.find("/") != std::string::npos);       // fractions, not floats
}

TEST_CASE("lr-weak emits the three theory columns")
{
    TempDir dir;
    ExperimentConfig cfg;
    cfg.experiment = "lr-weak";
    cfg.N = 16;
    cfg.s = 0.5;
    cfg.t_max = 2.0;
    cfg.dt = 0.5;
    cfg.out = (dir.path / "weak.csv").string();
    run(cfg);
    const auto text = slurp(cfg.csv_path());
    CHECK(text.rfind("t,alpha_weak,p_lr,p_elr", 0) == 0);
    const auto manifest =
        nlohmann::json::parse(slurp(cfg.csv_path().string() + ".manifest.json"));
    CHECK(manifest.at("extras").at("lambda").get<double>() ==
          doctest::Approx(1.0 / (0.5 * 16)));
    CHECK(manifest.at("extras").at("tau_heisenberg").get<double>() == 32.0);
}

TEST_CASE("unknown experiment is a config error")
{
    ExperimentConfig cfg;
    cfg.experiment = "nope";
    CHECK_THROWS_AS(run(cfg), ConfigError);
}

TEST_SUITE_END();
