// Copyright (c) 2026 The rmtq Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace rmtq {

// Experiment description shared by the CLI, config files and manifests.
struct ExperimentConfig {
    std::string experiment = "alpha";  // alpha | alpha0-exact | lr-strong |
                                       // lr-weak | nm-sweep | weingarten | figure
    int N = 64;
    double s = 0.0;
    double omega = 0.0;
    double t_max = 10.0;
    double dt = 0.01;
    int realizations = 100;
    std::uint64_t seed = 1;
    int workers = 1;
    std::string out;         // CSV path; defaults to "<experiment>.csv"
    int figure_id = 1;       // figure experiment only
    double s_max = 0.8;      // nm-sweep grid end
    double s_step = 0.05;    // nm-sweep grid step
    double threshold = 0.01; // transition detection epsilon

    void apply_key_value(const std::string& key, const std::string& value);
    static ExperimentConfig from_file(const std::filesystem::path& path);

    std::filesystem::path csv_path() const;
    std::string canonical_text() const;  // normalized echo used for manifests
    void validate() const;
};

// FNV-1a checksum used for manifests and checkpoint records.
std::uint64_t fnv1a(const void* data, std::size_t size);

// Executes the configured experiment and writes CSV + JSON manifest
// atomically.  Throws ConfigError / NumericError / IoError.
void run(const ExperimentConfig& config);

// `alpha` experiment with per-realization checkpointing; stops early after
// `stop_after` realizations when non-negative (test hook for interrupting).
void run_alpha_checkpointed(const ExperimentConfig& config, int stop_after = -1);

// Continues an interrupted checkpointed run; the completed output is
// byte-identical to an uninterrupted one.
void resume(const std::filesystem::path& out_csv);

// Figure datasets (desk-scale defaults; see README):
//   1: exact alpha0 for N in {2, 8, 32} plus the Bessel limit
//   2: alpha2 at N in {2^4, 2^7, 2^10} vs the large-N limit
//   3: composite linear response vs Monte Carlo at N = 64
//   4: non-Markovianity measure M(s) at N in {64, 256}
//   5: M(s) at omega in {0, 0.5, 1}, N = 128
void figure_suite(int id, const ExperimentConfig& config);

}  // namespace rmtq
