// Copyright (c) 2026 The rmtq Authors
// SPDX-License-Identifier: Apache-2.0

#include "rmtq/runner.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "rmtq/dynamics.hpp"
#include "rmtq/errors.hpp"
#include "rmtq/haar_moments.hpp"
#include "rmtq/linear_response.hpp"
#include "rmtq/markovianity.hpp"
#include "rmtq/spectral_oracles.hpp"

namespace rmtq {

namespace fs = std::filesystem;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using nlohmann::json;

namespace {

constexpr const char* kVersionTag = "rmtq 0.1.0";

std::string format_value(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

VectorXd uniform_grid(double t_max, double dt)
{
    if (!(dt > 0.0) || !(t_max > 0.0)) throw ConfigError("need t_max > 0 and dt > 0");
    const int steps = static_cast<int>(std::round(t_max / dt));
    VectorXd t(steps + 1);
    for (int i = 0; i <= steps; ++i) t[i] = i * dt;
    return t;
}

void atomic_write(const fs::path& path, const std::string& content)
{
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out << content;
        if (!out.good()) throw IoError("write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw IoError("rename failed for " + path.string() + ": " + ec.message());
}

// numeric table -> CSV text
std::string csv_text(const std::vector<std::string>& header,
                     const std::vector<VectorXd>& columns)
{
    if (columns.empty() || header.size() != columns.size()) {
        throw IoError("csv: header/column mismatch");
    }
    const auto rows = columns.front().size();
    for (const auto& c : columns) {
        if (c.size() != rows) throw IoError("csv: ragged columns");
    }
    std::ostringstream out;
    for (std::size_t j = 0; j < header.size(); ++j) {
        out << header[j] << (j + 1 < header.size() ? "," : "\n");
    }
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < columns.size(); ++j) {
            out << format_value(columns[j][i]) << (j + 1 < columns.size() ? "," : "\n");
        }
    }
    return out.str();
}

json config_json(const ExperimentConfig& c)
{
    return json{{"experiment", c.experiment},
                {"N", c.N},
                {"s", c.s},
                {"omega", c.omega},
                {"t_max", c.t_max},
                {"dt", c.dt},
                {"realizations", c.realizations},
                {"seed", c.seed},
                {"workers", c.workers},
                {"out", c.csv_path().string()},
                {"figure_id", c.figure_id},
                {"s_max", c.s_max},
                {"s_step", c.s_step},
                {"threshold", c.threshold}};
}

struct ManifestWriter {
    const ExperimentConfig& config;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    json extras = json::object();

    void finish(const fs::path& csv, const std::string& csv_content) const
    {
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        char checksum[32];
        std::snprintf(checksum, sizeof(checksum), "%016llx",
                      static_cast<unsigned long long>(
                          fnv1a(csv_content.data(), csv_content.size())));
        json m{{"version", kVersionTag},
               {"config", config_json(config)},
               {"wall_time_seconds", wall},
               {"checksums", {{csv.filename().string(), checksum}}}};
        if (!extras.empty()) m["extras"] = extras;
        atomic_write(csv.string() + ".manifest.json", m.dump(2) + "\n");
    }
};

void emit(const ExperimentConfig& cfg, ManifestWriter& manifest,
          const std::vector<std::string>& header, const std::vector<VectorXd>& cols)
{
    const std::string text = csv_text(header, cols);
    atomic_write(cfg.csv_path(), text);
    manifest.finish(cfg.csv_path(), text);
}

// ---- checkpointing ---------------------------------------------------------

struct CheckpointPaths {
    fs::path meta, records;
};

CheckpointPaths checkpoint_paths(const fs::path& csv)
{
    return {csv.string() + ".ckpt.json", csv.string() + ".ckpt.bin"};
}

void write_checkpoint_meta(const CheckpointPaths& paths, const ExperimentConfig& cfg,
                           int grid_points, int rows)
{
    json meta{{"version", kVersionTag},
              {"config_hash", fnv1a(cfg.canonical_text().data(),
                                    cfg.canonical_text().size())},
              {"config", config_json(cfg)},
              {"grid_points", grid_points},
              {"rows", rows}};
    atomic_write(paths.meta, meta.dump(2) + "\n");
}

// Records are appended as [uint32 index][rows*grid doubles][uint64 fnv] so a
// torn tail from an interrupt is recognizable and dropped, while a checksum
// mismatch on a complete record is corruption and rejected.
void append_record(std::ofstream& out, int index, const MatrixXd& data)
{
    const std::uint32_t idx = static_cast<std::uint32_t>(index);
    out.write(reinterpret_cast<const char*>(&idx), sizeof(idx));
    const std::size_t bytes = sizeof(double) * data.size();
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(bytes));
    const std::uint64_t sum = fnv1a(data.data(), bytes);
    out.write(reinterpret_cast<const char*>(&sum), sizeof(sum));
    out.flush();
    if (!out.good()) throw IoError("checkpoint append failed");
}

std::vector<std::optional<MatrixXd>> read_records(const fs::path& path, int count,
                                                  int rows, int cols)
{
    std::vector<std::optional<MatrixXd>> out(count);
    std::ifstream in(path, std::ios::binary);
    if (!in) return out;
    const std::size_t bytes = sizeof(double) * static_cast<std::size_t>(rows) * cols;
    std::vector<char> payload(bytes);
    for (;;) {
        std::uint32_t idx = 0;
        if (!in.read(reinterpret_cast<char*>(&idx), sizeof(idx))) break;
        if (!in.read(payload.data(), static_cast<std::streamsize>(bytes))) break;
        std::uint64_t sum = 0;
        if (!in.read(reinterpret_cast<char*>(&sum), sizeof(sum))) break;
        if (sum != fnv1a(payload.data(), bytes)) {
            throw IoError("checkpoint record failed its checksum");
        }
        if (idx >= static_cast<std::uint32_t>(count)) {
            throw IoError("checkpoint record index out of range");
        }
        MatrixXd m(rows, cols);
        std::memcpy(m.data(), payload.data(), bytes);
        out[idx] = std::move(m);
    }
    return out;
}

void alpha_csv_from_records(const ExperimentConfig& cfg, const VectorXd& times,
                            const std::vector<std::optional<MatrixXd>>& records,
                            ManifestWriter& manifest)
{
    const int r_count = static_cast<int>(records.size());
    const int rows = static_cast<int>(records.front()->rows());
    const int cols = static_cast<int>(times.size());
    MatrixXd mean = MatrixXd::Zero(rows, cols);
    for (const auto& rec : records) mean += *rec;
    mean /= r_count;
    MatrixXd se = MatrixXd::Zero(rows, cols);
    if (r_count > 1) {
        for (const auto& rec : records) se += (*rec - mean).cwiseAbs2();
        se = (se / (static_cast<double>(r_count) * (r_count - 1))).cwiseSqrt();
    }

    std::vector<std::string> header;
    std::vector<VectorXd> columns;
    header.push_back("t");
    columns.push_back(times);
    if (rows == 1) {
        header.insert(header.end(), {"alpha_mean", "alpha_stderr"});
        columns.push_back(mean.row(0));
        columns.push_back(se.row(0));
    } else {
        header.insert(header.end(), {"alpha_depol_mean", "alpha_depol_stderr",
                                     "alpha_z_mean", "alpha_z_stderr"});
        columns.push_back(mean.row(0));
        columns.push_back(se.row(0));
        columns.push_back(mean.row(1));
        columns.push_back(se.row(1));
        manifest.extras["scalar_reduction"] =
            "alpha_depol = mean of the sigma_x/sigma_y channel entries";
    }
    emit(cfg, manifest, header, columns);
}

void run_alpha_impl(const ExperimentConfig& cfg, int stop_after, bool resuming)
{
    const VectorXd times = uniform_grid(cfg.t_max, cfg.dt);
    const int rows = (cfg.omega == 0.0) ? 1 : 2;
    const auto paths = checkpoint_paths(cfg.csv_path());
    ManifestWriter manifest{cfg};

    std::vector<std::optional<MatrixXd>> records(cfg.realizations);
    if (resuming) {
        records = read_records(paths.records, cfg.realizations, rows,
                               static_cast<int>(times.size()));
    } else {
        write_checkpoint_meta(paths, cfg, static_cast<int>(times.size()), rows);
        std::error_code ec;
        fs::remove(paths.records, ec);
    }

    std::ofstream rec_out(paths.records, std::ios::binary | std::ios::app);
    if (!rec_out) throw IoError("cannot open checkpoint records");

    ModelParams params{cfg.N, cfg.s, cfg.omega};
    int produced = 0;
    for (int r = 0; r < cfg.realizations; ++r) {
        if (records[r].has_value()) continue;
        if (stop_after >= 0 && produced >= stop_after) return;  // interrupted
        MatrixXd data;
        if (rows == 1) {
            data = MatrixXd(alpha_realization(params, times, r, cfg.seed).transpose());
        } else {
            data = channel_diag_realization(params, times, r, cfg.seed);
        }
        append_record(rec_out, r, data);
        records[r] = std::move(data);
        ++produced;
    }

    alpha_csv_from_records(cfg, times, records, manifest);
    rec_out.close();
    std::error_code ec;
    fs::remove(paths.meta, ec);
    fs::remove(paths.records, ec);
}

// ---- individual experiments ------------------------------------------------

void run_alpha0_exact(const ExperimentConfig& cfg)
{
    ManifestWriter manifest{cfg};
    const VectorXd times = uniform_grid(cfg.t_max, cfg.dt);
    VectorXd a0(times.size());
    for (int i = 0; i < times.size(); ++i) a0[i] = alpha0_exact(times[i], cfg.N);
    emit(cfg, manifest, {"t", "alpha0"}, {times, a0});
}

void run_lr_strong(const ExperimentConfig& cfg)
{
    if (!(cfg.s > 0.0)) throw ConfigError("lr-strong: s must be > 0");
    ManifestWriter manifest{cfg};
    const VectorXd times = uniform_grid(cfg.t_max, cfg.dt);
    const CompositeAlpha comp =
        composite_alpha(times, cfg.s, cfg.N, cfg.seed, 16, cfg.workers);
    manifest.extras["t_cut"] = comp.cutoff_reached ? json(comp.t_cut) : json(nullptr);
    manifest.extras["tail_fitted"] = comp.tail_fitted;
    manifest.extras["gamma"] = comp.gamma;
    emit(cfg, manifest, {"t", "alpha_lr", "alpha_composite"},
         {times, comp.lr_alpha, comp.trace.alpha});
}

void run_lr_weak(const ExperimentConfig& cfg)
{
    if (!(cfg.s > 0.0)) throw ConfigError("lr-weak: s must be > 0");
    ManifestWriter manifest{cfg};
    const double lambda = lambda_from_s(cfg.s, cfg.N);
    const double tau_h = 2.0 * cfg.N;
    manifest.extras["lambda"] = lambda;
    manifest.extras["tau_heisenberg"] = tau_h;
    const VectorXd times = uniform_grid(cfg.t_max, cfg.dt);
    VectorXd aw(times.size()), plr(times.size()), pelr(times.size());
    for (int i = 0; i < times.size(); ++i) {
        aw[i] = alpha_weak(times[i], lambda, tau_h);
        plr[i] = p_lr(times[i], lambda, tau_h);
        pelr[i] = p_elr(times[i], lambda, tau_h);
    }
    emit(cfg, manifest, {"t", "alpha_weak", "p_lr", "p_elr"}, {times, aw, plr, pelr});
}

void run_nm_sweep(const ExperimentConfig& cfg)
{
    ManifestWriter manifest{cfg};
    std::vector<double> s_values;
    for (double s = 0.0; s <= cfg.s_max + 1e-12; s += cfg.s_step) s_values.push_back(s);

    NMSweepOptions options;
    options.omega = cfg.omega;
    options.dt = cfg.dt;
    options.workers = cfg.workers;
    options.window = {0.0, cfg.t_max};
    const auto sweep =
        nm_sweep(s_values, cfg.N, cfg.realizations, cfg.seed, options);

    const auto s_crit = detect_transition(sweep, cfg.threshold);
    manifest.extras["s_crit"] = s_crit ? json(*s_crit) : json(nullptr);
    manifest.extras["threshold"] = cfg.threshold;

    const int n = static_cast<int>(sweep.size());
    VectorXd s(n), m(n), se(n), floor_(n), flag(n);
    for (int i = 0; i < n; ++i) {
        s[i] = sweep[i].s;
        m[i] = sweep[i].measure;
        se[i] = sweep[i].stderr_;
        floor_[i] = sweep[i].noise_floor;
        flag[i] = sweep[i].consistent_with_zero ? 1.0 : 0.0;
    }
    emit(cfg, manifest, {"s", "M", "M_stderr", "noise_floor", "consistent_with_zero"},
         {s, m, se, floor_, flag});
}

void run_weingarten(const ExperimentConfig& cfg)
{
    ManifestWriter manifest{cfg};
    const auto c = c_factors(cfg.N);
    const auto [v1, v2] = ctm_vectors(cfg.N);
    std::ostringstream out;
    out << "nu,C,ctm1,ctm2\n";
    for (int i = 0; i < 15; ++i) {
        out << (i + 1) << "," << c[i] << "," << v1[i] << "," << v2[i] << "\n";
    }
    const std::string text = out.str();
    std::fputs(text.c_str(), stdout);
    atomic_write(cfg.csv_path(), text);
    manifest.finish(cfg.csv_path(), text);
}

}  // namespace

// ---- figures ---------------------------------------------------------------

void figure_suite(int id, const ExperimentConfig& base)
{
    ExperimentConfig cfg = base;
    cfg.experiment = "figure";
    cfg.figure_id = id;
    if (cfg.out.empty()) cfg.out = "fig" + std::to_string(id) + ".csv";
    ManifestWriter manifest{cfg};

    switch (id) {
        case 1: {
            const VectorXd t = uniform_grid(10.0, cfg.dt);
            std::vector<std::string> header{"t"};
            std::vector<VectorXd> cols{t};
            for (int n : {2, 8, 32}) {
                VectorXd a(t.size());
                for (int i = 0; i < t.size(); ++i) a[i] = alpha0_exact(t[i], n);
                header.push_back("alpha0_N" + std::to_string(n));
                cols.push_back(a);
            }
            VectorXd lim(t.size());
            for (int i = 0; i < t.size(); ++i) lim[i] = alpha0_largeN(t[i]);
            header.push_back("alpha0_limit");
            cols.push_back(lim);
            emit(cfg, manifest, header, cols);
            return;
        }
        case 2: {
            const int points = 24;
            VectorXd t(points);
            for (int i = 0; i < points; ++i) t[i] = 0.25 * (i + 1);
            std::vector<std::string> header{"t"};
            std::vector<VectorXd> cols{t};
            const Kernel kernel = Kernel::semicircle();
            for (int n : {16, 128, 1024}) {
                VectorXd a(points);
                for (int i = 0; i < points; ++i) a[i] = alpha2(t[i], n, kernel);
                header.push_back("alpha2_N" + std::to_string(n));
                cols.push_back(a);
            }
            VectorXd lim(points);
            for (int i = 0; i < points; ++i) lim[i] = alpha2_largeN(t[i], kernel);
            header.push_back("alpha2_limit");
            cols.push_back(lim);
            emit(cfg, manifest, header, cols);
            return;
        }
        case 3: {
            const VectorXd t = uniform_grid(cfg.t_max, 0.05);
            std::vector<std::string> header{"t"};
            std::vector<VectorXd> cols{t};
            int stream_block = 0;
            for (double s : {0.1, 0.2, 0.4}) {
                ModelParams params{cfg.N, s, 0.0};
                const auto mc = ensemble_alpha(params, t, cfg.realizations,
                                               cfg.seed + stream_block, cfg.workers);
                const auto comp =
                    composite_alpha(t, s, cfg.N, cfg.seed + stream_block, 16, cfg.workers);
                const std::string tag = format_value(s);
                header.push_back("mc_s" + tag);
                cols.push_back(mc.alpha);
                header.push_back("mc_stderr_s" + tag);
                cols.push_back(mc.stderr_);
                header.push_back("composite_s" + tag);
                cols.push_back(comp.trace.alpha);
                ++stream_block;
            }
            emit(cfg, manifest, header, cols);
            return;
        }
        case 4: {
            std::vector<double> s_values;
            for (double s = 0.0; s <= cfg.s_max + 1e-12; s += cfg.s_step)
                s_values.push_back(s);
            std::vector<std::string> header{"s"};
            VectorXd s(s_values.size());
            for (std::size_t i = 0; i < s_values.size(); ++i) s[i] = s_values[i];
            std::vector<VectorXd> cols{s};
            for (int n : {64, 256}) {
                NMSweepOptions options;
                options.dt = cfg.dt;
                options.workers = cfg.workers;
                options.window = {0.0, cfg.t_max};
                const auto sweep = nm_sweep(s_values, n, cfg.realizations, cfg.seed,
                                            options);
                VectorXd m(s.size()), se(s.size());
                for (int i = 0; i < s.size(); ++i) {
                    m[i] = sweep[i].measure;
                    se[i] = sweep[i].stderr_;
                }
                header.push_back("M_N" + std::to_string(n));
                cols.push_back(m);
                header.push_back("M_stderr_N" + std::to_string(n));
                cols.push_back(se);
            }
            emit(cfg, manifest, header, cols);
            return;
        }
        case 5: {
            std::vector<double> s_values;
            for (double s = 0.0; s <= 0.6 + 1e-12; s += cfg.s_step)
                s_values.push_back(s);
            std::vector<std::string> header{"s"};
            VectorXd s(s_values.size());
            for (std::size_t i = 0; i < s_values.size(); ++i) s[i] = s_values[i];
            std::vector<VectorXd> cols{s};
            for (double omega : {0.0, 0.5, 1.0}) {
                NMSweepOptions options;
                options.omega = omega;
                options.dt = cfg.dt;
                options.workers = cfg.workers;
                options.window = {0.0, cfg.t_max};
                const auto sweep = nm_sweep(s_values, cfg.N, cfg.realizations,
                                            cfg.seed, options);
                VectorXd m(s.size()), se(s.size());
                for (int i = 0; i < s.size(); ++i) {
                    m[i] = sweep[i].measure;
                    se[i] = sweep[i].stderr_;
                }
                const std::string tag = format_value(omega);
                header.push_back("M_omega" + tag);
                cols.push_back(m);
                header.push_back("M_stderr_omega" + tag);
                cols.push_back(se);
            }
            emit(cfg, manifest, header, cols);
            return;
        }
        default:
            throw ConfigError("figure id must be 1..5");
    }
}

// ---- config plumbing --------------------------------------------------------

void ExperimentConfig::apply_key_value(const std::string& key, const std::string& value)
{
    try {
        if (key == "experiment") experiment = value;
        else if (key == "N") N = std::stoi(value);
        else if (key == "s") s = std::stod(value);
        else if (key == "omega") omega = std::stod(value);
        else if (key == "t_max") t_max = std::stod(value);
        else if (key == "dt") dt = std::stod(value);
        else if (key == "R" || key == "realizations") realizations = std::stoi(value);
        else if (key == "seed") seed = std::stoull(value);
        else if (key == "workers") workers = std::stoi(value);
        else if (key == "out") out = value;
        else if (key == "figure" || key == "figure_id") figure_id = std::stoi(value);
        else if (key == "s_max") s_max = std::stod(value);
        else if (key == "s_step") s_step = std::stod(value);
        else if (key == "threshold") threshold = std::stod(value);
        else throw ConfigError("unknown config key: " + key);
    } catch (const std::invalid_argument&) {
        throw ConfigError("bad value for config key " + key + ": " + value);
    } catch (const std::out_of_range&) {
        throw ConfigError("value out of range for config key " + key + ": " + value);
    }
}

ExperimentConfig ExperimentConfig::from_file(const fs::path& path)
{
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file " + path.string());
    ExperimentConfig cfg;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos) {
                throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                                  ": expected key = value");
            }
            continue;
        }
        auto trim = [](std::string s_) {
            const auto a = s_.find_first_not_of(" \t\r");
            const auto b = s_.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s_.substr(a, b - a + 1);
        };
        cfg.apply_key_value(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

fs::path ExperimentConfig::csv_path() const
{
    if (!out.empty()) return out;
    return experiment == "figure" ? "fig" + std::to_string(figure_id) + ".csv"
                                  : experiment + ".csv";
}

std::string ExperimentConfig::canonical_text() const
{
    return config_json(*this).dump();
}

void ExperimentConfig::validate() const
{
    if (N < 1) throw ConfigError("N must be >= 1");
    if (s < 0.0) throw ConfigError("s must be >= 0");
    if (omega < 0.0) throw ConfigError("omega must be >= 0");
    if (!(dt > 0.0)) throw ConfigError("dt must be > 0");
    if (!(t_max > 0.0)) throw ConfigError("t_max must be > 0");
    if (realizations < 1) throw ConfigError("realizations must be >= 1");
    if (workers < 1) throw ConfigError("workers must be >= 1");
    if (s_step <= 0.0) throw ConfigError("s_step must be > 0");
}

std::uint64_t fnv1a(const void* data, std::size_t size)
{
    const auto* bytes = static_cast<const unsigned char*>(data);
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (std::size_t i = 0; i < size; ++i) {
        hash ^= bytes[i];
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

void run_alpha_checkpointed(const ExperimentConfig& config, int stop_after)
{
    config.validate();
    run_alpha_impl(config, stop_after, /*resuming=*/false);
}

void resume(const fs::path& out_csv)
{
    const auto paths = checkpoint_paths(out_csv);
    if (!fs::exists(paths.meta)) {
        throw IoError("resume: checkpoint manifest missing: " + paths.meta.string());
    }
    std::ifstream in(paths.meta);
    json meta;
    try {
        in >> meta;
    } catch (const json::exception& e) {
        throw IoError(std::string("resume: corrupt checkpoint manifest: ") + e.what());
    }
    ExperimentConfig cfg;
    const json& jc = meta.at("config");
    cfg.experiment = jc.at("experiment").get<std::string>();
    cfg.N = jc.at("N").get<int>();
    cfg.s = jc.at("s").get<double>();
    cfg.omega = jc.at("omega").get<double>();
    cfg.t_max = jc.at("t_max").get<double>();
    cfg.dt = jc.at("dt").get<double>();
    cfg.realizations = jc.at("realizations").get<int>();
    cfg.seed = jc.at("seed").get<std::uint64_t>();
    cfg.workers = jc.at("workers").get<int>();
    cfg.out = out_csv.string();
    const std::uint64_t expect = meta.at("config_hash").get<std::uint64_t>();
    const std::uint64_t have =
        fnv1a(cfg.canonical_text().data(), cfg.canonical_text().size());
    if (expect != have) {
        throw IoError("resume: checkpoint config does not match its hash");
    }
    if (cfg.experiment != "alpha") throw ConfigError("resume supports alpha runs");
    run_alpha_impl(cfg, -1, /*resuming=*/true);
}

void run(const ExperimentConfig& config)
{
    config.validate();
    if (config.experiment == "alpha") {
        run_alpha_checkpointed(config);
    } else if (config.experiment == "alpha0-exact") {
        run_alpha0_exact(config);
    } else if (config.experiment == "lr-strong") {
        run_lr_strong(config);
    } else if (config.experiment == "lr-weak") {
        run_lr_weak(config);
    } else if (config.experiment == "nm-sweep") {
        run_nm_sweep(config);
    } else if (config.experiment == "weingarten") {
        run_weingarten(config);
    } else if (config.experiment == "figure") {
        figure_suite(config.figure_id, config);
    } else {
        throw ConfigError("unknown experiment: " + config.experiment);
    }
}

}  // namespace rmtq
