// Copyright (c) 2026 The rmtq Authors
// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>

#include "rmtq/errors.hpp"
#include "rmtq/runner.hpp"

namespace {

struct FlagValues {
    int N = 0;
    double s = 0, omega = 0, t_max = 0, dt = 0;
    int realizations = 0, workers = 0, figure = 0;
    std::uint64_t seed = 0;
    double s_max = 0, s_step = 0, threshold = 0;
    std::string out, config;
};

// Shared flag set; names follow the external interface.
void add_common_options(CLI::App* sub, FlagValues& v)
{
    sub->add_option("--N", v.N, "environment dimension");
    sub->add_option("--s", v.s, "free-Hamiltonian strength");
    sub->add_option("--omega", v.omega, "qubit level splitting");
    sub->add_option("--t-max", v.t_max, "time grid end");
    sub->add_option("--dt", v.dt, "time grid step");
    sub->add_option("--R", v.realizations, "Monte Carlo realizations");
    sub->add_option("--seed", v.seed, "master seed");
    sub->add_option("--workers", v.workers, "worker threads");
    sub->add_option("--out", v.out, "output CSV path");
    sub->add_option("--config", v.config, "key = value config file (flags win)");
    sub->add_option("--s-max", v.s_max, "sweep grid end");
    sub->add_option("--s-step", v.s_step, "sweep grid step");
    sub->add_option("--threshold", v.threshold, "transition threshold");
}

rmtq::ExperimentConfig build_config(CLI::App* sub, const FlagValues& v,
                                    const std::string& experiment)
{
    rmtq::ExperimentConfig cfg;
    if (sub->count("--config")) {
        cfg = rmtq::ExperimentConfig::from_file(v.config);
    }
    cfg.experiment = experiment;
    if (sub->count("--N")) cfg.N = v.N;
    if (sub->count("--s")) cfg.s = v.s;
    if (sub->count("--omega")) cfg.omega = v.omega;
    if (sub->count("--t-max")) cfg.t_max = v.t_max;
    if (sub->count("--dt")) cfg.dt = v.dt;
    if (sub->count("--R")) cfg.realizations = v.realizations;
    if (sub->count("--seed")) cfg.seed = v.seed;
    if (sub->count("--out")) cfg.out = v.out;
    if (sub->count("--s-max")) cfg.s_max = v.s_max;
    if (sub->count("--s-step")) cfg.s_step = v.s_step;
    if (sub->count("--threshold")) cfg.threshold = v.threshold;

    if (sub->count("--workers")) {
        cfg.workers = v.workers;
    } else if (const char* env = std::getenv("RMTQ_WORKERS")) {
        cfg.workers = std::max(1, std::atoi(env));
    }
    return cfg;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"random-matrix qubit decoherence toolkit"};
    app.require_subcommand(1);

    FlagValues v;
    std::string resume_out;
    int figure_id = 1;

    CLI::App* alpha = app.add_subcommand("alpha", "Monte Carlo ensemble alpha(t)");
    CLI::App* alpha0 = app.add_subcommand("alpha0-exact", "exact s = 0 curve");
    CLI::App* lr_strong =
        app.add_subcommand("lr-strong", "strong-coupling linear response + tail");
    CLI::App* lr_weak = app.add_subcommand("lr-weak", "weak-coupling theory curves");
    CLI::App* nm = app.add_subcommand("nm-sweep", "non-Markovianity measure vs s");
    CLI::App* weingarten =
        app.add_subcommand("weingarten", "exact C and C^T M vectors for given N");
    CLI::App* figure = app.add_subcommand("figure", "figure dataset bundles");
    CLI::App* resume_cmd =
        app.add_subcommand("resume", "continue an interrupted alpha run");

    for (CLI::App* sub : {alpha, alpha0, lr_strong, lr_weak, nm, weingarten, figure}) {
        add_common_options(sub, v);
    }
    figure->add_option("--id", figure_id, "figure number 1..5")->required();
    resume_cmd->add_option("--out", resume_out, "CSV path of the interrupted run")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (resume_cmd->parsed()) {
            rmtq::resume(resume_out);
            return 0;
        }
        std::string experiment;
        CLI::App* sub = nullptr;
        for (CLI::App* cand : {alpha, alpha0, lr_strong, lr_weak, nm, weingarten, figure}) {
            if (cand->parsed()) {
                sub = cand;
                experiment = cand->get_name();
                break;
            }
        }
        rmtq::ExperimentConfig cfg = build_config(sub, v, experiment);
        if (figure->parsed()) cfg.figure_id = figure_id;
        rmtq::run(cfg);
        return 0;
    } catch (const rmtq::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const rmtq::NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const rmtq::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
