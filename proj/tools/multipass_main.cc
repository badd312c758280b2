// Copyright 2026 The Multipass Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "multipass/closed_form.h"
#include "multipass/error.h"
#include "multipass/experiment.h"

using namespace multipass;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitEstimator = 3;
constexpr int kExitRegime = 4;

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Config:
        case ErrorKind::Domain:
        case ErrorKind::NonUnitary:
            return kExitConfig;
        case ErrorKind::RegimeViolation:
            return kExitRegime;
        default:
            return kExitEstimator;
    }
}

struct Overrides {
    std::string shots;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string format;
    std::optional<std::int64_t> bootstrap;
};

ExperimentConfig load_config(const std::string &path, const Overrides &o) {
    std::ifstream in(path);
    if (!in) {
        fail(ErrorKind::Config, "cannot read config file '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    ExperimentConfig cfg;
    try {
        cfg = parse_config(buf.str());
    } catch (const Error &e) {
        throw Error(e.kind(), path + ": " + e.what());
    }
    if (!o.shots.empty()) {
        if (o.shots == "exact") {
            cfg.shots.reset();
        } else {
            try {
                size_t used = 0;
                long long s = std::stoll(o.shots, &used);
                if (used != o.shots.size() || s < 1) {
                    throw std::invalid_argument(o.shots);
                }
                cfg.shots = s;
            } catch (const std::exception &) {
                fail(ErrorKind::Config, "--shots expects 'exact' or a positive integer, got '" + o.shots + "'");
            }
        }
    }
    if (o.seed) {
        cfg.seed = *o.seed;
    }
    if (!o.out.empty()) {
        cfg.output_path = o.out;
    }
    if (!o.format.empty()) {
        cfg.format = o.format == "json" ? OutputFormat::Json : OutputFormat::Csv;
    }
    if (o.bootstrap) {
        cfg.estimate.bootstrap = *o.bootstrap;
    }
    return cfg;
}

void emit(const ExperimentConfig &cfg, const std::string &command, const std::string &extension, const std::string &text) {
    std::string path = cfg.output_path;
    if (path.empty()) {
        const char *dir = std::getenv(kOutputDirEnv);
        if (dir == nullptr || *dir == '\0') {
            std::cout << text;
            return;
        }
        path = (std::filesystem::path(dir) / (command + "-" + config_hash(cfg) + "." + extension)).string();
    }
    std::ofstream out(path);
    if (!out) {
        fail(ErrorKind::Config, "cannot write output file '" + path + "'");
    }
    out << text;
    std::cerr << "wrote " << path << "\n";
}

void add_common(CLI::App *sub, std::string &config_path, Overrides &o) {
    sub->add_option("config", config_path, "JSON experiment config")->required();
    sub->add_option("--shots", o.shots, "'exact' or number of shots per probability");
    sub->add_option("--seed", o.seed, "RNG seed");
    sub->add_option("--out", o.out, "output file (default: stdout or $" + std::string(kOutputDirEnv) + ")");
    sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Multi-pass SU(2) gate error amplification and estimation", "multipass"};
    app.set_version_flag("--version", tool_banner());
    app.require_subcommand(1);

    std::string config_path;
    Overrides o;
    std::string protocol;
    unsigned threads = 0;
    double epsilon = 0.0;
    bool half = false;

    CLI::App *propagate = app.add_subcommand("propagate", "populations and propagator of one sequence");
    add_common(propagate, config_path, o);

    CLI::App *sweep = app.add_subcommand("sweep", "quantum and classical populations over a parameter sweep");
    add_common(sweep, config_path, o);
    sweep->add_option("--threads", threads, "worker threads (0: all cores)");

    CLI::App *estimate = app.add_subcommand("estimate", "recover gate errors from forward sequences");
    add_common(estimate, config_path, o);
    estimate->add_option("--protocol", protocol, "RealA, SumLargeP, RatioGeneral, PhaseGateSum or PhaseGatePeak");
    estimate->add_option("--bootstrap", o.bootstrap, "bootstrap replicas in shot mode");

    CLI::App *suggest = app.add_subcommand("suggest-n", "pass count that amplifies an error of size epsilon");
    suggest->add_option("--epsilon", epsilon, "expected single-pass error")->required();
    suggest->add_flag("--half", half, "also print guidance for p near 1/2");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (suggest->parsed()) {
            std::cout << "amplification_passes=" << amplification_passes(epsilon) << "\n";
            if (half) {
                std::cout << "half_probability_passes=" << half_probability_passes(epsilon) << "\n";
            }
            return kExitOk;
        }
        ExperimentConfig cfg = load_config(config_path, o);
        if (propagate->parsed()) {
            PropagateReport rep = run_propagate(cfg);
            if (cfg.format == OutputFormat::Json) {
                emit(cfg, "propagate", "json", propagate_json(cfg, rep).dump(2) + "\n");
            } else {
                emit(cfg, "propagate", "csv", propagate_csv(cfg, rep));
            }
        } else if (sweep->parsed()) {
            auto rows = run_sweep(cfg, threads);
            if (cfg.format == OutputFormat::Json) {
                emit(cfg, "sweep", "json", sweep_json(cfg, rows).dump(2) + "\n");
            } else {
                emit(cfg, "sweep", "csv", sweep_csv(cfg, rows));
            }
        } else if (estimate->parsed()) {
            std::optional<EstimateMethod> method = cfg.estimate.protocol;
            if (!protocol.empty()) {
                method = parse_estimate_method(protocol);
            }
            if (!method) {
                fail(ErrorKind::Config, "no protocol: pass --protocol or set /estimate/protocol");
            }
            EstimateReport rep = run_estimate(cfg, *method);
            for (const auto &w : rep.warnings) {
                std::cerr << "warning: " << w << "\n";
            }
            emit(cfg, "estimate", "json", estimate_json(cfg, rep).dump(2) + "\n");
        }
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    }
    return kExitOk;
}
