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


#ifndef MULTIPASS_EXPERIMENT_H
#define MULTIPASS_EXPERIMENT_H

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "multipass/closed_form.h"
#include "multipass/estimators.h"
#include "multipass/io.h"
#include "multipass/sequence.h"
#include "multipass/shot_sim.h"

#ifndef MULTIPASS_VERSION
#define MULTIPASS_VERSION "0.1.0"
#endif

namespace multipass {

inline constexpr const char *kToolName = "multipass";
inline constexpr const char *kToolVersion = MULTIPASS_VERSION;

/// Default output directory when a config names no output path.
inline constexpr const char *kOutputDirEnv = "MULTIPASS_OUTPUT_DIR";

enum class GateKind { CayleyKlein, ProbPhase, Resonant, Rabi };
enum class SequenceKind { Repeat, Pair, PhaseBlock };
enum class SweepVariable { P, N, M, Xi };
enum class OutputFormat { Csv, Json };

std::string_view to_string(GateKind k);
std::string_view to_string(SequenceKind k);
std::string_view to_string(SweepVariable v);
std::string_view to_string(OutputFormat f);

struct GateSpec {
    GateKind kind = GateKind::ProbPhase;
    /// cayley_klein: re_a im_a re_b im_b; prob_phase: p xi eta;
    /// resonant: area; rabi: omega delta duration.
    std::map<std::string, double> params;

    bool operator==(const GateSpec &) const = default;
};

struct SequenceSpec {
    SequenceKind kind = SequenceKind::Repeat;
    /// Passes for repeat, half-block length for phase_block.
    std::int64_t n = 1;
    /// Repetitions of the pair or block.
    std::int64_t m = 1;
    PairKind pair = PairKind::PlusPlus;

    bool operator==(const SequenceSpec &) const = default;
};

struct SweepSpec {
    SweepVariable variable = SweepVariable::P;
    double from = 0.0;
    double to = 1.0;
    std::int64_t steps = 2;

    bool operator==(const SweepSpec &) const = default;
};

struct EstimateSpec {
    std::optional<EstimateMethod> protocol;
    /// RealA branch hint: NearOne, NearZero or TwoPoint.
    std::string hint = "NearOne";
    /// Second pass count for TwoPoint; 0 means n + 1.
    std::int64_t n2 = 0;
    /// Peak index for PhaseGatePeak.
    std::int64_t k = 0;
    std::int64_t bootstrap = 200;
    /// Overrides for Tolerances::exact_inversion and phase_consistency.
    double inversion_tolerance = Tolerances{}.exact_inversion;
    double phase_tolerance = Tolerances{}.phase_consistency;

    bool operator==(const EstimateSpec &) const = default;
};

struct ExperimentConfig {
    GateSpec gate;
    SequenceSpec sequence;
    std::optional<SweepSpec> sweep;
    /// Absent means exact probabilities.
    std::optional<std::int64_t> shots;
    std::uint64_t seed = 0;
    std::string output_path;
    OutputFormat format = OutputFormat::Csv;
    EstimateSpec estimate;

    bool operator==(const ExperimentConfig &) const = default;
};

/// Parses a JSON config. Syntax errors report line and column, semantic
/// errors the JSON pointer of the field. Throws ErrorKind::Config.
ExperimentConfig parse_config(const std::string &text);
ExperimentConfig config_from_json(const Json &j);
/// Canonical form: every field present, keys sorted.
Json to_json(const ExperimentConfig &cfg);
/// FNV-1a 64 of the canonical dump, as 16 hex digits.
std::string config_hash(const ExperimentConfig &cfg);

Su2Gate build_gate(const GateSpec &spec);
GateSequence build_sequence(const Su2Gate &g, const SequenceSpec &spec);

/// steps points from `from` to `to` inclusive; N and M values are rounded.
std::vector<double> sweep_values(const SweepSpec &spec);
/// Copy of cfg with the sweep variable set to x. Throws ErrorKind::Config
/// when the variable is not a parameter of the chosen gate or sequence.
ExperimentConfig at_sweep_point(const ExperimentConfig &cfg, double x);

struct PropagateReport {
    MultiPassResult brute_force;
    MultiPassResult fast;
    double discrepancy;
};

PropagateReport run_propagate(const ExperimentConfig &cfg);

struct SweepRow {
    double x = 0.0;
    double q_quantum = 0.0;
    double p_quantum = 0.0;
    double q_classical = 0.0;
    double p_classical = 0.0;
    std::optional<double> p_hat;
    std::optional<double> standard_error;
};

/// Evaluates every sweep point, in parallel when threads != 1 (0 picks the
/// hardware concurrency). Rows are in sweep order.
std::vector<SweepRow> run_sweep(const ExperimentConfig &cfg, unsigned threads = 0);

struct BootstrapSummary {
    std::int64_t replicas = 0;
    std::int64_t failed = 0;
    double p_hat_stderr = 0.0;
    double epsilon_hat_stderr = 0.0;
    std::optional<double> xi_hat_stderr;
    std::optional<double> eta_hat_stderr;
    std::optional<double> gamma_hat_stderr;
};

struct EstimateReport {
    EstimateMethod protocol;
    ErrorEstimate estimate;
    /// Probability fed to the estimator for each forward sequence.
    std::vector<std::pair<std::string, double>> probabilities;
    std::vector<MeasurementRecord> records;
    std::optional<BootstrapSummary> bootstrap;
    std::vector<std::string> warnings;
};

/// Runs the forward sequences the protocol needs (exactly or with shots),
/// then the estimator. Shot mode adds a parametric bootstrap over
/// cfg.estimate.bootstrap reseeded replicas.
EstimateReport run_estimate(const ExperimentConfig &cfg, EstimateMethod protocol);

std::string tool_banner();
std::string propagate_csv(const ExperimentConfig &cfg, const PropagateReport &rep);
Json propagate_json(const ExperimentConfig &cfg, const PropagateReport &rep);
std::string sweep_csv(const ExperimentConfig &cfg, const std::vector<SweepRow> &rows);
Json sweep_json(const ExperimentConfig &cfg, const std::vector<SweepRow> &rows);
Json estimate_json(const ExperimentConfig &cfg, const EstimateReport &rep);

}  // namespace multipass

#endif
