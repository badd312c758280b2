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


#include "multipass/experiment.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>

#include "multipass/error.h"

namespace multipass {

namespace {

const std::map<GateKind, std::vector<std::pair<std::string, std::optional<double>>>> &gate_fields() {
    static const std::map<GateKind, std::vector<std::pair<std::string, std::optional<double>>>> fields = {
        {GateKind::CayleyKlein, {{"re_a", {}}, {"im_a", {}}, {"re_b", {}}, {"im_b", {}}}},
        {GateKind::ProbPhase, {{"p", {}}, {"xi", 0.0}, {"eta", 0.0}}},
        {GateKind::Resonant, {{"area", {}}}},
        {GateKind::Rabi, {{"omega", {}}, {"delta", {}}, {"duration", {}}}},
    };
    return fields;
}

template <typename E, size_t K>
E parse_enum(const std::string &name, const E (&values)[K], const std::string &pointer) {
    std::string known;
    for (E v : values) {
        if (name == to_string(v)) {
            return v;
        }
        known += (known.empty() ? "" : ", ") + std::string(to_string(v));
    }
    fail(ErrorKind::Config, "at " + pointer + ": unknown value '" + name + "' (expected one of " + known + ")");
}

constexpr GateKind kGateKinds[] = {GateKind::CayleyKlein, GateKind::ProbPhase, GateKind::Resonant, GateKind::Rabi};
constexpr SequenceKind kSequenceKinds[] = {SequenceKind::Repeat, SequenceKind::Pair, SequenceKind::PhaseBlock};
constexpr SweepVariable kSweepVariables[] = {SweepVariable::P, SweepVariable::N, SweepVariable::M, SweepVariable::Xi};
constexpr OutputFormat kFormats[] = {OutputFormat::Csv, OutputFormat::Json};

GateSpec gate_spec_from_json(const Json &j) {
    FieldReader r(j, "/gate");
    GateSpec spec;
    spec.kind = parse_enum(r.string("type"), kGateKinds, r.pointer("type"));
    for (const auto &[name, fallback] : gate_fields().at(spec.kind)) {
        spec.params[name] = fallback ? r.number_or(name, *fallback) : r.number(name);
    }
    r.finish();
    return spec;
}

SequenceSpec sequence_spec_from_json(const Json &j) {
    FieldReader r(j, "/sequence");
    SequenceSpec spec;
    spec.kind = parse_enum(r.string("type"), kSequenceKinds, r.pointer("type"));
    switch (spec.kind) {
        case SequenceKind::Repeat:
            spec.n = r.integer("n");
            break;
        case SequenceKind::Pair:
            try {
                spec.pair = parse_pair_kind(r.string("kind"));
            } catch (const Error &e) {
                fail(ErrorKind::Config, "at " + r.pointer("kind") + ": " + e.what());
            }
            spec.m = r.integer("m");
            break;
        case SequenceKind::PhaseBlock:
            spec.n = r.integer("n");
            spec.m = r.integer("m");
            break;
    }
    r.finish();
    if (spec.n < 1) {
        fail(ErrorKind::Config, "at /sequence/n: must be >= 1");
    }
    if (spec.m < 1) {
        fail(ErrorKind::Config, "at /sequence/m: must be >= 1");
    }
    return spec;
}

SweepSpec sweep_spec_from_json(const Json &j) {
    FieldReader r(j, "/sweep");
    SweepSpec spec;
    spec.variable = parse_enum(r.string("variable"), kSweepVariables, r.pointer("variable"));
    spec.from = r.number("from");
    spec.to = r.number("to");
    spec.steps = r.integer("steps");
    r.finish();
    if (spec.steps < 1) {
        fail(ErrorKind::Config, "at /sweep/steps: must be >= 1");
    }
    return spec;
}

EstimateSpec estimate_spec_from_json(const Json &j) {
    FieldReader r(j, "/estimate");
    EstimateSpec spec;
    if (r.has("protocol")) {
        const Json &v = r.at("protocol");
        if (!v.is_null()) {
            if (!v.is_string()) {
                fail(ErrorKind::Config, "at /estimate/protocol: expected a string");
            }
            try {
                spec.protocol = parse_estimate_method(v.get<std::string>());
            } catch (const Error &e) {
                fail(ErrorKind::Config, "at /estimate/protocol: " + std::string(e.what()));
            }
        }
    }
    spec.hint = r.string_or("hint", spec.hint);
    if (spec.hint != "NearOne" && spec.hint != "NearZero" && spec.hint != "TwoPoint") {
        fail(ErrorKind::Config, "at /estimate/hint: expected NearOne, NearZero or TwoPoint");
    }
    spec.n2 = r.integer_or("n2", spec.n2);
    spec.k = r.integer_or("k", spec.k);
    spec.bootstrap = r.integer_or("bootstrap", spec.bootstrap);
    spec.inversion_tolerance = r.number_or("inversion_tolerance", spec.inversion_tolerance);
    spec.phase_tolerance = r.number_or("phase_tolerance", spec.phase_tolerance);
    r.finish();
    if (!(spec.inversion_tolerance > 0.0) || !(spec.phase_tolerance > 0.0)) {
        fail(ErrorKind::Config, "at /estimate: tolerances must be positive");
    }
    if (spec.n2 < 0 || spec.k < 0 || spec.bootstrap < 0) {
        fail(ErrorKind::Config, "at /estimate: n2, k and bootstrap must be non-negative");
    }
    return spec;
}

std::pair<int, int> line_and_column(const std::string &text, size_t byte) {
    int line = 1;
    int col = 1;
    size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
    for (size_t i = 0; i < end; i++) {
        if (text[i] == '\n') {
            line++;
            col = 1;
        } else {
            col++;
        }
    }
    return {line, col};
}

double sample_std(const std::vector<double> &xs) {
    if (xs.size() < 2) {
        return 0.0;
    }
    double mean = 0.0;
    for (double x : xs) {
        mean += x;
    }
    mean /= static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) {
        ss += (x - mean) * (x - mean);
    }
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

struct ForwardPlan {
    std::vector<std::pair<std::string, GateSequence>> sequences;
};

ForwardPlan forward_plan(const ExperimentConfig &cfg, const Su2Gate &g, EstimateMethod protocol) {
    const SequenceSpec &s = cfg.sequence;
    auto need = [&](SequenceKind kind, const char *what) {
        if (s.kind != kind) {
            fail(ErrorKind::Config,
                 "at /sequence/type: protocol " + std::string(to_string(protocol)) + " needs a '" +
                     std::string(to_string(kind)) + "' sequence " + what);
        }
    };
    ForwardPlan plan;
    switch (protocol) {
        case EstimateMethod::RealA: {
            need(SequenceKind::Repeat, "giving N");
            plan.sequences.emplace_back("repeat_N", repeat_same(g, s.n));
            if (cfg.estimate.hint == "TwoPoint") {
                std::int64_t n2 = cfg.estimate.n2 > 0 ? cfg.estimate.n2 : s.n + 1;
                plan.sequences.emplace_back("repeat_N2", repeat_same(g, n2));
            }
            break;
        }
        case EstimateMethod::SumLargeP:
            need(SequenceKind::Pair, "giving M");
            plan.sequences.emplace_back("pair_PlusPlus_M", pair_sequence(g, PairKind::PlusPlus, s.m));
            plan.sequences.emplace_back("pair_MinusPlus_M", pair_sequence(g, PairKind::MinusPlus, s.m));
            break;
        case EstimateMethod::RatioGeneral:
            need(SequenceKind::Pair, "giving M");
            plan.sequences.emplace_back("pair_PlusPlus_M", pair_sequence(g, PairKind::PlusPlus, s.m));
            plan.sequences.emplace_back("pair_PlusPlus_2M", pair_sequence(g, PairKind::PlusPlus, 2 * s.m));
            plan.sequences.emplace_back("pair_MinusPlus_M", pair_sequence(g, PairKind::MinusPlus, s.m));
            plan.sequences.emplace_back("pair_MinusPlus_2M", pair_sequence(g, PairKind::MinusPlus, 2 * s.m));
            break;
        case EstimateMethod::PhaseGateSum:
            need(SequenceKind::Pair, "giving M");
            plan.sequences.emplace_back("pair_PlusMinus_M", pair_sequence(g, PairKind::PlusMinus, s.m));
            plan.sequences.emplace_back("pair_MinusMinus_M", pair_sequence(g, PairKind::MinusMinus, s.m));
            break;
        case EstimateMethod::PhaseGatePeak:
            need(SequenceKind::PhaseBlock, "giving n and M");
            plan.sequences.emplace_back("phase_block", phase_gate_block(g, s.n, s.m));
            plan.sequences.emplace_back("pair_PlusMinus_M", pair_sequence(g, PairKind::PlusMinus, s.m));
            plan.sequences.emplace_back("pair_MinusMinus_M", pair_sequence(g, PairKind::MinusMinus, s.m));
            break;
    }
    return plan;
}

ErrorEstimate apply_estimator(
    const ExperimentConfig &cfg, EstimateMethod protocol, const std::vector<double> &v, const Tolerances &tol) {
    const SequenceSpec &s = cfg.sequence;
    switch (protocol) {
        case EstimateMethod::RealA: {
            BranchHint hint = NearOne{};
            if (cfg.estimate.hint == "NearZero") {
                hint = NearZero{};
            } else if (cfg.estimate.hint == "TwoPoint") {
                std::int64_t n2 = cfg.estimate.n2 > 0 ? cfg.estimate.n2 : s.n + 1;
                hint = TwoPoint{1.0 - v[1], n2};
            }
            return invert_real_a(1.0 - v[0], s.n, hint, tol);
        }
        case EstimateMethod::SumLargeP:
            return estimate_sum_large_p(v[0], v[1], s.m, tol);
        case EstimateMethod::RatioGeneral:
            return estimate_ratio_general(v[0], v[1], v[2], v[3], s.m, tol);
        case EstimateMethod::PhaseGateSum:
            return estimate_phase_gate_sum(v[0], v[1], s.m, tol);
        case EstimateMethod::PhaseGatePeak: {
            ErrorEstimate sum = estimate_phase_gate_sum(v[1], v[2], s.m, tol);
            ErrorEstimate est = estimate_phase_gamma_peak(v[0], sum.p_hat, s.n, s.m, cfg.estimate.k);
            est.eta_hat = sum.eta_hat;
            return est;
        }
    }
    fail(ErrorKind::Config, "unsupported protocol");
}

std::string row_value(const std::optional<double> &x) {
    return x ? format_double(*x) : "";
}

}  // namespace

std::string_view to_string(GateKind k) {
    switch (k) {
        case GateKind::CayleyKlein:
            return "cayley_klein";
        case GateKind::ProbPhase:
            return "prob_phase";
        case GateKind::Resonant:
            return "resonant";
        case GateKind::Rabi:
            return "rabi";
    }
    return "?";
}

std::string_view to_string(SequenceKind k) {
    switch (k) {
        case SequenceKind::Repeat:
            return "repeat";
        case SequenceKind::Pair:
            return "pair";
        case SequenceKind::PhaseBlock:
            return "phase_block";
    }
    return "?";
}

std::string_view to_string(SweepVariable v) {
    switch (v) {
        case SweepVariable::P:
            return "p";
        case SweepVariable::N:
            return "N";
        case SweepVariable::M:
            return "M";
        case SweepVariable::Xi:
            return "xi";
    }
    return "?";
}

std::string_view to_string(OutputFormat f) {
    return f == OutputFormat::Csv ? "csv" : "json";
}

ExperimentConfig config_from_json(const Json &j) {
    FieldReader r(j, "");
    ExperimentConfig cfg;
    cfg.gate = gate_spec_from_json(r.at("gate"));
    cfg.sequence = sequence_spec_from_json(r.at("sequence"));
    if (r.has("sweep") && !r.at("sweep").is_null()) {
        cfg.sweep = sweep_spec_from_json(r.at("sweep"));
    }
    if (r.has("shots")) {
        const Json &shots = r.at("shots");
        if (shots.is_string() && shots.get<std::string>() == "exact") {
            cfg.shots.reset();
        } else if (shots.is_number_integer() && shots.get<std::int64_t>() >= 1) {
            cfg.shots = shots.get<std::int64_t>();
        } else {
            fail(ErrorKind::Config, "at /shots: expected \"exact\" or a positive integer, got " + shots.dump());
        }
    }
    if (r.has("seed")) {
        cfg.seed = r.unsigned_integer("seed");
    }
    if (r.has("output")) {
        FieldReader out(r.at("output"), "/output");
        cfg.output_path = out.string_or("path", "");
        cfg.format = parse_enum(out.string_or("format", "csv"), kFormats, out.pointer("format"));
        out.finish();
    }
    if (r.has("estimate")) {
        cfg.estimate = estimate_spec_from_json(r.at("estimate"));
    }
    r.finish();
    if (cfg.sweep) {
        at_sweep_point(cfg, cfg.sweep->from);
    }
    return cfg;
}

ExperimentConfig parse_config(const std::string &text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error &e) {
        auto [line, col] = line_and_column(text, e.byte);
        std::string what = e.what();
        auto pos = what.find("syntax error");
        fail(ErrorKind::Config,
             "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                 (pos == std::string::npos ? what : what.substr(pos)));
    }
    return config_from_json(j);
}

Json to_json(const ExperimentConfig &cfg) {
    Json gate{{"type", std::string(to_string(cfg.gate.kind))}};
    for (const auto &[name, value] : cfg.gate.params) {
        gate[name] = value;
    }
    Json seq{{"type", std::string(to_string(cfg.sequence.kind))}};
    switch (cfg.sequence.kind) {
        case SequenceKind::Repeat:
            seq["n"] = cfg.sequence.n;
            break;
        case SequenceKind::Pair:
            seq["kind"] = std::string(to_string(cfg.sequence.pair));
            seq["m"] = cfg.sequence.m;
            break;
        case SequenceKind::PhaseBlock:
            seq["n"] = cfg.sequence.n;
            seq["m"] = cfg.sequence.m;
            break;
    }
    Json j{
        {"gate", gate},
        {"sequence", seq},
        {"seed", cfg.seed},
        {"output", {{"path", cfg.output_path}, {"format", std::string(to_string(cfg.format))}}},
        {"estimate",
         {
             {"protocol",
              cfg.estimate.protocol ? Json(std::string(to_string(*cfg.estimate.protocol))) : Json(nullptr)},
             {"hint", cfg.estimate.hint},
             {"n2", cfg.estimate.n2},
             {"k", cfg.estimate.k},
             {"bootstrap", cfg.estimate.bootstrap},
             {"inversion_tolerance", cfg.estimate.inversion_tolerance},
             {"phase_tolerance", cfg.estimate.phase_tolerance},
         }},
    };
    j["shots"] = cfg.shots ? Json(*cfg.shots) : Json("exact");
    if (cfg.sweep) {
        j["sweep"] = {
            {"variable", std::string(to_string(cfg.sweep->variable))},
            {"from", cfg.sweep->from},
            {"to", cfg.sweep->to},
            {"steps", cfg.sweep->steps},
        };
    } else {
        j["sweep"] = nullptr;
    }
    return j;
}

std::string config_hash(const ExperimentConfig &cfg) {
    std::string text = to_json(cfg).dump();
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Su2Gate build_gate(const GateSpec &spec) {
    const auto &p = spec.params;
    switch (spec.kind) {
        case GateKind::CayleyKlein:
            return make_gate(Complex(p.at("re_a"), p.at("im_a")), Complex(p.at("re_b"), p.at("im_b")));
        case GateKind::ProbPhase:
            return from_probability_and_phases(p.at("p"), p.at("xi"), p.at("eta"));
        case GateKind::Resonant:
            return resonant_gate(p.at("area"));
        case GateKind::Rabi:
            return rabi_gate(p.at("omega"), p.at("delta"), p.at("duration"));
    }
    fail(ErrorKind::Config, "unknown gate kind");
}

GateSequence build_sequence(const Su2Gate &g, const SequenceSpec &spec) {
    switch (spec.kind) {
        case SequenceKind::Repeat:
            return repeat_same(g, spec.n);
        case SequenceKind::Pair:
            return pair_sequence(g, spec.pair, spec.m);
        case SequenceKind::PhaseBlock:
            return phase_gate_block(g, spec.n, spec.m);
    }
    fail(ErrorKind::Config, "unknown sequence kind");
}

std::vector<double> sweep_values(const SweepSpec &spec) {
    std::vector<double> xs;
    xs.reserve(static_cast<size_t>(spec.steps));
    bool integral = spec.variable == SweepVariable::N || spec.variable == SweepVariable::M;
    for (std::int64_t i = 0; i < spec.steps; i++) {
        double x = spec.steps == 1 ? spec.from
                                   : spec.from + (spec.to - spec.from) * static_cast<double>(i) /
                                                     static_cast<double>(spec.steps - 1);
        if (i == spec.steps - 1 && spec.steps > 1) {
            x = spec.to;
        }
        xs.push_back(integral ? std::round(x) : x);
    }
    return xs;
}

ExperimentConfig at_sweep_point(const ExperimentConfig &cfg, double x) {
    ExperimentConfig out = cfg;
    if (!cfg.sweep) {
        return out;
    }
    SweepVariable v = cfg.sweep->variable;
    auto mismatch = [&](const std::string &what) {
        fail(ErrorKind::Config,
             "at /sweep/variable: '" + std::string(to_string(v)) + "' is not a parameter of the " + what);
    };
    switch (v) {
        case SweepVariable::P:
        case SweepVariable::Xi:
            if (cfg.gate.kind != GateKind::ProbPhase) {
                mismatch("'" + std::string(to_string(cfg.gate.kind)) + "' gate");
            }
            out.gate.params[v == SweepVariable::P ? "p" : "xi"] = x;
            break;
        case SweepVariable::N:
            if (cfg.sequence.kind != SequenceKind::Repeat) {
                mismatch("'" + std::string(to_string(cfg.sequence.kind)) + "' sequence");
            }
            if (x < 1.0) {
                fail(ErrorKind::Config, "at /sweep: N must stay >= 1");
            }
            out.sequence.n = static_cast<std::int64_t>(std::llround(x));
            break;
        case SweepVariable::M:
            if (cfg.sequence.kind == SequenceKind::Repeat) {
                mismatch("'repeat' sequence");
            }
            if (x < 1.0) {
                fail(ErrorKind::Config, "at /sweep: M must stay >= 1");
            }
            out.sequence.m = static_cast<std::int64_t>(std::llround(x));
            break;
    }
    return out;
}

PropagateReport run_propagate(const ExperimentConfig &cfg) {
    if (cfg.sweep) {
        fail(ErrorKind::Config, "at /sweep: propagate takes a single configuration; use the sweep subcommand");
    }
    GateSequence seq = build_sequence(build_gate(cfg.gate), cfg.sequence);
    PropagateReport rep{evaluate(seq), evaluate_fast(seq), 0.0};
    rep.discrepancy = max_entry_distance(*rep.brute_force.propagator, *rep.fast.propagator);
    return rep;
}

std::vector<SweepRow> run_sweep(const ExperimentConfig &cfg, unsigned threads) {
    if (!cfg.sweep) {
        fail(ErrorKind::Config, "at /sweep: missing sweep specification");
    }
    std::vector<double> xs = sweep_values(*cfg.sweep);
    std::vector<SweepRow> rows(xs.size());
    std::vector<std::string> errors(xs.size());
    std::vector<ErrorKind> kinds(xs.size(), ErrorKind::Config);
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (size_t i = next++; i < xs.size(); i = next++) {
            try {
                ExperimentConfig point = at_sweep_point(cfg, xs[i]);
                Su2Gate g = build_gate(point.gate);
                GateSequence seq = build_sequence(g, point.sequence);
                MultiPassResult q = evaluate_fast(seq);
                // The configured p avoids the rounding of |sqrt(p)|^2.
                double p1 = point.gate.kind == GateKind::ProbPhase ? point.gate.params.at("p")
                                                                   : g.transition_probability();
                MultiPassResult c = classical_populations(p1, seq.total_passes());
                SweepRow &row = rows[i];
                row.x = xs[i];
                row.q_quantum = q.q_return;
                row.p_quantum = q.p_transfer;
                row.q_classical = c.q_return;
                row.p_classical = c.p_transfer;
                if (cfg.shots) {
                    MeasurementRecord rec = sample(q, *cfg.shots, derive_seed(cfg.seed, i));
                    ProbabilityEstimate pe = estimate_probability(rec);
                    row.p_hat = pe.probability;
                    row.standard_error = pe.standard_error;
                }
            } catch (const Error &e) {
                errors[i] = e.what();
                kinds[i] = e.kind();
            }
        }
    };
    unsigned n = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    n = static_cast<unsigned>(std::min<size_t>(n, xs.size()));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n; t++) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto &t : pool) {
        t.join();
    }
    for (size_t i = 0; i < xs.size(); i++) {
        if (!errors[i].empty()) {
            throw Error(kinds[i], "sweep point " + std::to_string(i) + " (" + format_double(xs[i]) + "): " + errors[i]);
        }
    }
    return rows;
}

EstimateReport run_estimate(const ExperimentConfig &cfg, EstimateMethod protocol) {
    Su2Gate g = build_gate(cfg.gate);
    ForwardPlan plan = forward_plan(cfg, g, protocol);
    EstimateReport rep;
    rep.protocol = protocol;

    std::vector<double> probs;
    Tolerances tol;
    tol.exact_inversion = cfg.estimate.inversion_tolerance;
    tol.phase_consistency = cfg.estimate.phase_tolerance;
    double worst_stderr = 0.0;
    for (size_t i = 0; i < plan.sequences.size(); i++) {
        const auto &[id, seq] = plan.sequences[i];
        MultiPassResult exact = evaluate_fast(seq);
        double p = exact.p_transfer;
        if (cfg.shots) {
            MeasurementRecord rec = sample(exact, *cfg.shots, derive_seed(cfg.seed, i), id);
            ProbabilityEstimate pe = estimate_probability(rec);
            p = pe.probability;
            worst_stderr = std::max(worst_stderr, pe.standard_error);
            rep.records.push_back(rec);
        }
        probs.push_back(p);
        rep.probabilities.emplace_back(id, p);
    }
    if (cfg.shots) {
        tol.exact_inversion = std::max(tol.exact_inversion, 10.0 * worst_stderr);
        tol.ratio_consistency = std::max(tol.ratio_consistency, 10.0 * worst_stderr);
    }
    rep.estimate = apply_estimator(cfg, protocol, probs, tol);

    if (cfg.shots && cfg.estimate.bootstrap > 0) {
        BootstrapSummary bs;
        bs.replicas = cfg.estimate.bootstrap;
        std::vector<double> ps, eps, xis, etas, gammas;
        for (std::int64_t r = 0; r < bs.replicas; r++) {
            std::mt19937_64 rng(derive_seed(derive_seed(cfg.seed, 0xB0075712ull), static_cast<std::uint64_t>(r)));
            std::vector<double> resampled;
            for (double p : probs) {
                resampled.push_back(
                    static_cast<double>(binomial_draw(rng, *cfg.shots, p)) / static_cast<double>(*cfg.shots));
            }
            try {
                ErrorEstimate e = apply_estimator(cfg, protocol, resampled, tol);
                ps.push_back(e.p_hat);
                eps.push_back(e.epsilon_hat);
                if (e.xi_hat) {
                    xis.push_back(*e.xi_hat);
                }
                if (e.eta_hat) {
                    etas.push_back(*e.eta_hat);
                }
                if (e.gamma_hat) {
                    gammas.push_back(*e.gamma_hat);
                }
            } catch (const Error &) {
                bs.failed++;
            }
        }
        bs.p_hat_stderr = sample_std(ps);
        bs.epsilon_hat_stderr = sample_std(eps);
        if (rep.estimate.xi_hat && xis.size() >= 2) {
            bs.xi_hat_stderr = sample_std(xis);
        }
        if (rep.estimate.eta_hat && etas.size() >= 2) {
            bs.eta_hat_stderr = sample_std(etas);
        }
        if (rep.estimate.gamma_hat && gammas.size() >= 2) {
            bs.gamma_hat_stderr = sample_std(gammas);
        }
        if (ps.size() < 2 || bs.epsilon_hat_stderr >= rep.estimate.epsilon_hat) {
            rep.warnings.push_back(
                "ShotBudgetTooSmall: bootstrap standard error " + format_double(bs.epsilon_hat_stderr) +
                " exceeds epsilon_hat " + format_double(rep.estimate.epsilon_hat));
        }
        if (bs.failed > 0) {
            rep.warnings.push_back(
                "BootstrapFailures: " + std::to_string(bs.failed) + " of " + std::to_string(bs.replicas) +
                " replicas raised estimator errors");
        }
        rep.bootstrap = bs;
    }
    return rep;
}

std::string tool_banner() {
    return std::string(kToolName) + " " + kToolVersion;
}

std::string propagate_csv(const ExperimentConfig &cfg, const PropagateReport &rep) {
    std::ostringstream out;
    out << "# config_hash=" << config_hash(cfg) << " tool=" << tool_banner()
        << " discrepancy=" << format_double(rep.discrepancy) << "\n";
    out << "method,n_passes,Q,P,re_a,im_a,re_b,im_b\n";
    auto row = [&](const char *name, const MultiPassResult &r) {
        const Su2Gate &u = *r.propagator;
        out << name << "," << r.n_passes << "," << format_double(r.q_return) << "," << format_double(r.p_transfer)
            << "," << format_double(u.a().real()) << "," << format_double(u.a().imag()) << ","
            << format_double(u.b().real()) << "," << format_double(u.b().imag()) << "\n";
    };
    row("evaluate", rep.brute_force);
    row("evaluate_fast", rep.fast);
    return out.str();
}

Json propagate_json(const ExperimentConfig &cfg, const PropagateReport &rep) {
    return Json{
        {"tool", tool_banner()},
        {"config_hash", config_hash(cfg)},
        {"evaluate", to_json(rep.brute_force)},
        {"evaluate_fast", to_json(rep.fast)},
        {"discrepancy", rep.discrepancy},
    };
}

std::string sweep_csv(const ExperimentConfig &cfg, const std::vector<SweepRow> &rows) {
    std::ostringstream out;
    out << "# config_hash=" << config_hash(cfg) << " tool=" << tool_banner()
        << " sweep_variable=" << (cfg.sweep ? to_string(cfg.sweep->variable) : "none") << "\n";
    out << "sweep_var,Q_quantum,P_quantum,Q_classical,P_classical";
    if (cfg.shots) {
        out << ",p_hat,stderr";
    }
    out << "\n";
    for (const SweepRow &r : rows) {
        out << format_double(r.x) << "," << format_double(r.q_quantum) << "," << format_double(r.p_quantum) << ","
            << format_double(r.q_classical) << "," << format_double(r.p_classical);
        if (cfg.shots) {
            out << "," << row_value(r.p_hat) << "," << row_value(r.standard_error);
        }
        out << "\n";
    }
    return out.str();
}

Json sweep_json(const ExperimentConfig &cfg, const std::vector<SweepRow> &rows) {
    Json arr = Json::array();
    for (const SweepRow &r : rows) {
        Json row{
            {"sweep_var", r.x},
            {"Q_quantum", r.q_quantum},
            {"P_quantum", r.p_quantum},
            {"Q_classical", r.q_classical},
            {"P_classical", r.p_classical},
        };
        if (r.p_hat) {
            row["p_hat"] = *r.p_hat;
            row["stderr"] = *r.standard_error;
        }
        arr.push_back(row);
    }
    return Json{
        {"tool", tool_banner()},
        {"config_hash", config_hash(cfg)},
        {"sweep_variable", cfg.sweep ? std::string(to_string(cfg.sweep->variable)) : std::string("none")},
        {"rows", arr},
    };
}

Json estimate_json(const ExperimentConfig &cfg, const EstimateReport &rep) {
    Json probs = Json::object();
    for (const auto &[id, p] : rep.probabilities) {
        probs[id] = p;
    }
    Json j{
        {"tool", tool_banner()},
        {"config_hash", config_hash(cfg)},
        {"protocol", std::string(to_string(rep.protocol))},
        {"mode", cfg.shots ? "shots" : "exact"},
        {"estimate", to_json(rep.estimate)},
        {"probabilities", probs},
        {"warnings", rep.warnings},
    };
    if (!rep.records.empty()) {
        Json recs = Json::array();
        for (const auto &r : rep.records) {
            recs.push_back(to_json(r));
        }
        j["records"] = recs;
    }
    if (rep.bootstrap) {
        const BootstrapSummary &b = *rep.bootstrap;
        Json bj{
            {"replicas", b.replicas},
            {"failed", b.failed},
            {"p_hat_stderr", b.p_hat_stderr},
            {"epsilon_hat_stderr", b.epsilon_hat_stderr},
        };
        if (b.xi_hat_stderr) {
            bj["xi_hat_stderr"] = *b.xi_hat_stderr;
        }
        if (b.eta_hat_stderr) {
            bj["eta_hat_stderr"] = *b.eta_hat_stderr;
        }
        if (b.gamma_hat_stderr) {
            bj["gamma_hat_stderr"] = *b.gamma_hat_stderr;
        }
        j["bootstrap"] = bj;
    }
    return j;
}

}  // namespace multipass
