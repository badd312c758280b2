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


#include "multipass/io.h"

#include <algorithm>
#include <cstdio>

#include "multipass/error.h"

namespace multipass {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

FieldReader::FieldReader(const Json &obj, std::string pointer) : obj_(obj), pointer_(std::move(pointer)) {
    if (!obj_.is_object()) {
        fail(ErrorKind::Config, "at " + (pointer_.empty() ? std::string("/") : pointer_) + ": expected an object");
    }
}

std::string FieldReader::pointer(const std::string &key) const {
    return pointer_ + "/" + key;
}

bool FieldReader::has(const std::string &key) const {
    return obj_.contains(key);
}

const Json &FieldReader::at(const std::string &key) {
    auto it = obj_.find(key);
    if (it == obj_.end()) {
        fail(ErrorKind::Config, "at " + pointer(key) + ": missing required field");
    }
    seen_.push_back(key);
    return *it;
}

double FieldReader::number(const std::string &key) {
    const Json &v = at(key);
    if (!v.is_number()) {
        fail(ErrorKind::Config, "at " + pointer(key) + ": expected a number, got " + v.dump());
    }
    return v.get<double>();
}

double FieldReader::number_or(const std::string &key, double fallback) {
    return has(key) ? number(key) : fallback;
}

std::int64_t FieldReader::integer(const std::string &key) {
    const Json &v = at(key);
    if (!v.is_number_integer()) {
        fail(ErrorKind::Config, "at " + pointer(key) + ": expected an integer, got " + v.dump());
    }
    return v.get<std::int64_t>();
}

std::int64_t FieldReader::integer_or(const std::string &key, std::int64_t fallback) {
    return has(key) ? integer(key) : fallback;
}

std::uint64_t FieldReader::unsigned_integer(const std::string &key) {
    const Json &v = at(key);
    if (!v.is_number_unsigned()) {
        fail(ErrorKind::Config, "at " + pointer(key) + ": expected a non-negative integer, got " + v.dump());
    }
    return v.get<std::uint64_t>();
}

std::string FieldReader::string(const std::string &key) {
    const Json &v = at(key);
    if (!v.is_string()) {
        fail(ErrorKind::Config, "at " + pointer(key) + ": expected a string, got " + v.dump());
    }
    return v.get<std::string>();
}

std::string FieldReader::string_or(const std::string &key, const std::string &fallback) {
    return has(key) ? string(key) : fallback;
}

void FieldReader::finish() const {
    for (const auto &[key, value] : obj_.items()) {
        if (std::find(seen_.begin(), seen_.end(), key) == seen_.end()) {
            fail(ErrorKind::Config, "at " + pointer(key) + ": unknown field");
        }
    }
}

Json to_json(const Su2Gate &g) {
    return Json{{"re_a", g.a().real()}, {"im_a", g.a().imag()}, {"re_b", g.b().real()}, {"im_b", g.b().imag()}};
}

Json to_json(const GateSequence &seq) {
    Json program = Json::array();
    for (GateVariant v : seq.program()) {
        program.push_back(std::string(to_string(v)));
    }
    return Json{{"base", to_json(seq.base())}, {"program", program}, {"repeat", seq.repeat()}};
}

Json to_json(const MultiPassResult &r) {
    Json j{{"n_passes", r.n_passes}, {"q_return", r.q_return}, {"p_transfer", r.p_transfer}};
    if (r.propagator) {
        j["propagator"] = to_json(*r.propagator);
    }
    return j;
}

Json to_json(const MeasurementRecord &rec) {
    return Json{
        {"sequence_id", rec.sequence_id},
        {"shots", rec.shots},
        {"count_state1", rec.count_state1},
        {"count_state2", rec.count_state2},
        {"seed", rec.seed},
        {"rng_algorithm", rec.rng_algorithm},
    };
}

Json to_json(const ErrorEstimate &est) {
    Json j{
        {"method", std::string(to_string(est.method))},
        {"p_hat", est.p_hat},
        {"epsilon_hat", est.epsilon_hat},
        {"residual", est.residual},
        {"aliased", est.aliased},
    };
    if (est.xi_hat) {
        j["xi_hat"] = *est.xi_hat;
    }
    if (est.gamma_hat) {
        j["gamma_hat"] = *est.gamma_hat;
    }
    if (est.eta_hat) {
        j["eta_hat"] = *est.eta_hat;
    }
    Json inputs = Json::object();
    for (const auto &[name, value] : est.inputs) {
        inputs[name] = value;
    }
    j["inputs"] = inputs;
    return j;
}

Su2Gate gate_from_json(const Json &j) {
    FieldReader r(j, "");
    Complex a(r.number("re_a"), r.number("im_a"));
    Complex b(r.number("re_b"), r.number("im_b"));
    r.finish();
    return make_gate(a, b);
}

GateSequence sequence_from_json(const Json &j) {
    FieldReader r(j, "");
    Su2Gate base = gate_from_json(r.at("base"));
    const Json &prog = r.at("program");
    if (!prog.is_array()) {
        fail(ErrorKind::Config, "at /program: expected an array of gate variants");
    }
    std::vector<GateVariant> program;
    for (const Json &tag : prog) {
        if (!tag.is_string()) {
            fail(ErrorKind::Config, "at /program: expected variant names, got " + tag.dump());
        }
        program.push_back(parse_gate_variant(tag.get<std::string>()));
    }
    std::int64_t repeat = r.integer("repeat");
    r.finish();
    return GateSequence(base, std::move(program), repeat);
}

MeasurementRecord record_from_json(const Json &j) {
    FieldReader r(j, "");
    MeasurementRecord rec;
    rec.sequence_id = r.string("sequence_id");
    rec.shots = r.integer("shots");
    rec.count_state1 = r.integer("count_state1");
    rec.count_state2 = r.integer("count_state2");
    rec.seed = r.unsigned_integer("seed");
    rec.rng_algorithm = r.string_or("rng_algorithm", kRngAlgorithm);
    r.finish();
    if (rec.shots < 1 || rec.count_state1 < 0 || rec.count_state2 < 0 ||
        rec.count_state1 + rec.count_state2 != rec.shots) {
        fail(ErrorKind::Config, "record counts do not add up to shots");
    }
    return rec;
}

std::string record_csv_header() {
    return "sequence_id,shots,count1,count2,seed";
}

std::string record_csv_row(const MeasurementRecord &rec) {
    return rec.sequence_id + "," + std::to_string(rec.shots) + "," + std::to_string(rec.count_state1) + "," +
           std::to_string(rec.count_state2) + "," + std::to_string(rec.seed);
}

}  // namespace multipass
