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

#include "multipass/sequence.h"

#include <array>
#include <cmath>
#include <sstream>
#include <string>

#include "multipass/error.h"

namespace multipass {

namespace {

std::array<Su2Gate, 4> all_variants(const Su2Gate &g) {
    return {
        g,
        variant(g, GateVariant::FlipOmega),
        variant(g, GateVariant::FlipDelta),
        variant(g, GateVariant::FlipBoth),
    };
}

MultiPassResult with_propagator(std::int64_t n, const Su2Gate &u) {
    MultiPassResult r;
    r.n_passes = n;
    r.q_return = u.return_probability();
    r.p_transfer = u.transition_probability();
    r.propagator = u;
    return r;
}

}  // namespace

std::string_view to_string(PairKind kind) {
    switch (kind) {
        case PairKind::PlusPlus:
            return "PlusPlus";
        case PairKind::MinusPlus:
            return "MinusPlus";
        case PairKind::PlusMinus:
            return "PlusMinus";
        case PairKind::MinusMinus:
            return "MinusMinus";
    }
    return "?";
}

PairKind parse_pair_kind(std::string_view name) {
    for (auto k : {PairKind::PlusPlus, PairKind::MinusPlus, PairKind::PlusMinus, PairKind::MinusMinus}) {
        if (name == to_string(k)) {
            return k;
        }
    }
    fail(ErrorKind::Config, "unknown pair kind '" + std::string(name) + "'");
}

GateVariant second_gate_of(PairKind kind) {
    switch (kind) {
        case PairKind::PlusPlus:
            return GateVariant::Original;
        case PairKind::MinusPlus:
            return GateVariant::FlipOmega;
        case PairKind::PlusMinus:
            return GateVariant::FlipDelta;
        case PairKind::MinusMinus:
            return GateVariant::FlipBoth;
    }
    return GateVariant::Original;
}

GateSequence::GateSequence(Su2Gate base, std::vector<GateVariant> program, std::int64_t repeat)
    : base_(base), program_(std::move(program)), repeat_(repeat) {
    if (program_.empty()) {
        fail(ErrorKind::Domain, "gate program must not be empty");
    }
    if (repeat_ < 1) {
        fail(ErrorKind::Domain, "repeat must be >= 1, got " + std::to_string(repeat_));
    }
}

GateSequence repeat_same(const Su2Gate &g, std::int64_t n) {
    return GateSequence(g, {GateVariant::Original}, n);
}

GateSequence pair_sequence(const Su2Gate &g, PairKind kind, std::int64_t m) {
    return GateSequence(g, {GateVariant::Original, second_gate_of(kind)}, m);
}

GateSequence phase_gate_block(const Su2Gate &g, std::int64_t n_half, std::int64_t m) {
    if (n_half < 1) {
        fail(ErrorKind::Domain, "phase gate block needs n >= 1");
    }
    std::vector<GateVariant> program(static_cast<size_t>(n_half), GateVariant::Original);
    program.insert(program.end(), static_cast<size_t>(n_half), GateVariant::FlipOmega);
    return GateSequence(g, std::move(program), m);
}

MultiPassResult evaluate(const GateSequence &seq) {
    auto gates = all_variants(seq.base());
    Su2Gate acc;
    std::int64_t done = 0;
    for (std::int64_t rep = 0; rep < seq.repeat(); rep++) {
        for (GateVariant v : seq.program()) {
            acc = compose(gates[static_cast<size_t>(v)], acc);
            done++;
        }
        double defect = std::fabs(acc.norm_defect());
        if (defect > kDriftLimit) {
            std::ostringstream ss;
            ss.precision(17);
            ss << "norm defect " << defect << " after " << done << " passes";
            fail(ErrorKind::NumericalDrift, ss.str());
        }
    }
    return with_propagator(seq.total_passes(), acc);
}

MultiPassResult evaluate_fast(const GateSequence &seq) {
    auto gates = all_variants(seq.base());
    Su2Gate block;
    for (GateVariant v : seq.program()) {
        block = compose(gates[static_cast<size_t>(v)], block);
    }
    return with_propagator(seq.total_passes(), power(block, seq.repeat()));
}

}  // namespace multipass
