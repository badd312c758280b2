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

#ifndef MULTIPASS_SEQUENCE_H
#define MULTIPASS_SEQUENCE_H

#include <cstdint>
#include <string_view>
#include <vector>

#include "multipass/closed_form.h"
#include "multipass/su2.h"

namespace multipass {

/// Accumulated |(|a|^2 + |b|^2) - 1| at which evaluate() gives up.
inline constexpr double kDriftLimit = 1e-8;

/// Double-pass pair kinds. The first sign refers to Omega and the second to
/// Delta of the gate applied second; the first gate is always the original.
enum class PairKind {
    PlusPlus,    // U(+,+) U
    MinusPlus,   // U(-,+) U
    PlusMinus,   // U(+,-) U
    MinusMinus,  // U(-,-) U
};

std::string_view to_string(PairKind kind);
PairKind parse_pair_kind(std::string_view name);
GateVariant second_gate_of(PairKind kind);

/// A gate program: `program` is applied left to right in time and the whole
/// program is repeated `repeat` times.
class GateSequence {
   public:
    /// Throws ErrorKind::Domain for an empty program or repeat < 1.
    GateSequence(Su2Gate base, std::vector<GateVariant> program, std::int64_t repeat);

    const Su2Gate &base() const {
        return base_;
    }
    const std::vector<GateVariant> &program() const {
        return program_;
    }
    std::int64_t repeat() const {
        return repeat_;
    }
    std::int64_t total_passes() const {
        return static_cast<std::int64_t>(program_.size()) * repeat_;
    }

    bool operator==(const GateSequence &other) const = default;

   private:
    Su2Gate base_;
    std::vector<GateVariant> program_;
    std::int64_t repeat_;
};

GateSequence repeat_same(const Su2Gate &g, std::int64_t n);

/// [Original, second_gate_of(kind)] repeated m times.
GateSequence pair_sequence(const Su2Gate &g, PairKind kind, std::int64_t m);

/// [(U_{-Omega})^n (U)^n]^m: n originals then n Omega-flipped copies, m times.
GateSequence phase_gate_block(const Su2Gate &g, std::int64_t n_half, std::int64_t m);

/// Brute-force oracle: literal product of every pass, populations from the
/// moduli of the result. Never uses power() or any closed form.
/// Throws ErrorKind::NumericalDrift if the accumulated norm defect of the
/// running product exceeds kDriftLimit.
MultiPassResult evaluate(const GateSequence &seq);

/// One program instance multiplied out, then power(block, repeat).
MultiPassResult evaluate_fast(const GateSequence &seq);

}  // namespace multipass

#endif
