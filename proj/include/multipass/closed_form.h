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

#ifndef MULTIPASS_CLOSED_FORM_H
#define MULTIPASS_CLOSED_FORM_H

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "multipass/su2.h"

namespace multipass {

/// Populations after n_passes passes starting from state 1.
struct MultiPassResult {
    std::int64_t n_passes = 1;
    double q_return = 1.0;
    double p_transfer = 0.0;
    /// Present when the result came from the sequence engine.
    std::optional<Su2Gate> propagator;
};

enum class BranchLabel {
    LargePEven,
    LargePOdd,
    SmallP,
    Half4k,
    Half4k1,
    Half4k2,
    Half4k3,
};

std::string_view to_string(BranchLabel label);

/// Leading-order return probability for p = p0 - epsilon near p0 in {1, 0, 1/2}.
struct AsymptoticBranch {
    BranchLabel label;
    double value;
    std::string leading_order;
};

/// Rate-equation (incoherent) populations: Q = [1 + (1 - 2p)^n] / 2.
MultiPassResult classical_populations(double p, std::int64_t n);

/// Coherent populations of g^n: P = p sin^2(n theta) / sin^2(theta), Q = 1 - P.
MultiPassResult quantum_populations(const Su2Gate &g, std::int64_t n);

/// Real-a specialization: Q = T_n(sqrt q)^2 = cos^2(n arccos sqrt q).
MultiPassResult chebyshev_populations_real_a(double p, std::int64_t n);

/// Leading-order branches for p = 1 - eps, p = eps and p = 1/2 - eps.
/// Requires p0 in {0, 1/2, 1} and |eps| <= kAsymptoticEpsilonLimit.
AsymptoticBranch asymptotic_populations(double p0, double epsilon, std::int64_t n);

inline constexpr double kAsymptoticEpsilonLimit = 0.05;

/// floor(1 / sqrt(2 eps)) for 0 < eps <= 1/2: the pass count that drives a
/// quadratically amplified error to about one half.
std::int64_t amplification_passes(double epsilon);

/// Passes of the order of 1/(4 eps): the linear middle branches near p = 1/2
/// reach an error of about 1/4 there.
std::int64_t half_probability_passes(double epsilon);

/// Imaginary-b gate, m_pairs repetitions of the (Original, FlipDelta) pair:
/// P_{2M} = sin^2(M theta) with theta = arccos(1 - 2p).
MultiPassResult imaginary_b_populations(double p, std::int64_t m_pairs);

}  // namespace multipass

#endif
