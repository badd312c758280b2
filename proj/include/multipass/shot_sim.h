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

#ifndef MULTIPASS_SHOT_SIM_H
#define MULTIPASS_SHOT_SIM_H

#include <cstdint>
#include <random>
#include <string>

#include "multipass/closed_form.h"

namespace multipass {

/// Identifies the sampling algorithm stored in every record. Records are
/// reproducible on any platform whose libm agrees on log and sqrt.
inline constexpr const char *kRngAlgorithm = "mt19937_64/btrs-waiting-time";

struct MeasurementRecord {
    std::string sequence_id;
    std::int64_t shots = 0;
    std::int64_t count_state1 = 0;
    std::int64_t count_state2 = 0;
    std::uint64_t seed = 0;
    std::string rng_algorithm = kRngAlgorithm;

    bool operator==(const MeasurementRecord &other) const = default;
};

struct ProbabilityEstimate {
    double probability;
    double standard_error;
};

/// Draws count_state2 ~ Binomial(shots, result.p_transfer) with a generator
/// seeded from `seed` alone.
MeasurementRecord sample(
    const MultiPassResult &result, std::int64_t shots, std::uint64_t seed, std::string sequence_id = "");

/// p = count_state2 / shots with sqrt(p (1 - p) / shots) as standard error, or
/// the rule-of-three value 3 / shots when no (or only) transfers were seen.
ProbabilityEstimate estimate_probability(const MeasurementRecord &rec);

/// Per-task seed: splitmix64 of seed + (index + 1) * golden-ratio increment.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Uniform double in [0, 1) from the top 53 bits of one generator output.
double uniform01(std::mt19937_64 &rng);

/// Binomial(n, p) variate. Uses the geometric waiting-time method when
/// min(p, 1-p) n < 10 and Hormann's BTRS transformed rejection otherwise.
std::int64_t binomial_draw(std::mt19937_64 &rng, std::int64_t n, double p);

/// log(k!) - [(k + 1/2) log(k + 1) - (k + 1) + log(2 pi)/2], the Stirling
/// remainder used by BTRS.
double stirling_tail(std::int64_t k);

}  // namespace multipass

#endif
