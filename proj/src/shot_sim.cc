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

#include "multipass/shot_sim.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "multipass/error.h"

namespace multipass {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Number of successes before the (n+1)-th failure budget runs out, counting
// geometric gaps between successes. Expected cost is O(n p).
std::int64_t binomial_waiting_time(std::mt19937_64 &rng, std::int64_t n, double p) {
    double log_q = std::log1p(-p);
    std::int64_t successes = 0;
    double gap_sum = 0.0;
    while (true) {
        double gap = std::ceil(std::log(uniform01(rng)) / log_q);
        gap_sum += gap;
        if (gap_sum > static_cast<double>(n)) {
            return successes;
        }
        successes++;
    }
}

// Hormann (1993), "The generation of binomial random variates", algorithm
// BTRS. Requires n p >= 10 and p <= 1/2.
std::int64_t binomial_btrs(std::mt19937_64 &rng, std::int64_t n, double p) {
    double nd = static_cast<double>(n);
    double stddev = std::sqrt(nd * p * (1.0 - p));
    double b = 1.15 + 2.53 * stddev;
    double a = -0.0873 + 0.0248 * b + 0.01 * p;
    double c = nd * p + 0.5;
    double v_r = 0.92 - 4.2 / b;
    double r = p / (1.0 - p);
    double alpha = (2.83 + 5.1 / b) * stddev;
    double m = std::floor((nd + 1.0) * p);
    auto mi = static_cast<std::int64_t>(m);

    while (true) {
        double u = uniform01(rng) - 0.5;
        double v = uniform01(rng);
        double us = 0.5 - std::fabs(u);
        double kd = std::floor((2.0 * a / us + b) * u + c);
        if (us >= 0.07 && v <= v_r) {
            return static_cast<std::int64_t>(kd);
        }
        if (kd < 0.0 || kd > nd) {
            continue;
        }
        auto k = static_cast<std::int64_t>(kd);
        v = std::log(v * alpha / (a / (us * us) + b));
        double bound = (m + 0.5) * std::log((m + 1.0) / (r * (nd - m + 1.0))) +
                       (nd + 1.0) * std::log((nd - m + 1.0) / (nd - kd + 1.0)) +
                       (kd + 0.5) * std::log(r * (nd - kd + 1.0) / (kd + 1.0)) + stirling_tail(mi) +
                       stirling_tail(n - mi) - stirling_tail(k) - stirling_tail(n - k);
        if (v <= bound) {
            return k;
        }
    }
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(seed + (index + 1) * 0x9E3779B97F4A7C15ull);
}

double uniform01(std::mt19937_64 &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double stirling_tail(std::int64_t k) {
    static constexpr std::array<double, 10> kTable = {
        0.0810614667953272,
        0.0413406959554092,
        0.0276779256849983,
        0.02079067210376509,
        0.0166446911898211,
        0.0138761288230707,
        0.0118967099458917,
        0.0104112652619720,
        0.00925546218271273,
        0.00833056343336287,
    };
    if (k >= 0 && k <= 9) {
        return kTable[static_cast<size_t>(k)];
    }
    double kp1 = static_cast<double>(k) + 1.0;
    double kp1sq = kp1 * kp1;
    double inv2 = 1.0 / kp1sq;
    return (1.0 / 12 - inv2 * (1.0 / 360 - inv2 * (1.0 / 1260 - inv2 * (1.0 / 1680 - inv2 / 1188)))) / kp1;
}

std::int64_t binomial_draw(std::mt19937_64 &rng, std::int64_t n, double p) {
    if (n <= 0 || p <= 0.0) {
        return 0;
    }
    if (p >= 1.0) {
        return n;
    }
    if (p > 0.5) {
        return n - binomial_draw(rng, n, 1.0 - p);
    }
    if (static_cast<double>(n) * p < 10.0) {
        return binomial_waiting_time(rng, n, p);
    }
    return binomial_btrs(rng, n, p);
}

MeasurementRecord sample(const MultiPassResult &result, std::int64_t shots, std::uint64_t seed, std::string sequence_id) {
    if (shots < 1) {
        fail(ErrorKind::Domain, "shots must be >= 1, got " + std::to_string(shots));
    }
    double p = std::clamp(result.p_transfer, 0.0, 1.0);
    std::mt19937_64 rng(seed);
    MeasurementRecord rec;
    rec.sequence_id = std::move(sequence_id);
    rec.shots = shots;
    rec.count_state2 = binomial_draw(rng, shots, p);
    rec.count_state1 = shots - rec.count_state2;
    rec.seed = seed;
    return rec;
}

ProbabilityEstimate estimate_probability(const MeasurementRecord &rec) {
    if (rec.shots < 1) {
        fail(ErrorKind::Domain, "record has no shots");
    }
    if (rec.count_state2 < 0 || rec.count_state1 < 0 || rec.count_state1 + rec.count_state2 != rec.shots) {
        std::ostringstream ss;
        ss << "counts " << rec.count_state1 << " + " << rec.count_state2 << " do not add up to " << rec.shots;
        fail(ErrorKind::Domain, ss.str());
    }
    auto shots = static_cast<double>(rec.shots);
    double p = static_cast<double>(rec.count_state2) / shots;
    if (rec.count_state2 == 0 || rec.count_state2 == rec.shots) {
        return {p, 3.0 / shots};
    }
    return {p, std::sqrt(p * (1.0 - p) / shots)};
}

}  // namespace multipass
