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

#include "multipass/closed_form.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "multipass/chebyshev.h"
#include "multipass/error.h"

namespace multipass {

namespace {

void require_probability(double p, const char *name) {
    if (!(p >= 0.0 && p <= 1.0)) {
        std::ostringstream ss;
        ss.precision(17);
        ss << name << "=" << p << " is outside [0, 1]";
        fail(ErrorKind::Domain, ss.str());
    }
}

void require_positive(std::int64_t n, const char *name) {
    if (n < 1) {
        fail(ErrorKind::Domain, std::string(name) + " must be >= 1, got " + std::to_string(n));
    }
}

MultiPassResult from_transfer(std::int64_t n, double transfer) {
    MultiPassResult r;
    r.n_passes = n;
    r.p_transfer = transfer;
    r.q_return = 1.0 - transfer;
    return r;
}

}  // namespace

std::string_view to_string(BranchLabel label) {
    switch (label) {
        case BranchLabel::LargePEven:
            return "LargeP_even";
        case BranchLabel::LargePOdd:
            return "LargeP_odd";
        case BranchLabel::SmallP:
            return "SmallP";
        case BranchLabel::Half4k:
            return "Half_4k";
        case BranchLabel::Half4k1:
            return "Half_4k1";
        case BranchLabel::Half4k2:
            return "Half_4k2";
        case BranchLabel::Half4k3:
            return "Half_4k3";
    }
    return "?";
}

MultiPassResult classical_populations(double p, std::int64_t n) {
    require_probability(p, "p");
    require_positive(n, "n");
    MultiPassResult r;
    r.n_passes = n;
    double decay = std::pow(1.0 - 2.0 * p, static_cast<double>(n));
    r.q_return = (1.0 + decay) / 2.0;
    r.p_transfer = (1.0 - decay) / 2.0;
    return r;
}

MultiPassResult quantum_populations(const Su2Gate &g, std::int64_t n) {
    require_positive(n, "n");
    double ai = g.a().imag();
    double p = g.transition_probability();
    double sin_theta = std::sqrt(ai * ai + p);
    MultipleAngle m = multiple_angle(g.a().real(), sin_theta, n);
    return from_transfer(n, p * m.sin_ratio * m.sin_ratio);
}

MultiPassResult chebyshev_populations_real_a(double p, std::int64_t n) {
    require_probability(p, "p");
    require_positive(n, "n");
    // arccos(sqrt q) evaluated as atan2(sqrt p, sqrt q) keeps full relative
    // precision at both ends of [0, 1].
    double theta = std::atan2(std::sqrt(p), std::sqrt(1.0 - p));
    double c = std::cos(static_cast<double>(n) * theta);
    double s = std::sin(static_cast<double>(n) * theta);
    MultiPassResult r;
    r.n_passes = n;
    r.q_return = c * c;
    r.p_transfer = s * s;
    return r;
}

AsymptoticBranch asymptotic_populations(double p0, double epsilon, std::int64_t n) {
    require_positive(n, "n");
    if (!(std::fabs(epsilon) <= kAsymptoticEpsilonLimit)) {
        std::ostringstream ss;
        ss.precision(17);
        ss << "|epsilon|=" << std::fabs(epsilon) << " exceeds the asymptotic validity limit "
           << kAsymptoticEpsilonLimit;
        fail(ErrorKind::Domain, ss.str());
    }
    double nd = static_cast<double>(n);
    double n2 = nd * nd;
    if (p0 == 1.0) {
        if (n % 2 == 0) {
            return {BranchLabel::LargePEven, 1.0 - n2 * epsilon, "1 - N^2 eps"};
        }
        return {BranchLabel::LargePOdd, n2 * epsilon, "N^2 eps"};
    }
    if (p0 == 0.0) {
        return {BranchLabel::SmallP, 1.0 - n2 * epsilon, "1 - N^2 eps"};
    }
    if (p0 == 0.5) {
        double e2 = epsilon * epsilon;
        switch (n % 4) {
            case 0:
                return {BranchLabel::Half4k, 1.0 - n2 * e2, "1 - N^2 eps^2"};
            case 1:
                return {BranchLabel::Half4k1, 0.5 + nd * epsilon, "1/2 + N eps"};
            case 2:
                return {BranchLabel::Half4k2, n2 * e2, "N^2 eps^2"};
            default:
                return {BranchLabel::Half4k3, 0.5 - nd * epsilon, "1/2 - N eps"};
        }
    }
    std::ostringstream ss;
    ss.precision(17);
    ss << "no asymptotic branch for p0=" << p0 << " (supported: 0, 0.5, 1)";
    fail(ErrorKind::Domain, ss.str());
}

std::int64_t amplification_passes(double epsilon) {
    if (!(epsilon > 0.0 && epsilon <= 0.5)) {
        fail(ErrorKind::Domain, "amplification_passes requires 0 < epsilon <= 1/2");
    }
    return static_cast<std::int64_t>(std::floor(1.0 / std::sqrt(2.0 * epsilon)));
}

std::int64_t half_probability_passes(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 0.5)) {
        fail(ErrorKind::Domain, "half_probability_passes requires 0 < epsilon < 1/2");
    }
    return std::max<std::int64_t>(1, std::llround(1.0 / (4.0 * epsilon)));
}

MultiPassResult imaginary_b_populations(double p, std::int64_t m_pairs) {
    require_probability(p, "p");
    require_positive(m_pairs, "m_pairs");
    // theta = arccos(1 - 2p) = 2 arcsin(sqrt p).
    double theta = 2.0 * std::atan2(std::sqrt(p), std::sqrt(1.0 - p));
    double c = std::cos(static_cast<double>(m_pairs) * theta);
    double s = std::sin(static_cast<double>(m_pairs) * theta);
    MultiPassResult r;
    r.n_passes = 2 * m_pairs;
    r.q_return = c * c;
    r.p_transfer = s * s;
    return r;
}

}  // namespace multipass
