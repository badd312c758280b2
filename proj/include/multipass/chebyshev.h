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

#ifndef MULTIPASS_CHEBYSHEV_H
#define MULTIPASS_CHEBYSHEV_H

#include <cstdint>

namespace multipass {

/// cos(n*theta) together with U_{n-1}(cos theta) = sin(n*theta)/sin(theta).
struct MultipleAngle {
    double cos_n;
    double sin_ratio;
};

/// Evaluates the multiple-angle pair for the angle theta in [0, pi] given by
/// (cos_theta, sin_theta), sin_theta >= 0. The pair does not need to be exactly
/// normalized; it is projected onto the unit circle first.
///
/// Angles past pi/2 are reflected through pi - theta so that the phase is
/// always recovered from a well-conditioned atan2. At sin(theta) == 0 (to below
/// 1e-150) the ratio takes its limit n * (+-1)^(n-1).
MultipleAngle multiple_angle(double cos_theta, double sin_theta, std::int64_t n);

/// Chebyshev polynomial of the first kind by the three-term recurrence.
double chebyshev_t(std::int64_t n, double x);

/// Chebyshev polynomial of the second kind by the three-term recurrence.
double chebyshev_u(std::int64_t n, double x);

}  // namespace multipass

#endif
