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

#include "multipass/chebyshev.h"

#include <cmath>

namespace multipass {

namespace {

constexpr double kDegenerateSine = 1e-150;

}  // namespace

MultipleAngle multiple_angle(double cos_theta, double sin_theta, std::int64_t n) {
    double r = std::hypot(cos_theta, sin_theta);
    double c = cos_theta / r;
    double s = std::fabs(sin_theta) / r;

    // Work with phi = pi - theta when theta > pi/2:
    //   cos(n theta) = (-1)^n cos(n phi),  sin(n theta) = (-1)^(n+1) sin(n phi).
    bool reflected = c < 0;
    if (reflected) {
        c = -c;
    }
    bool odd = (n % 2) != 0;

    double nd = static_cast<double>(n);
    double cos_n;
    double ratio;
    if (s < kDegenerateSine) {
        cos_n = 1.0;
        ratio = nd;
    } else {
        double phi = std::atan2(s, c);
        cos_n = std::cos(nd * phi);
        ratio = std::sin(nd * phi) / s;
    }
    if (reflected) {
        if (odd) {
            cos_n = -cos_n;
        } else {
            ratio = -ratio;
        }
    }
    return {cos_n, ratio};
}

double chebyshev_t(std::int64_t n, double x) {
    if (n == 0) {
        return 1.0;
    }
    double prev = 1.0;
    double cur = x;
    for (std::int64_t k = 1; k < n; k++) {
        double next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double chebyshev_u(std::int64_t n, double x) {
    if (n < 0) {
        return 0.0;
    }
    if (n == 0) {
        return 1.0;
    }
    double prev = 1.0;
    double cur = 2.0 * x;
    for (std::int64_t k = 1; k < n; k++) {
        double next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

}  // namespace multipass
