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

#include "multipass/su2.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "multipass/chebyshev.h"
#include "multipass/error.h"

namespace multipass {

Matrix2 Su2Gate::matrix() const {
    return {{{a_, -std::conj(b_)}, {b_, std::conj(a_)}}};
}

Theta::Theta(double value) : value_(value) {
    if (!(value >= 0.0 && value <= std::numbers::pi)) {
        std::ostringstream ss;
        ss.precision(17);
        ss << "theta=" << value << " is outside [0, pi]";
        fail(ErrorKind::Domain, ss.str());
    }
}

std::string_view to_string(GateVariant v) {
    switch (v) {
        case GateVariant::Original:
            return "Original";
        case GateVariant::FlipOmega:
            return "FlipOmega";
        case GateVariant::FlipDelta:
            return "FlipDelta";
        case GateVariant::FlipBoth:
            return "FlipBoth";
    }
    return "?";
}

GateVariant parse_gate_variant(std::string_view name) {
    for (auto v : {GateVariant::Original, GateVariant::FlipOmega, GateVariant::FlipDelta, GateVariant::FlipBoth}) {
        if (name == to_string(v)) {
            return v;
        }
    }
    fail(ErrorKind::Config, "unknown gate variant '" + std::string(name) + "'");
}

Su2Gate make_gate(Complex a, Complex b) {
    double defect = std::norm(a) + std::norm(b) - 1.0;
    if (!(std::fabs(defect) <= kUnitarityTolerance)) {
        std::ostringstream ss;
        ss.precision(17);
        ss << "|a|^2 + |b|^2 - 1 = " << defect << " exceeds " << kUnitarityTolerance;
        fail(ErrorKind::NonUnitary, ss.str());
    }
    return Su2Gate(a, b);
}

Su2Gate unchecked_gate(Complex a, Complex b) {
    return Su2Gate(a, b);
}

Su2Gate from_probability_and_phases(double p, double xi, double eta) {
    if (!(p >= 0.0 && p <= 1.0)) {
        std::ostringstream ss;
        ss.precision(17);
        ss << "p=" << p << " is outside [0, 1]";
        fail(ErrorKind::Domain, ss.str());
    }
    Complex a = std::polar(std::sqrt(1.0 - p), xi);
    Complex b = -std::polar(std::sqrt(p), -eta);
    return unchecked_gate(a, b);
}

Su2Gate resonant_gate(double pulse_area) {
    double half = 0.5 * pulse_area;
    return unchecked_gate(Complex(std::cos(half), 0.0), Complex(0.0, -std::sin(half)));
}

Su2Gate rabi_gate(double omega, double delta, double duration) {
    if (!(duration >= 0.0)) {
        fail(ErrorKind::Domain, "duration must be non-negative");
    }
    double w = std::hypot(omega, delta);
    if (w == 0.0 || duration == 0.0) {
        return Su2Gate();
    }
    // exp(-i t (w/2) n.sigma) with n = (omega, 0, -delta)/w.
    double half = 0.5 * w * duration;
    double c = std::cos(half);
    double s = std::sin(half);
    return unchecked_gate(Complex(c, delta / w * s), Complex(0.0, -omega / w * s));
}

Su2Gate variant(const Su2Gate &g, GateVariant v) {
    switch (v) {
        case GateVariant::Original:
            return g;
        case GateVariant::FlipOmega:
            return unchecked_gate(g.a(), -g.b());
        case GateVariant::FlipDelta:
            return unchecked_gate(std::conj(g.a()), -std::conj(g.b()));
        case GateVariant::FlipBoth:
            return unchecked_gate(std::conj(g.a()), std::conj(g.b()));
    }
    return g;
}

Su2Gate compose(const Su2Gate &g2, const Su2Gate &g1) {
    // First column of [[a2, -b2*], [b2, a2*]] [[a1, -b1*], [b1, a1*]].
    const Complex &a1 = g1.a();
    const Complex &b1 = g1.b();
    const Complex &a2 = g2.a();
    const Complex &b2 = g2.b();
    return unchecked_gate(a2 * a1 - std::conj(b2) * b1, b2 * a1 + std::conj(a2) * b1);
}

Su2Gate power(const Su2Gate &g, std::int64_t n) {
    if (n < 1) {
        fail(ErrorKind::Domain, "power requires n >= 1, got " + std::to_string(n));
    }
    if (n == 1) {
        return g;
    }
    double ar = g.a().real();
    double ai = g.a().imag();
    double sin_theta = std::sqrt(ai * ai + std::norm(g.b()));
    MultipleAngle m = multiple_angle(ar, sin_theta, n);
    return unchecked_gate(Complex(m.cos_n, ai * m.sin_ratio), g.b() * m.sin_ratio);
}

Theta theta_of(const Su2Gate &g) {
    return Theta(std::acos(std::clamp(g.a().real(), -1.0, 1.0)));
}

double max_entry_distance(const Su2Gate &x, const Su2Gate &y) {
    // The matrix is determined by (a, b); the other entries repeat their moduli.
    return std::max(std::abs(x.a() - y.a()), std::abs(x.b() - y.b()));
}

}  // namespace multipass
