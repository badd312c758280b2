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

#ifndef MULTIPASS_SU2_H
#define MULTIPASS_SU2_H

#include <array>
#include <complex>
#include <cstdint>
#include <string_view>

namespace multipass {

using Complex = std::complex<double>;
using Matrix2 = std::array<std::array<Complex, 2>, 2>;

/// Largest |(|a|^2 + |b|^2) - 1| accepted by make_gate.
inline constexpr double kUnitarityTolerance = 1e-9;

/// Single-pass propagator in Cayley-Klein form
///
///     U = [[ a, -conj(b) ],
///          [ b,  conj(a) ]]
///
/// acting on the column vector (c1, c2). |a|^2 is the return probability q and
/// |b|^2 the transition probability p of one pass started in state 1.
///
/// Instances are immutable. The only ways to obtain one are the validated
/// factories below and the algebra (compose, power, variant), which preserves
/// the SU(2) structure exactly up to rounding.
class Su2Gate {
   public:
    /// Identity.
    Su2Gate() = default;

    const Complex &a() const {
        return a_;
    }
    const Complex &b() const {
        return b_;
    }

    double transition_probability() const {
        return std::norm(b_);
    }
    double return_probability() const {
        return std::norm(a_);
    }
    /// (|a|^2 + |b|^2) - 1.
    double norm_defect() const {
        return std::norm(a_) + std::norm(b_) - 1.0;
    }

    Matrix2 matrix() const;

    bool operator==(const Su2Gate &other) const = default;

   private:
    Su2Gate(Complex a, Complex b) : a_(a), b_(b) {
    }

    Complex a_{1.0, 0.0};
    Complex b_{0.0, 0.0};

    friend Su2Gate make_gate(Complex a, Complex b);
    friend Su2Gate unchecked_gate(Complex a, Complex b);
};

/// Angle in [0, pi] controlling multi-pass interference: cos(theta) = Re(a).
class Theta {
   public:
    /// Throws ErrorKind::Domain outside [0, pi].
    explicit Theta(double value);

    double value() const {
        return value_;
    }

   private:
    double value_;
};

/// Sign-flip variants of a gate. All four share the same Cayley-Klein
/// parameters (a, b) of the original.
enum class GateVariant {
    Original,   // U(+Omega, +Delta): (a, b)
    FlipOmega,  // U(-Omega, +Delta): (a, -b)
    FlipDelta,  // U(+Omega, -Delta): (conj a, -conj b)
    FlipBoth,   // U(-Omega, -Delta): (conj a, conj b)
};

std::string_view to_string(GateVariant v);
/// Throws ErrorKind::Config for unknown names.
GateVariant parse_gate_variant(std::string_view name);

/// Validated gate from raw parameters. Stores a and b exactly as given.
/// Throws ErrorKind::NonUnitary when |(|a|^2 + |b|^2) - 1| > kUnitarityTolerance.
Su2Gate make_gate(Complex a, Complex b);

/// Builds a gate from (a, b) without validation. Reserved for internal algebra
/// and deserialization paths that have already checked the norm.
Su2Gate unchecked_gate(Complex a, Complex b);

/// a = e^{i xi} sqrt(1 - p), b = -e^{-i eta} sqrt(p). With p = 0 and xi = alpha
/// this is the ideal phase gate diag(e^{i alpha}, e^{-i alpha}).
Su2Gate from_probability_and_phases(double p, double xi, double eta);

/// On-resonance pulse of area A: a = cos(A/2), b = -i sin(A/2).
///
/// The sign and phase of b follow from the Hamiltonian
/// H = (1/2)[[-Delta, Omega], [Omega, Delta]] with real Omega > 0. None of the
/// population formulas or estimators depend on this choice.
Su2Gate resonant_gate(double pulse_area);

/// Exact propagator exp(-i H t) for constant Rabi frequency omega and
/// detuning delta (both in rad/s) over the given duration.
Su2Gate rabi_gate(double omega, double delta, double duration);

Su2Gate variant(const Su2Gate &g, GateVariant v);

/// Matrix product g2 * g1: g1 acts first.
Su2Gate compose(const Su2Gate &g2, const Su2Gate &g1);

/// Closed-form n-th power, n >= 1:
///
///     U^n = [[ cos(n theta) + i a_i S,  -conj(b) S             ],
///            [ b S,                     cos(n theta) - i a_i S ]]
///
/// with S = sin(n theta)/sin(theta) = U_{n-1}(Re a).
Su2Gate power(const Su2Gate &g, std::int64_t n);

Theta theta_of(const Su2Gate &g);

/// Largest entrywise modulus of the difference of the two matrices.
double max_entry_distance(const Su2Gate &x, const Su2Gate &y);

}  // namespace multipass

#endif
