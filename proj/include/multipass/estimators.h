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


#ifndef MULTIPASS_ESTIMATORS_H
#define MULTIPASS_ESTIMATORS_H

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace multipass {

enum class EstimateMethod {
    RealA,
    SumLargeP,
    RatioGeneral,
    PhaseGateSum,
    PhaseGatePeak,
};

std::string_view to_string(EstimateMethod m);
EstimateMethod parse_estimate_method(std::string_view name);

struct ErrorEstimate {
    double p_hat = 0.0;
    double epsilon_hat = 0.0;
    std::optional<double> xi_hat;
    std::optional<double> gamma_hat;
    std::optional<double> eta_hat;
    EstimateMethod method = EstimateMethod::RealA;
    /// Largest deviation between the measured probabilities and the ones
    /// recomputed from the recovered parameters.
    double residual = 0.0;
    /// Set when the ratio protocol had to leave the principal arccos branch.
    bool aliased = false;
    /// Inputs in call order, echoed for serialization.
    std::vector<std::pair<std::string, double>> inputs;
};

struct Tolerances {
    /// Branch consistency for exact-input inversions (real-a two-point check).
    double exact_inversion = 1e-9;
    /// Allowed |sin^2 xi - P^{-+} / (P^{++} + P^{-+})| for a phase candidate.
    double phase_consistency = 1e-2;
    /// Allowed |cos^2(2 M xi) - P_{4M}^{++} / (4 P_{2M}^{++})| when the
    /// optional 4M measurement is supplied to estimate_phase_xi.
    double phase_ratio_consistency = 5e-2;
    /// Probabilities below this are treated as zero denominators.
    double degenerate_floor = 1e-12;
    /// Allowed deviation of the recomputed P_{2M}^{+-+} in the ratio protocol.
    double ratio_consistency = 1e-8;
    /// Search the other arccos branches when the principal one is inconsistent.
    bool resolve_aliasing = true;
    /// Upper bound on the summed pair probabilities for the sum protocols.
    double sum_regime_limit = 0.5;
};

struct NearOne {};
struct NearZero {};
/// A second return-probability measurement after n_passes passes.
struct TwoPoint {
    double q_return;
    std::int64_t n_passes;
};
using BranchHint = std::variant<NearOne, NearZero, TwoPoint>;

/// Solves Q_n = cos^2(n arccos sqrt(1 - p)) for p in [0, 1]. Up to n + 1
/// branches exist; the hint picks one of them.
/// Throws NoSolution when no branch matches a TwoPoint measurement and
/// Ambiguous when several do.
ErrorEstimate invert_real_a(double q_n, std::int64_t n, const BranchHint &hint, const Tolerances &tol = {});

/// All distinct p in [0, 1] with cos^2(n arccos sqrt(1 - p)) = q_n, ascending.
std::vector<double> real_a_branches(double q_n, std::int64_t n);

/// eps = (P^{++} + P^{-+}) / (4 M^2) for p = 1 - eps, with xi from the split.
/// Throws RegimeViolation when the sum exceeds tol.sum_regime_limit.
ErrorEstimate estimate_sum_large_p(double p_pp, double p_mp, std::int64_t m, const Tolerances &tol = {});

/// Recovers theta_+ and theta_- from R = P_{4M} / P_{2M} of the PlusPlus and
/// MinusPlus pairs, then p and xi.
/// Throws DegenerateDenominator for P_{2M} < tol.degenerate_floor and
/// BranchAliasing when no single branch reproduces the 2M data.
ErrorEstimate estimate_ratio_general(
    double p_2m_pp, double p_4m_pp, double p_2m_mp, double p_4m_mp, std::int64_t m, const Tolerances &tol = {});

/// eps = (P^{+-} + P^{--}) / (4 M^2) for small p, and sin^2 eta = P^{+-} / sum.
ErrorEstimate estimate_phase_gate_sum(double p_pm, double p_mm, std::int64_t m, const Tolerances &tol = {});

struct XiCandidate {
    double xi;
    /// |sin^2 xi - P^{-+} / (P^{++} + P^{-+})|.
    double residual;
};

/// xi in [0, pi] from sin^2(2 M xi) eps = P^{++} P^{-+} / (P^{++} + P^{-+}),
/// filtered by tan^2 xi = P^{-+} / P^{++} and, when p_4m_pp is given, by
/// P_{4M}^{++} / P_{2M}^{++} = 4 cos^2(2 M xi). Survivors sorted by residual.
/// Throws Domain for a vanishing sum or eps and Inconsistent when nothing
/// survives.
std::vector<XiCandidate> estimate_phase_xi(
    double p_pp,
    double p_mp,
    double epsilon_hat,
    std::int64_t m,
    std::optional<double> p_4m_pp = std::nullopt,
    const Tolerances &tol = {});

/// First-order peak inversion near xi = (2k + 1) pi / (2 n):
/// gamma = [1 - P sin^2(a) / (4 M^2 p)] / (2 cot a), a = (2k + 1) pi / (2 n).
/// Throws Domain when cot a vanishes or p_hat <= 0.
ErrorEstimate estimate_phase_gamma_peak(
    double p_n, double p_hat, std::int64_t n_half, std::int64_t m, std::int64_t k);

}  // namespace multipass

#endif
