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


#include "multipass/estimators.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "multipass/chebyshev.h"
#include "multipass/error.h"
#include "multipass/sequence.h"
#include "multipass/su2.h"

namespace multipass {

namespace {

constexpr double kPi = std::numbers::pi;

std::string num(double x) {
    std::ostringstream ss;
    ss.precision(17);
    ss << x;
    return ss.str();
}

void require_probability(double p, const char *name) {
    if (!(p >= 0.0 && p <= 1.0)) {
        fail(ErrorKind::Domain, std::string(name) + "=" + num(p) + " is outside [0, 1]");
    }
}

void require_positive(std::int64_t n, const char *name) {
    if (n < 1) {
        fail(ErrorKind::Domain, std::string(name) + " must be >= 1, got " + std::to_string(n));
    }
}

double pair_transfer(const Su2Gate &g, PairKind kind, std::int64_t m) {
    return evaluate_fast(pair_sequence(g, kind, m)).p_transfer;
}

double cos_sq(double x) {
    double c = std::cos(x);
    return c * c;
}

double sin_sq(double x) {
    double s = std::sin(x);
    return s * s;
}

// Angles phi = arccos sqrt(q) in [0, pi/2] with cos^2(n phi) = q_n, ascending.
std::vector<double> real_a_angles(double q_n, std::int64_t n) {
    double beta = std::atan2(std::sqrt(1.0 - q_n), std::sqrt(q_n));
    double nd = static_cast<double>(n);
    std::vector<double> out;
    for (std::int64_t j = 0; j <= n; j++) {
        for (double s : {-1.0, 1.0}) {
            double phi = (static_cast<double>(j) * kPi + s * beta) / nd;
            if (phi < -1e-15 || phi > kPi / 2 + 1e-12) {
                continue;
            }
            out.push_back(std::clamp(phi, 0.0, kPi / 2));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end(), [](double x, double y) { return y - x <= 1e-13; }), out.end());
    return out;
}

struct RatioBranch {
    double theta_plus;
    double theta_minus;
    double p;
    double cos_2xi;
    double residual;
};

std::vector<double> ratio_angles(double g, std::int64_t m) {
    double two_m = 2.0 * static_cast<double>(m);
    std::vector<double> out;
    for (std::int64_t j = 0; j <= m; j++) {
        for (double s : {1.0, -1.0}) {
            double t = (s * g + 2.0 * kPi * static_cast<double>(j)) / two_m;
            if (t >= 0.0 && t <= kPi) {
                out.push_back(t);
            }
        }
    }
    return out;
}

double pair_prediction(double p, double weight, double theta, std::int64_t m) {
    double ratio = multiple_angle(std::cos(theta), std::sin(theta), m).sin_ratio;
    return 4.0 * p * (1.0 - p) * weight * ratio * ratio;
}

std::optional<RatioBranch> ratio_branch(double tp, double tm, double p2_pp, double p2_mp, std::int64_t m) {
    double p = (std::cos(tm) - std::cos(tp)) / 2.0;
    if (p < -1e-12 || p > 1.0 + 1e-12) {
        return std::nullopt;
    }
    p = std::clamp(p, 0.0, 1.0);
    double q = 1.0 - p;
    double c2 = q > 0.0 ? (std::cos(tp) + std::cos(tm)) / (2.0 * q) : 0.0;
    if (std::fabs(c2) > 1.0 + 1e-9) {
        return std::nullopt;
    }
    c2 = std::clamp(c2, -1.0, 1.0);
    double pred_pp = pair_prediction(p, (1.0 + c2) / 2.0, tp, m);
    double pred_mp = pair_prediction(p, (1.0 - c2) / 2.0, tm, m);
    double res = std::max(std::fabs(pred_pp - p2_pp), std::fabs(pred_mp - p2_mp));
    return RatioBranch{tp, tm, p, c2, res};
}

}  // namespace

std::string_view to_string(EstimateMethod m) {
    switch (m) {
        case EstimateMethod::RealA:
            return "RealA";
        case EstimateMethod::SumLargeP:
            return "SumLargeP";
        case EstimateMethod::RatioGeneral:
            return "RatioGeneral";
        case EstimateMethod::PhaseGateSum:
            return "PhaseGateSum";
        case EstimateMethod::PhaseGatePeak:
            return "PhaseGatePeak";
    }
    return "?";
}

EstimateMethod parse_estimate_method(std::string_view name) {
    for (auto m : {EstimateMethod::RealA,
                   EstimateMethod::SumLargeP,
                   EstimateMethod::RatioGeneral,
                   EstimateMethod::PhaseGateSum,
                   EstimateMethod::PhaseGatePeak}) {
        if (name == to_string(m)) {
            return m;
        }
    }
    fail(ErrorKind::Config, "unknown estimation method '" + std::string(name) + "'");
}

std::vector<double> real_a_branches(double q_n, std::int64_t n) {
    require_probability(q_n, "q_n");
    require_positive(n, "n");
    std::vector<double> out;
    for (double phi : real_a_angles(q_n, n)) {
        out.push_back(sin_sq(phi));
    }
    return out;
}

ErrorEstimate invert_real_a(double q_n, std::int64_t n, const BranchHint &hint, const Tolerances &tol) {
    require_probability(q_n, "q_n");
    require_positive(n, "n");
    std::vector<double> phis = real_a_angles(q_n, n);
    if (phis.empty()) {
        fail(ErrorKind::NoSolution, "no real-a gate reaches Q=" + num(q_n) + " after " + std::to_string(n) + " passes");
    }

    ErrorEstimate est;
    est.method = EstimateMethod::RealA;
    est.inputs = {{"q_n", q_n}, {"n", static_cast<double>(n)}};
    double phi = 0.0;
    bool large = false;
    if (std::holds_alternative<NearOne>(hint)) {
        phi = phis.back();
        large = true;
    } else if (std::holds_alternative<NearZero>(hint)) {
        phi = phis.front();
    } else {
        const auto &tp = std::get<TwoPoint>(hint);
        require_probability(tp.q_return, "q_2");
        require_positive(tp.n_passes, "n_2");
        est.inputs.emplace_back("q_2", tp.q_return);
        est.inputs.emplace_back("n_2", static_cast<double>(tp.n_passes));
        std::vector<std::pair<double, double>> consistent;
        for (double f : phis) {
            double r = std::fabs(cos_sq(static_cast<double>(tp.n_passes) * f) - tp.q_return);
            if (r <= tol.exact_inversion) {
                consistent.emplace_back(r, f);
            }
        }
        if (consistent.empty()) {
            fail(ErrorKind::NoSolution,
                 "none of the " + std::to_string(phis.size()) + " branches for Q_" + std::to_string(n) + "=" +
                     num(q_n) + " reproduces Q_" + std::to_string(tp.n_passes) + "=" + num(tp.q_return));
        }
        std::sort(consistent.begin(), consistent.end());
        double p_best = sin_sq(consistent.front().second);
        for (const auto &[r, f] : consistent) {
            if (std::fabs(sin_sq(f) - p_best) > tol.exact_inversion) {
                fail(ErrorKind::Ambiguous,
                     "branches p=" + num(p_best) + " and p=" + num(sin_sq(f)) + " both reproduce Q_" +
                         std::to_string(tp.n_passes) + "; choose a second pass count that separates them");
            }
        }
        phi = consistent.front().second;
        large = p_best >= 0.5;
    }
    est.p_hat = sin_sq(phi);
    est.epsilon_hat = large ? cos_sq(phi) : est.p_hat;
    est.residual = std::fabs(cos_sq(static_cast<double>(n) * phi) - q_n);
    return est;
}

ErrorEstimate estimate_sum_large_p(double p_pp, double p_mp, std::int64_t m, const Tolerances &tol) {
    require_probability(p_pp, "p_pp");
    require_probability(p_mp, "p_mp");
    require_positive(m, "m");
    double sum = p_pp + p_mp;
    if (sum > tol.sum_regime_limit) {
        fail(ErrorKind::RegimeViolation,
             "P++ + P-+ = " + num(sum) + " exceeds " + num(tol.sum_regime_limit) +
                 "; use fewer pairs so that M^2 eps stays small");
    }
    double md = static_cast<double>(m);
    ErrorEstimate est;
    est.method = EstimateMethod::SumLargeP;
    est.inputs = {{"p_pp", p_pp}, {"p_mp", p_mp}, {"m", md}};
    est.epsilon_hat = sum / (4.0 * md * md);
    est.p_hat = 1.0 - est.epsilon_hat;
    est.xi_hat = std::atan2(std::sqrt(p_mp), std::sqrt(p_pp));
    Su2Gate g = from_probability_and_phases(est.p_hat, *est.xi_hat, 0.0);
    est.residual = std::max(
        std::fabs(pair_transfer(g, PairKind::PlusPlus, m) - p_pp),
        std::fabs(pair_transfer(g, PairKind::MinusPlus, m) - p_mp));
    return est;
}

ErrorEstimate estimate_ratio_general(
    double p_2m_pp, double p_4m_pp, double p_2m_mp, double p_4m_mp, std::int64_t m, const Tolerances &tol) {
    require_probability(p_2m_pp, "p_2m_pp");
    require_probability(p_4m_pp, "p_4m_pp");
    require_probability(p_2m_mp, "p_2m_mp");
    require_probability(p_4m_mp, "p_4m_mp");
    require_positive(m, "m");
    if (p_2m_pp < tol.degenerate_floor || p_2m_mp < tol.degenerate_floor) {
        fail(ErrorKind::DegenerateDenominator,
             "P_2M++=" + num(p_2m_pp) + ", P_2M-+=" + num(p_2m_mp) + "; the ratio R=P_4M/P_2M is undefined below " +
                 num(tol.degenerate_floor));
    }
    double g_pp = std::acos(std::clamp(p_4m_pp / p_2m_pp / 2.0 - 1.0, -1.0, 1.0));
    double g_mp = std::acos(std::clamp(p_4m_mp / p_2m_mp / 2.0 - 1.0, -1.0, 1.0));
    double two_m = 2.0 * static_cast<double>(m);

    ErrorEstimate est;
    est.method = EstimateMethod::RatioGeneral;
    est.inputs = {
        {"p_2m_pp", p_2m_pp}, {"p_4m_pp", p_4m_pp}, {"p_2m_mp", p_2m_mp}, {"p_4m_mp", p_4m_mp}, {"m", 0.5 * two_m}};
    auto finish = [&](const RatioBranch &b, bool aliased) {
        est.p_hat = b.p;
        est.epsilon_hat = b.p >= 0.5 ? 1.0 - b.p : b.p;
        est.xi_hat = std::acos(b.cos_2xi) / 2.0;
        est.residual = b.residual;
        est.aliased = aliased;
        return est;
    };

    auto principal = ratio_branch(g_pp / two_m, g_mp / two_m, p_2m_pp, p_2m_mp, m);
    if (principal && principal->residual <= tol.ratio_consistency) {
        return finish(*principal, false);
    }
    std::string principal_note = principal ? "principal branch misses P_2M by " + num(principal->residual)
                                           : "principal branch gives p outside [0, 1]";
    if (!tol.resolve_aliasing) {
        fail(ErrorKind::BranchAliasing, principal_note + "; 2M theta likely exceeds pi");
    }
    std::vector<RatioBranch> consistent;
    for (double tp : ratio_angles(g_pp, m)) {
        for (double tm : ratio_angles(g_mp, m)) {
            auto b = ratio_branch(tp, tm, p_2m_pp, p_2m_mp, m);
            if (b && b->residual <= tol.ratio_consistency) {
                consistent.push_back(*b);
            }
        }
    }
    if (consistent.empty()) {
        fail(ErrorKind::BranchAliasing, principal_note + " and no other arccos branch reproduces the 2M data");
    }
    std::sort(consistent.begin(), consistent.end(), [](const RatioBranch &x, const RatioBranch &y) {
        return x.residual < y.residual;
    });
    for (const auto &b : consistent) {
        if (std::fabs(b.p - consistent.front().p) > 1e-9) {
            fail(ErrorKind::BranchAliasing,
                 principal_note + "; branches p=" + num(consistent.front().p) + " and p=" + num(b.p) +
                     " both reproduce the data");
        }
    }
    return finish(consistent.front(), true);
}

ErrorEstimate estimate_phase_gate_sum(double p_pm, double p_mm, std::int64_t m, const Tolerances &tol) {
    require_probability(p_pm, "p_pm");
    require_probability(p_mm, "p_mm");
    require_positive(m, "m");
    double sum = p_pm + p_mm;
    if (sum > tol.sum_regime_limit) {
        fail(ErrorKind::RegimeViolation,
             "P+- + P-- = " + num(sum) + " exceeds " + num(tol.sum_regime_limit) +
                 "; use fewer pairs so that M^2 eps stays small");
    }
    double md = static_cast<double>(m);
    ErrorEstimate est;
    est.method = EstimateMethod::PhaseGateSum;
    est.inputs = {{"p_pm", p_pm}, {"p_mm", p_mm}, {"m", md}};
    est.epsilon_hat = sum / (4.0 * md * md);
    est.p_hat = est.epsilon_hat;
    if (sum == 0.0) {
        return est;
    }
    est.eta_hat = std::atan2(std::sqrt(p_pm), std::sqrt(p_mm));
    Su2Gate g = from_probability_and_phases(est.p_hat, 0.0, *est.eta_hat);
    est.residual = std::max(
        std::fabs(pair_transfer(g, PairKind::PlusMinus, m) - p_pm),
        std::fabs(pair_transfer(g, PairKind::MinusMinus, m) - p_mm));
    return est;
}

std::vector<XiCandidate> estimate_phase_xi(
    double p_pp, double p_mp, double epsilon_hat, std::int64_t m, std::optional<double> p_4m_pp, const Tolerances &tol) {
    require_probability(p_pp, "p_pp");
    require_probability(p_mp, "p_mp");
    require_positive(m, "m");
    double sum = p_pp + p_mp;
    if (!(sum > tol.degenerate_floor)) {
        fail(ErrorKind::Domain, "P++ + P-+ = " + num(sum) + " carries no phase information");
    }
    if (!(epsilon_hat > 0.0)) {
        fail(ErrorKind::Domain, "epsilon_hat must be positive, got " + num(epsilon_hat));
    }
    double v = std::clamp(p_pp * p_mp / sum / epsilon_hat, 0.0, 1.0);
    if (p_4m_pp) {
        require_probability(*p_4m_pp, "p_4m_pp");
        if (p_pp > tol.degenerate_floor) {
            double r = *p_4m_pp / p_pp / 4.0;
            if (std::fabs((1.0 - v) - r) > tol.phase_ratio_consistency) {
                fail(ErrorKind::Inconsistent,
                     "P_4M++/(4 P_2M++) = " + num(r) + " disagrees with cos^2(2 M xi) = " + num(1.0 - v));
            }
        }
    }
    double beta = std::asin(std::sqrt(v));
    double target = p_mp / sum;
    double two_m = 2.0 * static_cast<double>(m);
    std::vector<XiCandidate> out;
    for (std::int64_t j = 0; j <= 2 * m; j++) {
        for (double s : {1.0, -1.0}) {
            double xi = (static_cast<double>(j) * kPi + s * beta) / two_m;
            if (xi < 0.0 || xi > kPi) {
                continue;
            }
            double r = std::fabs(sin_sq(xi) - target);
            if (r <= tol.phase_consistency) {
                out.push_back({xi, r});
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const XiCandidate &x, const XiCandidate &y) { return x.xi < y.xi; });
    out.erase(
        std::unique(
            out.begin(), out.end(), [](const XiCandidate &x, const XiCandidate &y) { return y.xi - x.xi <= 1e-13; }),
        out.end());
    if (out.empty()) {
        fail(ErrorKind::Inconsistent,
             "no xi with sin^2(2 M xi) = " + num(v) + " matches sin^2 xi = " + num(target) + " within " +
                 num(tol.phase_consistency));
    }
    std::stable_sort(
        out.begin(), out.end(), [](const XiCandidate &x, const XiCandidate &y) { return x.residual < y.residual; });
    return out;
}

ErrorEstimate estimate_phase_gamma_peak(
    double p_n, double p_hat, std::int64_t n_half, std::int64_t m, std::int64_t k) {
    require_probability(p_n, "p_n");
    require_positive(n_half, "n_half");
    require_positive(m, "m");
    if (k < 0) {
        fail(ErrorKind::Domain, "peak index k must be >= 0, got " + std::to_string(k));
    }
    if (!(p_hat > 0.0 && p_hat <= 1.0)) {
        fail(ErrorKind::Domain, "p_hat must lie in (0, 1], got " + num(p_hat));
    }
    double alpha = static_cast<double>(2 * k + 1) * kPi / (2.0 * static_cast<double>(n_half));
    double cot = std::cos(alpha) / std::sin(alpha);
    if (std::fabs(cot) < 1e-12) {
        fail(ErrorKind::Domain,
             "peak at xi = pi/2 has cot(alpha) = 0; the transition probability is insensitive to gamma at first "
             "order there");
    }
    double md = static_cast<double>(m);
    ErrorEstimate est;
    est.method = EstimateMethod::PhaseGatePeak;
    est.inputs = {
        {"p_n", p_n},
        {"p_hat", p_hat},
        {"n_half", static_cast<double>(n_half)},
        {"m", md},
        {"k", static_cast<double>(k)},
    };
    est.p_hat = p_hat;
    est.epsilon_hat = p_hat;
    double gamma = (1.0 - p_n * sin_sq(alpha) / (4.0 * md * md * p_hat)) / (2.0 * cot);
    est.gamma_hat = gamma;
    est.xi_hat = alpha + gamma;
    Su2Gate g = from_probability_and_phases(p_hat, alpha + gamma, 0.0);
    est.residual = std::fabs(evaluate_fast(phase_gate_block(g, n_half, m)).p_transfer - p_n);
    return est;
}

}  // namespace multipass
