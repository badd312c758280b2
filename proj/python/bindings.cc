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


#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "multipass/closed_form.h"
#include "multipass/error.h"
#include "multipass/estimators.h"
#include "multipass/experiment.h"
#include "multipass/sequence.h"
#include "multipass/shot_sim.h"
#include "multipass/su2.h"

namespace py = pybind11;
using namespace multipass;

namespace {

BranchHint hint_from(const std::string &name, std::optional<double> q2, std::optional<std::int64_t> n2) {
    if (name == "NearOne") {
        return NearOne{};
    }
    if (name == "NearZero") {
        return NearZero{};
    }
    if (name == "TwoPoint") {
        if (!q2 || !n2) {
            fail(ErrorKind::Config, "TwoPoint needs q2 and n2");
        }
        return TwoPoint{*q2, *n2};
    }
    fail(ErrorKind::Config, "unknown hint '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_multipass, m) {
    m.doc() = "Multi-pass SU(2) gate error amplification and estimation";
    m.attr("__version__") = kToolVersion;

    static py::exception<Error> error_type(m, "MultipassError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) {
                std::rethrow_exception(p);
            }
        } catch (const Error &e) {
            py::object exc = py::handle(error_type.ptr())(e.what());
            exc.attr("kind") = std::string(to_string(e.kind()));
            PyErr_SetObject(error_type.ptr(), exc.ptr());
        }
    });

    py::enum_<GateVariant>(m, "GateVariant")
        .value("Original", GateVariant::Original)
        .value("FlipOmega", GateVariant::FlipOmega)
        .value("FlipDelta", GateVariant::FlipDelta)
        .value("FlipBoth", GateVariant::FlipBoth);

    py::enum_<PairKind>(m, "PairKind")
        .value("PlusPlus", PairKind::PlusPlus)
        .value("MinusPlus", PairKind::MinusPlus)
        .value("PlusMinus", PairKind::PlusMinus)
        .value("MinusMinus", PairKind::MinusMinus);

    py::enum_<EstimateMethod>(m, "EstimateMethod")
        .value("RealA", EstimateMethod::RealA)
        .value("SumLargeP", EstimateMethod::SumLargeP)
        .value("RatioGeneral", EstimateMethod::RatioGeneral)
        .value("PhaseGateSum", EstimateMethod::PhaseGateSum)
        .value("PhaseGatePeak", EstimateMethod::PhaseGatePeak);

    py::class_<Su2Gate>(m, "Gate")
        .def(py::init<>())
        .def_property_readonly("a", &Su2Gate::a)
        .def_property_readonly("b", &Su2Gate::b)
        .def_property_readonly("p", &Su2Gate::transition_probability)
        .def_property_readonly("q", &Su2Gate::return_probability)
        .def("norm_defect", &Su2Gate::norm_defect)
        .def("matrix", &Su2Gate::matrix)
        .def("__eq__", [](const Su2Gate &x, const Su2Gate &y) { return x == y; })
        .def("__repr__", [](const Su2Gate &g) {
            return "Gate(a=" + format_double(g.a().real()) + "+" + format_double(g.a().imag()) +
                   "j, b=" + format_double(g.b().real()) + "+" + format_double(g.b().imag()) + "j)";
        });

    m.def("make_gate", &make_gate, py::arg("a"), py::arg("b"));
    m.def("from_probability_and_phases", &from_probability_and_phases, py::arg("p"), py::arg("xi") = 0.0,
          py::arg("eta") = 0.0);
    m.def("resonant_gate", &resonant_gate, py::arg("area"));
    m.def("rabi_gate", &rabi_gate, py::arg("omega"), py::arg("delta"), py::arg("duration"));
    m.def("variant", &variant, py::arg("gate"), py::arg("variant"));
    m.def("compose", &compose, py::arg("second"), py::arg("first"));
    m.def("power", &power, py::arg("gate"), py::arg("n"));
    m.def("theta", [](const Su2Gate &g) { return theta_of(g).value(); }, py::arg("gate"));

    py::class_<MultiPassResult>(m, "MultiPassResult")
        .def_readonly("n_passes", &MultiPassResult::n_passes)
        .def_readonly("q_return", &MultiPassResult::q_return)
        .def_readonly("p_transfer", &MultiPassResult::p_transfer)
        .def_readonly("propagator", &MultiPassResult::propagator);

    m.def("quantum_populations", &quantum_populations, py::arg("gate"), py::arg("n"));
    m.def("classical_populations", &classical_populations, py::arg("p"), py::arg("n"));
    m.def("chebyshev_populations_real_a", &chebyshev_populations_real_a, py::arg("p"), py::arg("n"));
    m.def("imaginary_b_populations", &imaginary_b_populations, py::arg("p"), py::arg("m_pairs"));
    m.def(
        "asymptotic_populations",
        [](double p0, double eps, std::int64_t n) {
            AsymptoticBranch b = asymptotic_populations(p0, eps, n);
            return py::make_tuple(std::string(to_string(b.label)), b.value, b.leading_order);
        },
        py::arg("p0"), py::arg("epsilon"), py::arg("n"));
    m.def("amplification_passes", &amplification_passes, py::arg("epsilon"));
    m.def("half_probability_passes", &half_probability_passes, py::arg("epsilon"));

    py::class_<GateSequence>(m, "GateSequence")
        .def(py::init<Su2Gate, std::vector<GateVariant>, std::int64_t>(), py::arg("base"), py::arg("program"),
             py::arg("repeat"))
        .def_property_readonly("base", &GateSequence::base)
        .def_property_readonly("program", &GateSequence::program)
        .def_property_readonly("repeat", &GateSequence::repeat)
        .def_property_readonly("total_passes", &GateSequence::total_passes);
    m.def("repeat_same", &repeat_same, py::arg("gate"), py::arg("n"));
    m.def("pair_sequence", &pair_sequence, py::arg("gate"), py::arg("kind"), py::arg("m"));
    m.def("phase_gate_block", &phase_gate_block, py::arg("gate"), py::arg("n_half"), py::arg("m"));
    m.def("evaluate", &evaluate, py::arg("sequence"));
    m.def("evaluate_fast", &evaluate_fast, py::arg("sequence"));

    py::class_<MeasurementRecord>(m, "MeasurementRecord")
        .def_readonly("sequence_id", &MeasurementRecord::sequence_id)
        .def_readonly("shots", &MeasurementRecord::shots)
        .def_readonly("count_state1", &MeasurementRecord::count_state1)
        .def_readonly("count_state2", &MeasurementRecord::count_state2)
        .def_readonly("seed", &MeasurementRecord::seed)
        .def_readonly("rng_algorithm", &MeasurementRecord::rng_algorithm);
    m.def("sample", &sample, py::arg("result"), py::arg("shots"), py::arg("seed"), py::arg("sequence_id") = "");
    m.def(
        "estimate_probability",
        [](const MeasurementRecord &r) {
            ProbabilityEstimate e = estimate_probability(r);
            return py::make_tuple(e.probability, e.standard_error);
        },
        py::arg("record"));

    py::class_<ErrorEstimate>(m, "ErrorEstimate")
        .def_readonly("p_hat", &ErrorEstimate::p_hat)
        .def_readonly("epsilon_hat", &ErrorEstimate::epsilon_hat)
        .def_readonly("xi_hat", &ErrorEstimate::xi_hat)
        .def_readonly("gamma_hat", &ErrorEstimate::gamma_hat)
        .def_readonly("eta_hat", &ErrorEstimate::eta_hat)
        .def_readonly("method", &ErrorEstimate::method)
        .def_readonly("residual", &ErrorEstimate::residual)
        .def_readonly("aliased", &ErrorEstimate::aliased)
        .def("to_json", [](const ErrorEstimate &e) { return to_json(e).dump(); });

    m.def(
        "invert_real_a",
        [](double q_n, std::int64_t n, const std::string &hint, std::optional<double> q2,
           std::optional<std::int64_t> n2) { return invert_real_a(q_n, n, hint_from(hint, q2, n2)); },
        py::arg("q_n"), py::arg("n"), py::arg("hint") = "NearOne", py::arg("q2") = py::none(),
        py::arg("n2") = py::none());
    m.def("real_a_branches", &real_a_branches, py::arg("q_n"), py::arg("n"));
    m.def(
        "estimate_sum_large_p",
        [](double pp, double mp, std::int64_t mm) { return estimate_sum_large_p(pp, mp, mm); },
        py::arg("p_pp"), py::arg("p_mp"), py::arg("m"));
    m.def(
        "estimate_ratio_general",
        [](double a, double b, double c, double d, std::int64_t mm, bool resolve_aliasing) {
            Tolerances tol;
            tol.resolve_aliasing = resolve_aliasing;
            return estimate_ratio_general(a, b, c, d, mm, tol);
        },
        py::arg("p_2m_pp"), py::arg("p_4m_pp"), py::arg("p_2m_mp"), py::arg("p_4m_mp"), py::arg("m"),
        py::arg("resolve_aliasing") = true);
    m.def(
        "estimate_phase_gate_sum",
        [](double pm, double mmv, std::int64_t mm) { return estimate_phase_gate_sum(pm, mmv, mm); },
        py::arg("p_pm"), py::arg("p_mm"), py::arg("m"));
    m.def(
        "estimate_phase_xi",
        [](double pp, double mp, double eps, std::int64_t mm, std::optional<double> p4) {
            std::vector<py::tuple> out;
            for (const XiCandidate &c : estimate_phase_xi(pp, mp, eps, mm, p4)) {
                out.push_back(py::make_tuple(c.xi, c.residual));
            }
            return out;
        },
        py::arg("p_pp"), py::arg("p_mp"), py::arg("epsilon_hat"), py::arg("m"), py::arg("p_4m_pp") = py::none());
    m.def("estimate_phase_gamma_peak", &estimate_phase_gamma_peak, py::arg("p_n"), py::arg("p_hat"),
          py::arg("n_half"), py::arg("m"), py::arg("k") = 0);

    m.def(
        "run_config",
        [](const std::string &text, const std::string &command, std::optional<std::string> protocol) {
            ExperimentConfig cfg = parse_config(text);
            if (command == "propagate") {
                return propagate_json(cfg, run_propagate(cfg)).dump();
            }
            if (command == "sweep") {
                return sweep_json(cfg, run_sweep(cfg)).dump();
            }
            if (command == "estimate") {
                std::optional<EstimateMethod> method = cfg.estimate.protocol;
                if (protocol) {
                    method = parse_estimate_method(*protocol);
                }
                if (!method) {
                    fail(ErrorKind::Config, "no protocol given");
                }
                return estimate_json(cfg, run_estimate(cfg, *method)).dump();
            }
            fail(ErrorKind::Config, "unknown command '" + command + "'");
        },
        py::arg("config_json"), py::arg("command"), py::arg("protocol") = py::none(),
        "Runs propagate, sweep or estimate on a JSON config and returns the JSON report.");
}
