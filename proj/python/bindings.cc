// Copyright 2026 The abelcss Authors
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

#include <memory>

#include "abelcss/css_code.h"
#include "abelcss/json_io.h"
#include "abelcss/qkd.h"
#include "abelcss/verify.h"

namespace py = pybind11;
using namespace abelcss;

namespace {

StateVector as_state(const GroupSpec &g, const std::vector<Complex> &amps) { return StateVector(g, amps); }

Subgroup make_subgroup(const GroupSpec &g, const std::vector<std::vector<int>> &gens) {
    std::vector<GroupElement> elems;
    for (const auto &c : gens) {
        elems.push_back(g.element(c));
    }
    return subgroup_from_generators(g, elems);
}

std::vector<std::vector<int>> coords_of(const std::vector<GroupElement> &elems) {
    std::vector<std::vector<int>> out;
    for (const auto &e : elems) {
        out.push_back(e.coords());
    }
    return out;
}

CssVariant parse_variant(const std::string &s) {
    for (auto v : {CssVariant::kFull, CssVariant::kBobMeasuresFirst, CssVariant::kNoPhase, CssVariant::kDirectV,
                   CssVariant::kBasisPrep}) {
        if (to_string(v) == s) {
            return v;
        }
    }
    throw std::invalid_argument("unknown variant '" + s + "'");
}

}  // namespace

PYBIND11_MODULE(_abelcss, m) {
    m.doc() = "Finite abelian group CSS codes and key distribution simulators";
    py::register_exception<ResourceError>(m, "ResourceError", PyExc_MemoryError);
    py::register_exception<InvariantViolation>(m, "InvariantViolation", PyExc_ArithmeticError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::class_<GroupSpec>(m, "GroupSpec")
        .def(py::init<std::vector<int>>(), py::arg("moduli"))
        .def(py::init<std::vector<int>, std::size_t>(), py::arg("moduli"), py::arg("site_rank"))
        .def_property_readonly("moduli", &GroupSpec::moduli)
        .def_property_readonly("order", &GroupSpec::order)
        .def_property_readonly("exponent", &GroupSpec::exponent)
        .def_property_readonly("site_rank", &GroupSpec::site_rank)
        .def("character", [](const GroupSpec &g, const std::vector<int> &x,
                             const std::vector<int> &y) { return character_eval(g.element(x), g.element(y)); })
        .def("element_at", [](const GroupSpec &g, std::uint64_t i) { return g.element_at(i).coords(); })
        .def("index_of", [](const GroupSpec &g, const std::vector<int> &x) { return g.element(x).index(); })
        .def("__repr__", &GroupSpec::to_string);

    py::class_<Subgroup>(m, "Subgroup")
        .def(py::init(&make_subgroup), py::arg("group"), py::arg("generators"))
        .def_property_readonly("order", &Subgroup::order)
        .def_property_readonly("elements", [](const Subgroup &s) { return coords_of(s.elements()); })
        .def("contains", [](const Subgroup &s, const std::vector<int> &x) { return s.contains(s.ambient().element(x)); })
        .def("annihilator", &annihilator);

    m.def("enumerate_subgroups", [](const GroupSpec &g) { return enumerate_subgroups(g); });
    m.def("qft", [](const GroupSpec &g, const std::vector<Complex> &a) { return qft(as_state(g, a)).amplitudes(); });
    m.def("qft_inverse",
          [](const GroupSpec &g, const std::vector<Complex> &a) { return qft_inverse(as_state(g, a)).amplitudes(); });
    m.def(
        "coset_state",
        [](const Subgroup &h, const std::vector<int> &b, const std::vector<int> &a) {
            const GroupSpec &g = h.ambient();
            return coset_state(g.element(b), h, g.element(a)).amplitudes();
        },
        py::arg("subgroup"), py::arg("b"), py::arg("a"));
    m.def(
        "coset_transform_closed_form",
        [](const Subgroup &h, const std::vector<int> &b, const std::vector<int> &a) {
            const GroupSpec &g = h.ambient();
            return coset_transform_closed_form(g.element(b), h, g.element(a)).amplitudes();
        },
        py::arg("subgroup"), py::arg("b"), py::arg("a"));

    py::class_<CssCode, std::shared_ptr<CssCode>>(m, "CssCode")
        .def(py::init([](const std::vector<int> &moduli, std::size_t n, const std::vector<std::vector<int>> &c1,
                         const std::vector<std::vector<int>> &c2) {
                 return std::make_shared<CssCode>(build_code(CodeDefinition{moduli, n, c1, c2}));
             }),
             py::arg("moduli"), py::arg("n"), py::arg("c1"), py::arg("c2") = std::vector<std::vector<int>>{})
        .def_property_readonly("n", &CssCode::n)
        .def_property_readonly("dimension", &CssCode::dimension)
        .def_property_readonly("d1", &CssCode::d1)
        .def_property_readonly("d2_perp", &CssCode::d2_perp)
        .def_property_readonly("t1", &CssCode::t1)
        .def_property_readonly("t2", &CssCode::t2)
        .def_property_readonly("key_representatives",
                               [](const CssCode &c) { return coords_of(c.key_cosets().representatives()); })
        .def("encode", [](const CssCode &c, const std::vector<int> &v) {
            return encode(c, c.ambient().element(v)).amplitudes();
        })
        .def(
            "correct",
            [](const CssCode &c, const std::vector<int> &v, const std::vector<int> &e1, const std::vector<int> &e2) {
                const GroupSpec &g = c.ambient();
                auto ideal = encode(c, g.element(v));
                auto res = correct_pipeline(c, corrupt(g.element(e1), g.element(e2), ideal));
                py::dict d;
                d["fidelity"] = fidelity(ideal, res.restored);
                d["e1_hat"] = res.e1_hat.coords();
                d["e2_hat"] = res.e2_hat.coords();
                d["within_guarantee"] = res.within_guarantee;
                return d;
            },
            py::arg("v"), py::arg("e1"), py::arg("e2"))
        .def(
            "kl_check",
            [](const CssCode &c, std::size_t max_bit, std::size_t max_phase) {
                auto kl = kl_check(c, weyl_errors_up_to(c, max_bit, max_phase));
                return py::make_tuple(kl.pass, kl.max_deviation);
            },
            py::arg("max_bit"), py::arg("max_phase"))
        .def("analysis_json", [](const CssCode &c) { return code_analysis_to_json(c, nullptr).dump(); });

    m.def(
        "run_protocol_json",
        [](std::shared_ptr<CssCode> code, const std::string &protocol, std::size_t trials, std::uint64_t seed,
           double delta, std::optional<std::size_t> t_check, double p_x, double p_z, bool physical, bool eve,
           const std::string &variant, std::size_t threads, bool transcripts) {
            ProtocolParams p;
            p.code = code;
            p.seed = seed;
            p.delta = delta;
            p.t_check = t_check;
            p.noise = {p_x, p_z, physical ? NoiseFrame::kPhysical : NoiseFrame::kData};
            p.eve.intercept = eve;
            p.variant = parse_variant(variant);
            ProtocolKind kind;
            if (protocol == "css") {
                kind = ProtocolKind::kCss;
            } else if (protocol == "bb84g") {
                kind = ProtocolKind::kBb84;
            } else {
                throw std::invalid_argument("unknown protocol '" + protocol + "'");
            }
            std::vector<ProtocolTranscript> ts;
            {
                py::gil_scoped_release release;
                ts = run_trials(p, kind, trials, threads);
            }
            Json out{{"summary", summary_to_json(aggregate_stats(ts))}};
            if (transcripts) {
                Json list = Json::array();
                for (const auto &t : ts) {
                    list.push_back(transcript_to_json(t));
                }
                out["transcripts"] = std::move(list);
            }
            return out.dump();
        },
        py::arg("code"), py::arg("protocol"), py::arg("trials"), py::arg("seed"), py::arg("delta") = 1.0,
        py::arg("t_check") = py::none(), py::arg("p_x") = 0.0, py::arg("p_z") = 0.0, py::arg("physical") = false,
        py::arg("eve") = false, py::arg("variant") = "full", py::arg("threads") = 1, py::arg("transcripts") = false);

    m.def(
        "verify_json",
        [](const std::vector<std::string> &identities, std::uint64_t seed, double tolerance) {
            VerifyOptions opts;
            opts.groups = default_verify_groups();
            opts.codes = default_verify_codes();
            opts.identities = identities;
            opts.seed = seed;
            opts.tolerance = tolerance;
            return verify_report_to_json(run_verification(opts)).dump();
        },
        py::arg("identities") = std::vector<std::string>{}, py::arg("seed") = 0, py::arg("tolerance") = 1e-9);

    m.attr("__version__") = kToolVersion;
}
