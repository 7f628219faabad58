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

#include "abelcss/json_io.h"

#include <algorithm>
#include <cstring>
#include <fstream>

namespace abelcss {

namespace {

template <typename T>
T get_as(const Json &j, const char *key, const std::string &where) {
    if (!j.contains(key)) {
        throw ConfigError(where + ": missing key '" + key + "'");
    }
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError(where + ": bad value for '" + key + "': " + e.what());
    }
}

Json optional_size(const std::optional<std::size_t> &v) { return v ? Json(*v) : Json(nullptr); }

Json interval_to_json(const Interval &i) { return Json::array({i.low, i.high}); }

}  // namespace

void require_known_keys(const Json &obj, std::initializer_list<const char *> allowed, const std::string &where) {
    if (!obj.is_object()) {
        throw ConfigError(where + ": expected a JSON object");
    }
    for (const auto &item : obj.items()) {
        bool known = std::any_of(allowed.begin(), allowed.end(),
                                 [&](const char *k) { return item.key() == k; });
        if (!known) {
            throw ConfigError(where + ": unknown key '" + item.key() + "'");
        }
    }
}

Json complex_to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Json group_to_json(const GroupSpec &g) {
    return Json{{"moduli", g.moduli()}, {"site_rank", g.site_rank()}};
}

GroupSpec group_from_json(const Json &j) {
    require_known_keys(j, {"moduli", "site_rank"}, "group");
    auto moduli = get_as<std::vector<int>>(j, "moduli", "group");
    std::size_t rank = j.contains("site_rank") ? get_as<std::size_t>(j, "site_rank", "group") : moduli.size();
    try {
        return GroupSpec(std::move(moduli), rank);
    } catch (const std::invalid_argument &e) {
        throw ConfigError(std::string("group: ") + e.what());
    }
}

Json state_to_json(const StateVector &s) {
    Json j = group_to_json(s.group());
    Json amps = Json::array();
    for (const auto &a : s.amplitudes()) {
        amps.push_back(complex_to_json(a));
    }
    j["amplitudes"] = std::move(amps);
    return j;
}

StateVector state_from_json(const Json &j) {
    require_known_keys(j, {"moduli", "site_rank", "amplitudes"}, "state");
    Json header = {{"moduli", j.value("moduli", Json::array())}};
    if (j.contains("site_rank")) {
        header["site_rank"] = j["site_rank"];
    }
    GroupSpec g = group_from_json(header);
    auto pairs = get_as<std::vector<std::vector<double>>>(j, "amplitudes", "state");
    if (pairs.size() != g.order()) {
        throw ConfigError("state: " + std::to_string(pairs.size()) + " amplitudes for a group of order " +
                          std::to_string(g.order()));
    }
    std::vector<Complex> amps;
    amps.reserve(pairs.size());
    for (const auto &p : pairs) {
        if (p.size() != 2) {
            throw ConfigError("state: each amplitude must be a [re, im] pair");
        }
        amps.emplace_back(p[0], p[1]);
    }
    return StateVector(g, std::move(amps));
}

Json code_definition_to_json(const CodeDefinition &def) {
    return Json{{"moduli", def.moduli}, {"n", def.n}, {"c1", def.c1}, {"c2", def.c2}};
}

CodeDefinition code_definition_from_json(const Json &j) {
    require_known_keys(j, {"moduli", "n", "c1", "c2"}, "code");
    CodeDefinition def;
    def.moduli = get_as<std::vector<int>>(j, "moduli", "code");
    def.n = get_as<std::size_t>(j, "n", "code");
    def.c1 = get_as<std::vector<std::vector<int>>>(j, "c1", "code");
    def.c2 = j.contains("c2") ? get_as<std::vector<std::vector<int>>>(j, "c2", "code")
                              : std::vector<std::vector<int>>{};
    if (def.n == 0) {
        throw ConfigError("code: n must be positive");
    }
    return def;
}

CodeDefinition resolve_code_reference(const Json &ref, const std::filesystem::path &base_dir) {
    if (ref.is_string()) {
        std::filesystem::path p = ref.get<std::string>();
        if (p.is_relative()) {
            p = base_dir / p;
        }
        return code_definition_from_json(read_json_file(p));
    }
    return code_definition_from_json(ref);
}

CssCode build_code(const CodeDefinition &def) {
    GroupSpec g;
    try {
        g = GroupSpec(def.moduli);
    } catch (const std::invalid_argument &e) {
        throw ConfigError(std::string("code: ") + e.what());
    }
    auto check = [&](const std::vector<std::vector<int>> &gens, const char *name) {
        for (const auto &w : gens) {
            if (w.size() != g.rank() * def.n) {
                throw ConfigError(std::string("code: a generator of ") + name + " has " + std::to_string(w.size()) +
                                  " coordinates, expected " + std::to_string(g.rank() * def.n));
            }
            for (std::size_t k = 0; k < w.size(); k++) {
                int m = def.moduli[k % g.rank()];
                if (w[k] < 0 || w[k] >= m) {
                    throw ConfigError(std::string("code: coordinate ") + std::to_string(w[k]) + " of " + name +
                                      " is outside [0, " + std::to_string(m) + ")");
                }
            }
        }
    };
    check(def.c1, "c1");
    check(def.c2, "c2");
    try {
        return make_css(g, def.n, def.c1, def.c2);
    } catch (const std::invalid_argument &e) {
        throw ConfigError(std::string("code: ") + e.what());
    }
}

Json kl_to_json(const KlResult &kl) {
    Json alpha = Json::array();
    for (const auto &row : kl.alpha) {
        Json r = Json::array();
        for (const auto &a : row) {
            r.push_back(complex_to_json(a));
        }
        alpha.push_back(std::move(r));
    }
    Json j{{"pass", kl.pass}, {"max_deviation", kl.max_deviation}};
    j["violation"] = kl.violation ? Json::array({kl.violation->first, kl.violation->second}) : Json(nullptr);
    j["alpha"] = std::move(alpha);
    return j;
}

Json code_analysis_to_json(const CssCode &code, const KlResult *kl) {
    Json j;
    j["group"] = group_to_json(code.site_group());
    j["n"] = code.n();
    j["c1_order"] = code.c1().order();
    j["c2_order"] = code.c2().order();
    j["d1"] = optional_size(code.d1());
    j["d2_perp"] = optional_size(code.d2_perp());
    j["t1"] = code.t1();
    j["t2"] = code.t2();
    j["dimension"] = code.dimension();
    j["self_pairing_nondegenerate"] = code.self_pairing_nondegenerate();
    if (kl) {
        j["kl"] = kl_to_json(*kl);
    }
    return j;
}

Json transcript_to_json(const ProtocolTranscript &t) {
    Json j;
    j["protocol"] = t.protocol;
    j["variant"] = t.variant;
    j["seed"] = t.seed;
    j["trial"] = t.trial;
    j["n"] = t.n;
    j["t_check"] = t.t_check;
    j["positions"] = t.positions;
    j["alice_bases"] = t.alice_bases;
    j["bob_bases"] = t.bob_bases;
    j["eve_bases"] = t.eve_bases;
    j["eve_outcomes"] = t.eve_outcomes;
    j["alice_symbols"] = t.alice_symbols;
    j["bob_symbols"] = t.bob_symbols;
    j["sifted"] = t.sifted;
    j["check_positions"] = t.check_positions;
    j["data_positions"] = t.data_positions;
    j["checked"] = t.checked;
    j["disagreements"] = t.disagreements;
    j["key_coset"] = t.key_coset;
    j["v"] = t.v;
    j["z"] = t.z;
    j["x"] = t.x;
    j["announced"] = t.announced;
    j["bob_raw"] = t.bob_raw;
    j["bob_word"] = t.bob_word;
    j["e1_hat"] = t.e1_hat;
    j["e2_hat"] = t.e2_hat;
    Json ann = Json::array();
    for (const auto &a : t.announcements) {
        ann.push_back(Json{{"party", a.party}, {"what", a.what}, {"payload", a.payload}});
    }
    j["announcements"] = std::move(ann);
    j["aborted"] = t.aborted;
    j["reason"] = to_string(t.reason);
    j["alice_key"] = optional_size(t.alice_key);
    j["bob_key"] = optional_size(t.bob_key);
    return j;
}

Json summary_to_json(const ProtocolSummary &s) {
    Json j;
    j["trials"] = s.trials;
    j["aborted"] = s.aborted;
    j["aborted_disagreements"] = s.aborted_disagreements;
    j["aborted_sifting"] = s.aborted_sifting;
    j["abort_rate"] = s.abort_rate;
    j["abort_ci"] = interval_to_json(s.abort_ci);
    j["completed"] = s.completed;
    j["agreements"] = s.agreements;
    j["agreement_rate"] = s.agreement_rate ? Json(*s.agreement_rate) : Json(nullptr);
    j["agreement_ci"] = s.agreement_ci ? interval_to_json(*s.agreement_ci) : Json(nullptr);
    j["checked_positions"] = s.checked_positions;
    j["disagreements"] = s.disagreements;
    j["disagreement_fraction"] = s.disagreement_fraction ? Json(*s.disagreement_fraction) : Json(nullptr);
    j["disagreement_ci"] = s.disagreement_ci ? interval_to_json(*s.disagreement_ci) : Json(nullptr);
    return j;
}

Json identity_result_to_json(const IdentityResult &r) {
    Json j{{"identity", r.identity},       {"scope", r.scope},         {"status", to_string(r.status)},
           {"max_error", r.max_error},     {"tolerance", r.tolerance}, {"cases", r.cases}};
    if (!r.detail.empty()) {
        j["detail"] = r.detail;
    }
    return j;
}

Json verify_report_to_json(const VerifyReport &r) {
    Json results = Json::array();
    for (const auto &x : r.results) {
        results.push_back(identity_result_to_json(x));
    }
    return Json{{"ok", r.ok()}, {"results", std::move(results)}};
}

Json read_json_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open " + path.string());
    }
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error &e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

}  // namespace abelcss
