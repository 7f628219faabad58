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

#include "cli.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "abelcss/css_code.h"
#include "abelcss/group.h"
#include "abelcss/hilbert.h"
#include "abelcss/json_io.h"
#include "abelcss/qkd.h"
#include "abelcss/verify.h"

namespace abelcss::cli {

namespace {

namespace fs = std::filesystem;

struct Common {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> trials;
    std::string out;
    bool json = false;
};

void add_common(CLI::App *app, Common &c) {
    app->add_option("--config", c.config, "JSON configuration file");
    app->add_option("--seed", c.seed, "Master seed (drawn from entropy when absent)");
    app->add_option("--trials", c.trials, "Number of trials");
    app->add_option("--out", c.out, "Write the machine-readable report here");
    app->add_flag("--json", c.json, "Print the machine-readable report on standard output");
}

struct Loaded {
    Json config = Json::object();
    fs::path base_dir = ".";
};

Loaded load_config(const Common &c, std::initializer_list<const char *> allowed, const std::string &where) {
    Loaded l;
    if (c.config.empty()) {
        return l;
    }
    l.config = read_json_file(c.config);
    l.base_dir = fs::path(c.config).parent_path();
    if (l.base_dir.empty()) {
        l.base_dir = ".";
    }
    require_known_keys(l.config, allowed, where);
    return l;
}

template <typename T>
T config_value(const Json &cfg, const char *key, T fallback) {
    if (!cfg.contains(key)) {
        return fallback;
    }
    try {
        return cfg.at(key).get<T>();
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError(std::string("config: bad value for '") + key + "': " + e.what());
    }
}

std::vector<int> parse_int_list(const std::string &text, const std::string &what) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            int v = std::stoi(item, &used);
            if (item.find_first_not_of(" \t", used) != std::string::npos) {
                throw std::invalid_argument(item);
            }
            out.push_back(v);
        } catch (const std::exception &) {
            throw ConfigError(what + ": '" + item + "' is not an integer");
        }
    }
    if (out.empty()) {
        throw ConfigError(what + ": empty list");
    }
    return out;
}

std::vector<std::vector<int>> parse_word_list(const std::string &text, const std::string &what) {
    std::vector<std::vector<int>> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        if (!item.empty()) {
            out.push_back(parse_int_list(item, what));
        }
    }
    return out;
}

GroupSpec group_from_moduli(const std::vector<int> &moduli) {
    try {
        return GroupSpec(moduli);
    } catch (const std::invalid_argument &e) {
        throw ConfigError(std::string("moduli: ") + e.what());
    }
}

GroupElement element_from(const GroupSpec &g, const std::vector<int> &coords, const std::string &what) {
    if (coords.size() != g.rank()) {
        throw ConfigError(what + ": expected " + std::to_string(g.rank()) + " coordinates");
    }
    for (std::size_t j = 0; j < coords.size(); j++) {
        if (coords[j] < 0 || coords[j] >= g.moduli()[j]) {
            throw ConfigError(what + ": coordinate " + std::to_string(coords[j]) + " outside [0, " +
                              std::to_string(g.moduli()[j]) + ")");
        }
    }
    return g.element(coords);
}

std::uint64_t resolve_seed(const Common &c, const Json &cfg, std::ostream &err) {
    if (c.seed) {
        return *c.seed;
    }
    if (cfg.contains("seed")) {
        return config_value<std::uint64_t>(cfg, "seed", 0);
    }
    std::random_device rd;
    std::uint64_t seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    err << "seed: " << seed << "\n";
    return seed;
}

Json report_header(const std::string &command, std::uint64_t seed, Json config) {
    config["seed"] = seed;
    return Json{{"tool", kToolName}, {"version", kToolVersion}, {"command", command}, {"seed", seed},
                {"config", std::move(config)}};
}

void write_file(const std::string &path, const std::string &text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw ConfigError("cannot write " + path);
    }
    f << text;
}

void emit(const Common &c, const Json &report, const std::string &human, std::ostream &out) {
    std::string machine = report.dump(2) + "\n";
    if (c.json) {
        out << machine;
    } else {
        out << human;
    }
    if (!c.out.empty()) {
        write_file(c.out, machine);
    }
}

Json words_json(const std::vector<GroupElement> &words) {
    Json j = Json::array();
    for (const auto &w : words) {
        j.push_back(w.coords());
    }
    return j;
}

std::string format_double(double v) {
    std::ostringstream s;
    s << std::setprecision(3) << std::scientific << v;
    return s.str();
}

// ---------------------------------------------------------------- group

struct GroupArgs {
    std::string moduli;
    std::string subgroup;
};

int cmd_group(const Common &c, const GroupArgs &a, std::ostream &out, std::ostream &err) {
    auto l = load_config(c, {"moduli", "subgroup", "seed"}, "group config");
    auto moduli = a.moduli.empty() ? config_value<std::vector<int>>(l.config, "moduli", {})
                                   : parse_int_list(a.moduli, "--moduli");
    if (moduli.empty()) {
        throw ConfigError("group: --moduli is required");
    }
    auto gens_coords = a.subgroup.empty()
                           ? config_value<std::vector<std::vector<int>>>(l.config, "subgroup", {})
                           : parse_word_list(a.subgroup, "--subgroup");
    GroupSpec g = group_from_moduli(moduli);
    std::vector<GroupElement> gens;
    for (const auto &w : gens_coords) {
        gens.push_back(element_from(g, w, "subgroup generator"));
    }
    std::uint64_t seed = resolve_seed(c, l.config, err);

    Subgroup h = subgroup_from_generators(g, gens);
    Subgroup perp = annihilator(h);
    CosetTable cosets = coset_table(g, h);

    Json config{{"moduli", moduli}, {"subgroup", gens_coords}};
    Json report = report_header("group", seed, config);
    report["group"] = g.to_string();
    report["order"] = g.order();
    report["exponent"] = g.exponent();
    report["subgroup"] = Json{{"generators", words_json(gens)}, {"order", h.order()}, {"elements", words_json(h.elements())}};
    report["annihilator"] = Json{{"order", perp.order()}, {"elements", words_json(perp.elements())}};
    report["cosets"] = Json{{"count", cosets.size()}, {"representatives", words_json(cosets.representatives())}};
    if (g.order() <= 64) {
        Json rows = Json::array();
        for (std::uint64_t x = 0; x < g.order(); x++) {
            Json row = Json::array();
            for (std::uint64_t y = 0; y < g.order(); y++) {
                row.push_back(g.pairing_phase(x, y));
            }
            rows.push_back(std::move(row));
        }
        report["character_table"] = Json{{"root_order", g.exponent()}, {"phases", std::move(rows)}};
    }

    std::ostringstream human;
    auto set_text = [](const std::vector<GroupElement> &ws) {
        std::string s = "{";
        for (std::size_t i = 0; i < ws.size(); i++) {
            s += (i ? ", " : "") + ws[i].to_string();
        }
        return s + "}";
    };
    human << "group " << g.to_string() << ", order " << g.order() << "\n";
    human << "H = " << set_text(h.elements()) << " (order " << h.order() << ")\n";
    human << "H-perp = " << set_text(perp.elements()) << " (order " << perp.order() << ")\n";
    human << "coset representatives = " << set_text(cosets.representatives()) << "\n";
    if (g.order() <= 64) {
        human << "character table chi_x(y) = exp(2 pi i k / " << g.exponent() << "), k:\n";
        for (const auto &row : report["character_table"]["phases"]) {
            for (std::size_t i = 0; i < row.size(); i++) {
                human << (i ? " " : "  ") << row[i].get<std::uint64_t>();
            }
            human << "\n";
        }
    }
    emit(c, report, human.str(), out);
    return kExitOk;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
    std::vector<std::string> identities;
    std::string groups;
    std::vector<std::string> codes;
    std::optional<double> tolerance;
    bool echo = false;
    std::string moduli;
    std::string subgroup;
    std::string a;
    std::string b;
};

std::vector<std::string> expand_identities(const std::vector<std::string> &names) {
    std::vector<std::string> out;
    for (const auto &n : names) {
        if (n == "codeword") {
            for (const char *k : {"codeword_z_average", "codeword_resolution", "codeword_pair_sum"}) {
                out.emplace_back(k);
            }
        } else if (n == "all") {
            return {};
        } else {
            if (std::find(identity_names().begin(), identity_names().end(), n) == identity_names().end()) {
                throw ConfigError("unknown identity '" + n + "'");
            }
            out.push_back(n);
        }
    }
    return out;
}

int verify_echo(const Common &c, const VerifyArgs &a, const Loaded &l, std::uint64_t seed, double tol,
                std::ostream &out) {
    if (a.moduli.empty()) {
        throw ConfigError("verify --echo needs --moduli");
    }
    GroupSpec g = group_from_moduli(parse_int_list(a.moduli, "--moduli"));
    std::vector<GroupElement> gens;
    auto gen_coords = parse_word_list(a.subgroup, "--subgroup");
    for (const auto &w : gen_coords) {
        gens.push_back(element_from(g, w, "subgroup generator"));
    }
    auto ea = a.a.empty() ? g.zero() : element_from(g, parse_int_list(a.a, "--a"), "--a");
    auto eb = a.b.empty() ? g.zero() : element_from(g, parse_int_list(a.b, "--b"), "--b");
    (void)l;
    Subgroup h = subgroup_from_generators(g, gens);
    auto psi = coset_state(eb, h, ea);
    auto f_psi = qft(psi);
    auto closed = coset_transform_closed_form(eb, h, ea);
    double error = max_abs_diff(f_psi, closed);

    Json config{{"moduli", g.moduli()}, {"subgroup", gen_coords}, {"a", ea.coords()}, {"b", eb.coords()},
                {"tolerance", tol}};
    Json report = report_header("verify", seed, config);
    report["echo"] = Json{{"psi", state_to_json(psi)},
                          {"f_psi", state_to_json(f_psi)},
                          {"closed_form", state_to_json(closed)},
                          {"max_error", error},
                          {"status", error <= tol ? "pass" : "fail"}};

    std::ostringstream human;
    human << "coset state over " << g.to_string() << ", a = " << ea.to_string() << ", b = " << eb.to_string()
          << ", |H| = " << h.order() << "\n";
    human << std::fixed << std::setprecision(6);
    human << "  index  psi                      F psi                    closed form\n";
    auto cell = [](Complex z) {
        std::ostringstream s;
        s << std::fixed << std::setprecision(6) << std::showpos << z.real() << z.imag() << "i";
        return s.str();
    };
    for (std::uint64_t i = 0; i < g.order(); i++) {
        human << "  " << std::setw(5) << std::left << g.element_at(i).to_string() << "  " << std::setw(23)
              << cell(psi[i]) << "  " << std::setw(23) << cell(f_psi[i]) << "  " << cell(closed[i]) << "\n";
    }
    human << "max error " << format_double(error) << (error <= tol ? " (pass)\n" : " (FAIL)\n");
    emit(c, report, human.str(), out);
    return error <= tol ? kExitOk : kExitVerificationFailed;
}

int cmd_verify(const Common &c, const VerifyArgs &a, std::ostream &out, std::ostream &err) {
    auto l = load_config(c, {"groups", "codes", "identities", "trials", "seed", "tolerance"}, "verify config");
    std::uint64_t seed = resolve_seed(c, l.config, err);
    double tol = a.tolerance ? *a.tolerance : config_value<double>(l.config, "tolerance", 1e-9);
    if (a.echo) {
        return verify_echo(c, a, l, seed, tol, out);
    }

    VerifyOptions opt;
    opt.seed = seed;
    opt.tolerance = tol;
    opt.transform_trials = c.trials ? *c.trials : config_value<std::size_t>(l.config, "trials", 200);
    auto identities = a.identities.empty() ? config_value<std::vector<std::string>>(l.config, "identities", {})
                                           : a.identities;
    opt.identities = expand_identities(identities);

    std::vector<std::vector<int>> group_moduli;
    if (!a.groups.empty()) {
        group_moduli = parse_word_list(a.groups, "--groups");
    } else {
        group_moduli = config_value<std::vector<std::vector<int>>>(l.config, "groups", {});
    }
    for (const auto &m : group_moduli) {
        opt.groups.push_back(group_from_moduli(m));
    }
    if (group_moduli.empty()) {
        for (const auto &g : default_verify_groups()) {
            group_moduli.push_back(g.moduli());
        }
    }

    Json code_defs = Json::array();
    std::vector<CodeDefinition> defs;
    if (!a.codes.empty()) {
        for (const auto &p : a.codes) {
            defs.push_back(resolve_code_reference(Json(p), fs::current_path()));
        }
    } else if (l.config.contains("codes")) {
        for (const auto &ref : l.config["codes"]) {
            defs.push_back(resolve_code_reference(ref, l.base_dir));
        }
    }
    for (const auto &d : defs) {
        opt.codes.push_back(build_code(d));
        code_defs.push_back(code_definition_to_json(d));
    }

    VerifyReport result = run_verification(opt);

    Json config{{"groups", group_moduli},     {"codes", code_defs},          {"identities", opt.identities},
                {"trials", opt.transform_trials}, {"tolerance", opt.tolerance}};
    Json report = report_header("verify", seed, config);
    Json body = verify_report_to_json(result);
    report["ok"] = body["ok"];
    report["results"] = body["results"];

    std::ostringstream human;
    for (const auto &r : result.results) {
        human << std::left << std::setw(20) << to_string(r.status) << std::setw(22) << r.identity << std::setw(12)
              << format_double(r.max_error) << " cases " << std::setw(6) << r.cases << " " << r.scope;
        if (!r.detail.empty()) {
            human << " [" << r.detail << "]";
        }
        human << "\n";
    }
    human << (result.ok() ? "all identities hold\n" : "VERIFICATION FAILED\n");
    emit(c, report, human.str(), out);
    return result.ok() ? kExitOk : kExitVerificationFailed;
}

// ---------------------------------------------------------------- css

struct CssArgs {
    std::string code;
    bool sweep = false;
};

CodeDefinition default_code() {
    CodeDefinition d;
    d.moduli = {2};
    d.n = 3;
    d.c1 = {{1, 1, 1}};
    return d;
}

CodeDefinition code_from(const std::string &flag, const Loaded &l) {
    if (!flag.empty()) {
        return resolve_code_reference(Json(flag), fs::current_path());
    }
    if (l.config.contains("code")) {
        return resolve_code_reference(l.config["code"], l.base_dir);
    }
    return default_code();
}

int cmd_css(const Common &c, const CssArgs &a, std::ostream &out, std::ostream &err) {
    auto l = load_config(c, {"code", "sweep", "seed"}, "css config");
    CodeDefinition def = code_from(a.code, l);
    bool sweep = a.sweep || config_value<bool>(l.config, "sweep", false);
    std::uint64_t seed = resolve_seed(c, l.config, err);
    CssCode code = build_code(def);

    KlResult kl = kl_check(code, weyl_errors_up_to(code, code.t1(), code.t2()));
    Json config{{"code", code_definition_to_json(def)}, {"sweep", sweep}};
    Json report = report_header("css", seed, config);
    report["analysis"] = code_analysis_to_json(code, &kl);

    auto opt_text = [](const std::optional<std::size_t> &d) { return d ? std::to_string(*d) : std::string("none"); };
    std::ostringstream human;
    human << "CSS code over " << code.site_group().to_string() << ", n = " << code.n() << "\n";
    human << "|C1| = " << code.c1().order() << ", |C2| = " << code.c2().order() << ", dimension "
          << code.dimension() << "\n";
    human << "d1 = " << opt_text(code.d1()) << ", d2_perp = " << opt_text(code.d2_perp()) << ", t1 = " << code.t1()
          << ", t2 = " << code.t2() << "\n";
    human << "Knill-Laflamme on errors within (t1, t2): " << (kl.pass ? "pass" : "FAIL") << " (max deviation "
          << format_double(kl.max_deviation) << ")\n";

    bool ok = kl.pass;
    if (sweep) {
        Rng rng(seed);
        auto bits = words_up_to_weight(code.ambient(), code.t1());
        auto phases = words_up_to_weight(code.ambient(), code.t2());
        Json cases = Json::array();
        double min_fid = 1.0;
        std::size_t failures = 0;
        for (std::size_t k = 0; k < code.dimension(); k++) {
            auto ideal = encode(code, code.key_cosets().representatives()[k]);
            for (const auto &e1 : bits) {
                for (const auto &e2 : phases) {
                    auto res = correct_pipeline(code, corrupt(e1, e2, ideal), rng);
                    double fid = fidelity(ideal, res.restored);
                    bool estimates = res.e1_hat == e1 && res.e2_hat == e2;
                    bool good = fid >= 1.0 - 1e-9 && estimates;
                    failures += good ? 0 : 1;
                    min_fid = std::min(min_fid, fid);
                    cases.push_back(Json{{"key", k},
                                         {"e1", e1.coords()},
                                         {"e2", e2.coords()},
                                         {"fidelity", fid},
                                         {"estimates_match", estimates}});
                }
            }
        }
        report["sweep"] = Json{{"cases", cases.size()}, {"failures", failures}, {"min_fidelity", min_fid},
                               {"results", std::move(cases)}};
        human << "pipeline sweep: " << report["sweep"]["cases"].get<std::size_t>() << " cases, " << failures
              << " failures, min fidelity " << std::setprecision(12) << min_fid << "\n";
        ok = ok && failures == 0;
    }
    emit(c, report, human.str(), out);
    return ok ? kExitOk : kExitVerificationFailed;
}

// ---------------------------------------------------------------- qkd

struct QkdArgs {
    std::string protocol;
    std::string eve;
    std::optional<double> p_x;
    std::optional<double> p_z;
    std::string frame;
    std::optional<double> delta;
    std::optional<std::size_t> t_check;
    std::string variant;
    std::string code;
    std::string transcripts;
    std::size_t threads = 1;
};

CssVariant parse_variant(const std::string &s) {
    for (auto v : {CssVariant::kFull, CssVariant::kBobMeasuresFirst, CssVariant::kNoPhase, CssVariant::kDirectV,
                   CssVariant::kBasisPrep}) {
        if (to_string(v) == s) {
            return v;
        }
    }
    throw ConfigError("unknown variant '" + s + "'");
}

int cmd_qkd(const Common &c, const QkdArgs &a, std::ostream &out, std::ostream &err) {
    auto l = load_config(c,
                         {"protocol", "code", "delta", "t_check", "noise", "eve", "seed", "trials", "variant"},
                         "qkd config");
    const Json &cfg = l.config;

    std::string protocol = !a.protocol.empty() ? a.protocol : config_value<std::string>(cfg, "protocol", "bb84g");
    ProtocolKind kind;
    if (protocol == "css") {
        kind = ProtocolKind::kCss;
    } else if (protocol == "bb84g" || protocol == "bb84") {
        kind = ProtocolKind::kBb84;
        protocol = "bb84g";
    } else {
        throw ConfigError("unknown protocol '" + protocol + "' (expected css or bb84g)");
    }

    Json noise_cfg = cfg.value("noise", Json::object());
    require_known_keys(noise_cfg, {"p_x", "p_z", "frame"}, "qkd config noise");
    Json eve_cfg = cfg.value("eve", Json::object());
    if (eve_cfg.is_string()) {
        eve_cfg = Json{{"intercept", eve_cfg.get<std::string>() == "intercept"}};
    }
    require_known_keys(eve_cfg, {"intercept", "targets"}, "qkd config eve");

    CodeDefinition def = code_from(a.code, l);
    auto code = std::make_shared<const CssCode>(build_code(def));

    ProtocolParams params;
    params.code = code;
    params.delta = a.delta ? *a.delta : config_value<double>(cfg, "delta", 1.0);
    if (a.t_check) {
        params.t_check = *a.t_check;
    } else if (cfg.contains("t_check") && !cfg["t_check"].is_null()) {
        params.t_check = config_value<std::size_t>(cfg, "t_check", 0);
    }
    params.noise.p_x = a.p_x ? *a.p_x : config_value<double>(noise_cfg, "p_x", 0.0);
    params.noise.p_z = a.p_z ? *a.p_z : config_value<double>(noise_cfg, "p_z", 0.0);
    std::string frame = !a.frame.empty() ? a.frame : config_value<std::string>(noise_cfg, "frame", "data");
    if (frame == "data") {
        params.noise.frame = NoiseFrame::kData;
    } else if (frame == "physical") {
        params.noise.frame = NoiseFrame::kPhysical;
    } else {
        throw ConfigError("unknown noise frame '" + frame + "' (expected data or physical)");
    }
    if (!a.eve.empty()) {
        if (a.eve != "none" && a.eve != "intercept") {
            throw ConfigError("unknown eve '" + a.eve + "' (expected none or intercept)");
        }
        params.eve.intercept = a.eve == "intercept";
    } else {
        params.eve.intercept = config_value<bool>(eve_cfg, "intercept", false);
    }
    params.eve.targets = config_value<std::vector<std::size_t>>(eve_cfg, "targets", {});
    params.variant = parse_variant(!a.variant.empty() ? a.variant : config_value<std::string>(cfg, "variant", "full"));
    params.seed = resolve_seed(c, cfg, err);
    std::size_t trials = c.trials ? *c.trials : config_value<std::size_t>(cfg, "trials", 200);
    if (trials == 0) {
        throw ConfigError("trials must be positive");
    }
    try {
        params.validate();
    } catch (const std::invalid_argument &e) {
        throw ConfigError(std::string("qkd: ") + e.what());
    }
    if (kind == ProtocolKind::kCss && !code->self_pairing_nondegenerate()) {
        throw ConfigError("qkd: the CSS protocol needs C2 to meet C2-perp only in zero");
    }

    auto transcripts = run_trials(params, kind, trials, std::max<std::size_t>(1, a.threads));
    ProtocolSummary summary = aggregate_stats(transcripts);

    Json config{{"protocol", protocol},
                {"code", code_definition_to_json(def)},
                {"delta", params.delta},
                {"t_check", params.check_threshold()},
                {"noise", Json{{"p_x", params.noise.p_x}, {"p_z", params.noise.p_z}, {"frame", frame}}},
                {"eve", Json{{"intercept", params.eve.intercept}, {"targets", params.eve.targets}}},
                {"trials", trials}};
    if (kind == ProtocolKind::kCss) {
        config["variant"] = to_string(params.variant);
    }
    Json report = report_header("qkd", params.seed, config);
    report["summary"] = summary_to_json(summary);

    if (!a.transcripts.empty()) {
        std::string lines;
        for (const auto &t : transcripts) {
            lines += transcript_to_json(t).dump() + "\n";
        }
        write_file(a.transcripts, lines);
    }

    auto pct = [](std::optional<double> v) { return v ? std::to_string(*v) : std::string("n/a"); };
    std::ostringstream human;
    human << protocol << " protocol, " << trials << " trials, seed " << params.seed << "\n";
    human << "aborted " << summary.aborted << " (disagreements " << summary.aborted_disagreements << ", sifting "
          << summary.aborted_sifting << "), abort rate " << summary.abort_rate << "\n";
    human << "key agreement rate " << pct(summary.agreement_rate) << " over " << summary.completed
          << " completed runs\n";
    human << "check disagreement fraction " << pct(summary.disagreement_fraction) << " over "
          << summary.checked_positions << " checked positions\n";
    emit(c, report, human.str(), out);
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Simulation toolkit for CSS codes and key distribution over finite abelian groups", "abelcss"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    Common common;
    GroupArgs group_args;
    VerifyArgs verify_args;
    CssArgs css_args;
    QkdArgs qkd_args;

    auto *group = app.add_subcommand("group", "Subgroup, annihilator, cosets and characters of a group");
    add_common(group, common);
    group->add_option("--moduli", group_args.moduli, "Cyclic factor orders, e.g. 2,2");
    group->add_option("--subgroup", group_args.subgroup, "Generators, ';'-separated, e.g. 1,0;0,1");

    auto *verify = app.add_subcommand("verify", "Oracle sweeps over character, transform and codeword identities");
    add_common(verify, common);
    verify->add_option("--identity", verify_args.identities, "Identity to check (repeatable; 'codeword' for all three)");
    verify->add_option("--groups", verify_args.groups, "Groups as moduli lists, e.g. 2;3;2,2");
    verify->add_option("--code", verify_args.codes, "Code definition file (repeatable)");
    verify->add_option("--tolerance", verify_args.tolerance, "Pass threshold on the max error");
    verify->add_flag("--echo", verify_args.echo, "Print one coset state and its transform");
    verify->add_option("--moduli", verify_args.moduli, "Group for --echo");
    verify->add_option("--subgroup", verify_args.subgroup, "Subgroup generators for --echo");
    verify->add_option("--a", verify_args.a, "Character label a for --echo");
    verify->add_option("--b", verify_args.b, "Coset offset b for --echo");

    auto *css = app.add_subcommand("css", "Code analysis and correction-pipeline sweep");
    add_common(css, common);
    css->add_option("--code", css_args.code, "Code definition file");
    css->add_flag("--sweep", css_args.sweep, "Run every correctable error through the pipeline");

    auto *qkd = app.add_subcommand("qkd", "Batch runs of the key distribution protocols");
    add_common(qkd, common);
    qkd->add_option("--protocol", qkd_args.protocol, "css or bb84g");
    qkd->add_option("--eve", qkd_args.eve, "none or intercept");
    qkd->add_option("--p-x", qkd_args.p_x, "Bit-flip probability per position");
    qkd->add_option("--p-z", qkd_args.p_z, "Phase-flip probability per position");
    qkd->add_option("--frame", qkd_args.frame, "Noise frame: data or physical");
    qkd->add_option("--delta", qkd_args.delta, "Oversampling: (4 + delta) n positions");
    qkd->add_option("--t-check", qkd_args.t_check, "Abort threshold on check disagreements");
    qkd->add_option("--variant", qkd_args.variant, "CSS protocol variant");
    qkd->add_option("--code", qkd_args.code, "Code definition file");
    qkd->add_option("--transcripts", qkd_args.transcripts, "Write transcripts here as JSON lines");
    qkd->add_option("--threads", qkd_args.threads, "Worker threads");

    std::vector<std::string> argv_store;
    argv_store.reserve(args.size() + 1);
    argv_store.emplace_back("abelcss");
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char *> argv;
    for (auto &s : argv_store) {
        argv.push_back(s.data());
    }

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (group->parsed()) return cmd_group(common, group_args, out, err);
        if (verify->parsed()) return cmd_verify(common, verify_args, out, err);
        if (css->parsed()) return cmd_css(common, css_args, out, err);
        if (qkd->parsed()) return cmd_qkd(common, qkd_args, out, err);
    } catch (const ConfigError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ResourceError &e) {
        err << "resource limit: " << e.what() << "\n";
        return kExitResource;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::out_of_range &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace abelcss::cli
