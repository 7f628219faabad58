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

#include "abelcss/verify.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "abelcss/hilbert.h"
#include "abelcss/rng.h"

namespace abelcss {

namespace {

IdentityResult start(std::string identity, std::string scope, double tol) {
    IdentityResult r;
    r.identity = std::move(identity);
    r.scope = std::move(scope);
    r.tolerance = tol;
    return r;
}

void record(IdentityResult &r, double err) {
    r.max_error = std::max(r.max_error, err);
    r.cases++;
}

IdentityResult finish(IdentityResult r) {
    if (r.status == CheckStatus::kPass && !(r.max_error <= r.tolerance)) {
        r.status = CheckStatus::kFail;
    }
    return r;
}

StateVector random_state(const GroupSpec &g, Rng &rng) {
    StateVector s(g);
    for (auto &a : s.amplitudes()) {
        a = Complex(2.0 * rng.uniform01() - 1.0, 2.0 * rng.uniform01() - 1.0);
    }
    return s;
}

GroupElement random_element(const GroupSpec &g, Rng &rng) { return g.element_at(rng.uniform_below(g.order())); }

bool wanted(const std::vector<std::string> &names, const std::string &name) {
    return names.empty() || std::find(names.begin(), names.end(), name) != names.end();
}

DensityOperator projector_sum(const GroupSpec &g, const std::vector<std::uint64_t> &support) {
    DensityOperator rho(g);
    for (auto y : support) {
        rho.matrix()(y, y) += 1.0;
    }
    return rho;
}

}  // namespace

std::string to_string(CheckStatus status) {
    switch (status) {
        case CheckStatus::kPass:
            return "pass";
        case CheckStatus::kFail:
            return "fail";
        case CheckStatus::kHypothesisViolated:
            return "hypothesis_violated";
    }
    return "unknown";
}

bool VerifyReport::ok() const {
    return std::none_of(results.begin(), results.end(),
                        [](const IdentityResult &r) { return r.status == CheckStatus::kFail; });
}

const std::vector<std::string> &identity_names() {
    static const std::vector<std::string> names = {
        "schur",       "pairing",          "character_sum",   "annihilator_duality", "coset_transform",
        "qft_unitary", "qft_hadamard",     "qft_dft",         "translation",         "weyl_commutation",
        "convolution", "codeword_z_average", "codeword_resolution", "codeword_pair_sum",
    };
    return names;
}

std::vector<GroupSpec> default_verify_groups() {
    return {GroupSpec({2}), GroupSpec({3}), GroupSpec({4}), GroupSpec({6}), GroupSpec({2, 2}), GroupSpec({2, 4})};
}

std::vector<CssCode> default_verify_codes() {
    std::vector<CssCode> codes;
    codes.push_back(make_css(GroupSpec::cyclic(2), 2, std::vector<std::vector<int>>{{1, 0}, {0, 1}},
                             std::vector<std::vector<int>>{{0, 1}}));
    codes.push_back(make_css(GroupSpec::cyclic(3), 2, std::vector<std::vector<int>>{{1, 0}, {0, 1}},
                             std::vector<std::vector<int>>{{1, 0}}));
    return codes;
}

std::vector<GroupSpec> coset_transform_groups() {
    return {GroupSpec({2}),    GroupSpec({3}),    GroupSpec({4}),       GroupSpec({2, 2}),  GroupSpec({6}),
            GroupSpec({8}),    GroupSpec({2, 4}), GroupSpec({2, 2, 2}), GroupSpec({9}),     GroupSpec({3, 3}),
            GroupSpec({12}),   GroupSpec({2, 6}), GroupSpec({36}),      GroupSpec({6, 6}),  GroupSpec({4, 9})};
}

IdentityResult check_schur(const GroupSpec &g, double tol) {
    auto r = start("schur", g.to_string(), tol);
    double inv = 1.0 / static_cast<double>(g.order());
    for (std::uint64_t y = 0; y < g.order(); y++) {
        for (std::uint64_t z = 0; z < g.order(); z++) {
            Complex acc = 0.0;
            for (std::uint64_t x = 0; x < g.order(); x++) {
                acc += character_at(g, y, x) * std::conj(character_at(g, z, x));
            }
            record(r, std::abs(acc * inv - (y == z ? 1.0 : 0.0)));
        }
    }
    return finish(r);
}

IdentityResult check_pairing(const GroupSpec &g, double tol) {
    auto r = start("pairing", g.to_string(), tol);
    for (std::uint64_t x = 0; x < g.order(); x++) {
        for (std::uint64_t y = 0; y < g.order(); y++) {
            double err = std::abs(character_at(g, x, y) - character_at(g, y, x));
            for (std::uint64_t x2 = 0; x2 < g.order(); x2++) {
                err = std::max(err, std::abs(character_at(g, g.add_index(x, x2), y) -
                                             character_at(g, x, y) * character_at(g, x2, y)));
            }
            record(r, err);
        }
    }
    return finish(r);
}

IdentityResult check_character_sum(const GroupSpec &g, double tol) {
    auto r = start("character_sum", g.to_string(), tol);
    for (const auto &h : enumerate_subgroups(g)) {
        for (std::uint64_t x = 0; x < g.order(); x++) {
            bool kills = std::all_of(h.member_indices().begin(), h.member_indices().end(),
                                     [&](std::uint64_t y) { return g.pairing_phase(x, y) == 0; });
            double expected = kills ? static_cast<double>(h.order()) : 0.0;
            record(r, std::abs(character_sum_over(h, g.element_at(x)) - expected));
        }
    }
    return finish(r);
}

IdentityResult check_annihilator_duality(const GroupSpec &g) {
    auto r = start("annihilator_duality", g.to_string(), 0.0);
    for (const auto &h : enumerate_subgroups(g)) {
        auto perp = annihilator(h);
        bool ok = annihilator(perp) == h && h.order() * perp.order() == g.order();
        record(r, ok ? 0.0 : 1.0);
    }
    return finish(r);
}

IdentityResult check_coset_transform(const std::vector<GroupSpec> &groups, std::size_t trials, std::uint64_t seed,
                                     double tol) {
    std::string scope;
    std::vector<std::pair<std::size_t, Subgroup>> pairs;
    for (std::size_t gi = 0; gi < groups.size(); gi++) {
        scope += (gi ? ", " : "") + groups[gi].to_string();
        for (auto &h : enumerate_subgroups(groups[gi])) {
            pairs.emplace_back(gi, std::move(h));
        }
    }
    auto r = start("coset_transform", scope, tol);
    if (pairs.empty()) {
        return finish(r);
    }
    Rng rng(seed);
    std::size_t count = std::max(trials, pairs.size());
    for (std::size_t i = 0; i < count; i++) {
        const auto &[gi, h] = pairs[i % pairs.size()];
        const GroupSpec &g = groups[gi];
        auto a = random_element(g, rng);
        auto b = random_element(g, rng);
        record(r, max_abs_diff(qft(coset_state(b, h, a)), coset_transform_closed_form(b, h, a)));
    }
    return finish(r);
}

IdentityResult check_qft_unitary(const GroupSpec &g, double tol) {
    auto r = start("qft_unitary", g.to_string(), tol);
    auto f = qft_matrix(g);
    record(r, (f.adjoint() * f - Matrix::identity(f.dim())).max_abs());
    Rng rng(g.order());
    for (int k = 0; k < 8; k++) {
        auto s = random_state(g, rng);
        record(r, std::abs(qft(s).norm() - s.norm()));
        record(r, max_abs_diff(qft_inverse(qft(s)), s));
    }
    return finish(r);
}

IdentityResult check_qft_hadamard(std::size_t max_n, double tol) {
    auto r = start("qft_hadamard", "Z2^1..Z2^" + std::to_string(max_n), tol);
    for (std::size_t n = 1; n <= max_n; n++) {
        auto g = direct_power(GroupSpec::cyclic(2), n);
        auto f = qft_matrix(g);
        double scale = std::pow(2.0, -0.5 * static_cast<double>(n));
        double err = 0.0;
        for (std::uint64_t y = 0; y < g.order(); y++) {
            for (std::uint64_t x = 0; x < g.order(); x++) {
                double h = (std::popcount(x & y) % 2 ? -1.0 : 1.0) * scale;
                err = std::max(err, std::abs(f(y, x) - h));
            }
        }
        record(r, err);
    }
    return finish(r);
}

IdentityResult check_qft_dft(int max_m, double tol) {
    auto r = start("qft_dft", "Z2..Z" + std::to_string(max_m), tol);
    for (int m = 2; m <= max_m; m++) {
        auto f = qft_matrix(GroupSpec::cyclic(m));
        double scale = 1.0 / std::sqrt(static_cast<double>(m));
        double err = 0.0;
        for (int y = 0; y < m; y++) {
            for (int x = 0; x < m; x++) {
                Complex w = std::polar(scale, 2.0 * std::numbers::pi * ((x * y) % m) / m);
                err = std::max(err, std::abs(f(y, x) - w));
            }
        }
        record(r, err);
    }
    return finish(r);
}

IdentityResult check_translation(const GroupSpec &g, double tol) {
    auto r = start("translation", g.to_string(), tol);
    for (std::uint64_t t = 0; t < g.order(); t++) {
        auto chi = fourier_basis_state(g.element_at(t));
        for (std::uint64_t x = 0; x < g.order(); x++) {
            record(r, max_abs_diff(weyl_x(g.element_at(x), chi), chi.scaled(character_at(g, t, x))));
        }
    }
    return finish(r);
}

IdentityResult check_weyl_commutation(const GroupSpec &g, double tol) {
    auto r = start("weyl_commutation", g.to_string(), tol);
    for (std::uint64_t a = 0; a < g.order(); a++) {
        auto xa = g.element_at(a);
        for (std::uint64_t b = 0; b < g.order(); b++) {
            auto zb = g.element_at(b);
            Complex phase = std::conj(character_at(g, b, a));
            double err = 0.0;
            for (std::uint64_t y = 0; y < g.order(); y++) {
                auto ket = basis_state(g.element_at(y));
                err = std::max(err, max_abs_diff(weyl_x(xa, weyl_z(zb, ket)), weyl_z(zb, weyl_x(xa, ket)).scaled(phase)));
            }
            record(r, err);
        }
    }
    return finish(r);
}

IdentityResult check_convolution(const GroupSpec &g, std::uint64_t seed, double tol) {
    auto r = start("convolution", g.to_string(), tol);
    Rng rng(seed ^ g.order());
    double root = std::sqrt(static_cast<double>(g.order()));
    for (int k = 0; k < 8; k++) {
        auto f = random_state(g, rng);
        auto h = random_state(g, rng);
        auto lhs = qft(convolve(f, h));
        auto rhs = pointwise_product(qft(f), qft(h)).scaled(root);
        record(r, max_abs_diff(lhs, rhs));
    }
    return finish(r);
}

std::vector<IdentityResult> check_codeword_identities(const CssCode &code, double tol) {
    const GroupSpec &g = code.ambient();
    std::string scope = "CSS(" + g.to_string() + ", |C1|=" + std::to_string(code.c1().order()) +
                        ", |C2|=" + std::to_string(code.c2().order()) + ")";
    auto z_avg = start("codeword_z_average", scope, tol);
    auto resolution = start("codeword_resolution", scope, tol);
    auto pairs = start("codeword_pair_sum", scope, tol);

    std::string missing;
    if (!code.self_pairing_nondegenerate()) {
        missing = "C2 meets C2-perp outside zero";
    }
    std::string missing_res = missing;
    if (missing_res.empty() && !self_pairing_nondegenerate(code.c1())) {
        missing_res = "C1 meets C1-perp outside zero";
    }
    std::string missing_pair = missing_res;
    if (missing_pair.empty()) {
        for (auto w : code.c2().member_indices()) {
            if (g.add_index(w, w) != 0) {
                missing_pair = "C2 has an element w with 2w != 0";
                break;
            }
        }
    }

    const auto &key = code.key_cosets();
    std::vector<StateVector> family;
    for (std::size_t c = 0; c < key.size(); c++) {
        const auto &v = key.representatives()[c];
        for (const auto &x : code.c1_perp().elements()) {
            std::vector<StateVector> over_z;
            for (const auto &z : code.c2().elements()) {
                over_z.push_back(codeword_state(code, v, z, x));
            }
            std::vector<std::uint64_t> support;
            auto shift = g.add_index(v.index(), x.index());
            for (auto w : code.c2().member_indices()) {
                support.push_back(g.add_index(shift, w));
            }
            record(z_avg, max_abs_diff(density_sum(over_z), projector_sum(g, support)));
            family.insert(family.end(), over_z.begin(), over_z.end());
        }
    }

    record(resolution, max_abs_diff(density_sum(family), projector_sum(g, [&] {
                                        std::vector<std::uint64_t> all(g.order());
                                        for (std::uint64_t y = 0; y < g.order(); y++) {
                                            all[y] = y;
                                        }
                                        return all;
                                    }())));

    auto lhs = pair_sum(family);
    StateVector diag(lhs.group());
    for (std::uint64_t y = 0; y < g.order(); y++) {
        diag[y + y * g.order()] = 1.0;
    }
    record(pairs, max_abs_diff(lhs, diag));

    std::vector<IdentityResult> out;
    for (auto [r, why] : {std::pair{&z_avg, &missing}, std::pair{&resolution, &missing_res},
                          std::pair{&pairs, &missing_pair}}) {
        if (!why->empty()) {
            r->status = CheckStatus::kHypothesisViolated;
            r->detail = *why;
        }
        out.push_back(finish(*r));
    }
    return out;
}

VerifyReport run_verification(const VerifyOptions &options) {
    for (const auto &name : options.identities) {
        if (std::find(identity_names().begin(), identity_names().end(), name) == identity_names().end()) {
            throw std::invalid_argument("unknown identity '" + name + "'");
        }
    }
    const auto groups = options.groups.empty() ? default_verify_groups() : options.groups;
    const double tol = options.tolerance;
    const auto &want = options.identities;
    VerifyReport report;
    auto &out = report.results;

    for (const auto &g : groups) {
        if (wanted(want, "schur")) out.push_back(check_schur(g, tol));
        if (wanted(want, "pairing")) out.push_back(check_pairing(g, tol));
        if (wanted(want, "character_sum")) out.push_back(check_character_sum(g, tol));
        if (wanted(want, "annihilator_duality")) out.push_back(check_annihilator_duality(g));
        if (wanted(want, "qft_unitary")) out.push_back(check_qft_unitary(g, tol));
        if (wanted(want, "translation")) out.push_back(check_translation(g, tol));
        if (wanted(want, "weyl_commutation")) out.push_back(check_weyl_commutation(g, tol));
        if (wanted(want, "convolution")) out.push_back(check_convolution(g, options.seed, tol));
    }
    if (wanted(want, "coset_transform")) {
        out.push_back(check_coset_transform(groups, options.transform_trials, options.seed, tol));
    }
    if (wanted(want, "qft_hadamard")) out.push_back(check_qft_hadamard(4, std::min(tol, 1e-12)));
    if (wanted(want, "qft_dft")) out.push_back(check_qft_dft(16, std::min(tol, 1e-12)));

    bool any_codeword = wanted(want, "codeword_z_average") || wanted(want, "codeword_resolution") ||
                        wanted(want, "codeword_pair_sum");
    if (any_codeword) {
        const auto codes = options.codes.empty() ? default_verify_codes() : options.codes;
        for (const auto &code : codes) {
            for (auto &r : check_codeword_identities(code, tol)) {
                if (wanted(want, r.identity)) {
                    out.push_back(std::move(r));
                }
            }
        }
    }
    return report;
}

}  // namespace abelcss
