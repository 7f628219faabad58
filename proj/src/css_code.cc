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

#include "abelcss/css_code.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace abelcss {

namespace {

constexpr double kEmptyLabel = 1e-12;

const Subgroup &checked_inner(const Subgroup &c1, const Subgroup &c2) {
    if (c1.ambient() != c2.ambient()) {
        throw std::invalid_argument("C1 and C2 live in different groups");
    }
    if (!c2.is_subgroup_of(c1)) {
        throw std::invalid_argument("C2 is not contained in C1");
    }
    return c2;
}

std::optional<std::size_t> optional_distance(const Subgroup &s) {
    if (s.order() == 1) {
        return std::nullopt;
    }
    return min_distance(s);
}

std::size_t correctable(const std::optional<std::size_t> &d, std::size_t n) { return d ? (*d - 1) / 2 : n; }

struct LabelRead {
    std::size_t label;
    StateVector state;
    bool projective;
};

// Reads the coset label of `state` modulo the map's code subgroup.
LabelRead read_label(const StateVector &state, const SyndromeMap &map, Rng &rng) {
    std::vector<double> probs(map.size(), 0.0);
    for (std::uint64_t i = 0; i < state.dimension(); i++) {
        probs[map.syndrome_of_index(i)] += std::norm(state[i]);
    }
    std::vector<std::size_t> live;
    for (std::size_t s = 0; s < probs.size(); s++) {
        if (probs[s] > kEmptyLabel) {
            live.push_back(s);
        }
    }
    if (live.empty()) {
        throw InvariantViolation("syndrome extraction on a zero state");
    }
    if (live.size() == 1) {
        return {live.front(), state, false};
    }
    double total = 0.0;
    for (auto s : live) {
        total += probs[s];
    }
    double u = rng.uniform01() * total;
    std::size_t chosen = live.back();
    double cum = 0.0;
    for (auto s : live) {
        cum += probs[s];
        if (u < cum) {
            chosen = s;
            break;
        }
    }
    StateVector projected(state.group(), state.dimension());
    double scale = 1.0 / std::sqrt(probs[chosen]);
    for (std::uint64_t i = 0; i < state.dimension(); i++) {
        if (map.syndrome_of_index(i) == chosen) {
            projected[i] = state[i] * scale;
        }
    }
    return {chosen, std::move(projected), true};
}

double sup_norm(const StateVector &s) {
    double m = 0.0;
    for (const auto &a : s.amplitudes()) {
        m = std::max(m, std::abs(a));
    }
    return m;
}

}  // namespace

std::size_t min_distance(const Subgroup &s) {
    if (s.order() == 1) {
        throw std::domain_error("minimum distance of the trivial subgroup is undefined");
    }
    const GroupSpec &g = s.ambient();
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (auto i : s.member_indices()) {
        if (i != 0) {
            best = std::min(best, g.weight_of_index(i));
        }
    }
    return best;
}

SyndromeMap::SyndromeMap(const Subgroup &code_subgroup) : table_(coset_table(code_subgroup.ambient(), code_subgroup)) {}

CssCode::CssCode(Subgroup c1, Subgroup c2)
    : c1_(std::move(c1)),
      c2_(checked_inner(c1_, c2)),
      c1_perp_(annihilator(c1_)),
      c2_perp_(annihilator(c2_)),
      d1_(optional_distance(c1_)),
      d2_perp_(optional_distance(c2_perp_)),
      t1_(correctable(d1_, c1_.ambient().sites())),
      t2_(correctable(d2_perp_, c1_.ambient().sites())),
      key_cosets_(c1_, c2_),
      bit_(c1_),
      phase_(c2_perp_),
      c2_cosets_(c2_) {}

bool CssCode::self_pairing_nondegenerate() const { return abelcss::self_pairing_nondegenerate(c2_); }

bool self_pairing_nondegenerate(const Subgroup &h) {
    const GroupSpec &g = h.ambient();
    for (auto z : h.member_indices()) {
        if (z == 0) {
            continue;
        }
        bool in_perp = true;
        for (const auto &gen : h.generators()) {
            if (g.pairing_phase(z, gen.index()) != 0) {
                in_perp = false;
                break;
            }
        }
        if (in_perp) {
            return false;
        }
    }
    return true;
}

CssCode make_css(const GroupSpec &g, std::size_t n, const std::vector<GroupElement> &c1_gens,
                 const std::vector<GroupElement> &c2_gens, std::uint64_t cap) {
    GroupSpec ambient = direct_power(g, n);
    return CssCode(subgroup_from_generators(ambient, c1_gens, cap), subgroup_from_generators(ambient, c2_gens, cap));
}

CssCode make_css(const GroupSpec &g, std::size_t n, const std::vector<std::vector<int>> &c1_gens,
                 const std::vector<std::vector<int>> &c2_gens, std::uint64_t cap) {
    GroupSpec ambient = direct_power(g, n);
    auto lift = [&](const std::vector<std::vector<int>> &gens) {
        std::vector<GroupElement> out;
        for (const auto &c : gens) {
            out.push_back(ambient.element(c));
        }
        return out;
    };
    return make_css(g, n, lift(c1_gens), lift(c2_gens), cap);
}

StateVector encode(const CssCode &code, const GroupElement &v) {
    if (!code.c1().contains(v)) {
        throw std::invalid_argument("encode: " + v.to_string() + " is not a codeword of C1");
    }
    return coset_state(v, code.c2(), code.ambient().zero());
}

StateVector codeword_state(const CssCode &code, const GroupElement &v, const GroupElement &z, const GroupElement &x) {
    if (!code.c1().contains(v)) {
        throw std::invalid_argument("codeword_state: v = " + v.to_string() + " is not in C1");
    }
    if (!code.c2().contains(z)) {
        throw std::invalid_argument("codeword_state: z = " + z.to_string() + " is not in C2");
    }
    if (!code.c1_perp().contains(x)) {
        throw std::invalid_argument("codeword_state: x = " + x.to_string() + " is not in C1-perp");
    }
    const GroupSpec &g = code.ambient();
    StateVector s(g);
    double scale = 1.0 / std::sqrt(static_cast<double>(code.c2().order()));
    auto shift = g.add_index(v.index(), x.index());
    auto zi = z.index();
    for (auto w : code.c2().member_indices()) {
        s[g.add_index(shift, w)] += character_at(g, zi, w) * scale;
    }
    return s;
}

PipelineResult correct_pipeline(const CssCode &code, const StateVector &corrupted, Rng &rng) {
    if (corrupted.group() != code.ambient()) {
        throw std::invalid_argument("correct_pipeline: state is not over the code's ambient group");
    }
    auto bit = read_label(corrupted, code.bit_syndromes(), rng);
    GroupElement e1_hat = code.bit_syndromes().leader(bit.label);
    StateVector psi2 = bit.state;
    StateVector psi3 = weyl_x(-e1_hat, psi2);
    StateVector psi4 = qft(psi3);

    // psi4 sits on C2-perp - e2; the phase syndrome's leader estimates -e2.
    auto phase = read_label(psi4, code.phase_syndromes(), rng);
    GroupElement e2_hat = -code.phase_syndromes().leader(phase.label);
    StateVector psi5 = weyl_x(e2_hat, phase.state);
    StateVector psi6 = qft(psi5);

    // psi6 sits on C2 - x. Any r in that coset gives the same shift |z> -> |z - 2r>.
    auto tail = read_label(psi6, code.c2_cosets(), rng);
    GroupElement x_hat = -code.c2_cosets().leader(tail.label);
    StateVector restored = weyl_x(x_hat * 2, tail.state);

    PipelineResult out{std::move(restored),
                       e1_hat,
                       e2_hat,
                       PipelineStages{std::move(psi2), std::move(psi3), std::move(psi4), std::move(psi5),
                                      std::move(psi6)},
                       bit.label,
                       phase.label,
                       weight(e1_hat) <= code.t1() && weight(e2_hat) <= code.t2(),
                       bit.projective || phase.projective || tail.projective};
    return out;
}

PipelineResult correct_pipeline(const CssCode &code, const StateVector &corrupted) {
    Rng rng(0);
    return correct_pipeline(code, corrupted, rng);
}

KlResult kl_check(const CssCode &code, const std::vector<WeylError> &errors, double tol) {
    const auto &keys = code.key_cosets();
    std::vector<StateVector> basis;
    for (const auto &v : keys.representatives()) {
        basis.push_back(encode(code, v));
    }
    std::size_t k = basis.size();
    // images[e][j] = A_e |c_j>
    std::vector<std::vector<StateVector>> images;
    images.reserve(errors.size());
    for (const auto &e : errors) {
        std::vector<StateVector> row;
        for (const auto &c : basis) {
            row.push_back(corrupt(e.bit, e.phase, c));
        }
        images.push_back(std::move(row));
    }
    std::vector<double> sup(k);
    for (std::size_t i = 0; i < k; i++) {
        sup[i] = sup_norm(basis[i]);
    }

    KlResult result;
    result.alpha.assign(errors.size(), std::vector<Complex>(errors.size()));
    for (std::size_t a = 0; a < errors.size(); a++) {
        for (std::size_t b = 0; b < errors.size(); b++) {
            // P A_a^dagger A_b P = sum_ij M_ij |c_i><c_j| with M_ij = <A_a c_i | A_b c_j>.
            std::vector<Complex> m(k * k);
            Complex tr{0.0, 0.0};
            for (std::size_t i = 0; i < k; i++) {
                for (std::size_t j = 0; j < k; j++) {
                    m[i * k + j] = inner_product(images[a][i], images[b][j]);
                }
                tr += m[i * k + i];
            }
            Complex alpha = tr / static_cast<double>(k);
            result.alpha[a][b] = alpha;
            // The c_i have disjoint supports, so the largest entry of sum_ij D_ij |c_i><c_j|
            // is max |D_ij| |c_i|_inf |c_j|_inf.
            double dev = 0.0;
            for (std::size_t i = 0; i < k; i++) {
                for (std::size_t j = 0; j < k; j++) {
                    Complex d = m[i * k + j] - (i == j ? alpha : Complex{});
                    dev = std::max(dev, std::abs(d) * sup[i] * sup[j]);
                }
            }
            result.max_deviation = std::max(result.max_deviation, dev);
            if (dev > tol && !result.violation) {
                result.violation = {a, b};
                result.pass = false;
            }
        }
    }
    return result;
}

std::vector<GroupElement> words_up_to_weight(const GroupSpec &ambient, std::size_t w) {
    if (ambient.order() > kDefaultEnumerationCap) {
        throw ResourceError("enumerating words of " + ambient.to_string() + " exceeds the enumeration cap");
    }
    std::vector<std::uint64_t> idx;
    for (std::uint64_t i = 0; i < ambient.order(); i++) {
        if (ambient.weight_of_index(i) <= w) {
            idx.push_back(i);
        }
    }
    std::sort(idx.begin(), idx.end(), [&](std::uint64_t a, std::uint64_t b) {
        auto wa = ambient.weight_of_index(a);
        auto wb = ambient.weight_of_index(b);
        if (wa != wb) {
            return wa < wb;
        }
        return ambient.lex_key(a) < ambient.lex_key(b);
    });
    std::vector<GroupElement> out;
    out.reserve(idx.size());
    for (auto i : idx) {
        out.push_back(ambient.element_at(i));
    }
    return out;
}

std::vector<WeylError> weyl_errors_up_to(const CssCode &code, std::size_t max_bit, std::size_t max_phase) {
    auto bits = words_up_to_weight(code.ambient(), max_bit);
    auto phases = words_up_to_weight(code.ambient(), max_phase);
    std::vector<WeylError> out;
    out.reserve(bits.size() * phases.size());
    for (const auto &b : bits) {
        for (const auto &p : phases) {
            out.push_back({b, p});
        }
    }
    return out;
}

}  // namespace abelcss
