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

#include "abelcss/qkd.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

namespace abelcss {

namespace {

// Each party draws from its own stream so that switching Eve or the channel on
// or off leaves Alice's and Bob's choices untouched.
struct Streams {
    explicit Streams(Rng &rng)
        : alice(rng.next()), bob(rng.next()), channel(rng.next()), eve(rng.next()), quantum(rng.next()) {}
    Rng alice;
    Rng bob;
    Rng channel;
    Rng eve;
    Rng quantum;
};

std::vector<std::int64_t> widen(const std::vector<int> &v) { return {v.begin(), v.end()}; }

template <typename T>
std::vector<std::int64_t> widen_indices(const std::vector<T> &v) {
    std::vector<std::int64_t> out;
    out.reserve(v.size());
    for (auto x : v) {
        out.push_back(static_cast<std::int64_t>(x));
    }
    return out;
}

GroupElement random_member(const Subgroup &s, Rng &rng) {
    return s.ambient().element_at(s.member_indices()[rng.uniform_below(s.order())]);
}

GroupElement random_word(const GroupSpec &g, Rng &rng) { return g.element_at(rng.uniform_below(g.order())); }

template <typename T>
void shuffle(std::vector<T> &v, Rng &rng) {
    for (std::size_t i = v.size(); i > 1; i--) {
        std::swap(v[i - 1], v[rng.uniform_below(i)]);
    }
}

// Word of `ambient` that is `symbol` (an index of the site group) at `site` and zero elsewhere.
GroupElement site_word(const GroupSpec &ambient, std::size_t site, std::uint64_t symbol) {
    std::vector<int> coords(ambient.rank(), 0);
    std::size_t r = ambient.site_rank();
    GroupElement local = ambient.site_group().element_at(symbol);
    for (std::size_t k = 0; k < r; k++) {
        coords[site * r + k] = local.coords()[k];
    }
    return ambient.element(std::move(coords));
}

void apply_channel(StateVector &state, std::size_t site, bool fourier_frame, const ChannelModel &noise, Rng &rng) {
    std::uint64_t q = state.group().site_group().order();
    bool bit = rng.bernoulli(noise.p_x);
    std::uint64_t bit_amount = 1 + rng.uniform_below(q - 1);
    bool phase = rng.bernoulli(noise.p_z);
    std::uint64_t phase_amount = 1 + rng.uniform_below(q - 1);
    if (!bit && !phase) {
        return;
    }
    bool conjugate = fourier_frame && noise.frame == NoiseFrame::kData;
    std::size_t sites[] = {site};
    if (conjugate) {
        state = qft_sites(state, sites, true);
    }
    if (bit) {
        state = weyl_x(site_word(state.group(), site, bit_amount), state);
    }
    if (phase) {
        state = weyl_z(site_word(state.group(), site, phase_amount), state);
    }
    if (conjugate) {
        state = qft_sites(state, sites, false);
    }
}

// Measures one site in the given basis and returns the symbol index.
std::uint64_t measure_site(StateVector &state, std::size_t site, int basis, Rng &rng) {
    std::size_t sites[] = {site};
    Measurement m = basis ? measure_fourier(state, sites, rng) : measure_standard(state, sites, rng);
    state = std::move(m.collapsed);
    return m.outcome.index();
}

StateVector prepare_symbol(const GroupSpec &g, std::uint64_t symbol, int basis) {
    GroupElement s = g.element_at(symbol);
    return basis ? fourier_basis_state(s) : basis_state(s);
}

// Eve then channel, position by position.
void transmit(StateVector &state, const std::vector<int> &frames, const ProtocolParams &params, Streams &streams,
              ProtocolTranscript &t) {
    std::size_t positions = state.group().sites();
    t.eve_bases.assign(positions, -1);
    t.eve_outcomes.assign(positions, 0);
    for (std::size_t p = 0; p < positions; p++) {
        if (params.eve.intercept && params.eve.attacks(p)) {
            EveRecord rec = eve_intercept_resend(state, p, streams.eve);
            state = std::move(rec.forwarded);
            t.eve_bases[p] = rec.basis;
            t.eve_outcomes[p] = rec.outcome.index();
        }
        apply_channel(state, p, frames[p] != 0, params.noise, streams.channel);
    }
}

void finish_keys(const CssCode &code, const GroupElement &bob_word, ProtocolTranscript &t) {
    t.bob_word = bob_word.coords();
    t.alice_key = t.key_coset;
    t.bob_key = code.key_cosets().index_of(bob_word);
}

}  // namespace

bool EveModel::attacks(std::size_t position) const {
    return targets.empty() || std::find(targets.begin(), targets.end(), position) != targets.end();
}

void ProtocolParams::validate() const {
    if (!code) {
        throw std::invalid_argument("protocol parameters carry no code");
    }
    if (delta < 0.0) {
        throw std::invalid_argument("delta must be >= 0");
    }
    if (check_threshold() > n()) {
        throw std::invalid_argument("t_check must not exceed n");
    }
    auto prob_ok = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (!prob_ok(noise.p_x) || !prob_ok(noise.p_z)) {
        throw std::invalid_argument("channel probabilities must lie in [0, 1]");
    }
    if (fixed_key && *fixed_key >= code->dimension()) {
        throw std::invalid_argument("fixed key is not a coset index of C1/C2");
    }
    if (fixed_offset && !code->c1_perp().contains(*fixed_offset)) {
        throw std::invalid_argument("fixed offset is not in C1-perp");
    }
}

std::string to_string(ProtocolKind kind) { return kind == ProtocolKind::kCss ? "css" : "bb84g"; }

std::string to_string(CssVariant variant) {
    switch (variant) {
        case CssVariant::kFull:
            return "full";
        case CssVariant::kBobMeasuresFirst:
            return "bob_measures_first";
        case CssVariant::kNoPhase:
            return "no_phase";
        case CssVariant::kDirectV:
            return "direct_v";
        case CssVariant::kBasisPrep:
            return "basis_prep";
    }
    return "unknown";
}

std::string to_string(AbortReason reason) {
    switch (reason) {
        case AbortReason::kNone:
            return "none";
        case AbortReason::kTooManyDisagreements:
            return "too_many_disagreements";
        case AbortReason::kInsufficientSifted:
            return "insufficient_sifted";
    }
    return "unknown";
}

std::string to_string(NoiseFrame frame) { return frame == NoiseFrame::kData ? "data" : "physical"; }

EveRecord eve_intercept_resend(const StateVector &state, std::size_t site, Rng &rng) {
    int basis = static_cast<int>(rng.uniform_below(2));
    std::size_t sites[] = {site};
    Measurement m = basis ? measure_fourier(state, sites, rng) : measure_standard(state, sites, rng);
    return {std::move(m.collapsed), basis, std::move(m.outcome)};
}

ProtocolTranscript run_css_protocol(const ProtocolParams &params, Rng &rng, std::uint64_t trial) {
    params.validate();
    const CssCode &code = *params.code;
    if (!code.self_pairing_nondegenerate()) {
        throw std::invalid_argument("the CSS protocol needs C2 to meet C2-perp only in zero");
    }
    Streams streams(rng);
    Rng &alice = streams.alice;
    const GroupSpec g = code.site_group();
    const GroupSpec &word = code.ambient();
    const std::size_t n = code.n();
    const CssVariant variant = params.variant;

    ProtocolTranscript t;
    t.protocol = "css";
    t.variant = to_string(variant);
    t.seed = params.seed;
    t.trial = trial;
    t.n = n;
    t.t_check = params.check_threshold();
    t.positions = 2 * n;

    // Step 1: key, offsets and check symbols.
    t.key_coset = params.fixed_key ? *params.fixed_key : alice.uniform_below(code.dimension());
    GroupElement v = code.key_cosets().representatives()[t.key_coset];
    GroupElement x = params.fixed_offset ? *params.fixed_offset : random_member(code.c1_perp(), alice);
    GroupElement z = random_member(code.c2(), alice);
    GroupElement w = random_member(code.c2(), alice);
    std::vector<std::uint64_t> checks(n);
    for (auto &c : checks) {
        c = alice.uniform_below(g.order());
    }
    bool direct = variant == CssVariant::kDirectV || variant == CssVariant::kBasisPrep;
    if (direct) {
        v = v + w;
        x = random_word(word, alice);
    }
    t.v = v.coords();
    t.x = x.coords();
    t.z = z.coords();
    t.alice_symbols = checks;

    // Step 2: positions.
    std::vector<std::size_t> perm(2 * n);
    std::iota(perm.begin(), perm.end(), 0);
    shuffle(perm, alice);
    t.check_positions.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n));
    t.data_positions.assign(perm.begin() + static_cast<std::ptrdiff_t>(n), perm.end());
    std::sort(t.check_positions.begin(), t.check_positions.end());
    std::sort(t.data_positions.begin(), t.data_positions.end());

    // Step 3: basis string.
    t.alice_bases.resize(2 * n);
    for (auto &b : t.alice_bases) {
        b = static_cast<int>(alice.uniform_below(2));
    }
    std::vector<std::size_t> masked;
    for (std::size_t p = 0; p < 2 * n; p++) {
        if (t.alice_bases[p]) {
            masked.push_back(p);
        }
    }

    // Alice's symbol per position (for basis preparation).
    std::vector<std::uint64_t> position_symbol(2 * n);
    for (std::size_t j = 0; j < n; j++) {
        position_symbol[t.check_positions[j]] = checks[j];
        position_symbol[t.data_positions[j]] = x.site(j).index();
    }

    StateVector state(direct_power(g, 0));
    if (variant == CssVariant::kBasisPrep) {
        state = prepare_symbol(g, position_symbol[0], t.alice_bases[0]);
        for (std::size_t p = 1; p < 2 * n; p++) {
            state = tensor(state, prepare_symbol(g, position_symbol[p], t.alice_bases[p]));
        }
    } else {
        StateVector data(word);
        switch (variant) {
            case CssVariant::kFull:
            case CssVariant::kBobMeasuresFirst:
                data = codeword_state(code, v, z, x);
                break;
            case CssVariant::kNoPhase:
                data = basis_state(v + w + x);
                break;
            default:
                data = basis_state(x);
                break;
        }
        std::vector<int> check_coords;
        for (auto c : checks) {
            auto cc = g.element_at(c).coords();
            check_coords.insert(check_coords.end(), cc.begin(), cc.end());
        }
        StateVector block = tensor(data, basis_state(word.element(check_coords)));
        std::vector<std::size_t> order(2 * n);
        for (std::size_t j = 0; j < n; j++) {
            order[t.data_positions[j]] = j;
            order[t.check_positions[j]] = n + j;
        }
        state = qft_sites(permute_sites(block, order), masked, false);
    }

    // Steps 4-5: send; Bob acknowledges.
    transmit(state, t.alice_bases, params, streams, t);
    t.announcements.push_back({"bob", "received", {}});

    // Step 6: Alice's announcements. z is withheld once Bob no longer decodes quantumly.
    t.announcements.push_back({"alice", "b", widen(t.alice_bases)});
    if (variant == CssVariant::kFull) {
        t.announcements.push_back({"alice", "z", widen(t.z)});
    }
    if (!direct) {
        t.announcements.push_back({"alice", "x", widen(t.x)});
    }
    t.announcements.push_back({"alice", "check_positions", widen_indices(t.check_positions)});

    // Steps 7-8: unmask, read checks.
    Rng &quantum = streams.quantum;
    t.bob_symbols.resize(n);
    if (variant == CssVariant::kBasisPrep) {
        for (std::size_t j = 0; j < n; j++) {
            std::size_t p = t.check_positions[j];
            t.bob_symbols[j] = measure_site(state, p, t.alice_bases[p], quantum);
        }
    } else {
        state = qft_sites(state, masked, true);
        Measurement m = measure_standard(state, t.check_positions, quantum);
        state = std::move(m.collapsed);
        for (std::size_t j = 0; j < n; j++) {
            t.bob_symbols[j] = m.outcome.site(j).index();
        }
    }
    t.announcements.push_back({"bob", "check_outcomes", widen_indices(t.bob_symbols)});
    t.checked = n;
    for (std::size_t j = 0; j < n; j++) {
        t.disagreements += t.bob_symbols[j] != checks[j];
    }
    if (t.disagreements > t.t_check) {
        t.aborted = true;
        t.reason = AbortReason::kTooManyDisagreements;
        return t;
    }

    // Steps 9-10.
    std::vector<int> pinned_coords;
    for (auto c : t.bob_symbols) {
        auto cc = g.element_at(c).coords();
        pinned_coords.insert(pinned_coords.end(), cc.begin(), cc.end());
    }
    GroupSpec check_group = direct_power(g, n);
    StateVector data_state(word);
    if (variant == CssVariant::kBasisPrep) {
        std::vector<int> raw;
        for (std::size_t j = 0; j < n; j++) {
            std::size_t p = t.data_positions[j];
            auto sym = measure_site(state, p, t.alice_bases[p], quantum);
            auto cc = g.element_at(sym).coords();
            raw.insert(raw.end(), cc.begin(), cc.end());
        }
        t.bob_raw = raw;
    } else {
        StateVector rest = restrict_sites(state, t.check_positions, check_group.element(pinned_coords));
        data_state = StateVector(word, rest.amplitudes());
    }

    const SyndromeMap &bits = code.bit_syndromes();
    if (variant == CssVariant::kFull) {
        StateVector aligned = weyl_z(-z, weyl_x(-x, data_state));
        PipelineResult fixed = correct_pipeline(code, aligned, quantum);
        t.e1_hat = fixed.e1_hat.coords();
        t.e2_hat = fixed.e2_hat.coords();
        std::vector<std::size_t> all(n);
        std::iota(all.begin(), all.end(), 0);
        Measurement m = measure_standard(fixed.restored, all, quantum);
        GroupElement reading = word.element(m.outcome.coords());
        t.bob_raw = reading.coords();
        finish_keys(code, bits.decode(reading), t);
        return t;
    }

    if (variant != CssVariant::kBasisPrep) {
        std::vector<std::size_t> all(n);
        std::iota(all.begin(), all.end(), 0);
        t.bob_raw = measure_standard(data_state, all, quantum).outcome.coords();
    }
    GroupElement reading = word.element(t.bob_raw);
    if (direct) {
        GroupElement diff = x - v;
        t.announced = diff.coords();
        t.announcements.push_back({"alice", "x_minus_v", widen(t.announced)});
        finish_keys(code, bits.decode(reading - diff), t);
    } else {
        finish_keys(code, bits.decode(reading - x), t);
    }
    return t;
}

ProtocolTranscript run_bb84_protocol(const ProtocolParams &params, Rng &rng, std::uint64_t trial) {
    params.validate();
    const CssCode &code = *params.code;
    Streams streams(rng);
    Rng &alice = streams.alice;
    const GroupSpec g = code.site_group();
    const GroupSpec &word = code.ambient();
    const std::size_t n = code.n();

    ProtocolTranscript t;
    t.protocol = "bb84g";
    t.variant = "-";
    t.seed = params.seed;
    t.trial = trial;
    t.n = n;
    t.t_check = params.check_threshold();
    const auto total = static_cast<std::size_t>(std::ceil((4.0 + params.delta) * static_cast<double>(n) - 1e-9));
    t.positions = total;

    // Steps 1-2.
    t.alice_symbols.resize(total);
    t.alice_bases.resize(total);
    for (std::size_t i = 0; i < total; i++) {
        t.alice_symbols[i] = alice.uniform_below(g.order());
        t.alice_bases[i] = static_cast<int>(alice.uniform_below(2));
    }
    // Step 4.
    GroupElement v = random_member(code.c1(), alice);
    t.v = v.coords();
    t.key_coset = code.key_cosets().index_of(v);

    // Steps 3 and 5: each position travels and is measured on its own.
    t.bob_bases.resize(total);
    for (auto &b : t.bob_bases) {
        b = static_cast<int>(streams.bob.uniform_below(2));
    }
    t.eve_bases.assign(total, -1);
    t.eve_outcomes.assign(total, 0);
    t.bob_symbols.resize(total);
    for (std::size_t i = 0; i < total; i++) {
        StateVector q = prepare_symbol(g, t.alice_symbols[i], t.alice_bases[i]);
        if (params.eve.intercept && params.eve.attacks(i)) {
            EveRecord rec = eve_intercept_resend(q, 0, streams.eve);
            q = std::move(rec.forwarded);
            t.eve_bases[i] = rec.basis;
            t.eve_outcomes[i] = rec.outcome.index();
        }
        apply_channel(q, 0, t.alice_bases[i] != 0, params.noise, streams.channel);
        t.bob_symbols[i] = measure_site(q, 0, t.bob_bases[i], streams.quantum);
    }
    t.announcements.push_back({"bob", "received", {}});
    t.announcements.push_back({"bob", "bases", widen(t.bob_bases)});

    // Steps 6-7: sifting and selection.
    t.announcements.push_back({"alice", "b", widen(t.alice_bases)});
    for (std::size_t i = 0; i < total; i++) {
        if (t.alice_bases[i] == t.bob_bases[i]) {
            t.sifted.push_back(i);
        }
    }
    if (t.sifted.size() < 2 * n) {
        t.aborted = true;
        t.reason = AbortReason::kInsufficientSifted;
        return t;
    }
    std::vector<std::size_t> pool = t.sifted;
    shuffle(pool, alice);
    t.check_positions.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n));
    t.data_positions.assign(pool.begin() + static_cast<std::ptrdiff_t>(n),
                            pool.begin() + static_cast<std::ptrdiff_t>(2 * n));
    std::sort(t.check_positions.begin(), t.check_positions.end());
    std::sort(t.data_positions.begin(), t.data_positions.end());
    t.announcements.push_back({"alice", "check_positions", widen_indices(t.check_positions)});
    t.announcements.push_back({"alice", "data_positions", widen_indices(t.data_positions)});

    // Step 8.
    std::vector<std::int64_t> alice_checks;
    std::vector<std::int64_t> bob_checks;
    for (auto p : t.check_positions) {
        alice_checks.push_back(static_cast<std::int64_t>(t.alice_symbols[p]));
        bob_checks.push_back(static_cast<std::int64_t>(t.bob_symbols[p]));
        t.disagreements += t.alice_symbols[p] != t.bob_symbols[p];
    }
    t.checked = n;
    t.announcements.push_back({"alice", "check_values", alice_checks});
    t.announcements.push_back({"bob", "check_values", bob_checks});
    if (t.disagreements > t.t_check) {
        t.aborted = true;
        t.reason = AbortReason::kTooManyDisagreements;
        return t;
    }
    std::vector<int> xs;
    std::vector<int> ys;
    for (auto p : t.data_positions) {
        auto a = g.element_at(t.alice_symbols[p]).coords();
        auto b = g.element_at(t.bob_symbols[p]).coords();
        xs.insert(xs.end(), a.begin(), a.end());
        ys.insert(ys.end(), b.begin(), b.end());
    }
    GroupElement x = word.element(xs);
    GroupElement y = word.element(ys);
    t.x = x.coords();
    t.bob_raw = y.coords();

    // Steps 9-10.
    GroupElement diff = x - v;
    t.announced = diff.coords();
    t.announcements.push_back({"alice", "x_minus_v", widen(t.announced)});
    finish_keys(code, code.bit_syndromes().decode(y - diff), t);
    return t;
}

std::vector<ProtocolTranscript> run_trials(const ProtocolParams &params, ProtocolKind kind, std::size_t count,
                                           std::size_t threads) {
    params.validate();
    std::vector<ProtocolTranscript> out(count);
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; i++) {
            Rng rng = Rng::for_trial(params.seed, i);
            out[i] = kind == ProtocolKind::kCss ? run_css_protocol(params, rng, i) : run_bb84_protocol(params, rng, i);
        }
    };
    threads = std::max<std::size_t>(1, std::min(threads, count));
    if (threads == 1) {
        work(0, count);
        return out;
    }
    std::vector<std::jthread> pool;
    std::size_t chunk = (count + threads - 1) / threads;
    std::vector<std::exception_ptr> errors(threads);
    for (std::size_t k = 0; k < threads; k++) {
        std::size_t begin = k * chunk;
        std::size_t end = std::min(count, begin + chunk);
        pool.emplace_back([&, k, begin, end] {
            try {
                work(begin, end);
            } catch (...) {
                errors[k] = std::current_exception();
            }
        });
    }
    pool.clear();
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return out;
}

Interval proportion_interval(std::size_t hits, std::size_t total) {
    if (total == 0) {
        return {0.0, 1.0};
    }
    double p = static_cast<double>(hits) / static_cast<double>(total);
    double half = 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(total));
    return {std::max(0.0, p - half), std::min(1.0, p + half)};
}

ProtocolSummary aggregate_stats(const std::vector<ProtocolTranscript> &transcripts) {
    if (transcripts.empty()) {
        throw std::invalid_argument("aggregate_stats needs at least one transcript");
    }
    ProtocolSummary s;
    s.trials = transcripts.size();
    for (const auto &t : transcripts) {
        if (t.protocol != transcripts.front().protocol || t.n != transcripts.front().n) {
            throw std::invalid_argument("aggregate_stats: transcripts come from different parameter sets");
        }
        s.checked_positions += t.checked;
        s.disagreements += t.disagreements;
        if (t.aborted) {
            s.aborted++;
            s.aborted_disagreements += t.reason == AbortReason::kTooManyDisagreements;
            s.aborted_sifting += t.reason == AbortReason::kInsufficientSifted;
        } else {
            s.completed++;
            s.agreements += t.alice_key == t.bob_key;
        }
    }
    s.abort_rate = static_cast<double>(s.aborted) / static_cast<double>(s.trials);
    s.abort_ci = proportion_interval(s.aborted, s.trials);
    if (s.completed) {
        s.agreement_rate = static_cast<double>(s.agreements) / static_cast<double>(s.completed);
        s.agreement_ci = proportion_interval(s.agreements, s.completed);
    }
    if (s.checked_positions) {
        s.disagreement_fraction = static_cast<double>(s.disagreements) / static_cast<double>(s.checked_positions);
        s.disagreement_ci = proportion_interval(s.disagreements, s.checked_positions);
    }
    return s;
}

}  // namespace abelcss
