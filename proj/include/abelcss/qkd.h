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

#ifndef ABELCSS_QKD_H
#define ABELCSS_QKD_H

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "abelcss/css_code.h"
#include "abelcss/hilbert.h"
#include "abelcss/rng.h"

namespace abelcss {

enum class ProtocolKind { kCss, kBb84 };

/// Frame in which channel flips act.
///
/// kData: a bit flip changes the symbol a position carries in the basis it was
/// prepared in (X conjugated by the position's Fourier mask), so every bit-flip
/// event on a check position is a disagreement. kPhysical: X_e / Z_e act on the
/// wire regardless of basis.
enum class NoiseFrame { kData, kPhysical };

/// Independent per-position flips; the flip amount is uniform over nonzero elements of G.
struct ChannelModel {
    double p_x = 0.0;
    double p_z = 0.0;
    NoiseFrame frame = NoiseFrame::kData;
};

/// Per-position intercept-resend: uniform basis choice, measure, forward the collapsed state.
struct EveModel {
    bool intercept = false;
    /// Positions Eve attacks; empty means all of them.
    std::vector<std::size_t> targets;

    bool attacks(std::size_t position) const;
};

/// Successive simplifications of the CSS protocol down to the prepare-and-measure form.
enum class CssVariant {
    kFull,              // encode, mask, unmask, decode quantumly, measure
    kBobMeasuresFirst,  // Bob measures the data block at once and decodes classically
    kNoPhase,           // Alice drops z and sends |v + w + x> for random w in C2
    kDirectV,           // Alice picks v in C1 directly, sends random |x>, announces x - v
    kBasisPrep,         // as kDirectV, with standard/Fourier preparation instead of a mask
};

struct ProtocolParams {
    std::shared_ptr<const CssCode> code;
    double delta = 1.0;
    /// Abort threshold on check disagreements; defaults to the code's t1.
    std::optional<std::size_t> t_check;
    ChannelModel noise;
    EveModel eve;
    std::uint64_t seed = 0;
    CssVariant variant = CssVariant::kFull;
    /// Pin the key coset (CSS protocol); used by the equivalence tests.
    std::optional<std::size_t> fixed_key;
    /// Pin x in C1-perp (CSS protocol, kFull..kNoPhase).
    std::optional<GroupElement> fixed_offset;

    std::size_t n() const { return code->n(); }
    std::size_t check_threshold() const { return t_check.value_or(code->t1()); }
    void validate() const;
};

enum class AbortReason { kNone, kTooManyDisagreements, kInsufficientSifted };

std::string to_string(ProtocolKind kind);
std::string to_string(CssVariant variant);
std::string to_string(AbortReason reason);
std::string to_string(NoiseFrame frame);

struct Announcement {
    std::string party;
    std::string what;
    std::vector<std::int64_t> payload;
};

/// Complete record of one run. Per-position symbols are element indices of G;
/// words of G^n are coordinate lists.
struct ProtocolTranscript {
    std::string protocol;
    std::string variant;
    std::uint64_t seed = 0;
    std::uint64_t trial = 0;
    std::size_t n = 0;
    std::size_t t_check = 0;
    std::size_t positions = 0;

    std::vector<int> alice_bases;  // mask b (CSS) or preparation basis (BB84)
    std::vector<int> bob_bases;    // BB84 only
    std::vector<int> eve_bases;    // -1 where Eve did not act
    std::vector<std::uint64_t> eve_outcomes;
    std::vector<std::uint64_t> alice_symbols;  // BB84 raw symbols; CSS check values
    std::vector<std::uint64_t> bob_symbols;    // BB84 outcomes; CSS check outcomes
    std::vector<std::size_t> sifted;
    std::vector<std::size_t> check_positions;
    std::vector<std::size_t> data_positions;
    std::size_t checked = 0;
    std::size_t disagreements = 0;

    std::size_t key_coset = 0;    // Alice's intended key
    std::vector<int> v;           // Alice's C1 word
    std::vector<int> z;           // CSS phase label
    std::vector<int> x;           // CSS offset in C1-perp, or the BB84 data string
    std::vector<int> announced;   // x - v where announced
    std::vector<int> bob_raw;     // Bob's standard-basis reading of the data block
    std::vector<int> bob_word;    // Bob's corrected C1 word
    std::vector<int> e1_hat;      // quantum decoder estimates (kFull)
    std::vector<int> e2_hat;

    std::vector<Announcement> announcements;
    bool aborted = false;
    AbortReason reason = AbortReason::kNone;
    std::optional<std::size_t> alice_key;
    std::optional<std::size_t> bob_key;
};

struct EveRecord {
    StateVector forwarded;
    int basis;  // 0 standard, 1 Fourier
    GroupElement outcome;
};

/// Eve measures one site in a uniformly chosen basis and forwards the collapsed state.
EveRecord eve_intercept_resend(const StateVector &state, std::size_t site, Rng &rng);

ProtocolTranscript run_css_protocol(const ProtocolParams &params, Rng &rng, std::uint64_t trial = 0);
ProtocolTranscript run_bb84_protocol(const ProtocolParams &params, Rng &rng, std::uint64_t trial = 0);

/// Trials 0..count-1, trial i drawing from Rng::for_trial(params.seed, i).
/// Output order is trial order whatever the thread count.
std::vector<ProtocolTranscript> run_trials(const ProtocolParams &params, ProtocolKind kind, std::size_t count,
                                           std::size_t threads = 1);

struct Interval {
    double low = 0.0;
    double high = 0.0;
};

struct ProtocolSummary {
    std::size_t trials = 0;
    std::size_t aborted = 0;
    std::size_t aborted_disagreements = 0;
    std::size_t aborted_sifting = 0;
    double abort_rate = 0.0;
    Interval abort_ci;
    std::size_t completed = 0;
    std::size_t agreements = 0;
    std::optional<double> agreement_rate;
    std::optional<Interval> agreement_ci;
    std::size_t checked_positions = 0;
    std::size_t disagreements = 0;
    std::optional<double> disagreement_fraction;
    std::optional<Interval> disagreement_ci;
};

/// Normal-approximation 95% interval for a proportion, clipped to [0, 1].
Interval proportion_interval(std::size_t hits, std::size_t total);

ProtocolSummary aggregate_stats(const std::vector<ProtocolTranscript> &transcripts);

}  // namespace abelcss

#endif
