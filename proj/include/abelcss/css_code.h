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

#ifndef ABELCSS_CSS_CODE_H
#define ABELCSS_CSS_CODE_H

#include <optional>
#include <utility>
#include <vector>

#include "abelcss/group.h"
#include "abelcss/hilbert.h"
#include "abelcss/rng.h"

namespace abelcss {

/// Minimum weight of a nonzero member. Throws std::domain_error for the trivial subgroup.
std::size_t min_distance(const Subgroup &s);

/// Coset-label syndrome for a code subgroup: w -> w + code. Coset leaders are the
/// minimum-weight members (lexicographic tie-break), so leader(syndrome(e)) = e for
/// every e of weight at most floor((d - 1) / 2).
class SyndromeMap {
   public:
    explicit SyndromeMap(const Subgroup &code_subgroup);

    const Subgroup &code_subgroup() const { return table_.subgroup(); }
    const CosetTable &table() const { return table_; }
    std::size_t size() const { return table_.size(); }

    std::size_t syndrome(const GroupElement &w) const { return table_.index_of(w); }
    std::size_t syndrome_of_index(std::uint64_t w) const { return table_.index_of_index(w); }
    const GroupElement &leader(std::size_t s) const { return table_.representatives().at(s); }
    /// w minus the leader of its coset; always a member of the code subgroup.
    GroupElement decode(const GroupElement &w) const { return w - leader(syndrome(w)); }

   private:
    CosetTable table_;
};

/// CSS_G(C1, C2) for subgroups C2 <= C1 <= G^n, with all classical data precomputed.
class CssCode {
   public:
    CssCode(Subgroup c1, Subgroup c2);

    const GroupSpec &ambient() const { return c1_.ambient(); }
    GroupSpec site_group() const { return ambient().site_group(); }
    std::size_t n() const { return ambient().sites(); }
    const Subgroup &c1() const { return c1_; }
    const Subgroup &c2() const { return c2_; }
    const Subgroup &c1_perp() const { return c1_perp_; }
    const Subgroup &c2_perp() const { return c2_perp_; }
    /// Empty when the subgroup is trivial and has no nonzero codeword.
    std::optional<std::size_t> d1() const { return d1_; }
    std::optional<std::size_t> d2_perp() const { return d2_perp_; }
    /// Correctable bit-flip / phase-flip weights. A trivial code subgroup corrects every pattern, so t = n.
    std::size_t t1() const { return t1_; }
    std::size_t t2() const { return t2_; }
    /// |C1| / |C2|.
    std::uint64_t dimension() const { return c1_.order() / c2_.order(); }

    /// Cosets of C2 in C1; the key space.
    const CosetTable &key_cosets() const { return key_cosets_; }
    /// G^n / C1, the bit-flip syndrome.
    const SyndromeMap &bit_syndromes() const { return bit_; }
    /// G^n / C2-perp, the phase-flip syndrome.
    const SyndromeMap &phase_syndromes() const { return phase_; }
    /// G^n / C2.
    const SyndromeMap &c2_cosets() const { return c2_cosets_; }

    /// C2 meets C2-perp only in zero, i.e. (z, w) -> chi_z(w) is non-degenerate on C2.
    bool self_pairing_nondegenerate() const;

   private:
    Subgroup c1_;
    Subgroup c2_;
    Subgroup c1_perp_;
    Subgroup c2_perp_;
    std::optional<std::size_t> d1_;
    std::optional<std::size_t> d2_perp_;
    std::size_t t1_ = 0;
    std::size_t t2_ = 0;
    CosetTable key_cosets_;
    SyndromeMap bit_;
    SyndromeMap phase_;
    SyndromeMap c2_cosets_;
};

/// Builds CSS_G(<c1_gens>, <c2_gens>) over G^n. Throws std::invalid_argument if C2 is not inside C1.
CssCode make_css(const GroupSpec &g, std::size_t n, const std::vector<GroupElement> &c1_gens,
                 const std::vector<GroupElement> &c2_gens, std::uint64_t cap = kDefaultEnumerationCap);
/// Same, with generators as coordinate lists over G^n.
CssCode make_css(const GroupSpec &g, std::size_t n, const std::vector<std::vector<int>> &c1_gens,
                 const std::vector<std::vector<int>> &c2_gens, std::uint64_t cap = kDefaultEnumerationCap);

/// True iff H meets its annihilator only in zero.
bool self_pairing_nondegenerate(const Subgroup &h);

/// |v + C2> for v in C1.
StateVector encode(const CssCode &code, const GroupElement &v);
/// |psi_{v,z,x}> = |C2|^{-1/2} sum_{w in C2} chi_z(w) |v + w + x>, z in C2, x in C1-perp.
StateVector codeword_state(const CssCode &code, const GroupElement &v, const GroupElement &z, const GroupElement &x);

struct PipelineStages {
    StateVector psi2;  // after bit-flip syndrome extraction
    StateVector psi3;  // bit flip undone
    StateVector psi4;  // first transform; phase error now a shift
    StateVector psi5;  // phase shift undone
    StateVector psi6;  // second transform, supported on C2 - x
};

struct PipelineResult {
    StateVector restored;
    GroupElement e1_hat;
    GroupElement e2_hat;
    PipelineStages stages;
    std::size_t bit_syndrome = 0;
    std::size_t phase_syndrome = 0;
    /// Both coset leaders lie within (t1, t2); outside it the correction may be a miscorrection.
    bool within_guarantee = true;
    /// Some syndrome was not a single label and had to be sampled.
    bool projective = false;
};

/// Runs the full bit-flip / transform / phase-flip / transform / shift correction.
///
/// Each syndrome is read classically when every branch shares one coset label
/// (always the case for X_{e1} Z_{e2} applied to a code state); otherwise it is a
/// projective measurement drawn from `rng`.
PipelineResult correct_pipeline(const CssCode &code, const StateVector &corrupted, Rng &rng);
PipelineResult correct_pipeline(const CssCode &code, const StateVector &corrupted);

/// A Weyl error X_{bit} Z_{phase}.
struct WeylError {
    GroupElement bit;
    GroupElement phase;
};

struct KlResult {
    /// alpha[k][l] with P A_k^dagger A_l P = alpha[k][l] P.
    std::vector<std::vector<Complex>> alpha;
    bool pass = true;
    /// Largest entry of P A_k^dagger A_l P - alpha P over all pairs.
    double max_deviation = 0.0;
    /// First violating pair (k, l), if any.
    std::optional<std::pair<std::size_t, std::size_t>> violation;
};

/// Knill-Laflamme test on the code space at tolerance `tol`.
KlResult kl_check(const CssCode &code, const std::vector<WeylError> &errors, double tol = 1e-8);

/// All X_{e1} Z_{e2} with wt(e1) <= max_bit and wt(e2) <= max_phase.
std::vector<WeylError> weyl_errors_up_to(const CssCode &code, std::size_t max_bit, std::size_t max_phase);
/// Words of G^n of weight at most w, lexicographic within each weight.
std::vector<GroupElement> words_up_to_weight(const GroupSpec &ambient, std::size_t w);

}  // namespace abelcss

#endif
