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

#ifndef ABELCSS_GROUP_H
#define ABELCSS_GROUP_H

#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace abelcss {

using Complex = std::complex<double>;

/// Default cap on the number of ambient elements a subgroup enumeration may touch.
inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 20;

/// Raised when an enumeration or dense representation would exceed its configured cap.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class GroupElement;

/// A finite abelian group written as Z_{m_0} x Z_{m_1} x ... .
///
/// The cyclic factors are grouped into `sites` consecutive blocks of `site_rank`
/// factors each. A site is one coordinate of a word: weights and distances count
/// nonzero sites, and the quantum layer treats each site as one qudit. A group built
/// directly from moduli is a single site; `direct_power(G, n)` has n sites, each a
/// copy of G.
///
/// Elements are indexed in little-endian mixed radix: factor 0 varies fastest.
class GroupSpec {
   public:
    /// The trivial group with no factors (order 1).
    GroupSpec();
    explicit GroupSpec(std::vector<int> moduli);
    GroupSpec(std::vector<int> moduli, std::size_t site_rank);

    static GroupSpec cyclic(int m);

    const std::vector<int> &moduli() const;
    std::size_t rank() const;
    std::size_t site_rank() const;
    std::size_t sites() const;
    std::uint64_t order() const;
    /// Stride of factor j in the little-endian index.
    std::uint64_t stride(std::size_t factor) const;
    /// Least common multiple of the moduli; characters take values in the L-th roots of unity.
    std::uint64_t exponent() const;

    /// The group of one site (G when this is G^n).
    GroupSpec site_group() const;
    /// Same factors, one site per factor group of `site_rank`.
    GroupSpec with_site_rank(std::size_t site_rank) const;

    GroupElement zero() const;
    GroupElement element(std::vector<int> coords) const;
    GroupElement element_at(std::uint64_t index) const;

    std::uint64_t index_of(std::span<const int> coords) const;
    void decode(std::uint64_t index, std::span<int> coords) const;
    std::uint64_t add_index(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t neg_index(std::uint64_t a) const;
    std::uint64_t sub_index(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t scale_index(std::uint64_t a, std::int64_t k) const;
    /// Number of sites whose block of coordinates is nonzero.
    std::size_t weight_of_index(std::uint64_t a) const;
    /// Big-endian key: sorting by it is lexicographic order on coordinates.
    std::uint64_t lex_key(std::uint64_t index) const;

    /// Integer k with chi_x(y) = exp(2 pi i k / exponent()).
    std::uint64_t pairing_phase(std::uint64_t x, std::uint64_t y) const;

    std::string to_string() const;

    bool operator==(const GroupSpec &other) const;
    bool operator!=(const GroupSpec &other) const { return !(*this == other); }

   private:
    struct Data;
    std::shared_ptr<const Data> data_;
};

/// G^n: moduli of G repeated n times, one site per copy.
GroupSpec direct_power(const GroupSpec &g, std::size_t n);
/// Concatenation of factors; site_rank must agree (or either side be trivial).
GroupSpec direct_product(const GroupSpec &a, const GroupSpec &b);

/// An element (word) of a GroupSpec; coordinates are residues 0 <= c_j < m_j.
class GroupElement {
   public:
    GroupElement(GroupSpec group, std::vector<int> coords);

    const GroupSpec &group() const { return group_; }
    const std::vector<int> &coords() const { return coords_; }
    std::uint64_t index() const;
    bool is_zero() const;

    /// Coordinates of site s.
    GroupElement site(std::size_t s) const;

    GroupElement operator+(const GroupElement &other) const;
    GroupElement operator-(const GroupElement &other) const;
    GroupElement operator-() const;
    GroupElement operator*(std::int64_t k) const;

    bool operator==(const GroupElement &other) const;
    bool operator!=(const GroupElement &other) const { return !(*this == other); }
    /// Lexicographic on coordinates (first coordinate most significant).
    bool operator<(const GroupElement &other) const;

    std::string to_string() const;

   private:
    GroupSpec group_;
    std::vector<int> coords_;
};

/// chi_x(y) = exp(2 pi i sum_j x_j y_j / m_j).
Complex character_eval(const GroupElement &x, const GroupElement &y);
/// Exact root of unity exp(2 pi i k / n); the quarter turns are returned exactly.
Complex root_of_unity(std::uint64_t k, std::uint64_t n);
/// chi_x(y) by element index.
Complex character_at(const GroupSpec &g, std::uint64_t x, std::uint64_t y);

std::size_t weight(const GroupElement &x);
std::size_t distance(const GroupElement &x, const GroupElement &y);

/// An enumerated subgroup. Members are kept in lexicographic order of coordinates.
class Subgroup {
   public:
    /// The whole group.
    static Subgroup whole(const GroupSpec &g, std::uint64_t cap = kDefaultEnumerationCap);
    static Subgroup trivial(const GroupSpec &g, std::uint64_t cap = kDefaultEnumerationCap);

    const GroupSpec &ambient() const { return ambient_; }
    const std::vector<GroupElement> &generators() const { return generators_; }
    /// Member indices, lexicographically sorted; zero first.
    const std::vector<std::uint64_t> &member_indices() const { return members_; }
    std::vector<GroupElement> elements() const;
    std::uint64_t order() const { return members_.size(); }

    bool contains(const GroupElement &x) const;
    bool contains_index(std::uint64_t index) const { return mask_[index]; }
    bool is_subgroup_of(const Subgroup &other) const;

    bool operator==(const Subgroup &other) const { return ambient_ == other.ambient_ && members_ == other.members_; }
    bool operator!=(const Subgroup &other) const { return !(*this == other); }

   private:
    friend Subgroup subgroup_from_generators(const GroupSpec &, const std::vector<GroupElement> &, std::uint64_t);
    friend Subgroup subgroup_from_members(const GroupSpec &, std::vector<std::uint64_t>, std::uint64_t);

    Subgroup(GroupSpec ambient, std::vector<GroupElement> generators, std::vector<std::uint64_t> members,
             std::vector<bool> mask);

    GroupSpec ambient_;
    std::vector<GroupElement> generators_;
    std::vector<std::uint64_t> members_;
    std::vector<bool> mask_;
};

/// Smallest subgroup containing `gens`. Throws ResourceError if |G| exceeds `cap`.
Subgroup subgroup_from_generators(const GroupSpec &g, const std::vector<GroupElement> &gens,
                                  std::uint64_t cap = kDefaultEnumerationCap);
/// Builds a Subgroup from a member set already known to be closed; picks a small generating set.
Subgroup subgroup_from_members(const GroupSpec &g, std::vector<std::uint64_t> members,
                               std::uint64_t cap = kDefaultEnumerationCap);

/// H-perp = { x : chi_x(h) = 1 for all h in H }.
Subgroup annihilator(const Subgroup &h);

/// sum_{y in H} chi_x(y), summed term by term.
Complex character_sum_over(const Subgroup &h, const GroupElement &x);

/// Every subgroup of g, found by brute-force closure. Sorted by order, then members.
std::vector<Subgroup> enumerate_subgroups(const GroupSpec &g, std::uint64_t cap = 4096);

/// Cosets of `sub` inside `ambient`, each labelled by its minimum-weight member
/// (lexicographic tie-break). Coset 0 is `sub` itself.
class CosetTable {
   public:
    CosetTable(const Subgroup &ambient, const Subgroup &sub);

    const Subgroup &ambient() const { return ambient_; }
    const Subgroup &subgroup() const { return sub_; }
    const std::vector<GroupElement> &representatives() const { return representatives_; }
    std::size_t size() const { return representatives_.size(); }

    /// Coset index of x. Throws std::invalid_argument if x is outside the ambient subgroup.
    std::size_t index_of(const GroupElement &x) const;
    std::size_t index_of_index(std::uint64_t x) const;
    /// Index of the representative of coset c.
    std::uint64_t representative_index(std::size_t c) const { return rep_index_[c]; }

   private:
    Subgroup ambient_;
    Subgroup sub_;
    std::vector<GroupElement> representatives_;
    std::vector<std::uint64_t> rep_index_;
    std::vector<std::uint32_t> label_;
};

inline constexpr std::uint32_t kNoCoset = ~std::uint32_t{0};

CosetTable coset_table(const GroupSpec &ambient, const Subgroup &h);
CosetTable coset_table(const Subgroup &ambient, const Subgroup &h);

}  // namespace abelcss

#endif
