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

#include "abelcss/group.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "abelcss/rng.h"
#include "test_codes.h"

namespace abelcss {
namespace {

using testing::direct_character;

std::vector<GroupSpec> small_groups() {
    return {GroupSpec({2}),    GroupSpec({3}),    GroupSpec({4}),       GroupSpec({6}),    GroupSpec({2, 2}),
            GroupSpec({2, 4}), GroupSpec({3, 3}), GroupSpec({2, 2, 2}), GroupSpec({12}),   GroupSpec({2, 6}),
            GroupSpec({36}),   GroupSpec({6, 6}), GroupSpec({4, 9}),    GroupSpec({3, 12})};
}

// Closure by repeated addition over coordinates, independent of the library's BFS.
std::set<std::vector<int>> closure_oracle(const GroupSpec &g, const std::vector<std::vector<int>> &gens) {
    std::set<std::vector<int>> out{std::vector<int>(g.rank(), 0)};
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::vector<int>> current(out.begin(), out.end());
        for (const auto &a : current) {
            for (const auto &b : gens) {
                std::vector<int> s(a.size());
                for (std::size_t j = 0; j < a.size(); j++) {
                    s[j] = (a[j] + b[j]) % g.moduli()[j];
                }
                grew |= out.insert(s).second;
            }
        }
    }
    return out;
}

TEST(GroupSpecTest, OrderIsProductOfModuli) {
    GroupSpec g({2, 3, 4});
    EXPECT_EQ(g.order(), 24u);
    EXPECT_EQ(g.rank(), 3u);
    EXPECT_EQ(g.exponent(), 12u);
    EXPECT_EQ(g.sites(), 1u);
}

TEST(GroupSpecTest, RejectsSmallModuli) {
    EXPECT_THROW(GroupSpec({0}), std::invalid_argument);
    EXPECT_THROW(GroupSpec({1, 2}), std::invalid_argument);
}

TEST(GroupSpecTest, DirectPowerRepeatsModuli) {
    GroupSpec g({2, 3});
    GroupSpec p = direct_power(g, 3);
    EXPECT_EQ(p.moduli(), (std::vector<int>{2, 3, 2, 3, 2, 3}));
    EXPECT_EQ(p.order(), 216u);
    EXPECT_EQ(p.sites(), 3u);
    EXPECT_EQ(p.site_group(), g);
}

TEST(GroupSpecTest, IndexRoundTripsAndIsLittleEndian) {
    GroupSpec g({2, 3, 4});
    EXPECT_EQ(g.element({1, 0, 0}).index(), 1u);
    EXPECT_EQ(g.element({0, 1, 0}).index(), 2u);
    EXPECT_EQ(g.element({0, 0, 1}).index(), 6u);
    for (std::uint64_t i = 0; i < g.order(); i++) {
        EXPECT_EQ(g.element_at(i).index(), i);
    }
}

TEST(GroupSpecTest, IndexArithmeticMatchesCoordinates) {
    GroupSpec g({3, 4, 2});
    for (std::uint64_t a = 0; a < g.order(); a++) {
        for (std::uint64_t b = 0; b < g.order(); b++) {
            auto ea = g.element_at(a);
            auto eb = g.element_at(b);
            std::vector<int> sum(3);
            for (int j = 0; j < 3; j++) {
                sum[j] = (ea.coords()[j] + eb.coords()[j]) % g.moduli()[j];
            }
            ASSERT_EQ(g.add_index(a, b), g.index_of(sum));
            ASSERT_EQ((ea - eb).index(), g.sub_index(a, b));
        }
        EXPECT_EQ(g.add_index(a, g.neg_index(a)), 0u);
        EXPECT_EQ(g.scale_index(a, 5), (g.element_at(a) * 5).index());
    }
}

TEST(GroupElementTest, RejectsOutOfRangeCoordinates) {
    GroupSpec g({4});
    EXPECT_THROW(g.element({4}), std::invalid_argument);
    EXPECT_THROW(g.element({-1}), std::invalid_argument);
    EXPECT_THROW(g.element({1, 1}), std::invalid_argument);
}

TEST(GroupElementTest, LexicographicOrderPutsFirstCoordinateFirst) {
    GroupSpec g({3, 3});
    EXPECT_LT(g.element({0, 2}), g.element({1, 0}));
    EXPECT_LT(g.element({1, 0}), g.element({1, 1}));
    std::vector<std::uint64_t> idx(g.order());
    for (std::uint64_t i = 0; i < g.order(); i++) {
        idx[i] = i;
    }
    std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return g.lex_key(a) < g.lex_key(b); });
    for (std::size_t i = 1; i < idx.size(); i++) {
        EXPECT_LT(g.element_at(idx[i - 1]), g.element_at(idx[i]));
    }
}

TEST(CharacterTest, Examples) {
    GroupSpec z22({2, 2});
    EXPECT_EQ(character_eval(z22.element({1, 1}), z22.element({1, 0})), Complex(-1.0, 0.0));
    GroupSpec z4({4});
    EXPECT_EQ(character_eval(z4.element({1}), z4.element({1})), Complex(0.0, 1.0));
    for (int y = 0; y < 4; y++) {
        EXPECT_EQ(character_eval(z4.zero(), z4.element({y})), Complex(1.0, 0.0));
    }
}

TEST(CharacterTest, MismatchedGroupsThrow) {
    EXPECT_THROW(character_eval(GroupSpec({4}).element({1}), GroupSpec({2, 2}).element({1, 0})),
                 std::invalid_argument);
}

TEST(CharacterTest, MatchesDirectFormulaAndIsBilinear) {
    for (const auto &g : small_groups()) {
        for (std::uint64_t x = 0; x < g.order(); x++) {
            auto ex = g.element_at(x);
            for (std::uint64_t y = 0; y < g.order(); y++) {
                auto ey = g.element_at(y);
                Complex c = character_eval(ex, ey);
                ASSERT_NEAR(std::abs(c - direct_character(g.moduli(), ex.coords(), ey.coords())), 0.0, 1e-12);
                ASSERT_NEAR(std::abs(c - character_eval(ey, ex)), 0.0, 1e-12);
                ASSERT_NEAR(std::abs(c) - 1.0, 0.0, 1e-12);
            }
        }
        Rng rng(g.order());
        for (int k = 0; k < 200; k++) {
            auto x = g.element_at(rng.uniform_below(g.order()));
            auto x2 = g.element_at(rng.uniform_below(g.order()));
            auto y = g.element_at(rng.uniform_below(g.order()));
            ASSERT_NEAR(std::abs(character_eval(x + x2, y) - character_eval(x, y) * character_eval(x2, y)), 0.0,
                        1e-12);
        }
    }
}

TEST(CharacterTest, SchurOrthogonality) {
    for (const auto &g : {GroupSpec({8, 8}), GroupSpec({2, 2, 2, 2, 2, 2}), GroupSpec({6, 6}), GroupSpec({5})}) {
        double worst = 0.0;
        for (std::uint64_t y = 0; y < g.order(); y++) {
            for (std::uint64_t z = 0; z < g.order(); z++) {
                Complex acc = 0.0;
                for (std::uint64_t x = 0; x < g.order(); x++) {
                    acc += direct_character(g.moduli(), g.element_at(y).coords(), g.element_at(x).coords()) *
                           std::conj(character_at(g, z, x));
                }
                worst = std::max(worst, std::abs(acc / static_cast<double>(g.order()) - (y == z ? 1.0 : 0.0)));
            }
        }
        EXPECT_LE(worst, 1e-12) << g.to_string();
    }
}

TEST(CharacterTest, RootOfUnityQuarterTurnsAreExact) {
    EXPECT_EQ(root_of_unity(1, 4), Complex(0.0, 1.0));
    EXPECT_EQ(root_of_unity(2, 4), Complex(-1.0, 0.0));
    EXPECT_EQ(root_of_unity(3, 4), Complex(0.0, -1.0));
    EXPECT_EQ(root_of_unity(6, 12), Complex(-1.0, 0.0));
    EXPECT_NEAR(std::abs(root_of_unity(1, 3) - testing::direct_root(1, 3)), 0.0, 1e-15);
}

TEST(SubgroupTest, GeneratorExamples) {
    GroupSpec z4({4});
    auto h = subgroup_from_generators(z4, {z4.element({2})});
    EXPECT_EQ(h.member_indices(), (std::vector<std::uint64_t>{0, 2}));

    GroupSpec z22({2, 2});
    auto t = subgroup_from_generators(z22, {});
    EXPECT_EQ(t.order(), 1u);
    EXPECT_TRUE(t.contains(z22.zero()));

    GroupSpec z6({6});
    EXPECT_EQ(subgroup_from_generators(z6, {z6.element({2}), z6.element({3})}).order(), 6u);
}

TEST(SubgroupTest, CapExceededIsResourceError) {
    GroupSpec g({4, 4});
    EXPECT_THROW(subgroup_from_generators(g, {g.element({1, 0})}, 8), ResourceError);
}

TEST(SubgroupTest, ClosureMatchesOracle) {
    GroupSpec g({2, 6, 3});
    Rng rng(11);
    for (int trial = 0; trial < 60; trial++) {
        std::vector<GroupElement> gens;
        std::vector<std::vector<int>> gen_coords;
        auto count = rng.uniform_below(3);
        for (std::uint64_t k = 0; k < count; k++) {
            gens.push_back(g.element_at(rng.uniform_below(g.order())));
            gen_coords.push_back(gens.back().coords());
        }
        auto h = subgroup_from_generators(g, gens);
        auto oracle = closure_oracle(g, gen_coords);
        std::set<std::vector<int>> got;
        for (const auto &e : h.elements()) {
            got.insert(e.coords());
        }
        ASSERT_EQ(got, oracle);
        auto elems = h.elements();
        ASSERT_TRUE(std::is_sorted(elems.begin(), elems.end()));
        ASSERT_TRUE(elems.front().is_zero());
    }
}

TEST(SubgroupTest, EnumeratedSubgroupsAreClosedAndObeyLagrange) {
    for (const auto &g : small_groups()) {
        for (const auto &h : enumerate_subgroups(g)) {
            EXPECT_EQ(g.order() % h.order(), 0u);
            EXPECT_TRUE(h.contains_index(0));
            for (auto a : h.member_indices()) {
                ASSERT_TRUE(h.contains_index(g.neg_index(a)));
                for (auto b : h.member_indices()) {
                    ASSERT_TRUE(h.contains_index(g.add_index(a, b)));
                }
            }
            EXPECT_EQ(subgroup_from_generators(g, h.generators()), h);
        }
    }
}

TEST(SubgroupTest, SubgroupCounts) {
    EXPECT_EQ(enumerate_subgroups(GroupSpec({4})).size(), 3u);
    EXPECT_EQ(enumerate_subgroups(GroupSpec({6})).size(), 4u);
    EXPECT_EQ(enumerate_subgroups(GroupSpec({2, 2})).size(), 5u);
    EXPECT_EQ(enumerate_subgroups(GroupSpec({2, 4})).size(), 8u);
    EXPECT_EQ(enumerate_subgroups(GroupSpec({3, 3})).size(), 6u);
    EXPECT_EQ(enumerate_subgroups(GroupSpec({2, 2, 2})).size(), 16u);
    EXPECT_EQ(enumerate_subgroups(GroupSpec({36})).size(), 9u);
}

TEST(AnnihilatorTest, Examples) {
    GroupSpec z4({4});
    EXPECT_EQ(annihilator(Subgroup::trivial(z4)), Subgroup::whole(z4));
    EXPECT_EQ(annihilator(Subgroup::whole(z4)), Subgroup::trivial(z4));
    auto h = subgroup_from_generators(z4, {z4.element({2})});
    EXPECT_EQ(annihilator(h).member_indices(), (std::vector<std::uint64_t>{0, 2}));
}

TEST(AnnihilatorTest, DualityOnEverySubgroup) {
    for (const auto &g : small_groups()) {
        for (const auto &h : enumerate_subgroups(g)) {
            auto perp = annihilator(h);
            ASSERT_EQ(h.order() * perp.order(), g.order()) << g.to_string();
            ASSERT_EQ(annihilator(perp), h);
            for (std::uint64_t x = 0; x < g.order(); x++) {
                bool oracle = true;
                for (auto y : h.member_indices()) {
                    auto c = direct_character(g.moduli(), g.element_at(x).coords(), g.element_at(y).coords());
                    oracle = oracle && std::abs(c - 1.0) < 1e-9;
                }
                ASSERT_EQ(perp.contains_index(x), oracle);
            }
        }
    }
}

TEST(CharacterSumTest, Examples) {
    GroupSpec z4({4});
    auto h = subgroup_from_generators(z4, {z4.element({2})});
    EXPECT_NEAR(std::abs(character_sum_over(h, z4.element({1}))), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(character_sum_over(h, z4.element({0})) - 2.0), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(character_sum_over(h, z4.element({2})) - 2.0), 0.0, 1e-12);
}

TEST(CharacterSumTest, OrderOrZeroOnEveryPair) {
    for (const auto &g : small_groups()) {
        for (const auto &h : enumerate_subgroups(g)) {
            auto perp = annihilator(h);
            for (std::uint64_t x = 0; x < g.order(); x++) {
                double expected = perp.contains_index(x) ? static_cast<double>(h.order()) : 0.0;
                ASSERT_NEAR(std::abs(character_sum_over(h, g.element_at(x)) - expected), 0.0, 1e-9);
            }
        }
    }
}

TEST(WeightTest, Examples) {
    GroupSpec z33 = direct_power(GroupSpec::cyclic(3), 3);
    auto x = z33.element({0, 2, 1});
    EXPECT_EQ(weight(x), 2u);
    EXPECT_EQ(distance(x, x), 0u);
    GroupSpec z27 = direct_power(GroupSpec::cyclic(2), 7);
    EXPECT_EQ(distance(z27.element({1, 0, 0, 0, 0, 0, 0}), z27.zero()), 1u);
}

TEST(WeightTest, CountsSitesNotFactors) {
    GroupSpec g = direct_power(GroupSpec({2, 2}), 2);
    EXPECT_EQ(weight(g.element({1, 0, 0, 0})), 1u);
    EXPECT_EQ(weight(g.element({1, 1, 0, 0})), 1u);
    EXPECT_EQ(weight(g.element({1, 1, 0, 1})), 2u);
}

TEST(WeightTest, DistanceIsWeightOfDifference) {
    GroupSpec g = direct_power(GroupSpec::cyclic(4), 3);
    for (std::uint64_t a = 0; a < g.order(); a += 5) {
        for (std::uint64_t b = 0; b < g.order(); b += 3) {
            auto ea = g.element_at(a);
            auto eb = g.element_at(b);
            ASSERT_EQ(distance(ea, eb), weight(ea - eb));
            ASSERT_LE(distance(ea, eb), 3u);
        }
    }
}

TEST(CosetTableTest, Examples) {
    GroupSpec z22({2, 2});
    auto whole = coset_table(z22, Subgroup::whole(z22));
    EXPECT_EQ(whole.size(), 1u);
    EXPECT_TRUE(whole.representatives()[0].is_zero());

    GroupSpec z2sq = direct_power(GroupSpec::cyclic(2), 2);
    auto diag = subgroup_from_generators(z2sq, {z2sq.element({1, 1})});
    auto t = coset_table(z2sq, diag);
    ASSERT_EQ(t.size(), 2u);
    EXPECT_EQ(t.representatives()[0], z2sq.element({0, 0}));
    EXPECT_EQ(t.representatives()[1], z2sq.element({0, 1}));
}

TEST(CosetTableTest, RepresentativesAreMinimumWeightAndDeterministic) {
    for (const auto &g : {direct_power(GroupSpec::cyclic(3), 3), direct_power(GroupSpec::cyclic(2), 4),
                          direct_power(GroupSpec({2, 2}), 2)}) {
        for (const auto &h : enumerate_subgroups(g, 1 << 12)) {
            auto t = coset_table(g, h);
            ASSERT_EQ(t.size(), g.order() / h.order());
            auto again = coset_table(g, h);
            ASSERT_EQ(t.representatives(), again.representatives());
            std::set<std::size_t> labels;
            for (std::size_t c = 0; c < t.size(); c++) {
                const auto &rep = t.representatives()[c];
                labels.insert(t.index_of(rep));
                for (auto m : h.member_indices()) {
                    auto other = rep + g.element_at(m);
                    ASSERT_EQ(t.index_of(other), c);
                    ASSERT_TRUE(weight(rep) < weight(other) || (weight(rep) == weight(other) && !(other < rep)));
                }
            }
            ASSERT_EQ(labels.size(), t.size());
        }
    }
}

TEST(CosetTableTest, RejectsNonSubgroup) {
    GroupSpec g({2, 2});
    auto a = subgroup_from_generators(g, {g.element({1, 0})});
    auto b = subgroup_from_generators(g, {g.element({0, 1})});
    EXPECT_THROW(coset_table(a, b), std::invalid_argument);
}

}  // namespace
}  // namespace abelcss
