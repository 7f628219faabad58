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

#include "abelcss/hilbert.h"

#include <gtest/gtest.h>

#include <bit>
#include <cmath>

#include "abelcss/rng.h"
#include "test_codes.h"

namespace abelcss {
namespace {

using testing::direct_character;
using testing::direct_root;

const double kRoot2 = std::sqrt(2.0);

StateVector vec(const GroupSpec &g, std::vector<Complex> amps) { return StateVector(g, std::move(amps)); }

StateVector random_state(const GroupSpec &g, Rng &rng) {
    StateVector s(g);
    for (auto &a : s.amplitudes()) {
        a = Complex(rng.uniform01() - 0.5, rng.uniform01() - 0.5);
    }
    return s.normalized();
}

// Dense kron of per-site matrices, site 0 fastest.
Matrix kron_power(const Matrix &m, std::size_t n) {
    Matrix acc = Matrix::identity(1);
    for (std::size_t k = 0; k < n; k++) {
        Matrix next(acc.dim() * m.dim());
        for (std::size_t r1 = 0; r1 < acc.dim(); r1++) {
            for (std::size_t c1 = 0; c1 < acc.dim(); c1++) {
                for (std::size_t r2 = 0; r2 < m.dim(); r2++) {
                    for (std::size_t c2 = 0; c2 < m.dim(); c2++) {
                        next(r1 + acc.dim() * r2, c1 + acc.dim() * c2) = acc(r1, c1) * m(r2, c2);
                    }
                }
            }
        }
        acc = next;
    }
    return acc;
}

TEST(BasisTest, FourierExamples) {
    GroupSpec z2({2});
    EXPECT_LE(max_abs_diff(fourier_basis_state(z2.element({0})), vec(z2, {1 / kRoot2, 1 / kRoot2})), 1e-15);
    EXPECT_LE(max_abs_diff(fourier_basis_state(z2.element({1})), vec(z2, {1 / kRoot2, -1 / kRoot2})), 1e-15);
}

TEST(BasisTest, FourierBasisIsOrthonormal) {
    for (const auto &g : {GroupSpec({6}), GroupSpec({2, 4}), GroupSpec({3, 3})}) {
        for (std::uint64_t s = 0; s < g.order(); s++) {
            for (std::uint64_t t = 0; t < g.order(); t++) {
                Complex ip = inner_product(fourier_basis_state(g.element_at(s)), fourier_basis_state(g.element_at(t)));
                ASSERT_NEAR(std::abs(ip - (s == t ? 1.0 : 0.0)), 0.0, 1e-12);
            }
        }
    }
}

TEST(BasisTest, DimensionCapIsEnforced) {
    GroupSpec g = direct_power(GroupSpec::cyclic(2), 17);
    EXPECT_THROW(StateVector{g}, ResourceError);
    EXPECT_THROW(StateVector(GroupSpec({8}), 4), ResourceError);
}

TEST(QftTest, HadamardOnPlusState) {
    GroupSpec z2({2});
    auto out = qft(vec(z2, {1 / kRoot2, 1 / kRoot2}));
    EXPECT_LE(max_abs_diff(out, basis_state(z2.element({0}))), 1e-15);
}

TEST(QftTest, MatchesHadamardTransform) {
    for (std::size_t n = 1; n <= 4; n++) {
        auto g = direct_power(GroupSpec::cyclic(2), n);
        auto f = qft_matrix(g);
        for (std::uint64_t y = 0; y < g.order(); y++) {
            for (std::uint64_t x = 0; x < g.order(); x++) {
                double h = (std::popcount(x & y) % 2 ? -1.0 : 1.0) / std::sqrt(static_cast<double>(g.order()));
                ASSERT_LE(std::abs(f(y, x) - h), 1e-12);
            }
        }
    }
}

TEST(QftTest, MatchesDftMatrix) {
    for (int m = 2; m <= 16; m++) {
        auto f = qft_matrix(GroupSpec::cyclic(m));
        for (int y = 0; y < m; y++) {
            for (int x = 0; x < m; x++) {
                ASSERT_LE(std::abs(f(y, x) - direct_root(x * y, m) / std::sqrt(static_cast<double>(m))), 1e-12);
            }
        }
    }
}

TEST(QftTest, MatrixIsUnitary) {
    for (const auto &g : {GroupSpec({8, 8}), GroupSpec({2, 2, 2, 2, 2, 2}), GroupSpec({6, 6}), GroupSpec({64}),
                          GroupSpec({3, 5})}) {
        auto f = qft_matrix(g);
        EXPECT_LE((f.adjoint() * f - Matrix::identity(f.dim())).max_abs(), 1e-9) << g.to_string();
    }
}

TEST(QftTest, PreservesNormAndInverts) {
    Rng rng(5);
    for (const auto &g : {GroupSpec({12}), GroupSpec({2, 3, 4}), direct_power(GroupSpec::cyclic(3), 4)}) {
        for (int k = 0; k < 10; k++) {
            auto s = random_state(g, rng);
            EXPECT_NEAR(qft(s).norm(), 1.0, 1e-9);
            EXPECT_LE(max_abs_diff(qft_inverse(qft(s)), s), 1e-9);
            EXPECT_LE(max_abs_diff(qft(qft_inverse(s)), s), 1e-9);
        }
    }
}

TEST(QftTest, AgreesWithDenseMatrixAndTensorPower) {
    Rng rng(6);
    GroupSpec site({3});
    GroupSpec g = direct_power(site, 3);
    Matrix dense = kron_power(qft_matrix(site), 3);
    Matrix direct = qft_matrix(g);
    EXPECT_LE((dense - direct).max_abs(), 1e-12);
    for (int k = 0; k < 5; k++) {
        auto s = random_state(g, rng);
        EXPECT_LE(max_abs_diff(qft(s), apply(dense, s)), 1e-12);
    }
}

TEST(QftTest, SendsBasisStatesToConjugateCharacters) {
    GroupSpec g({2, 6});
    for (std::uint64_t x = 0; x < g.order(); x++) {
        auto ex = g.element_at(x);
        EXPECT_LE(max_abs_diff(qft(basis_state(ex)), fourier_basis_state(-ex)), 1e-12);
        EXPECT_LE(max_abs_diff(qft(fourier_basis_state(ex)), basis_state(ex)), 1e-12);
    }
}

TEST(QftTest, SitesSubsetActsLocally) {
    GroupSpec site({4});
    GroupSpec g = direct_power(site, 2);
    Rng rng(9);
    auto a = random_state(site, rng);
    auto b = random_state(site, rng);
    std::size_t first[] = {0};
    auto got = qft_sites(tensor(a, b), first);
    EXPECT_LE(max_abs_diff(got, tensor(qft(a), b)), 1e-12);
    auto back = qft_sites(got, first, true);
    EXPECT_LE(max_abs_diff(back, tensor(a, b)), 1e-12);
}

TEST(CosetStateTest, Examples) {
    GroupSpec z4({4});
    auto whole = Subgroup::whole(z4);
    EXPECT_LE(max_abs_diff(coset_state(z4.zero(), whole, z4.zero()), vec(z4, {0.5, 0.5, 0.5, 0.5})), 1e-15);
    auto trivial = Subgroup::trivial(z4);
    EXPECT_LE(max_abs_diff(coset_state(z4.element({3}), trivial, z4.zero()), basis_state(z4.element({3}))), 1e-15);
    auto h = subgroup_from_generators(z4, {z4.element({2})});
    EXPECT_LE(max_abs_diff(coset_state(z4.zero(), h, z4.element({1})), vec(z4, {1 / kRoot2, 0, -1 / kRoot2, 0})),
              1e-15);
}

TEST(CosetStateTest, ClosedFormExamples) {
    GroupSpec z4({4});
    EXPECT_LE(max_abs_diff(coset_transform_closed_form(z4.zero(), Subgroup::whole(z4), z4.zero()),
                           basis_state(z4.zero())),
              1e-15);
    GroupSpec z2({2});
    EXPECT_LE(max_abs_diff(coset_transform_closed_form(z2.zero(), Subgroup::trivial(z2), z2.zero()),
                           vec(z2, {1 / kRoot2, 1 / kRoot2})),
              1e-15);
    auto h = subgroup_from_generators(z4, {z4.element({2})});
    auto one = z4.element({1});
    StateVector expected = vec(z4, {0, Complex(0, 1 / kRoot2), 0, Complex(0, -1 / kRoot2)});
    EXPECT_LE(max_abs_diff(coset_transform_closed_form(one, h, one), expected), 1e-15);
    EXPECT_LE(max_abs_diff(apply(qft_matrix(z4), coset_state(one, h, one)), expected), 1e-12);
}

TEST(CosetStateTest, TransformMatchesClosedFormOnRandomTuples) {
    std::vector<GroupSpec> groups = {GroupSpec({2}), GroupSpec({3}),    GroupSpec({2, 2}), GroupSpec({6}),
                                     GroupSpec({8}), GroupSpec({2, 4}), GroupSpec({3, 3}), GroupSpec({12}),
                                     GroupSpec({36}), GroupSpec({6, 6})};
    Rng rng(2024);
    std::size_t cases = 0;
    for (const auto &g : groups) {
        auto subs = enumerate_subgroups(g);
        for (int k = 0; k < 30; k++) {
            const auto &h = subs[rng.uniform_below(subs.size())];
            auto a = g.element_at(rng.uniform_below(g.order()));
            auto b = g.element_at(rng.uniform_below(g.order()));
            auto psi = coset_state(b, h, a);
            ASSERT_NEAR(psi.norm(), 1.0, 1e-12);
            ASSERT_LE(max_abs_diff(qft(psi), coset_transform_closed_form(b, h, a)), 1e-9);
            cases++;
        }
    }
    EXPECT_GE(cases, 200u);
}

TEST(WeylTest, Examples) {
    GroupSpec z3({3});
    EXPECT_LE(max_abs_diff(weyl_x(z3.element({1}), basis_state(z3.element({2}))), basis_state(z3.zero())), 0.0);
    GroupSpec z4({4});
    auto one = basis_state(z4.element({1}));
    EXPECT_LE(max_abs_diff(weyl_z(z4.element({1}), one), one.scaled(Complex(0, 1))), 1e-15);
    Rng rng(1);
    auto s = random_state(z4, rng);
    EXPECT_EQ(max_abs_diff(weyl_x(z4.zero(), s), s), 0.0);
    EXPECT_EQ(max_abs_diff(weyl_z(z4.zero(), s), s), 0.0);
}

TEST(WeylTest, CommutationPhase) {
    GroupSpec g({2, 3, 4});
    Rng rng(3);
    for (std::uint64_t a = 0; a < g.order(); a += 3) {
        for (std::uint64_t b = 0; b < g.order(); b += 5) {
            auto ea = g.element_at(a);
            auto eb = g.element_at(b);
            for (std::uint64_t y = 0; y < g.order(); y += 7) {
                auto ket = basis_state(g.element_at(y));
                auto xz = weyl_x(ea, weyl_z(eb, ket));
                auto zx = weyl_z(eb, weyl_x(ea, ket));
                Complex phase = std::conj(direct_character(g.moduli(), eb.coords(), ea.coords()));
                ASSERT_LE(max_abs_diff(xz, zx.scaled(phase)), 1e-9);
            }
        }
    }
}

TEST(WeylTest, CorruptIsXAfterZ) {
    GroupSpec g = direct_power(GroupSpec::cyclic(3), 2);
    Rng rng(4);
    auto s = random_state(g, rng);
    auto e1 = g.element({1, 0});
    auto e2 = g.element({2, 1});
    EXPECT_EQ(max_abs_diff(corrupt(e1, e2, s), weyl_x(e1, weyl_z(e2, s))), 0.0);
    EXPECT_NEAR(corrupt(e1, e2, s).norm(), 1.0, 1e-12);
}

TEST(TranslationTest, Examples) {
    GroupSpec z6({6});
    EXPECT_TRUE(translate_action_check(z6.zero(), z6.element({5})));
    for (int x = 0; x < 6; x++) {
        for (int t = 0; t < 6; t++) {
            EXPECT_TRUE(translate_action_check(z6.element({x}), z6.element({t})));
        }
    }
    GroupSpec z22({2, 2});
    for (std::uint64_t x = 0; x < 4; x++) {
        for (std::uint64_t t = 0; t < 4; t++) {
            auto ex = z22.element_at(x);
            auto et = z22.element_at(t);
            ASSERT_TRUE(translate_action_check(ex, et));
            double sign = std::popcount(x & t) % 2 ? -1.0 : 1.0;
            auto chi = fourier_basis_state(et);
            ASSERT_LE(max_abs_diff(weyl_x(ex, chi), chi.scaled(sign)), 1e-12);
        }
    }
}

TEST(ConvolutionTest, Examples) {
    GroupSpec z5({5});
    auto d2 = basis_state(z5.element({2}));
    auto d4 = basis_state(z5.element({4}));
    EXPECT_EQ(max_abs_diff(convolve(d2, d4), basis_state(z5.element({1}))), 0.0);
    Rng rng(8);
    auto f = random_state(z5, rng);
    EXPECT_LE(max_abs_diff(convolve(f, basis_state(z5.zero())), f), 1e-15);
    GroupSpec z2({2});
    auto plus = vec(z2, {1, 1});
    EXPECT_LE(max_abs_diff(convolve(plus, plus), vec(z2, {2, 2})), 1e-15);
}

TEST(ConvolutionTest, TransformTurnsConvolutionIntoProduct) {
    Rng rng(10);
    for (const auto &g : {GroupSpec({64}), GroupSpec({2, 4, 8}), GroupSpec({6, 6}), GroupSpec({5, 7})}) {
        for (int k = 0; k < 5; k++) {
            auto f = random_state(g, rng);
            auto h = random_state(g, rng);
            auto lhs = qft(convolve(f, h));
            auto rhs = pointwise_product(qft(f), qft(h)).scaled(std::sqrt(static_cast<double>(g.order())));
            ASSERT_LE(max_abs_diff(lhs, rhs), 1e-9) << g.to_string();
        }
    }
}

TEST(MeasurementTest, BasisStatesAreDeterministic) {
    GroupSpec g = direct_power(GroupSpec::cyclic(3), 3);
    Rng rng(12);
    auto x = g.element({2, 0, 1});
    std::size_t all[] = {0, 1, 2};
    for (int k = 0; k < 20; k++) {
        auto m = measure_standard(basis_state(x), all, rng);
        ASSERT_EQ(m.outcome.coords(), x.coords());
        auto f = measure_fourier(fourier_basis_state(x), all, rng);
        ASSERT_EQ(f.outcome.coords(), x.coords());
        ASSERT_LE(max_abs_diff(f.collapsed, fourier_basis_state(x)), 1e-12);
    }
}

TEST(MeasurementTest, PlusStateIsFair) {
    GroupSpec z2({2});
    Rng rng(13);
    std::size_t site[] = {0};
    int zeros = 0;
    const int n = 10000;
    for (int k = 0; k < n; k++) {
        zeros += measure_standard(vec(z2, {1 / kRoot2, 1 / kRoot2}), site, rng).outcome.coords()[0] == 0;
    }
    EXPECT_NEAR(static_cast<double>(zeros) / n, 0.5, 0.05);
}

TEST(MeasurementTest, BornRuleWithinThreeSigma) {
    GroupSpec z3({3});
    StateVector s = vec(z3, {std::sqrt(0.2), Complex(0, std::sqrt(0.5)), -std::sqrt(0.3)});
    auto probs = outcome_probabilities(s, std::vector<std::size_t>{0});
    EXPECT_NEAR(probs[0], 0.2, 1e-12);
    EXPECT_NEAR(probs[1], 0.5, 1e-12);
    EXPECT_NEAR(probs[2], 0.3, 1e-12);
    Rng rng(14);
    const int n = 10000;
    std::vector<int> counts(3);
    std::size_t site[] = {0};
    for (int k = 0; k < n; k++) {
        counts[measure_standard(s, site, rng).outcome.index()]++;
    }
    for (int i = 0; i < 3; i++) {
        double sigma = std::sqrt(probs[i] * (1 - probs[i]) / n);
        EXPECT_NEAR(static_cast<double>(counts[i]) / n, probs[i], 3 * sigma);
    }
}

TEST(MeasurementTest, PartialMeasurementCollapses) {
    GroupSpec site({2});
    GroupSpec g = direct_power(site, 2);
    // (|00> + |11>) / sqrt 2
    StateVector bell = vec(g, {1 / kRoot2, 0, 0, 1 / kRoot2});
    Rng rng(15);
    std::size_t second[] = {1};
    for (int k = 0; k < 20; k++) {
        auto m = measure_standard(bell, second, rng);
        int b = m.outcome.coords()[0];
        ASSERT_LE(max_abs_diff(m.collapsed, basis_state(g.element({b, b}))), 1e-12);
    }
}

TEST(MeasurementTest, ZeroStateIsInvariantViolation) {
    GroupSpec z2({2});
    Rng rng(16);
    std::size_t site[] = {0};
    EXPECT_THROW(measure_standard(StateVector(z2), site, rng), InvariantViolation);
}

TEST(SiteOpsTest, RestrictAndPermute) {
    GroupSpec site({3});
    Rng rng(17);
    auto a = random_state(site, rng);
    auto b = random_state(site, rng);
    auto c = random_state(site, rng);
    auto abc = tensor(tensor(a, b), c);
    std::size_t order[] = {2, 0, 1};
    EXPECT_LE(max_abs_diff(permute_sites(abc, order), tensor(tensor(c, a), b)), 1e-15);
    std::size_t pin[] = {1};
    auto rest = restrict_sites(abc, pin, site.element({2}));
    EXPECT_LE(max_abs_diff(rest, tensor(a, c).scaled(b[2])), 1e-15);
}

TEST(DensityTest, SingleBasisStateIsProjector) {
    GroupSpec g({4});
    std::vector<StateVector> one = {basis_state(g.element({2}))};
    auto rho = density_sum(one);
    for (std::size_t r = 0; r < 4; r++) {
        for (std::size_t c = 0; c < 4; c++) {
            EXPECT_EQ(rho.matrix()(r, c), Complex(r == 2 && c == 2 ? 1.0 : 0.0));
        }
    }
    EXPECT_EQ(rho.hermiticity_error(), 0.0);
    EXPECT_NEAR(rho.trace().real(), 1.0, 1e-15);
}

TEST(DensityTest, PairSumOfBasisIsDiagonal) {
    GroupSpec g({3});
    std::vector<StateVector> basis;
    for (int y = 0; y < 3; y++) {
        basis.push_back(basis_state(g.element({y})));
    }
    auto s = pair_sum(basis);
    for (std::uint64_t i = 0; i < 9; i++) {
        EXPECT_EQ(s[i], Complex(i % 3 == i / 3 ? 1.0 : 0.0));
    }
}

TEST(DensityTest, FourierBasisResolvesIdentity) {
    GroupSpec g({2, 3});
    std::vector<StateVector> chis;
    for (std::uint64_t t = 0; t < g.order(); t++) {
        chis.push_back(fourier_basis_state(g.element_at(t)));
    }
    auto rho = density_sum(chis);
    EXPECT_LE((rho.matrix() - Matrix::identity(g.order())).max_abs(), 1e-12);
}

}  // namespace
}  // namespace abelcss
