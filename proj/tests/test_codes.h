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

// Small codes shared by the test binaries.

#ifndef ABELCSS_TESTS_TEST_CODES_H
#define ABELCSS_TESTS_TEST_CODES_H

#include <cmath>
#include <numbers>
#include <vector>

#include "abelcss/css_code.h"

namespace abelcss::testing {

inline std::vector<std::vector<int>> hamming_generators() {
    return {{1, 1, 1, 0, 0, 0, 0}, {1, 0, 0, 1, 1, 0, 0}, {0, 1, 0, 1, 0, 1, 0}, {1, 1, 0, 1, 0, 0, 1}};
}

// Hamming [7,4] over Z2 with C2 its annihilator (the 7-qubit Steane code).
inline CssCode steane() {
    GroupSpec g = GroupSpec::cyclic(2);
    GroupSpec g7 = direct_power(g, 7);
    std::vector<GroupElement> gens;
    for (const auto &w : hamming_generators()) {
        gens.push_back(g7.element(w));
    }
    Subgroup c1 = subgroup_from_generators(g7, gens);
    return CssCode(c1, annihilator(c1));
}

// Ternary Hamming [4,2,3] as C1, C2 = {0}.
inline CssCode ternary_hamming() {
    return make_css(GroupSpec::cyclic(3), 4, std::vector<std::vector<int>>{{1, 0, 1, 1}, {0, 1, 1, 2}},
                    std::vector<std::vector<int>>{});
}

// G = Z2, n = 2, C1 = G^2, C2 = {00, 01}.
inline CssCode small_z2() {
    return make_css(GroupSpec::cyclic(2), 2, std::vector<std::vector<int>>{{1, 0}, {0, 1}},
                    std::vector<std::vector<int>>{{0, 1}});
}

// Repetition code of length n over Z_m, C2 = {0}.
inline CssCode repetition(int m, std::size_t n) {
    return make_css(GroupSpec::cyclic(m), n, std::vector<std::vector<int>>{std::vector<int>(n, 1)},
                    std::vector<std::vector<int>>{});
}

// exp(2 pi i num / den) evaluated directly, as an oracle independent of root_of_unity.
inline Complex direct_root(long long num, long long den) {
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den));
}

// chi_x(y) from coordinates, summing the angle factor by factor.
inline Complex direct_character(const std::vector<int> &moduli, const std::vector<int> &x, const std::vector<int> &y) {
    double angle = 0.0;
    for (std::size_t j = 0; j < moduli.size(); j++) {
        angle += 2.0 * std::numbers::pi * static_cast<double>((x[j] * y[j]) % moduli[j]) / moduli[j];
    }
    return std::polar(1.0, angle);
}

}  // namespace abelcss::testing

#endif
