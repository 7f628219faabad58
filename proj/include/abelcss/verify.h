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

#ifndef ABELCSS_VERIFY_H
#define ABELCSS_VERIFY_H

#include <string>
#include <vector>

#include "abelcss/css_code.h"
#include "abelcss/group.h"

namespace abelcss {

enum class CheckStatus { kPass, kFail, kHypothesisViolated };

std::string to_string(CheckStatus status);

/// Outcome of one identity sweep: the worst deviation seen over `cases` instances.
struct IdentityResult {
    std::string identity;
    std::string scope;  // group or code the sweep ran on
    CheckStatus status = CheckStatus::kPass;
    double max_error = 0.0;
    double tolerance = 0.0;
    std::size_t cases = 0;
    std::string detail;
};

struct VerifyOptions {
    std::vector<GroupSpec> groups;
    /// Codes for the codeword-state identities.
    std::vector<CssCode> codes;
    /// Identity names (see identity_names()); empty runs all of them.
    std::vector<std::string> identities;
    std::size_t transform_trials = 200;
    std::uint64_t seed = 0;
    double tolerance = 1e-9;
};

struct VerifyReport {
    std::vector<IdentityResult> results;
    /// No sweep failed (hypothesis violations are not failures).
    bool ok() const;
};

/// Names accepted in VerifyOptions::identities.
const std::vector<std::string> &identity_names();

/// Z2, Z3, Z4, Z6, Z2xZ2, Z2xZ4.
std::vector<GroupSpec> default_verify_groups();
/// G = Z2, n = 2, C1 = G^2, C2 = <(0,1)>; and G = Z3, n = 2, C1 = G^2, C2 = <(1,0)>.
std::vector<CssCode> default_verify_codes();
/// One group of each order in {2, 3, 4, 6, 8, 9, 12, 36}, plus the non-cyclic ones of those orders.
std::vector<GroupSpec> coset_transform_groups();

VerifyReport run_verification(const VerifyOptions &options);

// Individual sweeps, also used by the acceptance suite.
IdentityResult check_schur(const GroupSpec &g, double tol);
IdentityResult check_pairing(const GroupSpec &g, double tol);
IdentityResult check_character_sum(const GroupSpec &g, double tol);
IdentityResult check_coset_transform(const std::vector<GroupSpec> &groups, std::size_t trials, std::uint64_t seed,
                               double tol);
IdentityResult check_qft_unitary(const GroupSpec &g, double tol);
/// F on Z2^n against the Hadamard transform, n = 1..max_n.
IdentityResult check_qft_hadamard(std::size_t max_n, double tol);
/// F on Z_m against the DFT matrix, m = 2..max_m.
IdentityResult check_qft_dft(int max_m, double tol);
IdentityResult check_translation(const GroupSpec &g, double tol);
/// X_a Z_b = chi_b(a)^{-1} Z_b X_a on every basis state.
IdentityResult check_weyl_commutation(const GroupSpec &g, double tol);
IdentityResult check_convolution(const GroupSpec &g, std::uint64_t seed, double tol);
IdentityResult check_annihilator_duality(const GroupSpec &g);
/// Averaging over z, resolution of the identity, and the pair-sum identity for
/// the codeword states of one code. Each needs C2 to meet C2-perp only in zero.
std::vector<IdentityResult> check_codeword_identities(const CssCode &code, double tol);

}  // namespace abelcss

#endif
