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

#ifndef ABELCSS_JSON_IO_H
#define ABELCSS_JSON_IO_H

#include <filesystem>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "abelcss/css_code.h"
#include "abelcss/group.h"
#include "abelcss/hilbert.h"
#include "abelcss/qkd.h"
#include "abelcss/verify.h"
#include "json.hpp"

namespace abelcss {

/// Key order is insertion order, so dumps are stable and readable.
using Json = nlohmann::ordered_json;

inline constexpr const char *kToolName = "abelcss";
inline constexpr const char *kToolVersion = "0.1.0";

/// Malformed or inconsistent configuration input.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Throws ConfigError naming the first key of `obj` not in `allowed`.
void require_known_keys(const Json &obj, std::initializer_list<const char *> allowed, const std::string &where);

Json group_to_json(const GroupSpec &g);
/// {"moduli": [...], "site_rank": k}; site_rank defaults to the number of moduli.
GroupSpec group_from_json(const Json &j);

/// {"moduli", "site_rank", "amplitudes": [[re, im], ...]} in index order.
Json state_to_json(const StateVector &s);
StateVector state_from_json(const Json &j);

/// Code definition: group of one site, block length and generator words of C1 and C2.
struct CodeDefinition {
    std::vector<int> moduli;
    std::size_t n = 0;
    std::vector<std::vector<int>> c1;
    std::vector<std::vector<int>> c2;
};

Json code_definition_to_json(const CodeDefinition &def);
CodeDefinition code_definition_from_json(const Json &j);
/// `ref` is either an inline definition or a string path, resolved against `base_dir`.
CodeDefinition resolve_code_reference(const Json &ref, const std::filesystem::path &base_dir);
CssCode build_code(const CodeDefinition &def);

/// d1, d2_perp, t1, t2, dimension and, when given, the KL outcome with its alpha matrix.
Json code_analysis_to_json(const CssCode &code, const KlResult *kl = nullptr);
Json kl_to_json(const KlResult &kl);

Json transcript_to_json(const ProtocolTranscript &t);
Json summary_to_json(const ProtocolSummary &s);

Json identity_result_to_json(const IdentityResult &r);
Json verify_report_to_json(const VerifyReport &r);

Json complex_to_json(Complex c);

/// Parses a JSON file; syntax and I/O errors become ConfigError.
Json read_json_file(const std::filesystem::path &path);

}  // namespace abelcss

#endif
