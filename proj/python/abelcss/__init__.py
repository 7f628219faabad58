# Copyright 2026 The abelcss Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Finite abelian group CSS codes and key distribution simulators."""

import json

from ._abelcss import (
    ConfigError,
    CssCode,
    GroupSpec,
    InvariantViolation,
    ResourceError,
    Subgroup,
    __version__,
    coset_state,
    coset_transform_closed_form,
    enumerate_subgroups,
    qft,
    qft_inverse,
    run_protocol_json,
    verify_json,
)


def run_protocol(code, protocol, trials, seed, **kwargs):
    """Runs a batch of protocol trials and returns the parsed report."""
    return json.loads(run_protocol_json(code, protocol, trials, seed, **kwargs))


def verify(identities=(), seed=0, tolerance=1e-9):
    """Runs the identity sweeps and returns the parsed report."""
    return json.loads(verify_json(list(identities), seed, tolerance))


__all__ = [
    "ConfigError",
    "CssCode",
    "GroupSpec",
    "InvariantViolation",
    "ResourceError",
    "Subgroup",
    "__version__",
    "coset_state",
    "coset_transform_closed_form",
    "enumerate_subgroups",
    "qft",
    "qft_inverse",
    "run_protocol",
    "verify",
]
