# Copyright 2026 The aka-lab Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Authenticated key agreement lab for the baseline and dynamic-pseudonym protocols."""

from ._akalab import (
    AkalabError,
    measure_complexity,
    run_attack,
    run_cli,
    security_matrix,
    sha256,
)

__all__ = [
    "AkalabError",
    "measure_complexity",
    "run_attack",
    "run_cli",
    "security_matrix",
    "sha256",
]
