# Copyright 2026 The chancmp Authors
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

"""Channel comparison by degradability and conditional min-entropy."""

import json

from ._chancmp import (
    AmbiguousVerdict,
    DocumentError,
    bilinear_minimax,
    compare_channels,
    compare_quantum,
    conditional_entropy,
    conditional_min_entropy,
    depolarizing_choi,
    extract_violation_witness,
    find_degrading_channel,
    guessing_probability,
    helstrom,
    mutual_information,
    pguess_bracket,
    run_demo,
    separate_point,
    shannon_entropy,
)
from ._chancmp import load_document_json as _load_document_json
from ._chancmp import parse_document_json as _parse_document_json


def load_document(path):
    """Loads and validates a toolkit document, returning it as a dict."""
    return json.loads(_load_document_json(str(path)))


def parse_document(text):
    return json.loads(_parse_document_json(text))


__all__ = [
    "AmbiguousVerdict",
    "DocumentError",
    "bilinear_minimax",
    "compare_channels",
    "compare_quantum",
    "conditional_entropy",
    "conditional_min_entropy",
    "depolarizing_choi",
    "extract_violation_witness",
    "find_degrading_channel",
    "guessing_probability",
    "helstrom",
    "load_document",
    "mutual_information",
    "parse_document",
    "pguess_bracket",
    "run_demo",
    "separate_point",
    "shannon_entropy",
]
