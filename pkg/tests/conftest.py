# Copyright 2026 The multiprecision-fpmul Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import os

import hypothesis
import pytest

from multiprecision_fpmul.karatsuba import clear_base_cache
from multiprecision_fpmul.word_format import ModeId, Word67, encode_word

hypothesis.settings.register_profile("default", max_examples=100, deadline=None)
hypothesis.settings.register_profile("ci", max_examples=500, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "default"))

M6_ONE = encode_word(ModeId.M6, 0, 1023, 0)
M6_TWO = encode_word(ModeId.M6, 0, 1024, 0)


@pytest.fixture
def m6_one() -> Word67:
    return M6_ONE


@pytest.fixture(autouse=True)
def _fresh_base_cache():
    clear_base_cache()
    yield
    clear_base_cache()
