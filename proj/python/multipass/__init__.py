# Copyright 2026 The Multipass Authors
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

"""Multi-pass SU(2) gate error amplification and estimation."""

import json as _json

from ._multipass import *  # noqa: F401,F403
from ._multipass import __version__, run_config as _run_config


def run(config, command, protocol=None):
    """Runs a CLI command on a config dict and returns the decoded report."""
    text = config if isinstance(config, str) else _json.dumps(config)
    return _json.loads(_run_config(text, command, protocol))
