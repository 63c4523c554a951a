# Copyright 2026 The IQEC Authors
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
"""Indefinite-causal-order error correction for quantum metrology."""

import json
import os
from pathlib import Path

_bundled = Path(__file__).with_name("presets")
if _bundled.is_dir():
    os.environ.setdefault("IQEC_PRESET_DIR", str(_bundled))

from ._iqec import (  # noqa: E402
    Error,
    InputError,
    NoSolution,
    PhysicsError,
    check_theorem,
    find_gates,
    preset_dir,
    preset_names,
    qfi_mixed,
    qfi_pure,
)
from . import _iqec  # noqa: E402

__all__ = [
    "Error",
    "InputError",
    "NoSolution",
    "PhysicsError",
    "check_theorem",
    "find_gates",
    "load_preset",
    "normalize_config",
    "preset_dir",
    "preset_names",
    "qfi_mixed",
    "qfi_pure",
    "run",
    "write",
]


def _text(config):
    if isinstance(config, (str, os.PathLike)) and Path(config).suffix == ".json" and Path(config).is_file():
        return Path(config).read_text()
    if isinstance(config, str):
        return config
    return json.dumps(config)


def load_preset(name):
    """Effective config of a shipped preset as a dict."""
    return json.loads(_iqec.preset_json(name))


def normalize_config(config):
    """Validated config (dict, JSON text or path) with defaults filled in."""
    return json.loads(_iqec.normalize_config(_text(config)))


def run(config, workers=0):
    """QFI curves for every scenario; one dict per scenario, in config order."""
    return _iqec.run_json(_text(config), workers)


def write(config, out, workers=0):
    """Runs a config and writes the CSV and effective-config files into `out`."""
    return [Path(p) for p in _iqec.write_json(_text(config), str(out), workers)]
