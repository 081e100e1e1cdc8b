# Copyright 2026 The liouvep authors
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

import json
import os
import subprocess

import pytest

CLI = os.environ.get("LIOUVEP_CLI_PATH")

pytestmark = pytest.mark.skipif(
    not CLI or not os.path.exists(CLI), reason="LIOUVEP_CLI_PATH not set"
)


def run(*args):
    return subprocess.run([CLI, *args], capture_output=True, text=True)


def test_version_exits_ok():
    r = run("--version")
    assert r.returncode == 0
    assert r.stdout.strip()


def test_validate_passes_on_fresh_build():
    r = run("validate")
    assert r.returncode == 0, r.stdout + r.stderr
    assert "5/5 gates passed" in r.stdout


def test_spectrum_emits_json():
    r = run("spectrum", "--channel", "dephasing", "--c", "0.3", "--j", "0.25")
    assert r.returncode == 0, r.stderr
    rep = json.loads(r.stdout)
    assert rep["vec_dim"] == 16
    assert rep["ep_strength"] > 0


def test_bad_config_exits_2():
    r = run("spectrum", "--c", "1.5")
    assert r.returncode == 2
