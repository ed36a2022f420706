# -*- coding: utf-8 -*-
# ------------------------------------------------------------------------------
#
#   Copyright 2024 Valory AG
#
#   Licensed under the Apache License, Version 2.0 (the "License");
#   you may not use this file except in compliance with the License.
#   You may obtain a copy of the License at
#
#       http://www.apache.org/licenses/LICENSE-2.0
#
#   Unless required by applicable law or agreed to in writing, software
#   distributed under the License is distributed on an "AS IS" BASIS,
#   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
#   See the License for the specific language governing permissions and
#   limitations under the License.
#
# ------------------------------------------------------------------------------
"""This module contains the worked example acceptance tests."""
import json
from pathlib import Path

from click.testing import CliRunner

from packages.valory.skills.torus_multipliers.cli import cli
from packages.valory.skills.torus_multipliers.utils.example import run_example_checks
from tests.constants import EXIT_MISMATCH, example_scenario


class TestWorkedExample:
    """Recompute the worked example end to end."""

    def test_exact_checks(self) -> None:
        """Test that every exact quantity matches."""
        checks = run_example_checks()
        assert len(checks) == 19
        failed = [(c.name, c.expected, c.actual) for c in checks if not c.passed]
        assert not failed, failed

    def test_simulated_checks(self) -> None:
        """Test that the orbit checks agree with the exact results."""
        checks = run_example_checks(simulate=True, samples=200, seed=5)
        assert len(checks) == 21
        assert all(c.passed for c in checks)

    def test_simulated_checks_at_default_samples(self) -> None:
        """Test the orbit checks on the default thousand seeded samples."""
        checks = run_example_checks(simulate=True)
        assert len(checks) == 21
        failed = [(c.name, c.expected, c.actual) for c in checks if not c.passed]
        assert not failed, failed

    def test_demo(self) -> None:
        """Test the demo command."""
        result = CliRunner().invoke(cli, ["demo", "--json", "--simulate", "--samples", "200"])
        assert result.exit_code == 0, result.output
        report = json.loads(result.stdout)
        assert report["passed"] is True
        assert {c["name"] for c in report["checks"]} >= {
            "multiplier index",
            "minimal power k",
            "semiconjugacy orbit residual",
        }

    def test_demo_text(self) -> None:
        """Test the plain text demo output."""
        result = CliRunner().invoke(cli, ["demo"])
        assert result.exit_code == 0, result.output
        assert "MISMATCH" not in result.output
        assert "minimal power k" in result.output

    def test_demo_mismatch(self, tmp_path: Path) -> None:
        """Test that a modified example is reported as a mismatch."""
        data = example_scenario()
        data["map"]["matrix"] = [[2, 1], [1, 2]]
        path = tmp_path / "example.json"
        path.write_text(json.dumps(data), encoding="utf-8")
        result = CliRunner().invoke(cli, ["demo", "--scenario", str(path)])
        assert result.exit_code == EXIT_MISMATCH
        assert "MISMATCH" in result.output
