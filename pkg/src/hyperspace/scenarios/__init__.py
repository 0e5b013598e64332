"""Declarative scenarios: YAML files binding spaces, sets, families, sequences and checks."""

from __future__ import annotations

from importlib import resources

from .model import BindingError, Resolution, Scenario, ScenarioError, load_scenario, parse_scenario
from .runner import CSV_COLUMNS, Report, Row, run_scenario

BUILTIN_IDS = (
    "ex-3-4",
    "ex-3-5",
    "ex-3-6",
    "ex-3-7",
    "ex-4-6",
    "ex-4-11",
    "hausdorff-identity",
    "aw-lines",
)


class UnknownScenario(KeyError):
    def __str__(self):
        return f"unknown scenario {self.args[0]!r}; known ids: {', '.join(BUILTIN_IDS)}"


def builtin_scenario(name: str) -> Scenario:
    if name not in BUILTIN_IDS:
        raise UnknownScenario(name)
    path = resources.files(__package__).joinpath("builtin", f"{name}.yaml")
    with resources.as_file(path) as p:
        return load_scenario(p)


__all__ = [
    "BUILTIN_IDS",
    "BindingError",
    "CSV_COLUMNS",
    "Report",
    "Resolution",
    "Row",
    "Scenario",
    "ScenarioError",
    "UnknownScenario",
    "builtin_scenario",
    "load_scenario",
    "parse_scenario",
    "run_scenario",
]
