"""Python interface to the levyconv library.

Scenarios are plain dicts with the same layout as the scenario JSON files
used by the command-line tool.
"""

import json

from . import _levyconv as _core
from ._levyconv import (
    Error,
    analytic_bound_constant,
    d0_upper,
    dyadic_project,
    haar_project,
    lp_norm,
    power_semigroup_constant,
    shifted_haar_project,
)

__all__ = [
    "Error",
    "analytic_bound",
    "analytic_bound_constant",
    "convolve",
    "d0_upper",
    "dyadic_project",
    "haar_project",
    "law_test",
    "lp_norm",
    "maximal_ratio",
    "power_semigroup_constant",
    "run_cli",
    "shifted_haar_project",
    "simulate",
]


def _text(scenario):
    return scenario if isinstance(scenario, str) else json.dumps(scenario)


def simulate(scenario, index=0):
    """Atoms of draw `index`: (times, mark indices)."""
    return _core.simulate(_text(scenario), index)


def convolve(scenario, index=0):
    """Solution path of draw `index`: (times, values, left_limits), values as rows."""
    return _core.convolve(_text(scenario), index)


def law_test(a, b, force=False):
    return json.loads(_core.law_test(_text(a), _text(b), force))


def maximal_ratio(scenario, q_prime=None):
    return json.loads(_core.maximal_ratio(_text(scenario), -1.0 if q_prime is None else q_prime))


def analytic_bound(scenario):
    return json.loads(_core.analytic_bound(_text(scenario)))


def run_cli(args):
    """Runs the command-line tool in-process; returns (exit code, stdout, stderr)."""
    return _core.run_cli(["levyconv"] + [str(a) for a in args])
