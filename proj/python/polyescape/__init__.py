"""Python bindings for the polyescape decision procedure.

Instances and results are plain dicts in the same JSON layout the CLI uses.
"""

import json

from ._core import ResourceLimitExceeded, __version__
from . import _core

__all__ = ["decide", "check_witness", "spectrum", "simulate", "ResourceLimitExceeded", "__version__"]


def _text(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


def decide(instance, *, max_branches=1000000, timeout=300.0, certificate=False):
    """Return the verdict document for an instance dict (or JSON string)."""
    return json.loads(_core.decide_json(_text(instance), max_branches, timeout, certificate))


def check_witness(instance, witness):
    """(accepted, reason) for a candidate point, verdict dict or witness dict."""
    return _core.check_witness_json(_text(instance), _text(witness))


def spectrum(matrix):
    """Minimal polynomial and eigenvalue records of a rational matrix."""
    return json.loads(_core.spectrum_json(_text(matrix)))


def simulate(instance, x0, horizon=10.0, samples=101):
    """Sampled floating-point trajectory: (times, points)."""
    return _core.simulate_json(_text(instance), [float(v) for v in x0], horizon, samples)
