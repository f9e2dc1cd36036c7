"""Curvature symmetries of Kaehler manifolds.

Thin wrappers over the compiled core: tensors come back as numpy arrays,
reports as plain dictionaries with the same fields as the CLI's JSON.
"""

import json

import numpy as np

from . import _core
from ._core import (
    ArgumentError,
    Chart,
    DomainError,
    NotCurvatureDependentError,
    NumericError,
    certify_auxalg,
    complex_tachibana,
    nabla_riemann,
    pi_dot_pi,
    riemann,
    rr,
    sectional_curvature,
    suite_ids,
    tachibana,
)

__all__ = [
    "ArgumentError",
    "Chart",
    "DomainError",
    "NotCurvatureDependentError",
    "NumericError",
    "catalog",
    "certify_auxalg",
    "classify",
    "cli",
    "complex_tachibana",
    "nabla_riemann",
    "pi_dot_pi",
    "riemann",
    "rr",
    "run_suite",
    "sectional_curvature",
    "suite_ids",
    "tachibana",
]


def catalog():
    return json.loads(_core.catalog())


def classify(manifold, point, samples=500, seed=0, tol=1e-8):
    return json.loads(_core.classify(manifold, np.asarray(point, dtype=float), samples, seed, tol))


def run_suite(suite, manifolds=(), points=5, samples=500, seed=0, tol=None, dims=()):
    return json.loads(_core.run_suite(suite, list(manifolds), points, samples, seed, tol, list(dims)))


def cli(*args):
    """Runs the command line front end in-process; returns (exit code, stdout, stderr)."""
    return _core.cli([str(a) for a in args])
