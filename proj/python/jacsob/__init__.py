"""Jacobi expansions on (0, pi): eigenfunctions, derivatives, potentials,
Poisson integrals, Riesz transforms, Sobolev norms and verification suites."""

import json

from ._core import (
    ConfigError,
    DomainError,
    GridSpec,
    JacobiParams,
    adjoint,
    critical_exponent,
    derivative,
    eigenvalue,
    exponent_range,
    jacobi_poly,
    kernel,
    lp_norm,
    main,
    norm_constant,
    phi,
    poisson,
    potential,
    potential_norm,
    psi,
    random_test_function,
    riesz_transform,
    sobolev_norm,
    synthesize,
)
from . import _core

__all__ = [
    "ConfigError",
    "DomainError",
    "GridSpec",
    "JacobiParams",
    "adjoint",
    "critical_exponent",
    "derivative",
    "eigenvalue",
    "exponent_range",
    "jacobi_poly",
    "kernel",
    "lp_norm",
    "main",
    "norm_constant",
    "phi",
    "poisson",
    "potential",
    "potential_norm",
    "psi",
    "random_test_function",
    "riesz_transform",
    "sobolev_norm",
    "synthesize",
    "verify",
]


def verify(suite, alpha=0.0, beta=0.0, *, p=2.0, m=1, seed=42, N=256, grid=None):
    """Run one verification suite and return its report as a dict.

    suite is one of identities, theorem-a, theorem-b, poisson, pencil,
    classical, maximal. Infinite values appear as the string "inf".
    """
    params = JacobiParams(alpha, beta)
    grid = grid if grid is not None else GridSpec()
    runners = {
        "identities": lambda: _core._identity_suite(params, N, grid),
        "theorem-a": lambda: _core._theorem_a(params, p, m, seed, N, grid),
        "theorem-b": lambda: _core._theorem_b(params, p, seed, N, grid),
        "poisson": lambda: _core._poisson_suite(params, p, seed, N, grid),
        "pencil": lambda: _core._pencil_suite(params, N, grid),
        "classical": lambda: _core._classical_comparison(params, p, m, grid),
        "maximal": lambda: _core._maximal_sobolev(params, p, seed, N, grid),
    }
    if suite not in runners:
        raise ValueError(f"unknown suite {suite!r}; expected one of {sorted(runners)}")
    return json.loads(runners[suite]())
