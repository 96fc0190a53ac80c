"""Internal-consistency oracles relating independent evaluation routes.

Each oracle compares two implementations of the same quantity that share no
code path for the part under test:

    ext-deriv-antisymmetrization  d Omega vs. the cyclic sum of D Omega
    codiff-frame-trace            closed-form delta Omega vs. the negative
                                  frame trace of D Omega
    nijenhuis-identity            the D Omega identity vs. the closed forms
    restriction                   product tensors on first-factor arguments
                                  vs. the single-fibre forms
    curvature-commutator          G([r, a], b) vs. <R([a, b]^), x ^ y>
    fibre-kaehler-parallel        D(K Y) = K(D Y) on the fibre under
                                  central-difference field derivatives

Failures report the worst-offending configuration, reproducible from the
seed.  The ``corrupt_sign_table`` hook flips the sign table used by the
derivative evaluators, which must be caught by the Nijenhuis identity check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import curvature, fibre, tensors
from .classifier import _FrameStack, sample_point
from .tensors import Params

ORACLE_TOLS = {
    "ext-deriv-antisymmetrization": 1e-10,
    "codiff-frame-trace": 1e-10,
    "nijenhuis-identity": 1e-10,
    "restriction": 1e-12,
    "curvature-commutator": 1e-10,
    "fibre-kaehler-parallel": 1e-6,
}

DEFAULT_TRIALS = {
    "ext-deriv-antisymmetrization": 200,
    "codiff-frame-trace": 200,
    "nijenhuis-identity": 200,
    "restriction": 200,
    "curvature-commutator": 1000,
    "fibre-kaehler-parallel": 20,
}


@dataclass
class OracleResult:
    name: str
    max_residual: float
    tol: float
    trials: int
    ok: bool
    worst: dict

    def line(self) -> str:
        status = "ok  " if self.ok else "FAIL"
        return (f"{status} {self.name:<32} max={self.max_residual:.3e} "
                f"tol={self.tol:.0e} trials={self.trials} worst={self.worst}")


def _random_config(rng, i: int):
    component = ("++", "+-")[i % 2]
    n = 1 + (i % 4)
    params = Params(float(rng.uniform(0.3, 2.0)), float(rng.uniform(0.3, 2.0)), n)
    rmat = curvature.random_strict_operator(rng)
    p = sample_point(rng, component)
    stack = _FrameStack(tensors.frame_at_point(p, params))
    args = [stack.combine(rng.standard_normal(8)) for _ in range(3)]
    norms = [tensors.norm_Ht(p, a, params) for a in args]
    return component, params, rmat, p, args, norms


_ORACLE_STREAM = {
    "ext-deriv-antisymmetrization": 1,
    "codiff-frame-trace": 2,
    "nijenhuis-identity": 3,
    "restriction": 4,
}


def _tensor_oracle(seed: int, trials: int, kind: str) -> OracleResult:
    rng = np.random.default_rng([seed, _ORACLE_STREAM[kind]])
    worst_val, worst = 0.0, {}
    for i in range(trials):
        component, params, rmat, p, (a, b, c), (na, nb, nc) = _random_config(rng, i)
        if kind == "ext-deriv-antisymmetrization":
            cyc = (tensors.cov_deriv_omega(p, rmat, params, a, b, c)
                   + tensors.cov_deriv_omega(p, rmat, params, b, c, a)
                   + tensors.cov_deriv_omega(p, rmat, params, c, a, b))
            res = abs(tensors.ext_deriv_omega(p, rmat, params, a, b, c) - cyc)
            res /= 1.0 + na * nb * nc
        elif kind == "codiff-frame-trace":
            res = abs(tensors.codiff_omega(p, rmat, params, a)
                      - tensors.codiff_via_frame(p, rmat, params, a))
            res /= 1.0 + na
        elif kind == "nijenhuis-identity":
            reading, _ = tensors.resolve_nijenhuis_reading()
            res = abs(tensors.nijenhuis_pairing(p, rmat, params, a, b, c)
                      - tensors.nijenhuis_closed_form(p, rmat, params, a, b, c, reading))
            res /= 1.0 + na * nb * nc
        elif kind == "restriction":
            first = [tensors.gtangent(g.horizontal, g.vertical.v1) for g in (a, b, c)]
            res = max(tensors.restriction_residuals(p, rmat, params, *first).values())
        else:  # pragma: no cover
            raise AssertionError(kind)
        if res > worst_val:
            worst_val, worst = res, {"trial": i, "component": component, "n": params.n}
    tol = ORACLE_TOLS[kind]
    return OracleResult(kind, worst_val, tol, trials, worst_val <= tol, worst)


def _curvature_commutator(seed: int, trials: int) -> OracleResult:
    rng = np.random.default_rng([seed, 5])
    worst_val, worst = 0.0, {}
    for i in range(trials):
        m = rng.standard_normal((6, 6))
        rmat = 0.5 * (m + m.T)
        a = rng.standard_normal((4, 4))
        a = 0.5 * (a - a.T)
        b = rng.standard_normal((4, 4))
        b = 0.5 * (b - b.T)
        x = rng.standard_normal(4)
        y = rng.standard_normal(4)
        r = curvature.curvature_endo(rmat, x, y)
        lhs = fibre.inner_G(r @ a - a @ r, b)
        bracket = tensors.two_vector_of_endo(a @ b - b @ a)
        rhs = float((rmat @ bracket) @ tensors.wedge_of_pair(x, y))
        res = abs(lhs - rhs) / (1.0 + np.linalg.norm(x) * np.linalg.norm(y))
        if res > worst_val:
            worst_val, worst = res, {"trial": i}
    tol = ORACLE_TOLS["curvature-commutator"]
    return OracleResult("curvature-commutator", worst_val, tol, trials, worst_val <= tol, worst)


def _fibre_kaehler(seed: int, trials: int) -> OracleResult:
    rng = np.random.default_rng([seed, 6])
    worst_val, worst = 0.0, {}
    for i in range(trials):
        dim = 4 if i % 2 == 0 else 6
        j = fibre.random_complex_structure(dim, rng)
        x = fibre.random_tangent(j, rng)
        q = rng.standard_normal((dim, dim))
        field = fibre.tangent_projection_field(0.5 * (q - q.T))
        k_field = fibre.FibreVectorField(evaluate=lambda a, f=field: a @ f.evaluate(a))
        lhs = fibre.fibre_levi_civita(k_field, x, j)
        rhs = j @ fibre.fibre_levi_civita(field, x, j)
        res = float(np.max(np.abs(lhs - rhs)))
        if res > worst_val:
            worst_val, worst = res, {"trial": i, "dim": dim}
    tol = ORACLE_TOLS["fibre-kaehler-parallel"]
    return OracleResult("fibre-kaehler-parallel", worst_val, tol, trials, worst_val <= tol, worst)


def run_selftest(seed: int = 1, trials: int | None = None,
                 corrupt_sign_table: bool = False) -> list[OracleResult]:
    """Run every oracle; ``trials`` overrides the per-oracle defaults."""

    def count(kind: str) -> int:
        return trials if trials is not None else DEFAULT_TRIALS[kind]

    def run_all() -> list[OracleResult]:
        out = [_tensor_oracle(seed, count(k), k)
               for k in ("ext-deriv-antisymmetrization", "codiff-frame-trace",
                         "nijenhuis-identity", "restriction")]
        out.append(_curvature_commutator(seed, count("curvature-commutator")))
        out.append(_fibre_kaehler(seed, count("fibre-kaehler-parallel")))
        return out

    if corrupt_sign_table:
        with tensors._corrupted_sign_table():
            return run_all()
    return run_all()


def all_ok(results: list[OracleResult]) -> bool:
    return all(r.ok for r in results)
