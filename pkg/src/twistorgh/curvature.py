"""Algebraic curvature operators on two-vectors of R^4.

An operator is a symmetric 6x6 matrix in the global s-basis.  It decomposes
into blocks

    R = (s/12) Id + B + W+ + W-

where s = 2 trace(R) is the scalar part, W+/W- act inside the self-dual /
anti-self-dual halves (traceless for genuine Weyl blocks), and B is the
traceless-Ricci block exchanging the two halves.  Operators whose W blocks
fail tracelessness are accepted and marked non-strict: several classification
witnesses require R to annihilate one half entirely, which forces
W- = -(s/12) Id.

Sign convention for the coupling with tangent vectors: the curvature of the
induced connection on skew endomorphisms acts as a -> [r, a] where r is the
endomorphism of R(x ^ y), so that G([r, a], b) = <R([a, b]^), x ^ y>.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .fourdim import endo_of_two_vector, two_vector_of_endo, wedge_of_pair

SYM_TOL = 1e-12
WEYL_TRACE_TOL = 1e-10


class CurvatureError(ValueError):
    """Invalid curvature data (asymmetry, bad blocks, bad model parameters)."""


class SchemaError(CurvatureError):
    """Malformed curvature-operator document."""


def check_operator(mat) -> np.ndarray:
    mat = np.asarray(mat, dtype=float)
    if mat.shape != (6, 6):
        raise CurvatureError(f"curvature operator must be 6x6, got shape {mat.shape}")
    err = float(np.max(np.abs(mat - mat.T)))
    if err > SYM_TOL:
        raise CurvatureError(f"curvature operator is not symmetric: max|R - R^T| = {err:.3e}")
    return mat


@dataclass(frozen=True)
class CurvatureBlocks:
    """Block data (s, B, W+, W-); ``strict`` records Weyl tracelessness."""

    s: float
    B: np.ndarray
    Wplus: np.ndarray
    Wminus: np.ndarray
    strict: bool


def decompose(mat) -> CurvatureBlocks:
    """Split a symmetric operator into (s, B, W+, W-).

    Contract: top-left block = (s/12) Id + W+, bottom-right = (s/12) Id + W-,
    bottom-left = B (the half-exchanging block; top-right is its transpose),
    with s = 2 trace.  ``strict`` iff both W traces vanish within 1e-10.
    """
    mat = check_operator(mat)
    s = 2.0 * float(np.trace(mat))
    scalar = (s / 12.0) * np.eye(3)
    wplus = mat[:3, :3] - scalar
    wminus = mat[3:, 3:] - scalar
    b = mat[3:, :3]
    strict = (abs(float(np.trace(wplus))) <= WEYL_TRACE_TOL
              and abs(float(np.trace(wminus))) <= WEYL_TRACE_TOL)
    return CurvatureBlocks(s=s, B=b, Wplus=wplus, Wminus=wminus, strict=strict)


def _check_block(m, name: str, symmetric: bool) -> np.ndarray:
    m = np.asarray(m, dtype=float)
    if m.shape != (3, 3):
        raise CurvatureError(f"block {name!r} must be 3x3, got shape {m.shape}")
    if symmetric and float(np.max(np.abs(m - m.T))) > SYM_TOL:
        raise CurvatureError(f"block {name!r} must be symmetric")
    return m


def compose(s: float = 0.0, B=None, Wplus=None, Wminus=None) -> np.ndarray:
    """Assemble the 6x6 operator from blocks; inverse of :func:`decompose`."""
    b = _check_block(np.zeros((3, 3)) if B is None else B, "B", symmetric=False)
    wp = _check_block(np.zeros((3, 3)) if Wplus is None else Wplus, "Wplus", symmetric=True)
    wm = _check_block(np.zeros((3, 3)) if Wminus is None else Wminus, "Wminus", symmetric=True)
    scalar = (float(s) / 12.0) * np.eye(3)
    mat = np.zeros((6, 6))
    mat[:3, :3] = scalar + wp
    mat[3:, 3:] = scalar + wm
    mat[3:, :3] = b
    mat[:3, 3:] = b.T
    return mat


def compose_blocks(blocks: CurvatureBlocks) -> np.ndarray:
    return compose(blocks.s, blocks.B, blocks.Wplus, blocks.Wminus)


# --- model constructors ------------------------------------------------------

def _annihilate_minus(s: float) -> np.ndarray:
    # (s/12) Id on the self-dual half, zero on the anti-self-dual half;
    # equivalently Wminus = -(s/12) Id, which is deliberately non-strict.
    return compose(s=s, Wminus=-(float(s) / 12.0) * np.eye(3))


MODEL_SPECS: dict[str, tuple[tuple[str, ...], str]] = {
    "flat": ((), "zero operator"),
    "constant_curvature": (("s",), "(s/12) Id on all two-vectors"),
    "asd_ricci_flat": (("Wminus",), "s = 0, B = 0, W+ = 0, given W-"),
    "einstein_asd": (("s", "Wminus"), "B = 0, W+ = 0"),
    "asd_general": (("s", "B", "Wminus"), "W+ = 0"),
    "kaehler_witness": (("s",), "(s/12) Id on the self-dual half, zero on the other (non-strict); pairs with t1 = 6/s"),
    "w1_witness": (("s",), "same operator as kaehler_witness; pairs with t1 = 3/s"),
    "w2_witness": (("s",), "same operator, s < 0 required; pairs with t1 = -6/s"),
}


def model(name: str, **params) -> np.ndarray:
    """Build a named curvature operator; see MODEL_SPECS for parameters."""
    if name not in MODEL_SPECS:
        raise CurvatureError(f"unknown model {name!r}; known: {', '.join(sorted(MODEL_SPECS))}")
    allowed = set(MODEL_SPECS[name][0])
    extra = set(params) - allowed
    if extra:
        hint = ""
        if "B" in extra and name in ("einstein_asd", "asd_ricci_flat"):
            hint = " (Einstein models have B = 0 by definition)"
        raise CurvatureError(f"model {name!r} does not accept {sorted(extra)}{hint}")
    missing = allowed - set(params)
    if missing:
        raise CurvatureError(f"model {name!r} requires {sorted(missing)}")

    if name == "flat":
        return np.zeros((6, 6))
    if name == "constant_curvature":
        return (float(params["s"]) / 12.0) * np.eye(6)
    if name == "asd_ricci_flat":
        return compose(s=0.0, Wminus=params["Wminus"])
    if name == "einstein_asd":
        return compose(s=float(params["s"]), Wminus=params["Wminus"])
    if name == "asd_general":
        return compose(s=float(params["s"]), B=params["B"], Wminus=params["Wminus"])
    if name == "kaehler_witness" or name == "w1_witness":
        return _annihilate_minus(float(params["s"]))
    if name == "w2_witness":
        s = float(params["s"])
        if s >= 0.0:
            raise CurvatureError(f"w2_witness requires s < 0, got s = {s}")
        return _annihilate_minus(s)
    raise AssertionError(name)


# --- coupling with twistor data ----------------------------------------------

def curvature_endo(mat, x, y) -> np.ndarray:
    """The skew endomorphism r with g(r z, t) = <R(x ^ y), z ^ t>."""
    mat = check_operator(mat)
    return endo_of_two_vector(mat @ wedge_of_pair(x, y))


def coupling(mat, x, y, point, v, params) -> float:
    """H_t(R(x, y)J, V) = 2 <R(t1 (J1 V1)^ + t2 (J2 V2)^), x ^ y>.

    ``point`` carries j1/j2 (oriented complex structures), ``v`` the vertical
    pair (v1, v2); verticality is enforced.
    """
    mat = check_operator(mat)
    j1 = point.j1.matrix
    j2 = point.j2.matrix
    for jm, vm, label in ((j1, v.v1, "v1"), (j2, v.v2, "v2")):
        err = float(np.max(np.abs(jm @ vm + vm @ jm)))
        if err > 1e-10:
            raise CurvatureError(f"vertical part {label} does not anticommute: {err:.3e}")
    q = (params.t1 * two_vector_of_endo(j1 @ v.v1)
         + params.t2 * two_vector_of_endo(j2 @ v.v2))
    return 2.0 * float((mat @ q) @ wedge_of_pair(x, y))


# --- serialization -----------------------------------------------------------

def to_json_dict(mat) -> dict:
    """Emit both the raw matrix and the block form."""
    blocks = decompose(mat)
    return {
        "matrix": np.asarray(mat, dtype=float).tolist(),
        "blocks": {
            "s": blocks.s,
            "B": blocks.B.tolist(),
            "Wplus": blocks.Wplus.tolist(),
            "Wminus": blocks.Wminus.tolist(),
            "strict": blocks.strict,
        },
    }


def _field_matrix(doc: dict, key: str, shape: tuple[int, int]) -> np.ndarray:
    try:
        m = np.asarray(doc[key], dtype=float)
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"field {key!r} is not a numeric matrix: {exc}") from None
    if m.shape != shape:
        raise SchemaError(f"field {key!r} must have shape {shape}, got {m.shape}")
    return m


def from_json_dict(doc) -> np.ndarray:
    """Read an operator document holding "matrix", "blocks", or both.

    With both present the matrix wins after a consistency check against the
    assembled blocks.
    """
    if not isinstance(doc, dict):
        raise SchemaError("curvature document must be a JSON object")
    has_matrix = "matrix" in doc
    has_blocks = "blocks" in doc
    if not (has_matrix or has_blocks):
        raise SchemaError("curvature document must contain 'matrix' or 'blocks'")
    if has_matrix:
        mat = check_operator(_field_matrix(doc, "matrix", (6, 6)))
        if has_blocks:
            from_blocks = from_json_dict({"blocks": doc["blocks"]})
            if float(np.max(np.abs(mat - from_blocks))) > 1e-9:
                raise SchemaError("fields 'matrix' and 'blocks' describe different operators")
        return mat
    blocks = doc["blocks"]
    if not isinstance(blocks, dict):
        raise SchemaError("field 'blocks' must be a JSON object")
    known = {"s", "B", "Wplus", "Wminus", "strict"}
    unknown = set(blocks) - known
    if unknown:
        raise SchemaError(f"unknown field(s) in 'blocks': {sorted(unknown)}")
    try:
        s = float(blocks.get("s", 0.0))
    except (TypeError, ValueError):
        raise SchemaError("field 'blocks.s' must be a number") from None
    def block_of(key):
        if key not in blocks:
            return np.zeros((3, 3))
        return _field_matrix(blocks, key, (3, 3))
    try:
        return compose(s=s, B=block_of("B"), Wplus=block_of("Wplus"), Wminus=block_of("Wminus"))
    except CurvatureError as exc:
        raise SchemaError(f"invalid 'blocks': {exc}") from None


def read_json(path) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    return from_json_dict(doc)


def write_json(mat, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(to_json_dict(mat), fh, indent=2)
        fh.write("\n")


# --- helpers for tests and the verification suite ----------------------------

def swap_halves(mat) -> np.ndarray:
    """Conjugate by the block swap of the two halves (orientation reversal)."""
    mat = check_operator(mat)
    p = np.zeros((6, 6))
    p[:3, 3:] = np.eye(3)
    p[3:, :3] = np.eye(3)
    return p @ mat @ p


def random_traceless_symmetric(rng, scale: float = 1.0) -> np.ndarray:
    a = rng.standard_normal((3, 3))
    a = 0.5 * (a + a.T)
    a -= (np.trace(a) / 3.0) * np.eye(3)
    return scale * a


def random_strict_operator(rng, scale: float = 1.0) -> np.ndarray:
    return compose(
        s=float(scale * 12.0 * rng.standard_normal()),
        B=scale * rng.standard_normal((3, 3)),
        Wplus=random_traceless_symmetric(rng, scale),
        Wminus=random_traceless_symmetric(rng, scale),
    )


def perturbed(mat, kind: str, rng, rel: float = 0.1) -> np.ndarray:
    """Add noise of relative size ``rel`` to one hypothesis block."""
    blocks = decompose(mat)
    base = max(float(np.linalg.norm(mat)), 1.0)
    if kind == "Wplus":
        noise = random_traceless_symmetric(rng)
        noise *= rel * base / max(float(np.linalg.norm(noise)), 1e-12)
        return compose(blocks.s, blocks.B, blocks.Wplus + noise, blocks.Wminus)
    if kind == "B":
        noise = rng.standard_normal((3, 3))
        noise *= rel * base / max(float(np.linalg.norm(noise)), 1e-12)
        return compose(blocks.s, blocks.B + noise, blocks.Wplus, blocks.Wminus)
    if kind == "s":
        return compose(blocks.s + rel * 12.0 * base, blocks.B, blocks.Wplus, blocks.Wminus)
    raise CurvatureError(f"unknown perturbation kind {kind!r}")
