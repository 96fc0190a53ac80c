"""Twistor-fibre linear algebra over an even-dimensional Euclidean space.

The fibre over a Euclidean space (T, g) of dimension 2m is the set Z(T, g) of
g-orthogonal complex structures J (skew with J @ J = -Id), an embedded
submanifold of the space so(g) of skew-symmetric endomorphisms.  This module
implements the pointwise algebra of that picture: the trace metric
G(a, b) = -1/2 trace(a b), the orthonormal S_ab basis of so(g), the adapted
A/B tangent basis at a point J, the fibre Kaehler structure V -> J o V, the
Levi-Civita derivative of tangent vector fields, and the isometry between
so(g) and 2-vectors.

Coordinates are always orthonormal: g is the identity bilinear form in the
stored coordinates, and dimensions other than multiples of two are rejected.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

#: construction tolerance for skewness
SKEW_TOL = 1e-12
#: verification tolerance for J*J = -Id and tangency
STRUCT_TOL = 1e-10
#: default central-difference step for vector-field derivatives
FD_STEP = 1e-5


class FibreAlgebraError(ValueError):
    """A skewness, compatibility or tangency invariant is violated."""


def _as_square(a) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise FibreAlgebraError(f"expected a square matrix, got shape {a.shape}")
    return a


def check_even_dim(dim: int) -> int:
    if dim < 2 or dim % 2:
        raise FibreAlgebraError(f"dimension must be even and >= 2, got {dim}")
    return dim


def check_skew(a, tol: float = SKEW_TOL) -> np.ndarray:
    a = _as_square(a)
    err = float(np.max(np.abs(a + a.T)))
    if err > tol:
        raise FibreAlgebraError(
            f"matrix is not skew-symmetric: max|a + a^T| = {err:.3e} > {tol:.1e}")
    return a


def check_complex_structure(j, tol: float = STRUCT_TOL) -> np.ndarray:
    j = check_skew(j, tol)
    err = float(np.max(np.abs(j @ j + np.eye(j.shape[0]))))
    if err > tol:
        raise FibreAlgebraError(f"J*J != -Id: residual {err:.3e} > {tol:.1e}")
    return j


def check_tangent(j, v, tol: float = STRUCT_TOL) -> np.ndarray:
    """Tangency at J means JV + VJ = 0 (V skew)."""
    v = check_skew(v, tol)
    err = float(np.max(np.abs(j @ v + v @ j)))
    if err > tol:
        raise FibreAlgebraError(
            f"V is not tangent at J: max|JV + VJ| = {err:.3e} > {tol:.1e}")
    return v


def inner_G(a, b) -> float:
    """Trace metric G(a, b) = -1/2 trace(a b); positive definite on skews."""
    a = _as_square(a)
    b = _as_square(b)
    if a.shape != b.shape:
        raise FibreAlgebraError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return -0.5 * float(np.einsum("ij,ji->", a, b))


def norm_G(a) -> float:
    return float(np.sqrt(max(inner_G(a, a), 0.0)))


def lex_pairs(dim: int) -> list[tuple[int, int]]:
    """Index pairs (i, j), i < j, in lexicographic order (0-based)."""
    return [(i, j) for i in range(dim) for j in range(i + 1, dim)]


def make_S_basis(dim: int) -> list[np.ndarray]:
    """G-orthonormal basis {S_ab : a < b} of so(g), S_ab e_a = e_b, S_ab e_b = -e_a."""
    check_even_dim(dim)
    out = []
    for a, b in lex_pairs(dim):
        s = np.zeros((dim, dim))
        s[b, a] = 1.0
        s[a, b] = -1.0
        out.append(s)
    return out


def standard_complex_structure(dim: int) -> np.ndarray:
    """J with J e_{2i-1} = e_{2i} in 1-based labels."""
    check_even_dim(dim)
    j = np.zeros((dim, dim))
    for i in range(0, dim, 2):
        j[i + 1, i] = 1.0
        j[i, i + 1] = -1.0
    return j


def make_AB_basis(j, frame) -> list[np.ndarray]:
    """G-orthonormal tangent basis at J adapted to an orthonormal frame.

    ``frame[k]`` is the k-th frame vector; the frame must satisfy
    J frame[2r-2] = frame[2r-1] (1-based: J f_{2r-1} = f_{2r}).  Returns
    [A_12, B_12, A_13, B_13, ...] with

        A_rs = (S'_{2r-1,2s-1} - S'_{2r,2s}) / sqrt2,
        B_rs = (S'_{2r-1,2s} + S'_{2r,2s-1}) / sqrt2,

    where S'_ab are built from the frame; B_rs = J o A_rs.  Empty for m = 1.
    """
    j = check_complex_structure(j)
    dim = j.shape[0]
    f = np.asarray(frame, dtype=float)
    if f.shape != (dim, dim):
        raise FibreAlgebraError(f"frame must contain {dim} vectors of length {dim}")
    ortho_err = float(np.max(np.abs(f @ f.T - np.eye(dim))))
    if ortho_err > STRUCT_TOL:
        raise FibreAlgebraError(
            f"frame is not orthonormal: max|<f_a, f_b> - delta_ab| = {ortho_err:.3e}")
    for r in range(dim // 2):
        adapt_err = float(np.max(np.abs(j @ f[2 * r] - f[2 * r + 1])))
        if adapt_err > STRUCT_TOL:
            raise FibreAlgebraError(
                f"frame is not J-adapted: |J f_{2 * r + 1} - f_{2 * r + 2}| = {adapt_err:.3e}")

    def s_frame(a: int, b: int) -> np.ndarray:
        # S'_ab in ambient coordinates (1-based frame labels)
        fa, fb = f[a - 1], f[b - 1]
        return np.outer(fb, fa) - np.outer(fa, fb)

    m = dim // 2
    rt2 = np.sqrt(2.0)
    out = []
    for r in range(1, m + 1):
        for s in range(r + 1, m + 1):
            out.append((s_frame(2 * r - 1, 2 * s - 1) - s_frame(2 * r, 2 * s)) / rt2)
            out.append((s_frame(2 * r - 1, 2 * s) + s_frame(2 * r, 2 * s - 1)) / rt2)
    return out


def kaehler_K(j, v) -> np.ndarray:
    """Fibre almost complex structure K V = J o V on tangent vectors at J."""
    j = check_complex_structure(j)
    v = check_tangent(j, v)
    return j @ v


def tangent_projection(j, q) -> np.ndarray:
    """G-orthogonal projection of a skew q onto the tangent space at J."""
    return 0.5 * (q + j @ q @ j)


@dataclass(frozen=True)
class FibreVectorField:
    """so(g)-valued function on so(g), tangent-valued along the fibre.

    ``derivative(j, x)`` is the ambient directional derivative Y'(j)(x),
    computed by central differences with ``step`` unless an analytic
    ``directional_derivative`` is supplied by the caller.
    """

    evaluate: Callable[[np.ndarray], np.ndarray]
    directional_derivative: Optional[Callable[[np.ndarray, np.ndarray], np.ndarray]] = None
    step: float = FD_STEP

    def derivative(self, j, x) -> np.ndarray:
        if self.directional_derivative is not None:
            return np.asarray(self.directional_derivative(j, x), dtype=float)
        h = self.step
        plus = np.asarray(self.evaluate(j + h * x), dtype=float)
        minus = np.asarray(self.evaluate(j - h * x), dtype=float)
        return (plus - minus) / (2.0 * h)


def tangent_projection_field(q) -> FibreVectorField:
    """The field A -> (q + A q A)/2; along the fibre it is the tangent part of q."""
    q = check_skew(q)
    return FibreVectorField(evaluate=lambda a: 0.5 * (q + a @ q @ a))


def fibre_levi_civita(field: FibreVectorField, x, j) -> np.ndarray:
    """(D_X Y)_J = (Y'(J)(X) + J o Y'(J)(X) o J) / 2 for X tangent at J."""
    j = check_complex_structure(j)
    x = check_tangent(j, x)
    d = field.derivative(j, x)
    return 0.5 * (d + j @ d @ j)


def project_to_fibre(a) -> np.ndarray:
    """Retraction a -> a (-a^2)^(-1/2) of an invertible skew onto Z(T, g)."""
    a = check_skew(a)
    w, u = np.linalg.eigh(-(a @ a))
    if np.min(w) <= 0.0:
        raise FibreAlgebraError("retraction undefined: -a^2 is not positive definite")
    return a @ ((u / np.sqrt(w)) @ u.T)


# --- identification of so(g) with 2-vectors ---------------------------------
#
# a^ is the 2-vector with g(a^, x ^ y) = g(a x, y); on the lexicographic
# orthonormal basis e_i ^ e_j (i < j) its coefficients are the entries a[j, i].
# The map is a linear isometry for G and the induced 2-vector metric
# g(x1^x2, x3^x4) = g(x1,x3) g(x2,x4) - g(x1,x4) g(x2,x3).

def wedge_coefficients(a) -> np.ndarray:
    a = _as_square(a)
    iu = np.triu_indices(a.shape[0], 1)
    return a.T[iu]


def endo_from_wedge(coeffs, dim: int) -> np.ndarray:
    coeffs = np.asarray(coeffs, dtype=float)
    iu = np.triu_indices(dim, 1)
    if coeffs.shape != iu[0].shape:
        raise FibreAlgebraError(
            f"expected {iu[0].size} coefficients for dimension {dim}, got {coeffs.shape}")
    m = np.zeros((dim, dim))
    m[iu[1], iu[0]] = coeffs
    m[iu] = -coeffs
    return m


def wedge_pair_coefficients(x, y) -> np.ndarray:
    """Lexicographic coefficients of x ^ y."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    c = np.outer(x, y) - np.outer(y, x)
    iu = np.triu_indices(x.shape[0], 1)
    return c[iu]


def induced_wedge_map(q) -> np.ndarray:
    """Matrix of Lambda^2 q on the lexicographic basis, e_i^e_j -> (q e_i)^(q e_j)."""
    q = _as_square(q)
    cols = [wedge_pair_coefficients(q[:, i], q[:, j]) for i, j in lex_pairs(q.shape[0])]
    return np.column_stack(cols)


# --- random elements (seeded helpers used by tests and the self-test) -------

def random_orthogonal(dim: int, rng) -> np.ndarray:
    q, r = np.linalg.qr(rng.standard_normal((dim, dim)))
    return q * np.sign(np.diag(r))


def random_complex_structure(dim: int, rng) -> np.ndarray:
    q = random_orthogonal(dim, rng)
    return q @ standard_complex_structure(dim) @ q.T


def random_tangent(j, rng, scale: float = 1.0) -> np.ndarray:
    q = rng.standard_normal(j.shape)
    return tangent_projection(j, scale * 0.5 * (q - q.T))
