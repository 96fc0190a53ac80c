"""Two-vectors of oriented Euclidean R^4 and the sphere model of the fibre.

All 6-component vectors use one fixed ordered basis

    (s1+, s2+, s3+, s1-, s2-, s3-),
    s1pm = (e1^e2 pm e3^e4)/sqrt2,
    s2pm = (e1^e3 pm e4^e2)/sqrt2,
    s3pm = (e1^e4 pm e2^e3)/sqrt2,

built from the standard oriented orthonormal basis of R^4.  The first three
components span the self-dual half (Hodge eigenvalue +1), the last three the
anti-self-dual half.  Compatible complex structures inducing +/- the
orientation correspond to the 2-vectors of norm sqrt2 lying in the matching
half; their tangent (vertical) directions are the orthogonal complement of
the structure inside that half.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import fibre

SQRT2 = float(np.sqrt(2.0))
_IU4 = np.triu_indices(4, 1)
_L = 1.0 / SQRT2

#: change of basis from lexicographic (e12, e13, e14, e23, e24, e34) to the
#: global s-basis; orthogonal.
LEX_TO_S = np.array([
    [_L, 0.0, 0.0, 0.0, 0.0, _L],
    [0.0, _L, 0.0, 0.0, -_L, 0.0],
    [0.0, 0.0, _L, _L, 0.0, 0.0],
    [_L, 0.0, 0.0, 0.0, 0.0, -_L],
    [0.0, _L, 0.0, 0.0, _L, 0.0],
    [0.0, 0.0, _L, -_L, 0.0, 0.0],
])

HODGE_SIGNS = np.array([1.0, 1.0, 1.0, -1.0, -1.0, -1.0])

#: tolerance for purity / unit-sphere checks
PURITY_TOL = 1e-10


class FourDimError(ValueError):
    """Bad two-vector arguments: mixed halves, non-unit sphere points, ..."""


def wedge_of_pair(x, y) -> np.ndarray:
    """s-basis coefficients of x ^ y for x, y in R^4."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    c = np.outer(x, y) - np.outer(y, x)
    return LEX_TO_S @ c[_IU4]


def two_vector_of_endo(a) -> np.ndarray:
    """s-basis coefficients of a^ for a skew 4x4 endomorphism a."""
    return LEX_TO_S @ np.asarray(a, dtype=float).T[_IU4]


#: endomorphisms of the six s-basis two-vectors
S_BASIS_ENDOS = np.stack([fibre.endo_from_wedge(LEX_TO_S[k], 4) for k in range(6)])
_S_ENDOS_FLAT = S_BASIS_ENDOS.reshape(6, 16)


def endo_of_two_vector(v) -> np.ndarray:
    return (np.asarray(v, dtype=float) @ _S_ENDOS_FLAT).reshape(4, 4)


def hodge_star(v) -> np.ndarray:
    """+Id on the self-dual half, -Id on the anti-self-dual half; an involution."""
    return HODGE_SIGNS * np.asarray(v, dtype=float)


def split_pm(v) -> tuple[np.ndarray, np.ndarray]:
    """Orthogonal decomposition v = v_plus + v_minus into Hodge eigenvectors."""
    v = np.asarray(v, dtype=float)
    plus = v.copy()
    plus[3:] = 0.0
    minus = v.copy()
    minus[:3] = 0.0
    return plus, minus


def _half_slice(sign: int) -> slice:
    if sign == 1:
        return slice(0, 3)
    if sign == -1:
        return slice(3, 6)
    raise FourDimError(f"sign must be +1 or -1, got {sign}")


def check_pure(v, sign: int, tol: float = PURITY_TOL) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    other = v[_half_slice(-sign)]
    err = float(np.max(np.abs(other))) if other.size else 0.0
    if err > tol:
        raise FourDimError(
            f"two-vector is not pure of sign {sign:+d}: opposite half has magnitude {err:.3e}")
    return v


def embed_half(u3, sign: int) -> np.ndarray:
    u3 = np.asarray(u3, dtype=float)
    v = np.zeros(6)
    v[_half_slice(sign)] = u3
    return v


def active_half(v, sign: int) -> np.ndarray:
    return np.asarray(v, dtype=float)[_half_slice(sign)]


def cross(u, v, sign: int) -> np.ndarray:
    """Vector cross product in the oriented 3-space of pure two-vectors.

    s1 x s2 = s3 cyclically in either half; corresponds to the endomorphism
    commutator via (sign / sqrt2) [K_u, K_v].
    """
    u = check_pure(u, sign)
    v = check_pure(v, sign)
    return embed_half(np.cross(active_half(u, sign), active_half(v, sign)), sign)


@dataclass(frozen=True, eq=False)
class OrientedComplexStructure4:
    """Compatible complex structure on R^4 with its orientation component.

    ``wedge`` caches the s-basis coefficients of the structure; it is pure of
    the declared sign and has norm sqrt2.
    """

    matrix: np.ndarray
    sign: int
    wedge: np.ndarray = field(init=False)

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise FourDimError(f"sign must be +1 or -1, got {self.sign}")
        m = fibre.check_complex_structure(self.matrix)
        if m.shape != (4, 4):
            raise FourDimError("oriented complex structures are 4x4")
        w = two_vector_of_endo(m)
        check_pure(w, self.sign)
        norm = float(np.linalg.norm(w))
        if abs(norm - SQRT2) > PURITY_TOL:
            raise FourDimError(f"|J^| = {norm:.12f}, expected sqrt2")
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "wedge", w)


def sphere_to_J(u, sign: int) -> OrientedComplexStructure4:
    """Complex structure of the 2-vector sqrt2 * u for a unit pure u."""
    u = check_pure(u, sign)
    norm = float(np.linalg.norm(u))
    if abs(norm - 1.0) > PURITY_TOL:
        raise FourDimError(f"sphere point must be a unit two-vector, |u| = {norm:.12f}")
    return OrientedComplexStructure4(matrix=endo_of_two_vector(SQRT2 * u), sign=sign)


def j_to_sphere(ocs: OrientedComplexStructure4) -> np.ndarray:
    return ocs.wedge / SQRT2


def two_vector_map(q) -> np.ndarray:
    """s-basis matrix of Lambda^2 q for an orthogonal q; swaps halves iff det q = -1."""
    return LEX_TO_S @ fibre.induced_wedge_map(q) @ LEX_TO_S.T


def _rotation_from_e1(u3) -> np.ndarray:
    """Rotation of R^3 taking (1,0,0) to the unit vector u3.

    Rodrigues about the axis e1 x u3; the antipode u3 = -e1 gets the fixed
    rotation by pi about the second axis, so frames are reproducible.
    """
    c = float(u3[0])
    if c >= 1.0 - 1e-12:
        return np.eye(3)
    if c <= -1.0 + 1e-12:
        return np.diag([-1.0, 1.0, -1.0])
    axis = np.array([0.0, -u3[2], u3[1]])
    s = float(np.linalg.norm(axis))
    k = axis / s
    kx = np.array([[0.0, -k[2], k[1]], [k[2], 0.0, -k[0]], [-k[1], k[0], 0.0]])
    return np.eye(3) + s * kx + (1.0 - c) * (kx @ kx)


def vertical_basis(ocs: OrientedComplexStructure4) -> tuple[np.ndarray, np.ndarray]:
    """Endomorphisms of the deterministic orthonormal completion of J^/sqrt2.

    The rotation taking s1 (of the matching half) to J^/sqrt2 is applied to
    (s2, s3); the images span the vertical directions at J, are G-orthonormal
    and anticommute with J.
    """
    rot = _rotation_from_e1(active_half(j_to_sphere(ocs), ocs.sign))
    u2 = embed_half(rot @ np.array([0.0, 1.0, 0.0]), ocs.sign)
    u3 = embed_half(rot @ np.array([0.0, 0.0, 1.0]), ocs.sign)
    return endo_of_two_vector(u2), endo_of_two_vector(u3)


def random_ocs(sign: int, rng) -> OrientedComplexStructure4:
    u = rng.standard_normal(3)
    u /= np.linalg.norm(u)
    return sphere_to_J(embed_half(u, sign), sign)


def random_vertical_endo(ocs: OrientedComplexStructure4, rng, scale: float = 1.0) -> np.ndarray:
    u2, u3 = vertical_basis(ocs)
    c = rng.standard_normal(2) * scale
    return c[0] * u2 + c[1] * u3
