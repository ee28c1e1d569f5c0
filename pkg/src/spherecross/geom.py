"""Floating-point spherical geometry on the unit sphere.

Points are plain ``(3,)`` float arrays (or :class:`UnitVector`, which
converts transparently).  Scalar predicates are thin wrappers over the
vectorised kernels used by the crossing counters, so the two can never
drift apart.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

UNIT_TOL = 1e-12
ARC_MIN = 1e-9          # minimum distance from 0 / pi for a valid arc
ON_CIRCLE_TOL = 1e-9
SIGN_EPS = 1e-12        # strict-interior margin for membership signs
COINCIDENT_TOL = 1e-10  # |n1 x n2| below this -> same great circle
SHARED_TOL = 1e-12
HEMISPHERE_MIN = 1e-6
POLE_TOL = 1e-9


class GeometryError(ValueError):
    """Base class for measure-zero configurations that cannot be resolved."""


class DegenerateArc(GeometryError):
    pass


class CoincidentGreatCircles(GeometryError):
    pass


class OutsideHemisphere(GeometryError):
    pass


class AtPole(GeometryError):
    pass


class UnitVector(NamedTuple):
    x: float
    y: float
    z: float

    @classmethod
    def from_array(cls, v) -> "UnitVector":
        """Normalise ``v`` and return it as a unit vector."""
        v = np.asarray(v, dtype=float)
        norm = np.linalg.norm(v)
        if not np.isfinite(norm) or norm == 0.0:
            raise ValueError(f"cannot normalise {v!r}")
        v = v / norm
        return cls(float(v[0]), float(v[1]), float(v[2]))

    def __array__(self, dtype=None, copy=None):
        return np.array(tuple(self), dtype=dtype or float)


class PlanarPoint(NamedTuple):
    u: float
    v: float


@dataclass(frozen=True)
class GeodesicArc:
    """Minor great-circle arc from ``a`` to ``b``."""

    a: np.ndarray
    b: np.ndarray
    normal: np.ndarray
    length: float

    def reversed(self) -> "GeodesicArc":
        return GeodesicArc(self.b, self.a, -self.normal, self.length)

    def midpoint(self) -> np.ndarray:
        m = self.a + self.b
        return m / np.linalg.norm(m)


def _vec(p) -> np.ndarray:
    return np.asarray(p, dtype=float)


def is_unit(p, tol: float = UNIT_TOL) -> bool:
    p = _vec(p)
    return abs(float(p @ p) - 1.0) <= tol


def normalize(v) -> np.ndarray:
    """Normalise a vector or each row of a ``(k, 3)`` array."""
    v = _vec(v)
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


def angle_between(p, q) -> np.ndarray:
    """Vectorised great-circle distance; broadcasts over leading axes.

    Uses ``atan2(|p x q|, p . q)``, which equals ``arccos(clamp(p . q))``
    but keeps full relative accuracy near 0 and pi.
    """
    p = _vec(p)
    q = _vec(q)
    cross = np.linalg.norm(np.cross(p, q), axis=-1)
    dot = np.sum(p * q, axis=-1)
    return np.arctan2(cross, dot)


def great_circle_distance(p, q) -> float:
    """Length in radians of the shorter arc between ``p`` and ``q``."""
    return float(angle_between(p, q))


def make_arc(p, q) -> GeodesicArc:
    p = _vec(p)
    q = _vec(q)
    length = great_circle_distance(p, q)
    if not ARC_MIN < length < np.pi - ARC_MIN:
        raise DegenerateArc(
            f"endpoints at distance {length!r} do not define a unique minor arc")
    n = np.cross(p, q)
    n /= np.linalg.norm(n)
    return GeodesicArc(p.copy(), q.copy(), n, length)


def arc_contains(arc: GeodesicArc, p) -> bool:
    """Closed membership test for a point already on the arc's great circle."""
    p = _vec(p)
    n = arc.normal
    return bool(np.cross(arc.a, p) @ n >= -SIGN_EPS
                and np.cross(p, arc.b) @ n >= -SIGN_EPS)


def arc_frames(a: np.ndarray, b: np.ndarray):
    """Per-arc vectors used by :func:`cross_kernel`.

    Returns ``(normal, lead, trail)`` with ``lead = normal x a`` and
    ``trail = b x normal`` so that, for ``t`` on the great circle,
    ``(a x t) . normal = t . lead`` and ``(t x b) . normal = t . trail``.
    Rows of ``a`` and ``b`` must be non-degenerate pairs.
    """
    n = normalize(np.cross(a, b))
    return n, np.cross(n, a), np.cross(b, n)


def cross_kernel(n1, l1, t1, n2, l2, t2, eps: float = SIGN_EPS):
    """Vectorised crossing predicate over paired rows of arc frames.

    Returns ``(cross, degenerate)`` boolean arrays.  ``degenerate`` flags
    coincident great circles and candidates whose membership signs fall
    inside the ``eps`` band; such pairs are never reported as crossing.
    """
    t = np.cross(n1, n2)
    norm = np.linalg.norm(t, axis=-1)
    coincident = norm < COINCIDENT_TOL
    t = t / np.where(coincident, 1.0, norm)[..., None]
    s = np.stack([np.sum(t * l1, axis=-1), np.sum(t * t1, axis=-1),
                  np.sum(t * l2, axis=-1), np.sum(t * t2, axis=-1)])
    lo = s.min(axis=0)
    hi = s.max(axis=0)
    cross = ((lo > eps) | (hi < -eps)) & ~coincident
    band_pos = (lo > -eps) & (lo <= eps)
    band_neg = (hi < eps) & (hi >= -eps)
    degenerate = coincident | ((band_pos | band_neg) & ~cross)
    return cross, degenerate


def share_endpoint(e1: GeodesicArc, e2: GeodesicArc, tol: float = SHARED_TOL) -> bool:
    return any(np.linalg.norm(p - q) <= tol
               for p in (e1.a, e1.b) for q in (e2.a, e2.b))


def arcs_cross(e1: GeodesicArc, e2: GeodesicArc) -> bool:
    """True iff the two minor arcs meet at a point interior to both.

    Arcs sharing an endpoint never cross.  Raises
    :class:`CoincidentGreatCircles` when both arcs lie on one great circle.
    """
    if share_endpoint(e1, e2):
        return False
    f1 = (e1.normal, np.cross(e1.normal, e1.a), np.cross(e1.b, e1.normal))
    f2 = (e2.normal, np.cross(e2.normal, e2.a), np.cross(e2.b, e2.normal))
    if np.linalg.norm(np.cross(e1.normal, e2.normal)) < COINCIDENT_TOL:
        raise CoincidentGreatCircles("arcs lie on the same great circle")
    cross, _ = cross_kernel(*f1, *f2)
    return bool(cross)


def tangent_basis(pole) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Orthonormal ``(e1, e2, pole)`` frame, right-handed.

    ``e1`` comes from Gram-Schmidt on the coordinate axis least aligned with
    the pole (first such axis on ties), so the frame is reproducible.
    """
    pole = normalize(pole)
    axis = np.zeros(3)
    axis[int(np.argmin(np.abs(pole)))] = 1.0
    e1 = axis - (axis @ pole) * pole
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(pole, e1)
    return e1, e2, pole


def gnomonic_project(p, pole) -> PlanarPoint:
    """Central projection onto the tangent plane at ``pole``."""
    p = _vec(p)
    e1, e2, pole = tangent_basis(pole)
    w = p @ pole
    if w <= HEMISPHERE_MIN:
        raise OutsideHemisphere(f"p . pole = {w!r} is not positive")
    return PlanarPoint(float(p @ e1 / w), float(p @ e2 / w))


def gnomonic_project_many(points, pole) -> np.ndarray:
    points = _vec(points)
    e1, e2, pole = tangent_basis(pole)
    w = points @ pole
    if np.any(w <= HEMISPHERE_MIN):
        raise OutsideHemisphere("some points are outside the open hemisphere")
    return np.column_stack([points @ e1 / w, points @ e2 / w])


def stereographic_project(p, pole) -> PlanarPoint:
    """Project from ``pole`` onto the plane through the origin orthogonal to it."""
    p = _vec(p)
    e1, e2, pole = tangent_basis(pole)
    w = 1.0 - p @ pole
    if w < POLE_TOL:
        raise AtPole("point coincides with the projection pole")
    return PlanarPoint(float(p @ e1 / w), float(p @ e2 / w))


def stereographic_project_many(points, pole) -> np.ndarray:
    points = _vec(points)
    e1, e2, pole = tangent_basis(pole)
    w = 1.0 - points @ pole
    if np.any(w < POLE_TOL):
        raise AtPole("a point coincides with the projection pole")
    return np.column_stack([points @ e1 / w, points @ e2 / w])


def arc_point_distances(a: np.ndarray, b: np.ndarray, p) -> np.ndarray:
    """Distance from ``p`` to each arc ``a[k] -> b[k]`` (rows of non-degenerate pairs)."""
    p = _vec(p)
    n, lead, trail = arc_frames(a, b)
    off_plane = n @ p
    foot = p - off_plane[:, None] * n
    # the foot lies inside the arc iff both membership signs are nonnegative
    inside = (foot @ p > 0) & (np.sum(foot * lead, axis=1) >= 0) & (np.sum(foot * trail, axis=1) >= 0)
    ends = np.minimum(angle_between(a, p), angle_between(b, p))
    return np.where(inside, np.arcsin(np.minimum(1.0, np.abs(off_plane))), ends)


def arc_point_distance(arc: GeodesicArc, p) -> float:
    """Spherical distance from ``p`` to the closest point of ``arc``."""
    return float(arc_point_distances(arc.a[None], arc.b[None], p)[0])


def random_rotation(rng: np.random.Generator) -> np.ndarray:
    """Uniformly distributed rotation matrix (QR of a Gaussian matrix)."""
    q, r = np.linalg.qr(rng.standard_normal((3, 3)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q
