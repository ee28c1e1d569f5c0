"""Random geodesic threshold drawings, exact crossing counts and planar images.

A :class:`SphericalDrawing` joins every pair of sampled points at spherical
distance ``<= d`` by its minor arc.  :func:`count_crossings` counts the edge
pairs that cross, brute force over edge pairs behind a bounding-cap
prefilter.  Two independent recounts are provided as oracles:

* :func:`project_drawing` + :func:`count_planar_crossings` redraw the graph
  in the plane by stereographic projection, where every arc becomes a
  circular arc, and intersect circles exactly;
* :func:`count_gnomonic_crossings` handles drawings inside a hemisphere,
  where arcs become straight segments.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from spherecross import geom
from spherecross.sampling import SeededStream, sample_unit_vectors

PREFILTER_SLACK = 1e-9
BLOCK_ELEMENTS = 1 << 22
TANGENCY_TOL = 1e-10
PLANAR_ANGLE_EPS = 1e-11
PLANAR_ON_ARC_TOL = 1e-9
POLE_CLEARANCE = 1e-6
SEGMENT_TOL = 1e-9
COPY_SPACING = 2.5
POLE_SALT = 0x706F6C65  # keeps pole candidates off the drawing streams


class PoleConflict(geom.GeometryError):
    """A vertex or an edge passes too close to the projection pole."""


@dataclass
class SphericalDrawing:
    vertices: np.ndarray
    edges: np.ndarray
    threshold_d: float
    degeneracy_count: int = 0
    seed: tuple[int, int] | None = None

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def e(self) -> int:
        return len(self.edges)

    def arcs(self) -> list[geom.GeodesicArc]:
        return [geom.make_arc(self.vertices[i], self.vertices[j]) for i, j in self.edges]


@dataclass(frozen=True)
class CrossingReport:
    n: int
    e: int
    cr: int
    degeneracies: int = 0

    @property
    def exact_ratio(self) -> Fraction:
        if self.e == 0:
            return Fraction(0)
        return Fraction(self.cr * self.n ** 2, self.e ** 3)

    @property
    def ratio(self) -> float:
        return float(self.exact_ratio)

    def to_dict(self) -> dict:
        return {"n": self.n, "e": self.e, "cr": self.cr, "ratio": self.ratio,
                "degeneracies": self.degeneracies}


def threshold_edges(vertices: np.ndarray, d: float) -> np.ndarray:
    """All pairs ``i < j`` with spherical distance ``<= d``, row-major order.

    Dot products screen the candidates; the decision itself uses the exact
    distance of :func:`geom.angle_between`.
    """
    n = len(vertices)
    if d >= math.pi:
        iu, ju = np.triu_indices(n, k=1)
        return np.column_stack([iu, ju]).astype(np.int64)
    gram = vertices @ vertices.T
    iu, ju = np.nonzero(np.triu(gram >= math.cos(d) - 1e-12, k=1))
    keep = geom.angle_between(vertices[iu], vertices[ju]) <= d
    return np.column_stack([iu[keep], ju[keep]]).astype(np.int64)


def _bad_pairs(vertices: np.ndarray) -> np.ndarray:
    """Pairs too close to coincident or antipodal to carry a unique minor arc."""
    gram = vertices @ vertices.T
    iu, ju = np.nonzero(np.triu(np.abs(gram) >= 1.0 - 1e-12, k=1))
    dist = geom.angle_between(vertices[iu], vertices[ju])
    bad = (dist <= geom.ARC_MIN) | (dist >= math.pi - geom.ARC_MIN)
    return np.column_stack([iu[bad], ju[bad]])


def _resample_degenerate(stream: SeededStream, vertices: np.ndarray) -> int:
    resampled = 0
    while True:
        bad = _bad_pairs(vertices)
        if len(bad) == 0:
            return resampled
        for j in np.unique(bad[:, 1]):
            vertices[j] = sample_unit_vectors(stream, 1)[0]
            resampled += 1


def build_threshold_drawing(stream: SeededStream, n: int, d: float) -> SphericalDrawing:
    """Sample ``n`` uniform points and join pairs at distance ``<= d``.

    Points in a coincident or antipodal pair (measure zero) are resampled and
    counted in ``degeneracy_count``.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if not 0.0 < d <= math.pi:
        raise ValueError(f"d must lie in (0, pi], got {d!r}")
    vertices = sample_unit_vectors(stream, n)
    resampled = _resample_degenerate(stream, vertices)
    return SphericalDrawing(vertices, threshold_edges(vertices, d), float(d), resampled,
                            (stream.master_seed, stream.stream_index))


def build_cap_drawing(stream: SeededStream, n: int, d: float, center,
                      cap_radius: float) -> SphericalDrawing:
    """Threshold drawing on points sampled uniformly inside a spherical cap.

    Sampling is by rejection from the whole sphere.
    """
    center = geom.normalize(center)
    cos_r = math.cos(cap_radius)
    chunks, have = [], 0
    while have < n:
        batch = sample_unit_vectors(stream, 64 + int(3 * (n - have) / max(1e-3, (1 - cos_r) / 2)))
        batch = batch[batch @ center > cos_r]
        chunks.append(batch)
        have += len(batch)
    vertices = np.concatenate(chunks)[:n]
    resampled = 0
    while len(bad := _bad_pairs(vertices)):
        for j in np.unique(bad[:, 1]):
            while True:
                v = sample_unit_vectors(stream, 1)[0]
                if v @ center > cos_r:
                    break
            vertices[j] = v
            resampled += 1
    return SphericalDrawing(vertices, threshold_edges(vertices, d), float(d), resampled,
                            (stream.master_seed, stream.stream_index))


class _ArcTable(NamedTuple):
    normal: np.ndarray
    lead: np.ndarray
    trail: np.ndarray
    mid: np.ndarray
    cos_half: np.ndarray
    half: np.ndarray


def _arc_table(drawing: SphericalDrawing) -> _ArcTable:
    a = drawing.vertices[drawing.edges[:, 0]]
    b = drawing.vertices[drawing.edges[:, 1]]
    normal, lead, trail = geom.arc_frames(a, b)
    mid = geom.normalize(a + b)
    half = geom.angle_between(a, b) / 2
    return _ArcTable(normal, lead, trail, mid, np.cos(half), half)


def _count_block(table: _ArcTable, edges: np.ndarray, i0: int, i1: int,
                 prefilter: bool) -> tuple[int, int]:
    e = len(edges)
    rows = np.arange(i0, i1)
    if prefilter:
        # caps around the midpoints with radius half the arc length; pairs of
        # disjoint caps cannot cross
        reach = table.half[i0:i1, None] + table.half[None, :] + PREFILTER_SLACK
        dots = table.mid[i0:i1] @ table.mid.T
        near = (reach >= math.pi) | (dots >= np.cos(np.minimum(reach, math.pi)))
    else:
        near = np.ones((i1 - i0, e), dtype=bool)
    near &= np.arange(e)[None, :] > rows[:, None]
    ii, jj = np.nonzero(near)
    ii += i0
    ei, ej = edges[ii], edges[jj]
    disjoint = ((ei[:, 0] != ej[:, 0]) & (ei[:, 0] != ej[:, 1])
                & (ei[:, 1] != ej[:, 0]) & (ei[:, 1] != ej[:, 1]))
    ii, jj = ii[disjoint], jj[disjoint]
    cross, degenerate = geom.cross_kernel(
        table.normal[ii], table.lead[ii], table.trail[ii],
        table.normal[jj], table.lead[jj], table.trail[jj])
    return int(np.count_nonzero(cross)), int(np.count_nonzero(degenerate))


def count_crossings(drawing: SphericalDrawing, prefilter: bool = True,
                    workers: int = 1) -> CrossingReport:
    """Exact number of crossing pairs among non-adjacent edges.

    Row blocks of the edge-pair triangle are independent; with
    ``workers > 1`` they are evaluated on a thread pool and summed.
    """
    e = drawing.e
    if e < 2:
        return CrossingReport(drawing.n, e, 0, 0)
    table = _arc_table(drawing)
    step = max(1, BLOCK_ELEMENTS // e)
    blocks = [(i, min(i + step, e)) for i in range(0, e, step)]
    if workers > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(lambda b: _count_block(table, drawing.edges, *b, prefilter), blocks))
    else:
        parts = [_count_block(table, drawing.edges, *b, prefilter) for b in blocks]
    cr = sum(p[0] for p in parts)
    deg = sum(p[1] for p in parts)
    return CrossingReport(drawing.n, e, cr, deg)


# -- gnomonic oracle ---------------------------------------------------------

def orient2d(p, q, r):
    """Twice the signed area of triangle ``pqr``, row-wise."""
    return (q[..., 0] - p[..., 0]) * (r[..., 1] - p[..., 1]) - (q[..., 1] - p[..., 1]) * (r[..., 0] - p[..., 0])


def count_gnomonic_crossings(drawing: SphericalDrawing, pole) -> tuple[int, int]:
    """Straight-segment recount after gnomonic projection about ``pole``.

    Returns ``(crossings, band)`` where ``band`` counts pairs with an
    orientation test inside the rounding band.
    """
    pts = geom.gnomonic_project_many(drawing.vertices, pole)
    scale = max(1.0, float(np.abs(pts).max()))
    eps = 1e-12 * scale * scale
    edges = drawing.edges
    if len(edges) < 2:
        return 0, 0
    ii, jj = np.triu_indices(len(edges), k=1)
    ei, ej = edges[ii], edges[jj]
    disjoint = ((ei[:, 0] != ej[:, 0]) & (ei[:, 0] != ej[:, 1])
                & (ei[:, 1] != ej[:, 0]) & (ei[:, 1] != ej[:, 1]))
    ei, ej = ei[disjoint], ej[disjoint]
    p1, p2, q1, q2 = pts[ei[:, 0]], pts[ei[:, 1]], pts[ej[:, 0]], pts[ej[:, 1]]
    o = np.stack([orient2d(p1, p2, q1), orient2d(p1, p2, q2),
                  orient2d(q1, q2, p1), orient2d(q1, q2, p2)])
    band = np.any(np.abs(o) <= eps, axis=0)
    proper = (o[0] * o[1] < 0) & (o[2] * o[3] < 0) & ~band
    return int(np.count_nonzero(proper)), int(np.count_nonzero(band))


# -- stereographic redrawing -------------------------------------------------

@dataclass(frozen=True)
class PlanarArc:
    """Image of a geodesic arc: a circular arc or a straight segment.

    For circles, the arc starts at angle ``theta_start`` about ``center`` and
    sweeps ``sweep`` radians (positive = counter-clockwise).
    """

    start: np.ndarray
    end: np.ndarray
    center: np.ndarray | None = None
    radius: float = math.inf
    theta_start: float = 0.0
    sweep: float = 0.0

    @property
    def is_segment(self) -> bool:
        return self.center is None

    def translated(self, offset) -> "PlanarArc":
        offset = np.asarray(offset, dtype=float)
        center = None if self.center is None else self.center + offset
        return PlanarArc(self.start + offset, self.end + offset, center,
                         self.radius, self.theta_start, self.sweep)

    def point_at(self, fraction: float) -> np.ndarray:
        if self.is_segment:
            return self.start + fraction * (self.end - self.start)
        th = self.theta_start + fraction * self.sweep
        return self.center + self.radius * np.array([math.cos(th), math.sin(th)])

    def bbox(self) -> np.ndarray:
        """``[xmin, ymin, xmax, ymax]`` of the arc itself."""
        pts = [self.start, self.end]
        if not self.is_segment:
            for k in range(4):
                phi = k * math.pi / 2
                if self.offset(phi) < abs(self.sweep):
                    pts.append(self.center + self.radius * np.array([math.cos(phi), math.sin(phi)]))
        pts = np.array(pts)
        return np.concatenate([pts.min(axis=0), pts.max(axis=0)])

    def offset(self, phi: float) -> float:
        """Angular distance from the start to polar angle ``phi`` along the sweep."""
        return ((phi - self.theta_start) * math.copysign(1.0, self.sweep)) % (2 * math.pi)


@dataclass
class PlanarArcDrawing:
    vertices: np.ndarray
    edges: np.ndarray
    arcs: list[PlanarArc] = field(default_factory=list)

    def bbox(self) -> np.ndarray:
        boxes = [a.bbox() for a in self.arcs]
        if len(self.vertices):
            boxes.append(np.concatenate([self.vertices.min(axis=0), self.vertices.max(axis=0)]))
        boxes = np.array(boxes)
        return np.concatenate([boxes[:, :2].min(axis=0), boxes[:, 2:].max(axis=0)])


class PlanarCount(NamedTuple):
    crossings: int
    tangencies: int


def pole_clearance(drawing: SphericalDrawing, pole) -> float:
    """Smallest spherical distance from ``pole`` to any vertex or edge."""
    pole = geom.normalize(pole)
    best = float(np.min(geom.angle_between(drawing.vertices, pole))) if drawing.n else math.pi
    if drawing.e:
        a = drawing.vertices[drawing.edges[:, 0]]
        b = drawing.vertices[drawing.edges[:, 1]]
        best = min(best, float(np.min(geom.arc_point_distances(a, b, pole))))
    return best


def choose_pole(drawing: SphericalDrawing, seed: int = 0, attempts: int = 32) -> np.ndarray:
    """Pick, among ``attempts`` random candidates, the pole that keeps every
    vertex, arc and great circle furthest from it."""
    candidates = sample_unit_vectors(SeededStream(seed ^ POLE_SALT, 0), attempts)
    if drawing.e:
        normals = geom.normalize(np.cross(drawing.vertices[drawing.edges[:, 0]],
                                          drawing.vertices[drawing.edges[:, 1]]))
    best, best_score = candidates[0], -1.0
    for pole in candidates:
        score = pole_clearance(drawing, pole)
        if drawing.e:
            score = min(score, float(np.min(np.abs(normals @ pole))))
        if score > best_score:
            best, best_score = pole, score
    return best


def _circle_arc(a, b, m, normal, basis) -> PlanarArc:
    e1, e2, pole = basis
    n1, n2, n3 = normal @ e1, normal @ e2, normal @ pole
    if abs(n3) < SEGMENT_TOL:
        return PlanarArc(a, b)
    center = np.array([-n1 / n3, -n2 / n3])
    radius = 1.0 / abs(n3)
    ta = math.atan2(*(a - center)[::-1])
    tb = math.atan2(*(b - center)[::-1])
    tm = math.atan2(*(m - center)[::-1])
    ccw = (tb - ta) % (2 * math.pi)
    if (tm - ta) % (2 * math.pi) < ccw:
        sweep = ccw
    else:
        sweep = -((ta - tb) % (2 * math.pi))
    return PlanarArc(a, b, center, radius, ta, sweep)


def project_drawing(drawing: SphericalDrawing, pole) -> PlanarArcDrawing:
    """Stereographic image of the drawing, edges as exact circular arcs."""
    pole = geom.normalize(pole)
    if pole_clearance(drawing, pole) < POLE_CLEARANCE:
        raise PoleConflict("drawing passes within 1e-6 of the pole")
    basis = geom.tangent_basis(pole)
    verts = geom.stereographic_project_many(drawing.vertices, pole)
    arcs = []
    for (i, j) in drawing.edges:
        a, b = drawing.vertices[i], drawing.vertices[j]
        normal = geom.normalize(np.cross(a, b))
        m = np.array(geom.stereographic_project(geom.normalize(a + b), pole))
        arc = _circle_arc(verts[i], verts[j], m, normal, basis)
        if not arc.is_segment:
            for p in (verts[i], verts[j]):
                if abs(np.linalg.norm(p - arc.center) - arc.radius) > PLANAR_ON_ARC_TOL * max(1.0, arc.radius):
                    raise ArithmeticError("projected arc misses its endpoint")
        arcs.append(arc)
    return PlanarArcDrawing(verts, drawing.edges.copy(), arcs)


def _on_arc(arc: PlanarArc, p: np.ndarray) -> tuple[bool, bool]:
    """(strictly inside, within the boundary band) for a point on the arc's carrier."""
    if arc.is_segment:
        d = arc.end - arc.start
        s = float((p - arc.start) @ d / (d @ d))
        eps = PLANAR_ANGLE_EPS
        return eps < s < 1 - eps, abs(s) <= eps or abs(1 - s) <= eps
    phi = math.atan2(p[1] - arc.center[1], p[0] - arc.center[0])
    off = arc.offset(phi)
    span = abs(arc.sweep)
    eps = PLANAR_ANGLE_EPS
    near_start = off <= eps or off >= 2 * math.pi - eps
    return eps < off < span - eps, near_start or abs(off - span) <= eps


def _carrier_intersections(a1: PlanarArc, a2: PlanarArc):
    """Intersection points of the two carriers; ``None`` flags tangency/overlap."""
    if a1.is_segment and a2.is_segment:
        d1, d2 = a1.end - a1.start, a2.end - a2.start
        den = d1[0] * d2[1] - d1[1] * d2[0]
        scale = np.linalg.norm(d1) * np.linalg.norm(d2)
        if abs(den) <= TANGENCY_TOL * scale:
            return None
        w = a2.start - a1.start
        s = (w[0] * d2[1] - w[1] * d2[0]) / den
        return [a1.start + s * d1]
    if a1.is_segment or a2.is_segment:
        seg, circ = (a1, a2) if a1.is_segment else (a2, a1)
        d = seg.end - seg.start
        length = np.linalg.norm(d)
        u = d / length
        w = seg.start - circ.center
        along = -(w @ u)
        foot = seg.start + along * u
        h2 = circ.radius ** 2 - np.sum((foot - circ.center) ** 2)
        if abs(h2) <= TANGENCY_TOL * circ.radius ** 2:
            return None
        if h2 < 0:
            return []
        h = math.sqrt(h2)
        return [foot + h * u, foot - h * u]
    c1, r1, c2, r2 = a1.center, a1.radius, a2.center, a2.radius
    delta = c2 - c1
    dist = float(np.linalg.norm(delta))
    scale = max(r1, r2)
    if abs(dist - (r1 + r2)) <= TANGENCY_TOL * scale or abs(dist - abs(r1 - r2)) <= TANGENCY_TOL * scale:
        return None
    if dist > r1 + r2 or dist < abs(r1 - r2):
        return []
    along = (dist * dist + r1 * r1 - r2 * r2) / (2 * dist)
    h = math.sqrt(max(r1 * r1 - along * along, 0.0))
    u = delta / dist
    perp = np.array([-u[1], u[0]])
    base = c1 + along * u
    return [base + h * perp, base - h * perp]


def _pair_crossings(a1: PlanarArc, a2: PlanarArc) -> tuple[int, int]:
    pts = _carrier_intersections(a1, a2)
    if pts is None:
        return 0, 1
    crossings = degenerate = 0
    for p in pts:
        in1, band1 = _on_arc(a1, p)
        in2, band2 = _on_arc(a2, p)
        if in1 and in2:
            crossings += 1
        elif (band1 or in1) and (band2 or in2):
            degenerate += 1
    return crossings, degenerate


def count_planar_crossings(drawing: PlanarArcDrawing) -> PlanarCount:
    """Proper crossings between non-adjacent planar arcs.

    Candidate pairs come from overlapping bounding boxes; each candidate is
    settled by exact circle-circle (or circle-line) intersection.
    """
    e = len(drawing.arcs)
    if e < 2:
        return PlanarCount(0, 0)
    boxes = np.array([a.bbox() for a in drawing.arcs])
    edges = drawing.edges
    crossings = tangencies = 0
    for i in range(e - 1):
        j = np.arange(i + 1, e)
        overlap = ((boxes[j, 0] <= boxes[i, 2]) & (boxes[i, 0] <= boxes[j, 2])
                   & (boxes[j, 1] <= boxes[i, 3]) & (boxes[i, 1] <= boxes[j, 3]))
        adjacent = np.isin(edges[j], edges[i]).any(axis=1)
        for k in j[overlap & ~adjacent]:
            c, t = _pair_crossings(drawing.arcs[i], drawing.arcs[k])
            crossings += c
            tangencies += t
    return PlanarCount(crossings, tangencies)


def replicate_copies(drawing: SphericalDrawing, k: int, pole=None,
                     report: CrossingReport | None = None) -> tuple[PlanarArcDrawing, CrossingReport]:
    """Lay out ``k`` disjoint translated planar copies of the projected drawing.

    Copies sit on a horizontal lattice with spacing 2.5x the bounding-box
    diagonal.  The returned report has ``n' = k n``, ``e' = k e`` and
    ``cr' = k cr``; its normalised ratio is checked to equal the single
    copy's in exact rational arithmetic.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if pole is None:
        pole = choose_pole(drawing)
    if report is None:
        report = count_crossings(drawing)
    planar = project_drawing(drawing, pole)
    box = planar.bbox()
    spacing = COPY_SPACING * max(float(np.hypot(box[2] - box[0], box[3] - box[1])), 1.0)
    verts, edges, arcs = [], [], []
    for c in range(k):
        offset = np.array([c * spacing, 0.0])
        verts.append(planar.vertices + offset)
        edges.append(planar.edges + c * drawing.n)
        arcs.extend(a.translated(offset) for a in planar.arcs)
    combined = PlanarArcDrawing(np.concatenate(verts), np.concatenate(edges), arcs)
    big = CrossingReport(k * report.n, k * report.e, k * report.cr, k * report.degeneracies)
    if big.exact_ratio != report.exact_ratio:
        raise ArithmeticError("copies changed the normalised crossing ratio")
    return combined, big
