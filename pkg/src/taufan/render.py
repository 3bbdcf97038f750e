"""SVG pictures of wall-and-chamber structures and DOT exports of mutation graphs.

Geometry stays in exact rationals as long as possible: rays and great-circle
sample points are rational, and floats appear only in the final projection
and formatting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .polyhedra import Cone, dot, primitive, vec
from .representation import loewy_name

VIEW = 400
SAMPLES = 64
VIEW_RADIUS = 8
BISECT_STEPS = 24
_STYLE = (
    "<style>.wall path{fill:none;stroke:#222;stroke-width:1.5}"
    ".wall path.back{stroke-dasharray:4 3;stroke:#777}"
    ".limit-wall path{fill:none;stroke:#222;stroke-dasharray:1 3}"
    "text{font-family:sans-serif;font-size:11px}"
    ".axis{stroke:#bbb;stroke-width:0.5}</style>"
)


@dataclass(frozen=True)
class WallSpec:
    """A wall to draw: its label, its cone and whether it is a dotted limit wall."""

    label: str
    cone: Cone
    limit: bool = False


def _fmt(x: float) -> str:
    s = f"{x:.6f}"
    return "0.000000" if s == "-0.000000" else s


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;").replace('"', "&quot;")


def _header(title: str) -> list[str]:
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{VIEW}" height="{VIEW}" '
        f'viewBox="0 0 {VIEW} {VIEW}">',
        f"<title>{_escape(title)}</title>",
        _STYLE,
    ]


def _screen(x: float, y: float, radius: float) -> tuple[str, str]:
    half = VIEW / 2
    scale = (half - 20) / radius
    return _fmt(half + x * scale), _fmt(half - y * scale)


def _polyline(points: Sequence[tuple[float, float]], radius: float) -> str:
    cmds = []
    for k, (x, y) in enumerate(points):
        sx, sy = _screen(x, y, radius)
        cmds.append(f"{'M' if k == 0 else 'L'}{sx},{sy}")
    return " ".join(cmds)


# -- two dimensions -----------------------------------------------------------------

def _unit(v: Sequence) -> tuple[float, float]:
    x, y = float(v[0]), float(v[1])
    r = math.hypot(x, y)
    return x / r, y / r


def render_2d(walls: Sequence[WallSpec], title: str = "wall-and-chamber structure",
              radius: float = 1.0) -> str:
    """One SVG group per wall: a full line for walls with a lineality direction, else a ray.

    Raises:
        ValueError: a wall does not live in the plane.
    """
    out = _header(title)
    ax0 = _screen(-radius * 1.05, 0, radius * 1.1)
    ax1 = _screen(radius * 1.05, 0, radius * 1.1)
    ay0 = _screen(0, -radius * 1.05, radius * 1.1)
    ay1 = _screen(0, radius * 1.05, radius * 1.1)
    out.append(f'<path class="axis" d="M{ax0[0]},{ax0[1]} L{ax1[0]},{ax1[1]} M{ay0[0]},{ay0[1]} L{ay1[0]},{ay1[1]}"/>')
    view = radius * 1.1
    for k, w in enumerate(walls):
        if w.cone.ambient != 2:
            raise ValueError("render_2d needs walls in the plane")
        cls = "limit-wall" if w.limit else "wall"
        if w.cone.lineality:
            ux, uy = _unit(w.cone.lineality[0])
            d = _polyline([(-ux * radius, -uy * radius), (ux * radius, uy * radius)], view)
            lx, ly = ux * radius, uy * radius
        else:
            segs = []
            for r in w.cone.rays:
                ux, uy = _unit(r)
                segs.append(_polyline([(0.0, 0.0), (ux * radius, uy * radius)], view))
            d = " ".join(segs)
            lx, ly = _unit(w.cone.rays[0])
            lx, ly = lx * radius, ly * radius
        tx, ty = _screen(lx * 1.04, ly * 1.04, view)
        out.append(f'<g class="{cls}" id="wall-{k}" data-label="{_escape(w.label)}">'
                   f'<path d="{d}"/><text x="{tx}" y="{ty}">{_escape(w.label)}</text></g>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


# -- stereographic projection ----------------------------------------------------------

def _cross(a: Sequence, b: Sequence) -> tuple:
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def rational_circle_point(normal: Sequence, search: int = 12) -> tuple[Fraction, ...] | None:
    """A rational point on the unit sphere inside the plane ``normal · x = 0``, if a small one exists."""
    best = None
    rng = range(-search, search + 1)
    for a in rng:
        for b in rng:
            for c in rng:
                if (a, b, c) == (0, 0, 0) or a * normal[0] + b * normal[1] + c * normal[2] != 0:
                    continue
                sq = a * a + b * b + c * c
                root = math.isqrt(sq)
                if root * root != sq:
                    continue
                key = (root, abs(a) + abs(b) + abs(c), (a, b, c))
                if best is None or key < best[0]:
                    best = (key, (Fraction(a, root), Fraction(b, root), Fraction(c, root)))
    return best[1] if best else None


class GreatCircle:
    """Parametrisation of the unit circle in a plane through the origin.

    When the circle has a small rational point ``q`` the parametrisation
    ``point(t) = ((|r|^2 - t^2) q - 2 t r) / (|r|^2 + t^2)`` with ``r = normal x q``
    is used, so every sample is exactly on the sphere and the plane. Circles
    without such a point (``x + y + z = 0`` has none) fall back to
    ``cos(t) q + sin(t) r`` in floating point.
    """

    def __init__(self, normal: Sequence):
        self.normal = vec(normal)
        q = rational_circle_point([int(x) for x in primitive(self.normal)])
        self.exact = q is not None
        if q is None:
            base = next(c for c in (_cross(self.normal, e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))) if any(c))
            length = math.sqrt(float(dot(base, base)))
            q = tuple(float(x) / length for x in base)
            r = _cross([float(x) for x in self.normal], q)
            r_len = math.sqrt(sum(x * x for x in r))
            self.q, self.r = q, tuple(x / r_len for x in r)
            return
        self.q = q
        self.r = _cross(self.normal, q)
        self.rr = dot(self.r, self.r)
        self.r_len = math.sqrt(float(self.rr))

    def point(self, t) -> tuple[Fraction, ...]:
        if not self.exact:
            return tuple(Fraction(math.cos(t) * a - math.sin(t) * b) for a, b in zip(self.q, self.r))
        den = self.rr + t * t
        return tuple(((self.rr - t * t) * qi - 2 * t * ri) / den for qi, ri in zip(self.q, self.r))

    def parameter(self, theta: float):
        """Parameter of (approximately) the point at angle ``theta`` from ``q``."""
        if not self.exact:
            return theta
        return Fraction(-self.r_len * math.tan(theta / 2)).limit_denominator(10**6)


def _arcs(circle: GreatCircle, cone: Cone, samples: int) -> list[list[tuple[Fraction, ...]]]:
    """Maximal runs of rational circle points inside ``cone``, refined at their ends."""
    thetas = [2 * math.pi * (k + 0.5) / samples - math.pi for k in range(samples)]
    params = [circle.parameter(th) for th in thetas]
    pts = [circle.point(t) for t in params]
    inside = [_in_sector(cone, p) for p in pts]
    if all(inside):
        return [pts + [pts[0]]]
    if not any(inside):
        return []
    start = next(k for k in range(samples) if not inside[k])
    order = [(start + k) % samples for k in range(samples)]
    runs, cur = [], []
    for k in order:
        if inside[k]:
            cur.append(k)
        elif cur:
            runs.append(cur)
            cur = []
    if cur:
        runs.append(cur)
    arcs = []
    for run in runs:
        first, last = run[0], run[-1]
        before = (first - 1) % samples
        after = (last + 1) % samples
        lead = _bisect(circle, cone, thetas[before], thetas[first], first < before)
        tail = _bisect(circle, cone, thetas[last], thetas[after], after < last)
        arcs.append([lead] + [pts[k] for k in run] + [tail])
    return arcs


def _in_sector(cone: Cone, x) -> bool:
    """Inequality part of wall membership; circle points already lie on the plane."""
    return all(dot(b, x) >= 0 for b in cone.ineqs)


def _bisect(circle: GreatCircle, cone: Cone, th_a: float, th_b: float, wrap: bool):
    """Boundary point between angles ``th_a`` and ``th_b`` (one inside, one outside)."""
    if wrap:
        th_b += 2 * math.pi if th_b < th_a else -2 * math.pi
    in_a = _in_sector(cone, circle.point(circle.parameter(th_a)))
    lo, hi = (th_a, th_b) if in_a else (th_b, th_a)
    for _ in range(BISECT_STEPS):
        mid = (lo + hi) / 2
        if _in_sector(cone, circle.point(circle.parameter(mid))):
            lo = mid
        else:
            hi = mid
    return circle.point(circle.parameter(lo))


@dataclass(frozen=True)
class ProjectionSpec:
    point: tuple = (1, 1, 1)
    samples: int = SAMPLES
    view_radius: float = VIEW_RADIUS


def _frame(p: Sequence) -> tuple:
    n = [float(x) for x in p]
    norm = math.sqrt(sum(x * x for x in n))
    N = tuple(x / norm for x in n)
    ref = (0.0, 0.0, 1.0) if abs(N[2]) < 0.9 else (1.0, 0.0, 0.0)
    e1 = _cross(ref, N)
    l1 = math.sqrt(sum(x * x for x in e1))
    e1 = tuple(x / l1 for x in e1)
    e2 = _cross(N, e1)
    return N, e1, e2


def stereographic(x: Sequence[float], frame) -> tuple[float, float] | None:
    """Projection of a unit vector from ``N`` onto the plane ``N^⊥``; ``None`` at the pole."""
    N, e1, e2 = frame
    z = sum(a * b for a, b in zip(x, N))
    if 1 - z < 1e-12:
        return None
    y = [(a - z * b) / (1 - z) for a, b in zip(x, N)]
    return sum(a * b for a, b in zip(y, e1)), sum(a * b for a, b in zip(y, e2))


def inverse_stereographic(u: float, v: float, frame) -> tuple[float, ...]:
    N, e1, e2 = frame
    s = u * u + v * v
    return tuple((2 * u * a + 2 * v * b + (s - 1) * c) / (s + 1) for a, b, c in zip(e1, e2, N))


def render_stereographic(walls: Sequence[WallSpec], spec: ProjectionSpec = ProjectionSpec(),
                         title: str = "stereographic projection") -> str:
    """Great-circle arcs of each wall, projected from ``spec.point``; back hemisphere dashed.

    Raises:
        ValueError: the walls are not in three dimensions, or the projection point lies on one.
    """
    frame = _frame(spec.point)
    p = vec(spec.point)
    out = _header(title)
    R = spec.view_radius
    for k, w in enumerate(walls):
        if w.cone.ambient != 3:
            raise ValueError("stereographic rendering needs walls in three dimensions")
        if w.cone.contains(p):
            raise ValueError(f"projection point lies on wall {w.label}")
        normal = w.cone.eqs[0] if w.cone.eqs else _normal_of(w.cone)
        circle = GreatCircle(normal)
        paths = []
        label_at = None
        for arc in _arcs(circle, w.cone, spec.samples):
            for back, run in _hemisphere_runs(arc, p):
                for piece in _clip(run, frame, R):
                    cls = ' class="back"' if back else ""
                    paths.append(f'<path{cls} d="{_polyline(piece, R)}"/>')
                    if label_at is None or (not back and label_at[0]):
                        label_at = (back, piece[len(piece) // 2])
        text = ""
        if label_at is not None:
            tx, ty = _screen(label_at[1][0], label_at[1][1], R)
            text = f'<text x="{tx}" y="{ty}" dx="4" dy="-4">{_escape(w.label)}</text>'
        out.append(f'<g class="wall" id="wall-{k}" data-label="{_escape(w.label)}">{"".join(paths)}{text}</g>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _normal_of(cone: Cone) -> tuple:
    gens = cone.generators()
    for a in gens:
        for b in gens:
            c = _cross(a, b)
            if any(c):
                return c
    raise ValueError("wall is not two-dimensional")


def _hemisphere_runs(arc, p):
    runs = []
    for x in arc:
        back = float(dot(x, p)) < -1e-9
        if runs and runs[-1][0] == back:
            runs[-1][1].append(x)
        else:
            if runs:
                runs[-1][1].append(x)  # share the crossing point so the curve stays connected
            runs.append((back, [x]))
    return [(b, r) for b, r in runs if len(r) >= 2]


def _clip(run, frame, radius: float) -> list[list[tuple[float, float]]]:
    pieces, cur = [], []
    for x in run:
        y = stereographic([float(c) for c in x], frame)
        if y is None or math.hypot(*y) > radius:
            if len(cur) >= 2:
                pieces.append(cur)
            cur = []
            continue
        cur.append(y)
    if len(cur) >= 2:
        pieces.append(cur)
    return pieces


# -- DOT export -------------------------------------------------------------------

def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def export_dot(graph, labels: bool = False, catalog=None, name: str = "mutation") -> str:
    """Digraph with one node per pair and one edge per left mutation (larger to smaller)."""
    lines = [f"digraph {name} {{", "  node [shape=box];"]
    if graph is None:
        lines.append("}")
        return "\n".join(lines) + "\n"
    keys = list(graph.nodes)
    index = {k: i for i, k in enumerate(keys)}
    for i, k in enumerate(keys):
        pair = graph.nodes[k]
        text = _dot_escape(pair.label(catalog)) + "\\n" + _dot_escape(pair.key_str())
        lines.append(f'  n{i} [label="{text}"];')
    for e in graph.edges:
        attr = ""
        if labels:
            lab = e.label_id
            if lab is None and e.label is not None:
                lab = (catalog.find(e.label) if catalog is not None else None) or loewy_name(e.label)
            if lab is not None:
                attr = f' [label="{_dot_escape(lab)}"]'
        lines.append(f"  n{index[e.upper]} -> n{index[e.lower]}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"
