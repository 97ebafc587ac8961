"""Point-line arrangements in PG(2, q) and their 3-rich lines.

Two independent routes produce the 3-rich lines of a curve's point set:

* :func:`lines_from_group` uses the group law (P + Q + R = O);
* :func:`lines_geometric` scans every line of PG(2, q) and counts incidences.

They must agree as sets of index triples.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np

from .caps import GEOMETRIC_MAX_Q, GROUP_LINES_MAX_Q, check_q
from .elliptic_curve import (
    ProjPoint,
    WeierstrassCurve,
    _add,
    _neg,
    ec_group_structure,
    ec_points,
)
from .errors import DuplicatePoints, TooSmall
from .finite_field import FieldSpec
from .group_counting import count_3rich_formula, green_tao_bound

Triple = tuple[int, int, int]


@dataclass(frozen=True)
class Arrangement:
    points: tuple
    lines: tuple[Triple, ...]
    spec: FieldSpec | None = field(default=None, compare=False)

    @property
    def n_points(self) -> int:
        return len(self.points)

    @property
    def n_lines(self) -> int:
        return len(self.lines)

    def line_set(self) -> frozenset[Triple]:
        return frozenset(self.lines)


def proj_det(spec: FieldSpec, P: Sequence[int], Q: Sequence[int], R: Sequence[int]) -> int:
    """3x3 determinant of homogeneous coordinates over F_q (as an encoding)."""
    add, sub, mul = spec.add, spec.sub, spec.mul
    minor0 = sub(mul(Q[1], R[2]), mul(Q[2], R[1]))
    minor1 = sub(mul(Q[0], R[2]), mul(Q[2], R[0]))
    minor2 = sub(mul(Q[0], R[1]), mul(Q[1], R[0]))
    return add(sub(mul(P[0], minor0), mul(P[1], minor1)), mul(P[2], minor2))


def collinear(spec: FieldSpec, P, Q, R) -> bool:
    return proj_det(spec, P, Q, R) == 0


def lines_from_group(curve: WeierstrassCurve) -> Arrangement:
    """3-rich lines as unordered triples of distinct points summing to O."""
    check_q(curve.q, GROUP_LINES_MAX_Q, "group line enumeration")
    points = ec_points(curve)
    index = {P: i for i, P in enumerate(points)}
    lines = []
    for i, P in enumerate(points):
        for j in range(i + 1, len(points)):
            k = index[_neg(curve, _add(curve, P, points[j]))]
            # k == i or k == j is a tangent line through only two of the points
            if k > j:
                lines.append((i, j, k))
    lines.sort()
    return Arrangement(tuple(points), tuple(lines), curve.spec)


def projective_lines(spec: FieldSpec) -> list[tuple[int, int, int]]:
    """All q^2 + q + 1 lines aX + bY + cZ = 0, first nonzero coefficient 1."""
    q = spec.q
    lines = [(1, b, c) for b in range(q) for c in range(q)]
    lines.extend((0, 1, c) for c in range(q))
    lines.append((0, 0, 1))
    return lines


def _incidences(points: Sequence[ProjPoint], spec: FieldSpec) -> list[tuple[tuple[int, int, int], tuple[int, ...]]]:
    """(line, incident point indices) for every line meeting >= 3 points."""
    lines = projective_lines(spec)
    out = []
    if spec.n == 1:
        p = spec.p
        L = np.array(lines, dtype=np.int64)
        P = np.array(points, dtype=np.int64).reshape(-1, 3)
        hits = (L @ P.T) % p == 0
        rows = np.nonzero(hits.sum(axis=1) >= 3)[0]
        for r in rows:
            out.append((lines[r], tuple(int(i) for i in np.nonzero(hits[r])[0])))
        return out
    add, mul = spec.add, spec.mul
    for line in lines:
        a, b, c = line
        on = tuple(
            i for i, (X, Y, Z) in enumerate(points)
            if add(add(mul(a, X), mul(b, Y)), mul(c, Z)) == 0
        )
        if len(on) >= 3:
            out.append((line, on))
    return out


def _check_points(points: Sequence[ProjPoint], spec: FieldSpec) -> None:
    check_q(spec.q, GEOMETRIC_MAX_Q, "geometric line scan")
    if len(set(points)) != len(points):
        raise DuplicatePoints("point list contains repeats")


def lines_geometric(points: Sequence[ProjPoint], spec: FieldSpec) -> Arrangement:
    """3-rich lines found by scanning every line of PG(2, q)."""
    _check_points(points, spec)
    lines = sorted(on for _, on in _incidences(points, spec) if len(on) == 3)
    return Arrangement(tuple(points), tuple(lines), spec)


def max_collinear(points: Sequence[ProjPoint], spec: FieldSpec) -> int:
    """Largest number of the points on a single line of PG(2, q)."""
    _check_points(points, spec)
    if len(points) < 3:
        return len(points)
    return max((len(on) for _, on in _incidences(points, spec)), default=2)


@dataclass(frozen=True)
class CurveSummary:
    curve: WeierstrassCurve
    n: int
    t: int
    group: object
    bound: int | None
    excess: int | None


def summarize(curve: WeierstrassCurve) -> CurveSummary:
    """N, line count (closed form), structure, bound and excess for a curve."""
    group = ec_group_structure(curve)
    N = group.order
    t = count_3rich_formula(group)
    try:
        bound = green_tao_bound(N)
    except TooSmall:
        return CurveSummary(curve, N, t, group, None, None)
    return CurveSummary(curve, N, t, group, bound, t - bound)


# file formats


def _fmt(v) -> str:
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return str(v)


def format_arrangement(points: Sequence[Sequence], lines: Sequence[Triple], q: int) -> str:
    """Header ``N t q``, one ``X Y Z`` line per point, one ``i j k`` per line."""
    out = [f"{len(points)} {len(lines)} {q}"]
    out.extend(" ".join(_fmt(c) for c in P) for P in points)
    out.extend(" ".join(map(str, t)) for t in lines)
    return "\n".join(out) + "\n"


@dataclass(frozen=True)
class ArrangementFile:
    q: int
    points: tuple[tuple[Fraction, Fraction, Fraction], ...]
    lines: tuple[Triple, ...]


def parse_arrangement(text: str) -> ArrangementFile:
    """Read the arrangement format; coordinates may be ``num/den`` rationals."""
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows or len(rows[0]) != 3:
        raise ValueError("arrangement file needs a header 'N t q'")
    try:
        n, t, q = (int(v) for v in rows[0])
    except ValueError as exc:
        raise ValueError(f"bad header {rows[0]}") from exc
    if len(rows) != 1 + n + t:
        raise ValueError(f"expected {1 + n + t} rows, found {len(rows)}")
    try:
        points = tuple(tuple(Fraction(c) for c in r) for r in rows[1:1 + n])
        lines = tuple(tuple(int(c) for c in r) for r in rows[1 + n:])
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad arrangement entry: {exc}") from exc
    if any(len(P) != 3 for P in points) or any(len(L) != 3 for L in lines):
        raise ValueError("points and lines need exactly three entries")
    for L in lines:
        if not (0 <= L[0] < L[1] < L[2] < n):
            raise ValueError(f"line {L} is not a sorted index triple")
    return ArrangementFile(q, points, lines)


def arrangement_json(curve: WeierstrassCurve, arrangement: Arrangement) -> dict:
    N, t = arrangement.n_points, arrangement.n_lines
    bound = green_tao_bound(N) if N >= 3 else None
    return {
        "field": str(curve.spec),
        "curve": curve.text(),
        "points": [list(P) for P in arrangement.points],
        "lines": [list(L) for L in arrangement.lines],
        "n": N,
        "t": t,
        "bound": bound,
        "excess": None if bound is None else t - bound,
    }


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def triples_collinear_check(arrangement: Arrangement) -> bool:
    """Every listed triple is pairwise distinct and projectively collinear."""
    spec = arrangement.spec
    pts = arrangement.points
    return all(
        len({pts[i], pts[j], pts[k]}) == 3 and collinear(spec, pts[i], pts[j], pts[k])
        for i, j, k in arrangement.lines
    )


def all_collinear_triples(points: Sequence[ProjPoint], spec: FieldSpec) -> list[Triple]:
    """Every collinear index triple by direct determinant tests (small inputs)."""
    return [
        (i, j, k)
        for i, j, k in combinations(range(len(points)), 3)
        if collinear(spec, points[i], points[j], points[k])
    ]
