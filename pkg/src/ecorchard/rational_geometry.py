"""Exact collinearity over Q and reduction of rational configurations mod p.

Everything here uses :class:`fractions.Fraction`; a determinant is zero only
when it is the integer zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .caps import RATIONAL_MAX_POINTS
from .elliptic_curve import INFINITY, ProjPoint, WeierstrassCurve, affine_point, ec_points, make_curve
from .errors import DenominatorDivisibleByP, DuplicatePoints, FourCollinear, NotPrime, TooLarge
from .finite_field import ff_make, is_prime
from .orchard import Arrangement, ArrangementFile, format_arrangement, lines_geometric

# Largest known number of 3-rich lines for n points in the real plane.
KNOWN_REAL_MAXIMA = {3: 1, 4: 1, 5: 2, 6: 4, 7: 6, 8: 7, 9: 10, 10: 12, 11: 16, 12: 19}


@dataclass(frozen=True)
class RationalPoint:
    x: Fraction = Fraction(0)
    y: Fraction = Fraction(0)
    at_infinity: bool = False

    def __post_init__(self):
        if self.at_infinity:
            object.__setattr__(self, "x", None)
            object.__setattr__(self, "y", None)
        else:
            object.__setattr__(self, "x", Fraction(self.x))
            object.__setattr__(self, "y", Fraction(self.y))

    @classmethod
    def infinity(cls) -> "RationalPoint":
        return cls(at_infinity=True)

    def homogeneous(self) -> tuple[Fraction, Fraction, Fraction]:
        if self.at_infinity:
            return Fraction(0), Fraction(1), Fraction(0)
        return self.x, self.y, Fraction(1)

    def __str__(self) -> str:
        return "O" if self.at_infinity else f"({self.x}, {self.y})"


def from_homogeneous(X, Y, Z) -> RationalPoint:
    """Only Z != 0 or the point (0:1:0) are accepted."""
    X, Y, Z = Fraction(X), Fraction(Y), Fraction(Z)
    if Z:
        return RationalPoint(X / Z, Y / Z)
    if X == 0 and Y != 0:
        return RationalPoint.infinity()
    raise ValueError(f"({X}:{Y}:{Z}) is neither affine nor (0:1:0)")


def _det3(P, Q, R) -> Fraction:
    return (
        P[0] * (Q[1] * R[2] - Q[2] * R[1])
        - P[1] * (Q[0] * R[2] - Q[2] * R[0])
        + P[2] * (Q[0] * R[1] - Q[1] * R[0])
    )


def rat_collinear(P: RationalPoint, Q: RationalPoint, R: RationalPoint) -> bool:
    if P == Q or Q == R or P == R:
        raise DuplicatePoints("collinearity needs three distinct points")
    return _det3(P.homogeneous(), Q.homogeneous(), R.homogeneous()) == 0


def _line_through(P: RationalPoint, Q: RationalPoint) -> tuple[Fraction, Fraction, Fraction]:
    """Dual coordinates of the line PQ, scaled so the first nonzero entry is 1."""
    a, b = P.homogeneous(), Q.homogeneous()
    line = (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])
    lead = next(c for c in line if c)
    return tuple(c / lead for c in line)


def rat_enumerate_3rich(points: Sequence[RationalPoint]) -> Arrangement:
    """All collinear index triples; raises if any line holds four or more points."""
    if len(points) > RATIONAL_MAX_POINTS:
        raise TooLarge(f"{len(points)} points exceeds the cap of {RATIONAL_MAX_POINTS}")
    if len(set(points)) != len(points):
        raise DuplicatePoints("point list contains repeats")
    triples = [t for t in combinations(range(len(points)), 3) if rat_collinear(*(points[i] for i in t))]
    on_line: dict[tuple, set[int]] = {}
    for i, j, k in triples:
        on_line.setdefault(_line_through(points[i], points[j]), set()).update((i, j, k))
    crowded = [sorted(s) for s in on_line.values() if len(s) > 3]
    if crowded:
        raise FourCollinear(f"points {crowded[0]} are collinear")
    return Arrangement(tuple(points), tuple(triples))


def reduce_point(P: RationalPoint, p: int) -> ProjPoint:
    if P.at_infinity:
        return INFINITY
    coords = []
    for c in (P.x, P.y):
        if c.denominator % p == 0:
            raise DenominatorDivisibleByP(f"{c} has a denominator divisible by {p}")
        coords.append(c.numerator * pow(c.denominator, -1, p) % p)
    return affine_point(*coords)


@dataclass
class ReductionReport:
    p: int
    reduced: list[ProjPoint]
    mapping: dict[int, int] | None  # rational index -> target index
    injective: bool
    bijective: bool
    lines_match: bool | None
    rational_lines: frozenset
    reduced_lines: frozenset

    @property
    def ok(self) -> bool:
        return self.injective and bool(self.lines_match)


def rat_reduce_mod_p(points: Sequence[RationalPoint], p: int, target: Sequence[ProjPoint] | None = None) -> ReductionReport:
    """Reduce mod p and compare 3-rich lines before and after.

    With ``target`` (say a curve's point list) the mapping goes into its
    indices; it is a bijection when the reduced points exhaust the target.
    Lines are compared among the reduced points only.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    reduced = [reduce_point(P, p) for P in points]
    rational = rat_enumerate_3rich(points).line_set()
    if len(set(reduced)) != len(reduced):
        return ReductionReport(p, reduced, None, False, False, None, rational, frozenset())
    if target is None:
        mapping = {i: i for i in range(len(reduced))}
        bijective = True
    else:
        index = {P: i for i, P in enumerate(target)}
        if any(P not in index for P in reduced):
            return ReductionReport(p, reduced, None, False, False, None, rational, frozenset())
        mapping = {i: index[P] for i, P in enumerate(reduced)}
        bijective = len(target) == len(reduced)
    mod_p = lines_geometric(reduced, ff_make(p)).line_set()
    return ReductionReport(p, reduced, mapping, True, bijective, mod_p == rational, rational, mod_p)


def on_curve_q(P: RationalPoint, a: Sequence[int]) -> bool:
    """Does P satisfy y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Q?"""
    if P.at_infinity:
        return True
    a1, a2, a3, a4, a6 = a
    x, y = P.x, P.y
    return y * y + a1 * x * y + a3 * y == x**3 + a2 * x * x + a4 * x + a6


# The eight-point real configuration of y^2 = x^3 + 5x^2 + 4x, lifted from F_7.
FIG4_COEFFS = (0, 5, 0, 4, 0)
FIG4_POINTS = (
    RationalPoint.infinity(),
    RationalPoint(0, 0),
    RationalPoint(2, -6),
    RationalPoint(2, 6),
    RationalPoint(-4, 0),
    RationalPoint(-2, 2),
    RationalPoint(-2, -2),
    RationalPoint(-1, 0),
)
FIG4_LABELS = ("O", "A1", "B1", "C1", "D1", "E1", "F1", "G1")


def fig4_curve(p: int) -> WeierstrassCurve:
    return make_curve(ff_make(p), *FIG4_COEFFS)


def points_from_file(data: ArrangementFile) -> list[RationalPoint]:
    return [from_homogeneous(*P) for P in data.points]


@dataclass
class RealCheck:
    n_points: int
    lines: frozenset
    file_lines_match: bool
    on_curve: bool | None
    reductions: dict[int, ReductionReport]

    @property
    def ok(self) -> bool:
        return self.file_lines_match and self.on_curve is not False and all(r.ok for r in self.reductions.values())


def check_realization(data: ArrangementFile, coeffs: Sequence[int] | None, primes: Sequence[int]) -> RealCheck:
    """Recount lines over Q, compare with the file, and reduce modulo each prime.

    With curve coefficients, points must lie on the curve and each reduction
    is mapped into the point set of the reduced curve.
    """
    points = points_from_file(data)
    lines = rat_enumerate_3rich(points).line_set()
    on_curve = None if coeffs is None else all(on_curve_q(P, coeffs) for P in points)
    reductions = {}
    for p in primes:
        target = None
        if coeffs is not None:
            target = ec_points(make_curve(ff_make(p), *coeffs))
        reductions[p] = rat_reduce_mod_p(points, p, target)
    return RealCheck(len(points), lines, lines == frozenset(data.lines), on_curve, reductions)


def fig4_arrangement_text() -> str:
    """The lifted configuration in arrangement-file form (q = 0 means Q)."""
    lines = rat_enumerate_3rich(FIG4_POINTS).lines
    return format_arrangement([P.homogeneous() for P in FIG4_POINTS], lines, 0)
