"""Weierstrass curves y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over F_q.

Points are :class:`ProjPoint` triples of field encodings (see
:mod:`ecorchard.finite_field`), normalized so that affine points have Z = 1
and the only point at infinity is (0:1:0), the group identity.  With that
normalization point equality is tuple equality.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import NamedTuple, Sequence

from .caps import POINTS_MAX_Q, STRUCTURE_MAX_Q, check_q
from .errors import (
    EvenCharacteristic,
    InternalCheckFailed,
    NotOnCurve,
    SingularCurve,
    SpecMismatch,
    WrongForm,
)
from .finite_field import FieldElement, FieldSpec, parse_field, prime_factors
from .group_counting import AbelianStructure


class ProjPoint(NamedTuple):
    X: int
    Y: int
    Z: int

    def is_infinity(self) -> bool:
        return self.Z == 0

    def affine(self) -> tuple[int, int]:
        return self.X, self.Y


INFINITY = ProjPoint(0, 1, 0)


def affine_point(x: int, y: int) -> ProjPoint:
    return ProjPoint(x, y, 1)


def normalize(spec: FieldSpec, X: int, Y: int, Z: int) -> ProjPoint:
    """Scale homogeneous coordinates to the canonical representative."""
    if Z:
        zi = spec.inv(Z)
        return ProjPoint(spec.mul(X, zi), spec.mul(Y, zi), 1)
    if Y:
        return ProjPoint(spec.div(X, Y), 1, 0)
    if X:
        return ProjPoint(1, 0, 0)
    raise ValueError("(0:0:0) is not a projective point")


def weierstrass_discriminant(spec: FieldSpec, a1: int, a2: int, a3: int, a4: int, a6: int) -> int:
    """Discriminant from the b2, b4, b6, b8 combinations, as an encoding."""
    F = spec
    add, sub, mul = F.add, F.sub, F.mul
    k = F.embed
    b2 = add(mul(a1, a1), mul(k(4), a2))
    b4 = add(mul(k(2), a4), mul(a1, a3))
    b6 = add(mul(a3, a3), mul(k(4), a6))
    b8 = sub(
        add(add(mul(mul(a1, a1), a6), mul(k(4), mul(a2, a6))), mul(a2, mul(a3, a3))),
        add(mul(a1, mul(a3, a4)), mul(a4, a4)),
    )
    # -b2^2 b8 - 8 b4^3 - 27 b6^2 + 9 b2 b4 b6
    terms = [
        F.neg(mul(mul(b2, b2), b8)),
        F.neg(mul(k(8), mul(b4, mul(b4, b4)))),
        F.neg(mul(k(27), mul(b6, b6))),
        mul(k(9), mul(b2, mul(b4, b6))),
    ]
    d = 0
    for t in terms:
        d = add(d, t)
    return d


@dataclass(frozen=True)
class WeierstrassCurve:
    spec: FieldSpec
    a1: FieldElement
    a2: FieldElement
    a3: FieldElement
    a4: FieldElement
    a6: FieldElement

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4", "a6"):
            c = getattr(self, name)
            if c.spec != self.spec:
                raise SpecMismatch(f"{name} lives in {c.spec}, curve in {self.spec}")
        if weierstrass_discriminant(self.spec, *self.ints) == 0:
            raise SingularCurve(f"singular curve {self.equation()} over {self.spec}")

    @cached_property
    def ints(self) -> tuple[int, int, int, int, int]:
        return (self.a1.value, self.a2.value, self.a3.value, self.a4.value, self.a6.value)

    @property
    def q(self) -> int:
        return self.spec.q

    def has_no_xy_y_terms(self) -> bool:
        return self.a1.value == 0 and self.a3.value == 0

    def is_short(self) -> bool:
        return self.has_no_xy_y_terms() and self.a2.value == 0

    def equation(self) -> str:
        """The equation; extension-field coefficients are written in z."""

        def coef(c: FieldElement, mono: str) -> str:
            if not mono:
                return c.format("z")
            if c.value == 1:
                return mono
            return f"{c.format('z')}{mono}" if self.spec.n == 1 else f"({c.format('z')}){mono}"

        lhs = ["y^2"] + [coef(c, m) for c, m in ((self.a1, "xy"), (self.a3, "y")) if c.value]
        rhs = ["x^3"] + [
            coef(c, m) for c, m in ((self.a2, "x^2"), (self.a4, "x"), (self.a6, "")) if c.value
        ]
        return " + ".join(lhs) + " = " + " + ".join(rhs)

    def text(self) -> str:
        """Canonical curve string ``<field>;a1,a2,a3,a4,a6``."""
        parts = []
        for c in (self.a1, self.a2, self.a3, self.a4, self.a6):
            parts.append(str(c.value) if self.spec.n == 1 else ",".join(map(str, c.coeffs)))
        return f"{self.spec};" + ",".join(parts)

    def __str__(self) -> str:
        return f"{self.equation()} over F_{self.q}"


def make_curve(spec: FieldSpec, a1=0, a2=0, a3=0, a4=0, a6=0) -> WeierstrassCurve:
    """Curve from integers (prime subfield), coefficient lists or FieldElements."""
    return WeierstrassCurve(spec, *(spec.element(c) for c in (a1, a2, a3, a4, a6)))


def curve_from_encodings(spec: FieldSpec, a1: int, a2: int, a3: int, a4: int, a6: int) -> WeierstrassCurve:
    """Curve from raw field encodings (0 <= a < q), not prime-subfield residues."""
    return WeierstrassCurve(spec, *(FieldElement(spec, c) for c in (a1, a2, a3, a4, a6)))


def short_curve(spec: FieldSpec, A, B) -> WeierstrassCurve:
    return make_curve(spec, 0, 0, 0, A, B)


def ec_discriminant(curve: WeierstrassCurve) -> FieldElement:
    return FieldElement(curve.spec, weierstrass_discriminant(curve.spec, *curve.ints))


def _check_coords(curve: WeierstrassCurve, P: ProjPoint) -> None:
    q = curve.q
    if not all(0 <= c < q for c in P):
        raise SpecMismatch(f"{P} has coordinates outside F_{q}")


def _on_curve(curve: WeierstrassCurve, P: ProjPoint) -> bool:
    if P.Z == 0:
        return P == INFINITY
    if P.Z != 1:
        return False
    F = curve.spec
    a1, a2, a3, a4, a6 = curve.ints
    x, y = P.X, P.Y
    lhs = F.mul(y, F.add(y, F.add(F.mul(a1, x), a3)))
    rhs = F.add(F.mul(F.add(F.mul(F.add(x, a2), x), a4), x), a6)
    return lhs == rhs


def ec_is_on_curve(curve: WeierstrassCurve, P: ProjPoint) -> bool:
    _check_coords(curve, P)
    return _on_curve(curve, P)


def _require(curve: WeierstrassCurve, *points: ProjPoint) -> None:
    for P in points:
        if not ec_is_on_curve(curve, P):
            raise NotOnCurve(f"{P} is not on {curve}")


def _neg(curve: WeierstrassCurve, P: ProjPoint) -> ProjPoint:
    if P.Z == 0:
        return P
    F = curve.spec
    a1, _, a3, _, _ = curve.ints
    return ProjPoint(P.X, F.sub(F.neg(P.Y), F.add(F.mul(a1, P.X), a3)), 1)


def _add(curve: WeierstrassCurve, P: ProjPoint, Q: ProjPoint) -> ProjPoint:
    if P.Z == 0:
        return Q
    if Q.Z == 0:
        return P
    if curve.spec.n == 1:
        return _add_prime(curve.spec.p, curve.ints, P, Q)
    return _add_general(curve, P, Q)


def _add_general(curve: WeierstrassCurve, P: ProjPoint, Q: ProjPoint) -> ProjPoint:
    """Chord and tangent on affine non-identity points, any field."""
    F = curve.spec
    add, sub, mul = F.add, F.sub, F.mul
    a1, a2, a3, a4, _ = curve.ints
    x1, y1, x2, y2 = P.X, P.Y, Q.X, Q.Y
    if x1 == x2:
        # Q is either P or -P
        den = add(add(y1, y2), add(mul(a1, x1), a3))
        if den == 0:
            return INFINITY
        num = sub(
            add(add(mul(F.embed(3), mul(x1, x1)), mul(F.embed(2), mul(a2, x1))), a4),
            mul(a1, y1),
        )
        lam = F.div(num, den)
    else:
        lam = F.div(sub(y2, y1), sub(x2, x1))
    nu = sub(y1, mul(lam, x1))
    x3 = sub(sub(sub(add(mul(lam, lam), mul(a1, lam)), a2), x1), x2)
    y3 = sub(sub(F.neg(mul(add(lam, a1), x3)), nu), a3)
    return ProjPoint(x3, y3, 1)


def _add_prime(p: int, a: tuple, P: ProjPoint, Q: ProjPoint) -> ProjPoint:
    """Same formulas with plain integers mod p (affine, non-identity inputs)."""
    a1, a2, a3, a4, _ = a
    x1, y1, x2, y2 = P.X, P.Y, Q.X, Q.Y
    if x1 == x2:
        den = (y1 + y2 + a1 * x1 + a3) % p
        if den == 0:
            return INFINITY
        lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) * pow(den, -1, p) % p
    else:
        lam = (y2 - y1) * pow(x2 - x1, -1, p) % p
    nu = y1 - lam * x1
    x3 = (lam * lam + a1 * lam - a2 - x1 - x2) % p
    return ProjPoint(x3, (-(lam + a1) * x3 - nu - a3) % p, 1)


def _mul(curve: WeierstrassCurve, m: int, P: ProjPoint) -> ProjPoint:
    if m < 0:
        m, P = -m, _neg(curve, P)
    result = INFINITY
    addend = P
    while m:
        if m & 1:
            result = _add(curve, result, addend)
        addend = _add(curve, addend, addend)
        m >>= 1
    return result


def ec_neg(curve: WeierstrassCurve, P: ProjPoint) -> ProjPoint:
    _require(curve, P)
    return _neg(curve, P)


def ec_add(curve: WeierstrassCurve, P: ProjPoint, Q: ProjPoint) -> ProjPoint:
    _require(curve, P, Q)
    return _add(curve, P, Q)


def ec_scalar_mul(curve: WeierstrassCurve, m: int, P: ProjPoint) -> ProjPoint:
    _require(curve, P)
    return _mul(curve, m, P)


def _root_table(spec: FieldSpec, artin_schreier: bool) -> dict[int, list[int]]:
    """Map v to the sorted list of y with y^2 = v (or y^2 + y = v)."""
    table: dict[int, list[int]] = {}
    for y in range(spec.q):
        v = spec.mul(y, y)
        if artin_schreier:
            v = spec.add(v, y)
        table.setdefault(v, []).append(y)
    return table


@lru_cache(maxsize=256)
def _points(curve: WeierstrassCurve) -> tuple[ProjPoint, ...]:
    F = curve.spec
    a1, a2, a3, a4, a6 = curve.ints
    squares = _root_table(F, False)
    as_roots = _root_table(F, True) if F.p == 2 else None
    half = F.inv(2) if F.p != 2 else None
    out = [INFINITY]
    for x in range(F.q):
        r = F.add(F.mul(F.add(F.mul(F.add(x, a2), x), a4), x), a6)
        b = F.add(F.mul(a1, x), a3)
        # solve y^2 + b y = r
        if b == 0:
            ys = squares.get(r, [])
        elif F.p == 2:
            # y = b z with z^2 + z = r / b^2
            zs = as_roots.get(F.div(r, F.mul(b, b)), [])
            ys = sorted(F.mul(b, z) for z in zs)
        else:
            # (y + b/2)^2 = r + b^2/4
            hb = F.mul(b, half)
            ws = squares.get(F.add(r, F.mul(hb, hb)), [])
            ys = sorted(F.sub(w, hb) for w in ws)
        out.extend(ProjPoint(x, y, 1) for y in ys)
    return tuple(out)


def ec_points(curve: WeierstrassCurve) -> list[ProjPoint]:
    """All points, O first and then affine points ordered by (x, y)."""
    check_q(curve.q, POINTS_MAX_Q, "point enumeration")
    return list(_points(curve))


def ec_count_legendre(curve: WeierstrassCurve) -> int:
    """#E = q + 1 + sum over x of the quadratic character of f(x).

    Accepts any y^2 = f(x), i.e. a1 = a3 = 0; short form is the usual case.
    """
    F = curve.spec
    if F.p == 2:
        raise EvenCharacteristic("character sum needs odd characteristic")
    if not curve.has_no_xy_y_terms():
        raise WrongForm(f"{curve} is not of the form y^2 = f(x)")
    _, a2, _, a4, a6 = curve.ints
    total = F.q + 1
    for x in range(F.q):
        total += F.legendre(F.add(F.mul(F.add(F.mul(F.add(x, a2), x), a4), x), a6))
    return total


def ec_order(curve: WeierstrassCurve) -> int:
    return len(ec_points(curve))


def ec_trace(curve: WeierstrassCurve) -> int:
    q = curve.q
    t = q + 1 - ec_order(curve)
    if t * t > 4 * q:
        raise InternalCheckFailed(f"Hasse bound violated: t={t}, q={q}")
    return t


def _poly_pow_coeff(spec: FieldSpec, f: Sequence[int], e: int, degree: int) -> int:
    """Coefficient of x^degree in f(x)^e, coefficients as field encodings."""
    result = [1]
    for _ in range(e):
        nxt = [0] * (len(result) + len(f) - 1)
        for i, a in enumerate(result):
            if a:
                for j, b in enumerate(f):
                    if b:
                        nxt[i + j] = spec.add(nxt[i + j], spec.mul(a, b))
        result = nxt
    return result[degree] if degree < len(result) else 0


def ec_is_supersingular(curve: WeierstrassCurve, method: str = "trace") -> bool:
    p = curve.spec.p
    if method == "trace":
        return ec_trace(curve) % p == 0
    if method == "deuring":
        if p == 2:
            raise WrongForm("coefficient criterion needs p > 2")
        if not curve.has_no_xy_y_terms():
            raise WrongForm(f"{curve} is not of the form y^2 = f(x)")
        _, a2, _, a4, a6 = curve.ints
        f = [a6, a4, a2, 1]
        return _poly_pow_coeff(curve.spec, f, (p - 1) // 2, p - 1) == 0
    raise ValueError(f"unknown method {method!r}")


def point_order(curve: WeierstrassCurve, P: ProjPoint, group_order: int) -> int:
    """Order of P, found by stripping prime factors off the group order."""
    order = group_order
    for r in prime_factors(group_order):
        while order % r == 0 and _mul(curve, order // r, P) == INFINITY:
            order //= r
    return order


@lru_cache(maxsize=256)
def _structure(curve: WeierstrassCurve) -> AbelianStructure:
    points = _points(curve)
    N = len(points)
    exponent = 1
    for P in points:
        if exponent == N:
            break
        exponent = math.lcm(exponent, point_order(curve, P, N))
    n1, n2 = N // exponent, exponent
    if n2 % n1 or (curve.q - 1) % n1:
        raise InternalCheckFailed(f"impossible structure ({n1}, {n2}) for {curve}")
    return AbelianStructure.of(n1, n2)


def ec_group_structure(curve: WeierstrassCurve) -> AbelianStructure:
    """Invariant factors [n1, n2] of E(F_q) from the group exponent."""
    check_q(curve.q, STRUCTURE_MAX_Q, "group structure")
    return _structure(curve)


def ec_basis(curve: WeierstrassCurve) -> tuple[ProjPoint, ...]:
    """Generators realizing the invariant factors, largest order first."""
    structure = ec_group_structure(curve)
    points = _points(curve)
    N = len(points)
    if not structure.factors:
        return ()
    n2 = structure.factors[-1]
    P = next(R for R in points if point_order(curve, R, N) == n2)
    if structure.rank == 1:
        return (P,)
    n1 = structure.factors[0]
    multiples_of_P = set()
    R = INFINITY
    for _ in range(n2):
        multiples_of_P.add(R)
        R = _add(curve, R, P)
    for Q in points:
        if point_order(curve, Q, N) != n1:
            continue
        # <P> and <Q> intersect trivially iff no nonzero multiple of Q lies in <P>
        S, ok = Q, True
        for _ in range(n1 - 1):
            if S in multiples_of_P:
                ok = False
                break
            S = _add(curve, S, Q)
        if ok:
            return (P, Q)
    raise InternalCheckFailed(f"no basis found for {curve}")  # pragma: no cover


def ec_j_invariant(curve: WeierstrassCurve) -> FieldElement:
    F = curve.spec
    if F.p == 2 or not curve.is_short():
        raise WrongForm("j-invariant implemented for short form in odd characteristic")
    A, B = curve.a4, curve.a6
    four_a3 = 4 * A**3
    return 1728 * four_a3 / (four_a3 + 27 * B**2)


# text forms

_TERM = re.compile(r"^([+-]?)(\d*)\*?(xy|x3|x2|y2|x|y|)$")
_LHS = {"y2": None, "xy": 0, "y": 2}
_RHS = {"x3": None, "x2": 1, "x": 3, "": 4}


def _parse_equation(text: str) -> list[int]:
    s = text.replace(" ", "").replace("^", "").replace("**", "").lower()
    if s.count("=") != 1:
        raise ValueError(f"bad equation {text!r}")
    coeffs = [0, 0, 0, 0, 0]
    for side, names in zip(s.split("="), (_LHS, _RHS)):
        leading = "y2" if names is _LHS else "x3"
        seen_leading = False
        for term in re.findall(r"[+-]?[^+-]+", side):
            m = _TERM.match(term)
            if not m or m.group(3) not in names:
                raise ValueError(f"bad term {term!r} in {text!r}")
            sign, digits, mono = m.groups()
            if not digits and not mono:
                raise ValueError(f"bad term {term!r} in {text!r}")
            value = int(digits) if digits else 1
            value = -value if sign == "-" else value
            if mono == leading:
                if value != 1:
                    raise ValueError(f"{leading} must have coefficient 1 in {text!r}")
                seen_leading = True
                continue
            coeffs[names[mono]] += value
        if not seen_leading:
            raise ValueError(f"missing {leading} term in {text!r}")
    return coeffs


def parse_curve(text: str) -> WeierstrassCurve:
    """Parse ``"<field>;a1,a2,a3,a4,a6"`` or ``"<field>;y2+y=x3+x"``.

    Coefficients are either five integers (reduced into the prime subfield)
    or 5n residues, n per coefficient, constant term first.
    """
    field_text, sep, rest = text.partition(";")
    if not sep:
        raise ValueError(f"curve text needs ';' after the field: {text!r}")
    spec = parse_field(field_text)
    rest = rest.strip()
    if "=" in rest:
        return make_curve(spec, *_parse_equation(rest))
    try:
        nums = [int(s) for s in rest.split(",")]
    except ValueError as exc:
        raise ValueError(f"bad coefficients {rest!r}") from exc
    if len(nums) == 5:
        return make_curve(spec, *nums)
    if spec.n > 1 and len(nums) == 5 * spec.n:
        n = spec.n
        return make_curve(spec, *(nums[i * n:(i + 1) * n] for i in range(5)))
    raise ValueError(f"expected 5 or {5 * spec.n} coefficients, got {len(nums)}")
