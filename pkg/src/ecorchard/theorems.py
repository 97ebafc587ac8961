"""Constructive checks of the orchard theorems and of the worked example table.

Every check records the expected and the computed value.  ``fatal=False``
marks a discrepancy that is reported as a flag (typically a printed sign or
residue condition that disagrees with the computation) rather than a failure.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from .admissibility import admissible_orders, ruck_admissible, schoof_admissible
from .caps import GEOMETRIC_MAX_Q, GROUP_LINES_MAX_Q, q_cap
from .elliptic_curve import WeierstrassCurve, ec_group_structure, ec_points, parse_curve
from .errors import (
    BadFactorization,
    CongruenceViolated,
    HypothesisViolated,
    NotRealizableOrder,
    RowMismatch,
)
from .families import construct_family, family_claim, find_curve, short_form_curves
from .finite_field import FieldSpec, ff_make, is_prime
from .group_counting import AbelianStructure, count_3rich_formula, green_tao_bound
from .orchard import lines_from_group, lines_geometric

GROUP_TRIPLES_MAX_N = 300


@dataclass(frozen=True)
class Check:
    name: str
    expected: object
    computed: object
    fatal: bool = True

    @property
    def ok(self) -> bool:
        return self.expected == self.computed


@dataclass
class Witness:
    label: str
    curve: WeierstrassCurve
    structure: AbelianStructure
    t_formula: int
    t_group: int | None
    t_geometric: int | None
    bound: int | None

    @property
    def N(self) -> int:
        return self.structure.order

    @property
    def excess(self) -> int | None:
        return None if self.bound is None else self.t_formula - self.bound


@dataclass
class TheoremReport:
    theorem: str
    params: dict
    witnesses: list[Witness] = field(default_factory=list)
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks if c.fatal)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.fatal and not c.ok]

    @property
    def flags(self) -> list[Check]:
        return [c for c in self.checks if not c.fatal and not c.ok]

    def check(self, name: str, expected, computed, fatal: bool = True) -> None:
        self.checks.append(Check(name, expected, computed, fatal))


def _excess_law(structure: AbelianStructure) -> int:
    """Excess over the bound predicted from the group shape: 2 iff 3 | n1."""
    return 2 if structure.rank == 2 and structure.factors[0] % 3 == 0 else 0


def evaluate_witness(
    report: TheoremReport,
    label: str,
    curve: WeierstrassCurve,
    structure: AbelianStructure,
    t_claim: int | None = None,
) -> Witness:
    """Count lines by every available route and record the equalities."""
    computed = ec_group_structure(curve)
    report.check(f"{label}: group", structure, computed)
    t_formula = count_3rich_formula(computed)
    t_group = t_geometric = None
    if curve.q <= q_cap(GROUP_LINES_MAX_Q) and computed.order <= GROUP_TRIPLES_MAX_N:
        arr = lines_from_group(curve)
        t_group = arr.n_lines
        report.check(f"{label}: t by group triples", t_formula, t_group)
        if curve.q <= q_cap(GEOMETRIC_MAX_Q):
            geo = lines_geometric(list(arr.points), curve.spec)
            t_geometric = geo.n_lines
            report.check(f"{label}: geometric line set", arr.line_set(), geo.line_set())
    N = computed.order
    bound = green_tao_bound(N) if N >= 3 else None
    if t_claim is not None:
        report.check(f"{label}: claimed t", t_claim, t_formula)
    if bound is not None:
        report.check(f"{label}: t - bound", _excess_law(computed), t_formula - bound)
    w = Witness(label, curve, computed, t_formula, t_group, t_geometric, bound)
    report.witnesses.append(w)
    return w


def _spec_for_q(q: int) -> FieldSpec:
    for p in range(2, q + 1):
        if q % p == 0:
            n, r = 0, q
            while r % p == 0:
                r //= p
                n += 1
            if r != 1 or not is_prime(p):
                break
            return ff_make(p, n)
    raise HypothesisViolated(f"q = {q} is not a prime power")


def _family_witness(report: TheoremReport, name: str, spec: FieldSpec, sign_row: bool = False) -> None:
    """Witness from a named family.

    On ``sign_row`` families a computed order differing from the tabulated
    one is reported as a flag and the computed group is used instead.
    """
    claim = family_claim(name, spec)
    curve = construct_family(name, spec)
    structure = claim.expected_structure()
    if sign_row:
        actual = ec_group_structure(curve)
        report.check(f"{name}: tabulated order", claim.order, actual.order, fatal=False)
        structure = actual
    N = structure.order
    evaluate_witness(report, name, curve, structure, green_tao_bound(N) if N >= 3 else None)


def _cyclic_witness(report: TheoremReport, spec: FieldSpec, N: int, label: str) -> None:
    structure = AbelianStructure.of(N)
    curve = find_curve(spec, N, structure)
    if curve is None:
        report.check(f"{label}: curve with group {structure}", True, False)
        return
    evaluate_witness(report, label, curve, structure, green_tao_bound(N) if N >= 3 else None)


def _verify_t35(spec: FieldSpec) -> TheoremReport:
    q, p, n = spec.q, spec.p, spec.n
    if p == 2:
        raise HypothesisViolated("needs odd characteristic")
    report = TheoremReport("t35", {"q": q})
    if q % 4 == 3:
        _family_witness(report, "minus_x", spec)
        _family_witness(report, "plus_x", spec)
    elif n % 2 == 1 or p % 4 != 3:
        _cyclic_witness(report, spec, q + 1, "cyclic q+1")
    else:
        raise HypothesisViolated(f"q = {q}: n even needs p != 3 mod 4")
    return report


def _verify_t36(spec: FieldSpec) -> TheoremReport:
    if spec.p != 2:
        raise HypothesisViolated("needs q = 2^n")
    q, n = spec.q, spec.n
    report = TheoremReport("t36", {"q": q})
    if n % 2:
        s = isqrt(2 * q)
        _family_witness(report, "char2_cyclic", spec)
        _family_witness(report, "char2_xA", spec, sign_row=True)
        _family_witness(report, "char2_xB", spec, sign_row=True)
        orders = {w.N for w in report.witnesses}
        report.check("orders q+1, q+1 +/- sqrt(2q)", {q + 1, q + 1 + s, q + 1 - s}, orders)
    else:
        s = isqrt(q)
        _family_witness(report, "char2_even_delta", spec)
        _family_witness(report, "char2_even_gamma", spec)
        _family_witness(report, "char2_even_gamma_alpha", spec)
        orders = {w.N for w in report.witnesses}
        report.check("orders q+1, q+1 +/- sqrt(q)", {q + 1, q + 1 + s, q + 1 - s}, orders)
    return report


def t37_closed_form(q: int, part: int, literal_condition: bool = False) -> tuple[int, int]:
    """Numerator and denominator of the closed-form t for the [m, m] model.

    ``part`` 1 is m = sqrt(q) - 1, part 2 is m = sqrt(q) + 1.  The +16 term
    applies when 3 | m; ``literal_condition`` uses sqrt(q) = 1 mod 3 for both
    parts instead, which gives a non-integer for part 2 whenever it differs.
    """
    s = isqrt(q)
    m = s - 1 if part == 1 else s + 1
    extra = 16 if ((s % 3 == 1) if literal_condition else (m % 3 == 0)) else 0
    sign = -1 if part == 1 else 1
    return q * q + sign * 4 * s * q + 3 * q - sign * 2 * s + extra, 6


def _verify_t37(spec: FieldSpec) -> TheoremReport:
    q, p, n = spec.q, spec.p, spec.n
    s = isqrt(q)
    if s * s != q:
        raise HypothesisViolated(f"q = {q} is not a square")
    if p == 2 and n % 2:
        raise HypothesisViolated("q = 2^n needs n even")
    report = TheoremReport("t37", {"q": q})
    for part, m in ((1, s - 1), (2, s + 1)):
        structure = AbelianStructure.of(m, m)
        label = f"part {part} [{m},{m}]"
        num, den = t37_closed_form(q, part)
        closed = num // den if num % den == 0 else None
        report.check(f"{label}: closed form is an integer", 0, num % den)
        if p == 2:
            name = "char2_even_plain" if family_claim("char2_even_plain", spec).order == m * m else "char2_even_omega"
            curve = construct_family(name, spec)
        else:
            curve = find_curve(spec, m * m, structure)
            if curve is None:
                report.check(f"{label}: curve with group {structure}", True, False)
                continue
        evaluate_witness(report, label, curve, structure, closed)
        lit_num, lit_den = t37_closed_form(q, part, literal_condition=True)
        report.check(
            f"{label}: closed form under the printed sqrt(q) = 1 mod 3 condition",
            Fraction(lit_num, lit_den), closed,
            fatal=False,
        )
    return report


def _verify_t38(p: int, n1: int, n2: int) -> TheoremReport:
    """N = n1 n2 = p + 1 + t with the trace sign used by the classification."""
    if not is_prime(p):
        raise HypothesisViolated(f"{p} is not prime")
    if n1 < 1 or n2 % n1:
        raise HypothesisViolated(f"need n1 | n2, got ({n1}, {n2})")
    N = n1 * n2
    t = N - p - 1
    report = TheoremReport("t38", {"p": p, "N": N, "n1": n1, "n2": n2, "t": t})
    if t * t > 4 * p:
        raise HypothesisViolated(f"|t| = {abs(t)} exceeds 2 sqrt(p)")
    frob = p + 1 - N
    if not schoof_admissible(p, 1, frob).admissible:
        raise HypothesisViolated(f"N = {N} is not a curve order over F_{p}")
    try:
        verdict = ruck_admissible(p, 1, frob, n1, n2)
    except (NotRealizableOrder, BadFactorization) as exc:
        raise HypothesisViolated(str(exc)) from exc
    if not verdict.admissible:
        raise HypothesisViolated(f"group [{n1},{n2}] is not realized over F_{p} ({verdict.rule_fired})")
    structure = AbelianStructure.of(n1, n2)
    spec = ff_make(p)
    curve = find_curve(spec, N, structure)
    if curve is None:
        report.check(f"curve with group {structure}", True, False)
        return report
    claim = green_tao_bound(N) + _excess_law(structure) if N >= 3 else None
    evaluate_witness(report, f"[{structure}]", curve, structure, claim)
    return report


def verify_theorem(theorem: str, q: int | None = None, *, p: int | None = None,
                   n1: int | None = None, n2: int | None = None) -> TheoremReport:
    """Run one theorem check: ``t35``/``t36``/``t37`` take q, ``t38`` takes p, n1, n2."""
    if theorem == "t38":
        if p is None or n2 is None:
            raise HypothesisViolated("t38 needs p and the group (n1, n2)")
        return _verify_t38(p, n1 or 1, n2)
    if q is None:
        raise HypothesisViolated(f"{theorem} needs q")
    spec = _spec_for_q(q)
    try:
        return {"t35": _verify_t35, "t36": _verify_t36, "t37": _verify_t37}[theorem](spec)
    except KeyError:
        raise ValueError(f"unknown theorem {theorem!r}") from None
    except CongruenceViolated as exc:
        raise HypothesisViolated(str(exc)) from exc


# worked example table


@dataclass(frozen=True)
class Table3Row:
    equation: str
    q: int
    group: AbelianStructure
    N: int
    t: int
    bound: int


def _row(eq, q, factors, N, t, bound):
    return Table3Row(eq, q, AbelianStructure.of(*factors), N, t, bound)


TABLE3 = (
    _row("y2+y=x3+x", 8, (5,), 5, 2, 2),
    _row("y2+y=x3+x", 128, (145,), 145, 3432, 3432),
    _row("y2=x3+1", 5, (6,), 6, 4, 4),
    _row("y2=x3+1", 49, (48,), 48, 361, 361),
    _row("y2=x3+x", 7, (8,), 8, 7, 7),
    _row("y2=x3+x", 13, (2, 10), 20, 57, 57),
    _row("y2+y=x3-x2-10x-20", 19, (20,), 20, 57, 57),
    _row("y2+y=x3", 4, (3, 3), 9, 12, 10),
    _row("y2+y=x3", 16, (9, 9), 81, 1056, 1054),
    _row("y2+y=x3", 256, (15, 15), 225, 8328, 8326),
    _row("y2=x3+1", 25, (6, 6), 36, 201, 199),
    _row("y2=x3+1", 7, (2, 6), 12, 19, 19),
)

# Rows whose printed data is realized by the same equation over another field.
TABLE3_ERRATA = {
    ("y2+y=x3", 16): 64,
    ("y2=x3+1", 49): 47,
}


@dataclass
class Table3Result:
    row: Table3Row
    q_used: int
    curve: WeierstrassCurve
    group: AbelianStructure
    N: int
    t: int
    t_group: int | None
    bound: int | None
    mismatches: list[RowMismatch]

    @property
    def passed(self) -> bool:
        return not self.mismatches

    @property
    def status(self) -> str:
        return "pass" if self.passed else "FAIL"

    @property
    def excess(self) -> int | None:
        return None if self.bound is None else self.t - self.bound


def _field_text(q: int) -> str:
    spec = _spec_for_q(q)
    return f"{spec.p}^{spec.n}"


def reproduce_row(row: Table3Row, errata: bool = False) -> Table3Result:
    q = TABLE3_ERRATA.get((row.equation, row.q), row.q) if errata else row.q
    curve = parse_curve(f"{_field_text(q)};{row.equation}")
    group = ec_group_structure(curve)
    N = group.order
    t = count_3rich_formula(group)
    t_group = None
    if N <= GROUP_TRIPLES_MAX_N and q <= q_cap(GROUP_LINES_MAX_Q):
        t_group = lines_from_group(curve).n_lines
    bound = green_tao_bound(N) if N >= 3 else None
    label = f"{row.equation}, q={row.q}"
    mismatches = [
        RowMismatch(f"{label}: {name}", exp, got)
        for name, exp, got in (
            ("group", row.group, group),
            ("N", row.N, N),
            ("t", row.t, t),
            ("bound", row.bound, bound),
        )
        if exp != got
    ]
    if t_group is not None and t_group != t:
        mismatches.append(RowMismatch(f"{label}: t by group triples", t, t_group))
    return Table3Result(row, q, curve, group, N, t, t_group, bound, mismatches)


def reproduce_table3(errata: bool = False) -> list[Table3Result]:
    """Recompute every row at its printed q (or at the corrected q with ``errata``)."""
    return [reproduce_row(row, errata) for row in TABLE3]


# exhaustive sweeps


@dataclass
class SweepReport:
    p: int
    curves: int
    by_order: dict[int, Counter]  # N -> Counter of structures
    admissible: set[int]

    @property
    def realized(self) -> set[int]:
        return set(self.by_order)

    @property
    def matches_schoof(self) -> bool:
        return self.realized == self.admissible


def sweep(p: int) -> SweepReport:
    """All short-form curves over F_p, tallied by order and structure."""
    if not is_prime(p) or p < 5:
        raise HypothesisViolated(f"sweep needs a prime p >= 5, got {p}")
    by_order: dict[int, Counter] = {}
    curves = 0
    for curve in short_form_curves(ff_make(p)):
        curves += 1
        structure = ec_group_structure(curve)
        by_order.setdefault(structure.order, Counter())[structure] += 1
    return SweepReport(p, curves, dict(sorted(by_order.items())), admissible_orders(p))


def realized_orders(p: int) -> set[int]:
    """Point counts of all short-form curves over F_p, by plain enumeration."""
    return {len(ec_points(curve)) for curve in short_form_curves(ff_make(p))}
