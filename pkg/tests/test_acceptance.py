"""Acceptance criteria, one test each.

Every test prints a single ``criterion N: PASS|FAIL`` line (collected again in
the pytest terminal summary).  Run ``python3 tests/test_acceptance.py`` to get
just those lines.
"""

from __future__ import annotations

import statistics
import sys
import time
from dataclasses import dataclass, field
from math import isqrt

from ecorchard.admissibility import admissible_orders
from ecorchard.elliptic_curve import (
    INFINITY,
    _points,
    _structure,
    affine_point,
    ec_group_structure,
    ec_is_supersingular,
    ec_points,
    make_curve,
    point_order,
    short_curve,
)
from ecorchard.families import short_form_curves
from ecorchard.finite_field import ff_make
from ecorchard.group_counting import (
    AbelianStructure,
    count_3rich_bruteforce,
    count_3rich_formula,
    green_tao_bound,
    invariant_factor_chains,
)
from ecorchard.orchard import lines_from_group, lines_geometric
from ecorchard.rational_geometry import FIG4_COEFFS, FIG4_POINTS, fig4_curve, on_curve_q, rat_enumerate_3rich, rat_reduce_mod_p
from ecorchard.theorems import reproduce_table3, verify_theorem

G = AbelianStructure.of
PRIMES_7_TO_47 = [7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]


@dataclass
class Result:
    number: int
    title: str
    ok: bool = True
    seconds: float = 0.0
    limit: float | None = None
    problems: list[str] = field(default_factory=list)

    def require(self, cond: bool, problem: str) -> None:
        if not cond:
            self.ok = False
            self.problems.append(problem)

    @property
    def passed(self) -> bool:
        return self.ok and (self.limit is None or self.seconds < self.limit)

    def line(self) -> str:
        timing = f"{self.seconds * 1e3:.3f} ms"
        if self.limit is not None:
            timing += f" {'<' if self.seconds < self.limit else '>='} {self.limit * 1e3:g} ms"
        status = "PASS" if self.passed else "FAIL"
        detail = f" [{'; '.join(self.problems)}]" if self.problems else ""
        return f"criterion {self.number}: {status} {self.title} ({timing}){detail}"


class timed:
    def __init__(self, result: Result):
        self.result = result

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self.result

    def __exit__(self, *exc):
        self.result.seconds = time.perf_counter() - self.t0
        return False


def check_1() -> Result:
    r = Result(1, "worked example table, 12 rows exact", limit=30)
    with timed(r):
        rows = reproduce_table3()
    r.require(len(rows) == 12, f"{len(rows)} rows")
    for row in rows:
        for m in row.mismatches:
            r.require(False, f"{m.row}: printed {m.expected}, computed {m.computed}")
    return r


def _intro_example():
    E = short_curve(ff_make(5), 0, 3)
    arr = lines_from_group(E)
    return E, arr, ec_group_structure(E), point_order(E, affine_point(1, 2), 6)


def check_2() -> Result:
    r = Result(2, "y^2 = x^3 + 3 over F_5: 6 points, 4 lines, Z6", limit=0.001)
    runs = []
    for _ in range(7):
        _points.cache_clear()
        _structure.cache_clear()
        t0 = time.perf_counter()
        E, arr, group, order = _intro_example()
        runs.append(time.perf_counter() - t0)
    r.seconds = statistics.median(runs)
    O, A, B, C, D, E_ = INFINITY, *(affine_point(*xy) for xy in [(1, 2), (1, 3), (2, 1), (2, 4), (3, 0)])
    want = {frozenset(s) for s in [(O, A, B), (O, C, D), (A, C, E_), (B, D, E_)]}
    got = {frozenset(arr.points[i] for i in t) for t in arr.lines}
    r.require(arr.n_points == 6, f"{arr.n_points} points")
    r.require(got == want, f"lines {sorted(map(sorted, got))}")
    r.require(group == G(6), f"group {group}")
    r.require(order == 6, f"(1,2) has order {order}")
    return r


def check_3() -> Result:
    r = Result(3, "F_7 examples (8,7) [2,4] and (9,12) [3,3]")
    F7 = ff_make(7)
    with timed(r):
        for E, n, t, group in [(make_curve(F7, 0, 5, 0, 4, 0), 8, 7, G(2, 4)), (short_curve(F7, 0, 2), 9, 12, G(3, 3))]:
            arr = lines_from_group(E)
            geo = lines_geometric(arr.points, F7)
            s = ec_group_structure(E)
            r.require((arr.n_points, arr.n_lines, s) == (n, t, group), f"got ({arr.n_points},{arr.n_lines}) {s}")
            r.require(geo.line_set() == arr.line_set(), f"geometric lines differ for N={n}")
        r.require(12 - green_tao_bound(9) == 2 and green_tao_bound(9) == 10, "bound(9) != 10")
    return r


def check_4() -> Result:
    r = Result(4, "closed form = brute force on all chains |G| <= 200, <= 3 factors", limit=10)
    with timed(r):
        chains = invariant_factor_chains(200, 3)
        bad = [g for g in chains if count_3rich_formula(g) != count_3rich_bruteforce(g)]
    r.require(not bad, f"{len(bad)} mismatches, first {bad[:3]}")
    r.title += f" ({len(chains)} groups)"
    return r


def check_5() -> Result:
    r = Result(5, "geometric = group line sets, every short curve, q in {5,7,11,13}", limit=60)
    count = 0
    with timed(r):
        for q in (5, 7, 11, 13):
            spec = ff_make(q)
            for E in short_form_curves(spec):
                count += 1
                arr = lines_from_group(E)
                if lines_geometric(arr.points, spec).line_set() != arr.line_set():
                    r.require(False, f"{E.equation()} over F_{q}")
    r.title += f" ({count} curves)"
    return r


def _theorem_ok(r: Result, report, label: str) -> None:
    for c in report.failures:
        r.require(False, f"{label}: {c.name}: expected {c.expected}, computed {c.computed}")


def check_6() -> Result:
    r = Result(6, "theorem checks t35, t36, t37, t38")
    with timed(r):
        for q in (7, 11, 19):
            rep = verify_theorem("t35", q)
            _theorem_ok(r, rep, f"t35 q={q}")
            r.require(any(w.N == q + 1 and w.excess == 0 for w in rep.witnesses), f"t35 q={q}: no q+1 witness at the bound")
        for q in (8, 32, 4, 16):
            _theorem_ok(r, verify_theorem("t36", q), f"t36 q={q}")
        for q in (4, 9, 16, 25):
            rep = verify_theorem("t37", q)
            _theorem_ok(r, rep, f"t37 q={q}")
            s = isqrt(q)
            for w, m in zip(rep.witnesses, (s - 1, s + 1)):
                if m * m >= 3:
                    r.require(w.excess == (2 if m % 3 == 0 else 0), f"t37 q={q} [{m},{m}]: excess {w.excess}")
            if s % 3 == 1:
                r.require(rep.witnesses[0].excess == 2, f"t37 q={q}: sqrt(q) = 1 mod 3 but excess {rep.witnesses[0].excess}")
        for n1, n2 in ((1, 20), (2, 10)):
            rep = verify_theorem("t38", p=13, n1=n1, n2=n2)
            _theorem_ok(r, rep, f"t38 [{n1},{n2}]")
            r.require(bool(rep.witnesses) and rep.witnesses[0].t_formula == 57, f"t38 [{n1},{n2}]: t != 57")
    return r


def check_7() -> Result:
    r = Result(7, "Deuring criterion = (t = 0 mod p), p in {5,7,11,13}")
    count = 0
    with timed(r):
        for p in (5, 7, 11, 13):
            for E in short_form_curves(ff_make(p)):
                count += 1
                if ec_is_supersingular(E, "deuring") != ec_is_supersingular(E, "trace"):
                    r.require(False, f"{E.equation()} over F_{p}")
    r.title += f" ({count} curves)"
    return r


def check_8() -> Result:
    r = Result(8, "realized orders = admissible orders, p in {5,7,11,13}")
    with timed(r):
        for p in (5, 7, 11, 13):
            realized = {len(ec_points(E)) for E in short_form_curves(ff_make(p))}
            predicted = admissible_orders(p)
            r.require(realized == predicted, f"p={p}: missing {sorted(predicted - realized)}, extra {sorted(realized - predicted)}")
    return r


def check_9() -> Result:
    r = Result(9, "rational (8,7) configuration and its reductions mod 7..47")
    with timed(r):
        r.require(all(on_curve_q(P, FIG4_COEFFS) for P in FIG4_POINTS), "a point is off the curve over Q")
        arr = rat_enumerate_3rich(FIG4_POINTS)
        r.require((arr.n_points, arr.n_lines) == (8, 7), f"({arr.n_points},{arr.n_lines}) over Q")
        for p in PRIMES_7_TO_47:
            rep = rat_reduce_mod_p(FIG4_POINTS, p, ec_points(fig4_curve(p)))
            r.require(rep.ok and len(rep.reduced_lines) == 7, f"mod {p}: injective={rep.injective} lines_match={rep.lines_match}")
    return r


CHECKS = [check_1, check_2, check_3, check_4, check_5, check_6, check_7, check_8, check_9]


def _assert(result: Result) -> None:
    assert result.passed, result.line()


def test_criterion_1_table(acceptance):
    _assert(acceptance(check_1))


def test_criterion_2_intro_example(acceptance):
    _assert(acceptance(check_2))


def test_criterion_3_f7_examples(acceptance):
    _assert(acceptance(check_3))


def test_criterion_4_formula_oracle(acceptance):
    _assert(acceptance(check_4))


def test_criterion_5_geometric_agreement(acceptance):
    _assert(acceptance(check_5))


def test_criterion_6_theorems(acceptance):
    _assert(acceptance(check_6))


def test_criterion_7_supersingularity(acceptance):
    _assert(acceptance(check_7))


def test_criterion_8_schoof_sweep(acceptance):
    _assert(acceptance(check_8))


def test_criterion_9_realization(acceptance):
    _assert(acceptance(check_9))


if __name__ == "__main__":
    results = [check() for check in CHECKS]
    for result in results:
        print(result.line())
    sys.exit(0 if all(r.passed for r in results) else 1)
