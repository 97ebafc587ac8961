"""Which orders and group structures occur for elliptic curves over F_q.

``schoof_admissible`` decides whether q + 1 - t is the order of some curve
over F_{p^n}; ``ruck_admissible`` decides whether a given decomposition
Z_{p^e} + Z_{n1} + Z_{n2} of that order is realized.
"""

from __future__ import annotations

from dataclasses import dataclass

from .caps import FIELD_MAX_Q, check_q
from .errors import BadFactorization, NotPrime, NotRealizableOrder
from .finite_field import is_prime


@dataclass(frozen=True)
class AdmissibilityVerdict:
    p: int
    n: int
    t: int
    admissible: bool
    rule_fired: str
    n1: int | None = None
    n2: int | None = None

    @property
    def q(self) -> int:
        return self.p**self.n

    @property
    def N(self) -> int:
        return self.q + 1 - self.t


SCHOOF_RULES = {
    "1": "t != 0 mod p, t^2 <= 4q",
    "2a": "n odd, t = 0",
    "2b": "n odd, t^2 = 2q, p = 2",
    "2c": "n odd, t^2 = 3q, p = 3",
    "3a": "n even, t^2 = 4q",
    "3b": "n even, t^2 = q, p != 1 mod 3",
    "3c": "n even, t = 0, p = 1 mod 4",
    "3c*": "n even, t = 0, p != 1 mod 4",
    "none": "no clause applies",
}


def _schoof_rule(p: int, n: int, t: int, corrected: bool = False) -> str:
    q = p**n
    tt = t * t
    if t % p and tt <= 4 * q:
        return "1"
    if n % 2:
        if t == 0:
            return "2a"
        if tt == 2 * q and p == 2:
            return "2b"
        if tt == 3 * q and p == 3:
            return "2c"
    else:
        if tt == 4 * q:
            return "3a"
        if tt == q and p % 3 != 1:
            return "3b"
        if t == 0 and corrected and p % 4 != 1:
            return "3c*"
        if t == 0 and not corrected and p % 4 == 1:
            return "3c"
    return "none"


def schoof_admissible(p: int, n: int, t: int, corrected: bool = False) -> AdmissibilityVerdict:
    """Clauses as stated; ``corrected`` flips the t = 0, n even residue test.

    As stated, n even and t = 0 needs p = 1 mod 4.  Exhaustive counts over
    F_9, F_25, F_49, F_16 and F_81 show the opposite: a curve with q + 1
    points exists exactly when p != 1 mod 4 (rule id ``3c*``).
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    check_q(p**n, FIELD_MAX_Q, "admissibility")
    rule = _schoof_rule(p, n, t, corrected)
    return AdmissibilityVerdict(p, n, t, rule != "none", rule)


def admissible_orders(p: int, n: int = 1, corrected: bool = False) -> set[int]:
    """All N = q + 1 - t allowed by the Schoof clauses."""
    q = p**n
    out = set()
    t = 0
    while t * t <= 4 * q:
        for s in {t, -t}:
            if schoof_admissible(p, n, s, corrected).admissible:
                out.add(q + 1 - s)
        t += 1
    return out


def ruck_admissible(p: int, n: int, t: int, n1: int, n2: int) -> AdmissibilityVerdict:
    """Is Z_{p^e} + Z_{n1} + Z_{n2} (p not dividing n1 n2, n1 | n2) realized?"""
    schoof = schoof_admissible(p, n, t)
    if not schoof.admissible:
        raise NotRealizableOrder(f"no curve over F_{p}^{n} has trace {t}")
    q = p**n
    N = q + 1 - t
    if n1 < 1 or n2 < 1 or n2 % n1:
        raise BadFactorization(f"need n1 | n2, got ({n1}, {n2})")
    if (n1 * n2) % p == 0:
        raise BadFactorization(f"p = {p} divides n1 n2 = {n1 * n2}")
    if N % (n1 * n2):
        raise BadFactorization(f"n1 n2 = {n1 * n2} does not divide N = {N}")
    rest = N // (n1 * n2)
    while rest % p == 0:
        rest //= p
    if rest != 1:
        raise BadFactorization(f"N / (n1 n2) = {N // (n1 * n2)} is not a power of {p}")
    if schoof.rule_fired == "3a":
        return AdmissibilityVerdict(p, n, t, n1 == n2, "n even, t^2 = 4q: n1 = n2", n1, n2)
    return AdmissibilityVerdict(p, n, t, (q - 1) % n1 == 0, "n1 | q - 1", n1, n2)


def prime_to_p_parts(p: int, factors: tuple[int, ...]) -> tuple[int, int]:
    """Split invariant factors into Rueck's (n1, n2), dropping the p-part."""
    parts = []
    for f in factors:
        while f % p == 0:
            f //= p
        parts.append(f)
    parts = [1] * (2 - len(parts)) + parts
    if len(parts) != 2:
        raise BadFactorization(f"more than two invariant factors: {factors}")
    return parts[0], parts[1]
