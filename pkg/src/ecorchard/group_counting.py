"""Counting unordered zero-sum triples in finite abelian groups.

Three distinct points of an elliptic curve are collinear exactly when they sum
to the identity, so the number of 3-rich lines of a curve arrangement is the
number of unordered triples {x, y, z} of pairwise distinct group elements with
x + y + z = 0.  For G = Z_{n1} + ... + Z_{nk} that number is

    (|G|^2 - 3|G| + 2 * 3^psi) / 6,

where 3^psi = |G[3]| is the size of the 3-torsion, i.e. psi counts the
invariant factors divisible by 3.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

import numpy as np

from .caps import BRUTEFORCE_MAX_ORDER
from .errors import NonInteger, RankTooHigh, TooLarge, TooSmall


@dataclass(frozen=True)
class AbelianStructure:
    """Invariant factors n1 | n2 | ... | nk, each >= 2; () is the trivial group."""

    factors: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(int(n) for n in self.factors))
        for n in self.factors:
            if n < 2:
                raise ValueError(f"invariant factor {n} < 2 in {self.factors}")
        for a, b in zip(self.factors, self.factors[1:]):
            if b % a:
                raise ValueError(f"{a} does not divide {b} in {self.factors}")

    @classmethod
    def of(cls, *factors: int) -> "AbelianStructure":
        """Like the constructor but drops factors equal to 1."""
        return cls(tuple(n for n in factors if n != 1))

    @property
    def order(self) -> int:
        return prod(self.factors)

    @property
    def rank(self) -> int:
        return len(self.factors)

    def is_cyclic(self) -> bool:
        return self.rank <= 1

    def __str__(self) -> str:
        return ",".join(map(str, self.factors)) or "1"

    def pretty(self) -> str:
        return " + ".join(f"Z{n}" for n in self.factors) or "0"


def parse_group(text: str) -> AbelianStructure:
    """Parse a comma-separated invariant-factor chain such as ``"2,10"``."""
    try:
        factors = [int(s) for s in text.replace(" ", "").split(",") if s]
    except ValueError as exc:
        raise ValueError(f"bad group {text!r}") from exc
    if any(n < 1 for n in factors):
        raise ValueError(f"bad group {text!r}")
    return AbelianStructure.of(*factors)


def invariant_factor_chains(max_order: int, max_rank: int) -> list[AbelianStructure]:
    """Every abelian group of order <= max_order with at most max_rank factors."""
    out = [AbelianStructure()]

    def extend(chain: tuple[int, ...], size: int):
        if len(chain) == max_rank:
            return
        last = chain[-1]
        m = last
        while size * m <= max_order:
            nxt = chain + (m,)
            out.append(AbelianStructure(nxt))
            extend(nxt, size * m)
            m += last

    for n1 in range(2, max_order + 1):
        out.append(AbelianStructure((n1,)))
        extend((n1,), n1)
    return out


def psi(group: AbelianStructure) -> int:
    """Number of invariant factors divisible by 3 (log base 3 of |G[3]|)."""
    return sum(1 for n in group.factors if n % 3 == 0)


def psi_literal(group: AbelianStructure) -> int:
    """The index difference k - j (j = first factor divisible by 3), 0 if none.

    Kept as a diagnostic only: it undercounts the 3-torsion by one whenever
    3 divides the last factor, so the closed form then disagrees with brute
    force (Z3 + Z3 would give 10 lines instead of 12).
    """
    k = group.rank
    for j, n in enumerate(group.factors, start=1):
        if n % 3 == 0:
            return k - j
    return 0


def count_3rich_formula(group: AbelianStructure, psi_value: int | None = None) -> int:
    N = group.order
    s = psi(group) if psi_value is None else psi_value
    num = N * N - 3 * N + 2 * 3**s
    if num % 6:
        raise NonInteger(f"{num}/6 is not an integer for {group} (psi={s})")
    return num // 6


def count_3rich_bruteforce(group: AbelianStructure) -> int:
    """Count unordered distinct triples summing to zero by exhaustion.

    Elements are mixed-radix tuples of residues, one per factor; for every
    ordered pair (x, y) the third element z = -(x + y) is formed coordinate by
    coordinate and the triple is kept once, when index(x) < index(y) < index(z).
    """
    N = group.order
    if N > BRUTEFORCE_MAX_ORDER:
        raise TooLarge(f"|G|={N} exceeds brute-force cap {BRUTEFORCE_MAX_ORDER}")
    if not group.factors:
        return 0
    mods = np.array(group.factors, dtype=np.int64)
    idx = np.arange(N, dtype=np.int64)
    digits = np.empty((N, len(mods)), dtype=np.int64)
    rest = idx.copy()
    for c, m in enumerate(mods):
        digits[:, c] = rest % m
        rest //= m
    weights = np.cumprod(np.concatenate(([1], mods[:-1])))
    z_digits = (-(digits[:, None, :] + digits[None, :, :])) % mods
    z = z_digits @ weights
    i = idx[:, None]
    j = idx[None, :]
    return int(np.count_nonzero((i < j) & (j < z)))


def green_tao_bound(N: int) -> int:
    if N < 3:
        raise TooSmall(f"bound needs at least 3 points, got {N}")
    return N * (N - 3) // 6 + 1


@dataclass(frozen=True)
class SolutionCount:
    group: AbelianStructure
    formula_count: int
    bound: int
    excess: int


def classify_excess(group: AbelianStructure) -> SolutionCount:
    if group.rank > 2:
        raise RankTooHigh(f"{group} has {group.rank} invariant factors")
    count = count_3rich_formula(group)
    bound = green_tao_bound(group.order)
    return SolutionCount(group, count, bound, count - bound)
