"""Exact arithmetic in F_p and F_{p^n}.

An element of F_{p^n} is a polynomial c0 + c1 x + ... + c_{n-1} x^{n-1} over
F_p reduced modulo a fixed monic irreducible polynomial.  Internally the
element is stored as the integer c0 + c1 p + ... + c_{n-1} p^{n-1}, so the
prime subfield F_p is embedded as 0..p-1 and the natural integer order is the
enumeration order of the field.

Hot loops elsewhere in the package work directly on these integer encodings
through the ``FieldSpec`` methods (``add``, ``mul``, ``inv`` ...).
:class:`FieldElement` wraps an encoding with operator overloading for
everything that is not performance sensitive.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator, Sequence

from .caps import FIELD_MAX_Q, check_q
from .errors import (
    EvenCharacteristic,
    NotPrime,
    Reducible,
    SpecMismatch,
    ZeroInverse,
)

TABLE_MAX_Q = 2**16


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    d = 3
    while d * d <= m:
        if m % d == 0:
            return False
        d += 2
    return True


def prime_factors(m: int) -> list[int]:
    """Distinct prime factors of ``m`` in increasing order."""
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


# Polynomials over F_p: lists of residues, constant term first, no trailing zeros.


def poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_sub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    m = max(len(a), len(b))
    out = [
        ((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
        for i in range(m)
    ]
    return poly_trim(out)


def poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return poly_trim([c % p for c in out])


def poly_divmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    b = poly_trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = poly_trim([c % p for c in a])
    lead_inv = pow(b[-1], -1, p)
    quot = [0] * max(len(r) - len(b) + 1, 0)
    while len(r) >= len(b):
        c = r[-1] * lead_inv % p
        shift = len(r) - len(b)
        quot[shift] = c
        for j, bj in enumerate(b):
            r[shift + j] = (r[shift + j] - c * bj) % p
        poly_trim(r)
    return poly_trim(quot), r


def poly_egcd(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int], list[int]]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g`` and ``g`` monic."""
    r0, r1 = poly_trim([c % p for c in a]), poly_trim([c % p for c in b])
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        quot, rem = poly_divmod(r0, r1, p)
        r0, r1 = r1, rem
        s0, s1 = s1, poly_sub(s0, poly_mul(quot, s1, p), p)
        t0, t1 = t1, poly_sub(t0, poly_mul(quot, t1, p), p)
    if r0:
        k = pow(r0[-1], -1, p)
        r0 = [c * k % p for c in r0]
        s0 = [c * k % p for c in s0]
        t0 = [c * k % p for c in t0]
    return r0, s0, t0


def monic_polys(p: int, degree: int) -> Iterator[list[int]]:
    """All monic polynomials of ``degree``, lower coefficients in integer order."""
    for k in range(p**degree):
        coeffs = []
        for _ in range(degree):
            k, c = divmod(k, p)
            coeffs.append(c)
        yield coeffs + [1]


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Exhaustive search for a monic factor of degree at most deg/2."""
    poly = poly_trim([c % p for c in poly])
    n = len(poly) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    if poly[0] == 0:
        return False
    for d in range(1, n // 2 + 1):
        for g in monic_polys(p, d):
            if not poly_divmod(poly, g, p)[1]:
                return False
    return True


def smallest_irreducible(p: int, n: int) -> tuple[int, ...]:
    for cand in monic_polys(p, n):
        if is_irreducible(cand, p):
            return tuple(cand)
    raise Reducible(f"no irreducible polynomial of degree {n} over F_{p}")  # pragma: no cover


@dataclass(frozen=True)
class FieldSpec:
    p: int
    n: int
    modulus: tuple[int, ...]

    @cached_property
    def q(self) -> int:
        return self.p**self.n

    def __str__(self) -> str:
        return format_field(self)

    # encodings

    def digits(self, a: int) -> tuple[int, ...]:
        p = self.p
        out = []
        for _ in range(self.n):
            a, c = divmod(a, p)
            out.append(c)
        return tuple(out)

    def from_digits(self, coeffs: Sequence[int]) -> int:
        v = 0
        for c in reversed(coeffs):
            v = v * self.p + c % self.p
        return v

    def embed(self, k: int) -> int:
        """Image of the integer ``k`` in the prime subfield."""
        return k % self.p

    def element(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise SpecMismatch(f"element of {value.spec} used in {self}")
            return value
        if isinstance(value, int):
            return FieldElement(self, self.embed(value))
        return FieldElement(self, self.from_digits(list(value)))

    def elements(self) -> list["FieldElement"]:
        return [FieldElement(self, v) for v in range(self.q)]

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    # integer-level arithmetic

    @cached_property
    def _modulus_int(self) -> int:
        # only meaningful for p == 2: modulus bits including x^n
        return sum(c << i for i, c in enumerate(self.modulus))

    def add(self, a: int, b: int) -> int:
        if self.n == 1:
            s = a + b
            return s - self.p if s >= self.p else s
        if self.p == 2:
            return a ^ b
        if a == 0:
            return b
        if b == 0:
            return a
        zech = self._zech
        if zech is None:
            da, db = self.digits(a), self.digits(b)
            return self.from_digits([x + y for x, y in zip(da, db)])
        # a + b = a (1 + b/a), with log(1 + g^d) tabulated
        exp, log = self._tables
        la = log[a]
        z = zech[log[b] - la]
        return 0 if z < 0 else exp[la + z]

    def neg(self, a: int) -> int:
        if self.p == 2 or a == 0:
            return a
        if self.n == 1:
            return self.p - a
        return self.from_digits([-c for c in self.digits(a)])

    def sub(self, a: int, b: int) -> int:
        if self.n == 1:
            d = a - b
            return d + self.p if d < 0 else d
        if self.p == 2:
            return a ^ b
        return self.add(a, self.neg(b))

    def _mul_poly(self, a: int, b: int) -> int:
        if self.p == 2:
            n, mod = self.n, self._modulus_int
            r = 0
            while b:
                if b & 1:
                    r ^= a
                b >>= 1
                a <<= 1
                if (a >> n) & 1:
                    a ^= mod
            return r
        prod = poly_mul(self.digits(a), self.digits(b), self.p)
        rem = poly_divmod(prod, self.modulus, self.p)[1]
        return self.from_digits(rem)

    def _pow_poly(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self._mul_poly(result, a)
            a = self._mul_poly(a, a)
            e >>= 1
        return result

    @cached_property
    def _tables(self):
        """``(exp, log)`` over a primitive element, or None when not tabulated."""
        q = self.q
        if self.n == 1 or q > TABLE_MAX_Q:
            return None
        order = q - 1
        cofactors = [order // r for r in prime_factors(order)]
        gen = next(
            g for g in range(1, q)
            if all(self._pow_poly(g, c) != 1 for c in cofactors)
        )
        exp = [0] * (2 * order)
        log = [0] * q
        x = 1
        for i in range(order):
            exp[i] = x
            exp[i + order] = x
            log[x] = i
            x = self._mul_poly(x, gen)
        return exp, log

    @cached_property
    def _zech(self):
        """Zech logarithms log(1 + g^d), -1 where 1 + g^d = 0; odd p only.

        Indexed by d in (-(q-1), q-1) through Python's negative indexing.
        """
        tables = self._tables
        if tables is None or self.p == 2:
            return None
        exp, log = tables
        order, p = self.q - 1, self.p
        zech = [0] * order
        for d in range(order):
            x = exp[d]
            one_plus = x - x % p + (x % p + 1) % p  # bump the constant digit
            zech[d] = log[one_plus] if one_plus else -1
        return zech

    def mul(self, a: int, b: int) -> int:
        if self.n == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        tables = self._tables
        if tables is None:
            return self._mul_poly(a, b)
        exp, log = tables
        return exp[log[a] + log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroInverse("inverse of zero")
        if self.n == 1:
            return pow(a, -1, self.p)
        tables = self._tables
        if tables is None:
            return _poly_inverse(self, a)
        exp, log = tables
        return exp[(self.q - 1 - log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if e == 0:
            return 1
        if a == 0:
            return 0
        if self.n == 1:
            return pow(a, e, self.p)
        tables = self._tables
        if tables is None:
            return self._pow_poly(a, e)
        exp, log = tables
        return exp[log[a] * e % (self.q - 1)]

    def legendre(self, a: int) -> int:
        if self.p == 2:
            raise EvenCharacteristic("quadratic character needs odd characteristic")
        if a == 0:
            return 0
        return 1 if self.pow(a, (self.q - 1) // 2) == 1 else -1


def _poly_inverse(spec: FieldSpec, a: int) -> int:
    g, s, _ = poly_egcd(list(spec.digits(a)), list(spec.modulus), spec.p)
    if g != [1]:  # pragma: no cover - modulus is irreducible
        raise ZeroInverse(f"{a} not invertible")
    return spec.from_digits(s)


@dataclass(frozen=True)
class FieldElement:
    spec: FieldSpec
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.spec.q:
            raise ValueError(f"encoding {self.value} outside F_{self.spec.q}")

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.spec.digits(self.value)

    def is_zero(self) -> bool:
        return self.value == 0

    def _other(self, b) -> int:
        if isinstance(b, FieldElement):
            if b.spec != self.spec:
                raise SpecMismatch(f"{self.spec} vs {b.spec}")
            return b.value
        if isinstance(b, int):
            return self.spec.embed(b)
        return NotImplemented

    def _wrap(self, v: int) -> "FieldElement":
        return FieldElement(self.spec, v)

    def __add__(self, b):
        v = self._other(b)
        return NotImplemented if v is NotImplemented else self._wrap(self.spec.add(self.value, v))

    __radd__ = __add__

    def __sub__(self, b):
        v = self._other(b)
        return NotImplemented if v is NotImplemented else self._wrap(self.spec.sub(self.value, v))

    def __rsub__(self, b):
        v = self._other(b)
        return NotImplemented if v is NotImplemented else self._wrap(self.spec.sub(v, self.value))

    def __mul__(self, b):
        v = self._other(b)
        return NotImplemented if v is NotImplemented else self._wrap(self.spec.mul(self.value, v))

    __rmul__ = __mul__

    def __truediv__(self, b):
        v = self._other(b)
        return NotImplemented if v is NotImplemented else self._wrap(self.spec.div(self.value, v))

    def __rtruediv__(self, b):
        v = self._other(b)
        return NotImplemented if v is NotImplemented else self._wrap(self.spec.div(v, self.value))

    def __neg__(self):
        return self._wrap(self.spec.neg(self.value))

    def __pow__(self, e: int):
        return self._wrap(self.spec.pow(self.value, e))

    def __int__(self):
        return self.value

    def __str__(self) -> str:
        return self.format()

    def format(self, var: str = "x") -> str:
        """Polynomial form in ``var`` (the plain residue for prime fields)."""
        if self.spec.n == 1:
            return str(self.value)
        terms = []
        for i, c in reversed(list(enumerate(self.coeffs))):
            if not c:
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return "+".join(terms) or "0"


@lru_cache(maxsize=None)
def _make(p: int, n: int, modulus: tuple[int, ...] | None) -> FieldSpec:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if n < 1:
        raise ValueError(f"extension degree must be >= 1, got {n}")
    check_q(p**n, FIELD_MAX_Q, "field")
    if n == 1:
        if modulus is not None and (len(modulus) != 2 or modulus[1] % p != 1):
            raise Reducible(f"degree-1 modulus must be monic linear, got {modulus}")
        return FieldSpec(p, 1, (0, 1))
    if modulus is None:
        return FieldSpec(p, n, smallest_irreducible(p, n))
    mod = tuple(c % p for c in modulus)
    if len(mod) != n + 1 or mod[-1] != 1:
        raise Reducible(f"modulus {modulus} is not monic of degree {n}")
    if not is_irreducible(mod, p):
        raise Reducible(f"modulus {modulus} is reducible over F_{p}")
    return FieldSpec(p, n, mod)


def ff_make(p: int, n: int = 1, modulus: Sequence[int] | None = None) -> FieldSpec:
    """Build F_{p^n}; the default modulus is the smallest monic irreducible.

    "Smallest" means smallest integer encoding, i.e. compare the coefficients
    from the x^(n-1) term downward.  Over F_2 this picks x^3+x+1 for n = 3.
    """
    return _make(p, n, None if modulus is None else tuple(modulus))


def ff_arith(op: str, a: FieldElement, b: FieldElement) -> FieldElement:
    if a.spec != b.spec:
        raise SpecMismatch(f"{a.spec} vs {b.spec}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    raise ValueError(f"unknown field operation {op!r}")


def ff_inv(a: FieldElement) -> FieldElement:
    """Inverse by the extended Euclidean algorithm (integers or polynomials)."""
    spec = a.spec
    if a.value == 0:
        raise ZeroInverse("inverse of zero")
    if spec.n == 1:
        r0, r1, s0, s1 = a.value, spec.p, 1, 0
        while r1:
            k = r0 // r1
            r0, r1 = r1, r0 - k * r1
            s0, s1 = s1, s0 - k * s1
        return FieldElement(spec, s0 % spec.p)
    return FieldElement(spec, _poly_inverse(spec, a.value))


def ff_legendre(a: FieldElement) -> int:
    return a.spec.legendre(a.value)


def ff_enumerate(spec: FieldSpec) -> list[FieldElement]:
    return spec.elements()


def parse_field(text: str) -> FieldSpec:
    """Parse ``"p^n"``, ``"p^n:c0,...,cn"`` or a bare prime ``"p"``."""
    text = text.strip()
    head, _, mod = text.partition(":")
    base, _, exp = head.partition("^")
    try:
        p = int(base)
        n = int(exp) if exp else 1
        modulus = [int(c) for c in mod.split(",")] if mod else None
    except ValueError as exc:
        raise ValueError(f"bad field spec {text!r}") from exc
    return ff_make(p, n, modulus)


def format_field(spec: FieldSpec) -> str:
    head = f"{spec.p}^{spec.n}"
    if spec.n == 1:
        return head
    return head + ":" + ",".join(str(c) for c in spec.modulus)
