"""
Finite fields F_{p^d} as F_p[x]/(f), with a fixed primitive element g.

Elements are dense coefficient lists (leading coefficient first), the
format of sympy's galoistools. Torus arithmetic elsewhere runs in
exponent coordinates over g; this module turns exponents into field
elements and back, and solves root-of-unity constraints of the form
"x of order m", "x^t = -1" or both.
"""
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from sympy import factorint, isprime
from sympy.ntheory.modular import crt
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import (
    gf_add,
    gf_gcd,
    gf_gcdex,
    gf_irreducible_p,
    gf_mul,
    gf_neg,
    gf_pow_mod,
    gf_rem,
    gf_strip,
    gf_sub,
)

from exceptions import FieldError, ResourceCapExceeded

logger = logging.getLogger(__name__)

DEFAULT_MAX_FIELD_SIZE = 2**32

Poly = List[int]


def _norm(f: Iterable[int]) -> Tuple[int, ...]:
    return tuple(int(c) for c in gf_strip(list(f)))


def is_irreducible(f: Poly, p: int) -> bool:
    """Rabin's test: x^(p^d) = x mod f and gcd(x^(p^(d/l)) - x, f) = 1 for every prime l | d."""
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    x = [1, 0]
    for ell in factorint(d):
        h = gf_pow_mod(x, p ** (d // ell), f, p, ZZ)
        if gf_gcd(f, gf_sub(h, x, p, ZZ), p, ZZ) != [1]:
            return False
    return gf_rem(gf_sub(gf_pow_mod(x, p ** d, f, p, ZZ), x, p, ZZ), f, p, ZZ) == []


def _candidate_moduli(p: int, d: int) -> Iterable[Poly]:
    # sparse first: x^d + a x + b, then x^d + x^j + b, then everything in lexicographic order
    for a in range(p):
        for b in range(1, p):
            yield [1] + [0] * (d - 2) + [a, b]
    for j in range(2, d):
        for b in range(1, p):
            f = [0] * (d + 1)
            f[0], f[d - j], f[d] = 1, 1, b
            yield f
    for tail in itertools.product(range(p), repeat=d):
        if tail[-1] != 0:
            yield [1] + list(tail)


@lru_cache(maxsize=None)
def find_modulus(p: int, d: int) -> Tuple[int, ...]:
    for f in _candidate_moduli(p, d):
        if is_irreducible(f, p):
            if not gf_irreducible_p(f, p, ZZ):
                raise FieldError(f"Irreducibility tests disagree on {f} over F_{p}")
            return tuple(f)
    raise FieldError(f"No irreducible polynomial of degree {d} over F_{p}")


class FieldCtx:
    """F_{p^(e*k)} containing F_q, q = p^e, with a verified primitive element."""

    def __init__(self, p: int, e: int, k: int, max_size: int = DEFAULT_MAX_FIELD_SIZE):
        if not isprime(p):
            raise FieldError(f"{p} is not prime")
        if e < 1 or k < 1:
            raise FieldError("Extension degrees must be positive")
        self.p, self.e, self.k = p, e, k
        self.degree = e * k
        self.size = p ** self.degree
        if self.size > max_size:
            raise ResourceCapExceeded("field size", max_size, self.size, {"p": p, "degree": self.degree})
        self.q = p ** e
        self.order = self.size - 1
        self.modulus: Poly = list(find_modulus(p, self.degree))
        self.order_factors: Dict[int, int] = factorint(self.order) if self.order > 1 else {}
        self.generator = self._find_generator()
        self._dlog_cache: Dict[Tuple[int, ...], int] = {}
        logger.debug(f"[Field] Built F_{p}^{self.degree} with modulus {self.modulus}")

    def __repr__(self) -> str:
        return f"FieldCtx(p={self.p}, e={self.e}, k={self.k})"

    # --- raw polynomial helpers ---

    def _reduce(self, f: Sequence[int]) -> Poly:
        return gf_rem(list(f), self.modulus, self.p, ZZ)

    def _pow(self, f: Sequence[int], n: int) -> Poly:
        return gf_pow_mod(list(f), n, self.modulus, self.p, ZZ)

    def _is_primitive(self, f: Poly) -> bool:
        if self.order == 1:
            return f == [1]
        return all(self._pow(f, self.order // ell) != [1] for ell in self.order_factors)

    def _find_generator(self) -> "FieldElement":
        if self.degree == 1:
            candidates = ([c] for c in range(1, self.p))
        else:
            candidates = (
                gf_strip(list(tail)) for tail in itertools.product(range(self.p), repeat=self.degree)
            )
        for f in candidates:
            f = self._reduce(f)
            if f and self._is_primitive(f):
                return FieldElement(self, _norm(f))
        raise FieldError(f"No primitive element found in F_{self.size}")

    # --- elements ---

    def element(self, coeffs: Sequence[int]) -> "FieldElement":
        return FieldElement(self, _norm(self._reduce([c % self.p for c in coeffs])))

    def from_int(self, n: int) -> "FieldElement":
        return self.element([n % self.p])

    @property
    def one(self) -> "FieldElement":
        return self.from_int(1)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, ())

    @property
    def minus_one(self) -> "FieldElement":
        return self.from_int(-1)

    def element_from_exponent(self, n: int) -> "FieldElement":
        return self.generator ** (n % self.order) if self.order > 1 else self.one

    def elements(self) -> Iterable["FieldElement"]:
        for tail in itertools.product(range(self.p), repeat=self.degree):
            yield self.element(list(tail))

    def frobenius(self, x: "FieldElement", j: int = 1) -> "FieldElement":
        return x ** (self.q ** j)


@dataclass(frozen=True)
class FieldElement:
    ctx: FieldCtx
    coeffs: Tuple[int, ...]

    def _wrap(self, f: Sequence[int]) -> "FieldElement":
        return FieldElement(self.ctx, _norm(f))

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            return other
        if isinstance(other, int):
            return self.ctx.from_int(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        return self._wrap(gf_add(list(self.coeffs), list(other.coeffs), self.ctx.p, ZZ))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return self._wrap(gf_sub(list(self.coeffs), list(other.coeffs), self.ctx.p, ZZ))

    def __neg__(self):
        return self._wrap(gf_neg(list(self.coeffs), self.ctx.p, ZZ))

    def __mul__(self, other):
        other = self._coerce(other)
        prod = gf_mul(list(self.coeffs), list(other.coeffs), self.ctx.p, ZZ)
        return self._wrap(self.ctx._reduce(prod))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero:
            raise FieldError("Zero has no inverse")
        s, _, h = gf_gcdex(list(self.coeffs), self.ctx.modulus, self.ctx.p, ZZ)
        if h != [1]:
            raise FieldError("Modulus is not irreducible")
        return self._wrap(self.ctx._reduce(s))

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.inverse()

    def __pow__(self, n: int) -> "FieldElement":
        if n < 0:
            return self.inverse() ** (-n)
        if self.is_zero:
            return self if n else self.ctx.one
        return self._wrap(self.ctx._pow(list(self.coeffs), n))

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.ctx.from_int(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.coeffs == other.coeffs and self.ctx.size == other.ctx.size

    def __hash__(self) -> int:
        return hash(self.coeffs)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_one(self) -> bool:
        return self.coeffs == (1,)

    def frobenius(self, j: int = 1) -> "FieldElement":
        return self.ctx.frobenius(self, j)

    def multiplicative_order(self) -> int:
        if self.is_zero:
            raise FieldError("Zero has no multiplicative order")
        order = self.ctx.order
        for ell, a in self.ctx.order_factors.items():
            for _ in range(a):
                if (self ** (order // ell)).is_one:
                    order //= ell
                else:
                    break
        return order

    def __repr__(self) -> str:
        return f"FieldElement({list(self.coeffs)})"


# --- discrete logarithms ---

def _bsgs(x: FieldElement, base: FieldElement, order: int) -> int:
    """Smallest n in [0, order) with base^n = x."""
    m = math.isqrt(order - 1) + 1 if order > 1 else 1
    table: Dict[Tuple[int, ...], int] = {}
    cur = x.ctx.one
    for j in range(m):
        table.setdefault(cur.coeffs, j)
        cur = cur * base
    factor = base ** (-m)
    gamma = x
    for i in range(m + 1):
        j = table.get(gamma.coeffs)
        if j is not None:
            return (i * m + j) % order
        gamma = gamma * factor
    raise FieldError("Element is not in the subgroup generated by the base")


def dlog(ctx: FieldCtx, x: FieldElement) -> int:
    """n mod (p^d - 1) with g^n = x, by Pohlig-Hellman over the factored group order."""
    if x.is_zero:
        raise FieldError("dlog(0) is undefined")
    if ctx.order == 1:
        return 0
    cached = ctx._dlog_cache.get(x.coeffs)
    if cached is not None:
        return cached
    g = ctx.generator
    residues, moduli = [], []
    for ell, a in ctx.order_factors.items():
        pa = ell ** a
        cofactor = ctx.order // pa
        g_i, x_i = g ** cofactor, x ** cofactor
        gamma = g_i ** (pa // ell)
        digits = 0
        for j in range(a):
            h = (x_i * (g_i ** (-digits))) ** (pa // ell ** (j + 1))
            digits += _bsgs(h, gamma, ell) * ell ** j
        residues.append(digits)
        moduli.append(pa)
    n = int(crt(moduli, residues)[0]) % ctx.order
    ctx._dlog_cache[x.coeffs] = n
    return n


# --- roots of unity with prescribed properties ---

@dataclass(frozen=True)
class RootSpec:
    """x of multiplicative order `order`, and/or x^power = -1."""
    order: Optional[int] = None
    power: Optional[int] = None

    def __post_init__(self):
        if self.order is None and self.power is None:
            raise FieldError("RootSpec needs an order, a power or both")
        if self.order is not None and self.order < 1:
            raise FieldError(f"Order must be positive, got {self.order}")
        if self.power is not None and self.power < 1:
            raise FieldError(f"Power must be positive, got {self.power}")


def _power_exponent(t: int, modulus: int, odd: bool) -> Optional[int]:
    """Least e mod `modulus` with e*t = modulus/2 (odd characteristic) or e*t = 0 (characteristic 2)."""
    if not odd:
        return 0
    if modulus % 2:
        return None
    half = modulus // 2
    if (2 * t) and modulus % (2 * t) == 0:
        return modulus // (2 * t)
    d = math.gcd(t, modulus)
    if half % d:
        return None
    m = modulus // d
    return (half // d) * pow(t // d, -1, m) % m if m > 1 else 0


def _order_and_power(m: int, t: int, odd: bool) -> Optional[int]:
    """Least u coprime to m with u*t = m/2 mod m (odd char.) or u*t = 0 mod m (char. 2)."""
    target = m // 2 if odd else 0
    if odd and m % 2:
        return None
    for u in range(1, m + 1):
        if math.gcd(u, m) == 1 and (u * t - target) % m == 0:
            return u % m
    return None


def spec_exponent(spec: RootSpec, group_order: int, p: int) -> Optional[int]:
    """Exponent e with g^e satisfying the spec in a cyclic group of the given order, or None."""
    odd = p % 2 == 1
    if spec.order is not None and group_order % spec.order:
        return None
    if spec.order is None:
        return _power_exponent(spec.power, group_order, odd)
    step = group_order // spec.order
    if spec.power is None:
        return step % group_order
    u = _order_and_power(spec.order, spec.power, odd)
    return None if u is None else (step * u) % group_order


def root_exponent(ctx: FieldCtx, spec: RootSpec) -> int:
    e = spec_exponent(spec, ctx.order, ctx.p)
    if e is None:
        raise FieldError(f"No root with {spec} in F_{ctx.size}", {"p": ctx.p, "degree": ctx.degree})
    return e


def root_with_property(ctx: FieldCtx, spec: RootSpec) -> FieldElement:
    return ctx.element_from_exponent(root_exponent(ctx, spec))


def ambient_degree(q: int, specs: Sequence[RootSpec], base: int = 1,
                   max_size: int = DEFAULT_MAX_FIELD_SIZE) -> int:
    """Least multiple k of base such that every spec is solvable in F_{q^k}."""
    p = next(iter(factorint(q)))
    k = base
    while q ** k <= max_size:
        if all(spec_exponent(s, q ** k - 1, p) is not None for s in specs):
            return k
        k += base
    raise ResourceCapExceeded("field size", max_size, q ** k, {"q": q, "specs": [repr(s) for s in specs]})


def build_field(p: int, e: int, k: int, max_size: int = DEFAULT_MAX_FIELD_SIZE) -> FieldCtx:
    return _build_field_cached(p, e, k, max_size)


@lru_cache(maxsize=64)
def _build_field_cached(p: int, e: int, k: int, max_size: int) -> FieldCtx:
    return FieldCtx(p, e, k, max_size)


def split_prime_power(q: int) -> Tuple[int, int]:
    factors = factorint(q)
    if len(factors) != 1:
        raise FieldError(f"{q} is not a prime power")
    (p, e), = factors.items()
    return int(p), int(e)
