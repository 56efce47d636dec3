"""
Torus and normalizer arithmetic in exponent coordinates.

A torus element H = prod h_{r_i}(lambda_i) is stored as the vector x with
lambda_i = g^{x_i}, g the fixed generator of F_{q^k}^*, so x lives in
(Z/M)^6 with M = q^k - 1. A normalizer element is kept in the normal form
(x, y) meaning H(x) * L(y), where y is an index into the enumerated Weyl
group and L(y) its canonical Tits lift.

Conventions:
    H^n = n H n^-1, which on exponents is x -> A x (A = matrix of w, column j = w(r_j)).
    sigma raises every coordinate to the q-th power: x -> q x.
    The finite torus is T = {H : (H^n)^sigma = H}, i.e. the kernel of q A_w - I.
    The normalizer N consists of g with n sigma(g) n^-1 = g.
"""
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import Matrix

from exceptions import FieldError, NotInCentralizerError, ResourceCapExceeded
from ff import FieldCtx, FieldElement, dlog
from lattice import as_object, kernel_mod, smith_normal_form
from liealg import TitsElement
from rootsys import CARTAN, RANK
from weyl import WeylElement, WeylGroup

logger = logging.getLogger(__name__)

# z = h_1(xi) h_3(xi^2) h_5(xi) h_6(xi^2), xi a primitive cube root of unity
CENTER_PATTERN = (1, 0, 2, 0, 1, 2)


@dataclass(frozen=True)
class TorusElement:
    exps: Tuple[int, ...]
    modulus: int

    def __post_init__(self):
        if len(self.exps) != RANK:
            raise ValueError(f"Torus elements have {RANK} coordinates, got {len(self.exps)}")

    @classmethod
    def from_vector(cls, vec: Iterable[int], modulus: int) -> "TorusElement":
        return cls(tuple(int(v) % modulus for v in vec), modulus)

    @classmethod
    def identity(cls, modulus: int) -> "TorusElement":
        return cls((0,) * RANK, modulus)

    @property
    def vector(self) -> np.ndarray:
        return as_object(self.exps)

    @property
    def is_identity(self) -> bool:
        return not any(self.exps)

    def __mul__(self, other: "TorusElement") -> "TorusElement":
        return TorusElement.from_vector((a + b for a, b in zip(self.exps, other.exps)), self.modulus)

    def inverse(self) -> "TorusElement":
        return TorusElement.from_vector((-a for a in self.exps), self.modulus)

    def __pow__(self, m: int) -> "TorusElement":
        return TorusElement.from_vector((a * m for a in self.exps), self.modulus)

    def order(self) -> int:
        return math.lcm(*(self.modulus // math.gcd(a, self.modulus) for a in self.exps))


@dataclass(frozen=True)
class NormalizerElement:
    """H(h) * L(weyl): torus part and the index of the Weyl part."""
    h: TorusElement
    weyl: int

    @property
    def key(self) -> Tuple[Tuple[int, ...], int]:
        return self.h.exps, self.weyl


@dataclass
class TwistData:
    class_index: int
    w: WeylElement
    n: TitsElement
    q: int


@dataclass
class TorusStructure:
    invariant_factors: List[int]
    order: int
    generators: List[TorusElement] = field(default_factory=list)
    ambient_k: Optional[int] = None

    @property
    def nontrivial_factors(self) -> List[int]:
        return [d for d in self.invariant_factors if d != 1]


class TorusContext:
    """Arithmetic of T-bar and N-bar over one finite level F_{q^k}."""

    def __init__(self, group: WeylGroup, field_ctx: FieldCtx):
        self.group = group
        self.tits = group.tits
        self.field = field_ctx
        self.q = field_ctx.q
        self.modulus = field_ctx.order
        # -1 = g^{M/2}; in characteristic 2 every h_r(-1) is trivial
        self.half = self.modulus // 2 if field_ctx.p % 2 else 0
        self._matrices: Dict[int, np.ndarray] = {}
        self._cocycles: Dict[Tuple[int, int], np.ndarray] = {}
        self.one = TorusElement.identity(self.modulus)

    def __repr__(self) -> str:
        return f"TorusContext(q={self.q}, k={self.field.k}, M={self.modulus})"

    # --- helpers ---

    def matrix(self, y: Union[int, WeylElement]) -> np.ndarray:
        i = y if isinstance(y, (int, np.integer)) else self.group.index(y)
        i = int(i)
        m = self._matrices.get(i)
        if m is None:
            m = as_object(self.group.rs.vectors[self.group.perms[i, :RANK].astype(np.int64)].T)
            self._matrices[i] = m
        return m

    def _index(self, w: Union[int, WeylElement]) -> int:
        return int(w) if isinstance(w, (int, np.integer)) else self.group.index(w)

    def _mul_index(self, a: int, b: int) -> int:
        return int(self.group.multiply_indices(np.array([a]), np.array([b]))[0])

    def _inverse_index(self, a: int) -> int:
        return self.group.index(self.group.inverse_perms[a])

    def hvec(self, eps: Sequence[int]) -> np.ndarray:
        return as_object([(int(e) % 2) * self.half for e in eps])

    def torus(self, vec: Iterable[int]) -> TorusElement:
        return TorusElement.from_vector(vec, self.modulus)

    def cocycle(self, a: int, b: int) -> np.ndarray:
        """eps with L(a) L(b) = prod h_i^{eps_i} L(ab)."""
        key = (a, b)
        eps = self._cocycles.get(key)
        if eps is None:
            ab = self._mul_index(a, b)
            m = self.group.canonical_lift(a) * self.group.canonical_lift(b) * self.group.canonical_lift(ab).inverse()
            eps = self.tits.h_part(m)
            self._cocycles[key] = eps
        return eps

    # --- field materialisation ---

    def values(self, h: TorusElement) -> List[FieldElement]:
        return [self.field.element_from_exponent(a) for a in h.exps]

    def from_values(self, values: Sequence[FieldElement]) -> TorusElement:
        if len(values) != RANK:
            raise ValueError(f"Expected {RANK} coordinates")
        return self.torus(dlog(self.field, v) for v in values)

    # --- torus operations ---

    def act(self, w: Union[int, WeylElement], h: TorusElement) -> TorusElement:
        """H^n for any lift n of w."""
        return self.torus(self.matrix(self._index(w)).dot(h.vector))

    def frobenius_sigma(self, h: TorusElement) -> TorusElement:
        return self.torus(h.vector * self.q)

    def torus_membership(self, h: TorusElement, twist: TwistData) -> bool:
        return self.frobenius_sigma(self.act(twist.w, h)) == h

    # --- normalizer operations ---

    def element(self, h: Optional[TorusElement] = None, weyl: Union[int, WeylElement] = 0) -> NormalizerElement:
        return NormalizerElement(h if h is not None else self.one, self._index(weyl))

    def identity(self) -> NormalizerElement:
        return NormalizerElement(self.one, 0)

    def from_tits(self, m: TitsElement) -> NormalizerElement:
        y = self.group.index(m.perm)
        eps = self.tits.h_part(m * self.group.canonical_lift(y).inverse())
        return NormalizerElement(self.torus(self.hvec(eps)), y)

    def lift(self, h: Optional[TorusElement], word: Union[str, TitsElement]) -> NormalizerElement:
        """H u for a Tits element or word u (words may mix h_r and n_r letters)."""
        u = self.tits.word(word) if isinstance(word, str) else word
        base = self.from_tits(u)
        return self.multiply(self.element(h), base) if h is not None else base

    def multiply(self, a: NormalizerElement, b: NormalizerElement) -> NormalizerElement:
        y = self._mul_index(a.weyl, b.weyl)
        x = a.h.vector + self.matrix(a.weyl).dot(b.h.vector) + self.hvec(self.cocycle(a.weyl, b.weyl))
        return NormalizerElement(self.torus(x), y)

    def inverse(self, a: NormalizerElement) -> NormalizerElement:
        # (H L(y))^-1 = L(y)^-1 H^-1 = H(-A_{y^-1} x) L(y)^-1
        yi = self._inverse_index(a.weyl)
        lift_inv = self.from_tits(self.group.canonical_lift(a.weyl).inverse())
        shifted = self.torus(-self.matrix(yi).dot(a.h.vector))
        return self.multiply(self.element(shifted), lift_inv)

    def exponent_sum_matrix(self, y: int, m: int) -> np.ndarray:
        """sum_{k<m} A_y^k."""
        a = self.matrix(y)
        total = as_object(np.zeros((RANK, RANK), dtype=np.int64))
        current = as_object(np.eye(RANK, dtype=np.int64))
        for _ in range(m):
            total = total + current
            current = current.dot(a)
        return total

    def power(self, a: NormalizerElement, m: int) -> NormalizerElement:
        """(H n)^m = H(B x) n^m with B = sum_{k<m} A^k and n = L(y)."""
        if m < 0:
            return self.power(self.inverse(a), -m)
        if m == 0:
            return self.identity()
        b = self.exponent_sum_matrix(a.weyl, m)
        tail = self.from_tits(self.group.canonical_lift(a.weyl) ** m)
        return self.multiply(self.element(self.torus(b.dot(a.h.vector))), tail)

    def order(self, a: NormalizerElement, limit: int = 10_000) -> int:
        current = a
        for k in range(1, limit + 1):
            if current == self.identity():
                return k
            current = self.multiply(current, a)
        raise ResourceCapExceeded("element order", limit, limit + 1)

    def commutator(self, a: NormalizerElement, b: NormalizerElement) -> NormalizerElement:
        return self.multiply(self.multiply(a, b), self.inverse(self.multiply(b, a)))

    def conjugate(self, a: NormalizerElement, by: NormalizerElement) -> NormalizerElement:
        """a^by = by a by^-1."""
        return self.multiply(self.multiply(by, a), self.inverse(by))

    # --- twisted Frobenius and membership ---

    def twist_element(self, twist: TwistData) -> NormalizerElement:
        return self.from_tits(twist.n)

    def sigma(self, a: NormalizerElement) -> NormalizerElement:
        return NormalizerElement(self.frobenius_sigma(a.h), a.weyl)

    def twisted_frobenius(self, a: NormalizerElement, twist: TwistData) -> NormalizerElement:
        """g -> n sigma(g) n^-1."""
        nn = self.twist_element(twist)
        return self.multiply(self.multiply(nn, self.sigma(a)), self.inverse(nn))

    def in_normalizer(self, a: NormalizerElement, twist: TwistData) -> bool:
        return self.twisted_frobenius(a, twist) == a

    def check_centralizes(self, y: int, twist: TwistData) -> None:
        wi = self.group.index(twist.w)
        if self._mul_index(wi, y) != self._mul_index(y, wi):
            raise NotInCentralizerError(
                f"Weyl part {self.group.element(y).word_str()} does not commute with {twist.w.word_str()}",
                {"class": twist.class_index},
            )

    def normalizer_membership(self, h: TorusElement, u: Union[str, TitsElement], twist: TwistData) -> bool:
        """H u lies in N iff H = H^{sigma n} [n, u]; for H in the H-subgroup iff [n, H u] = 1."""
        u = self.tits.word(u) if isinstance(u, str) else u
        self.check_centralizes(self.group.index(u.perm), twist)
        bracket = twist.n * u * twist.n.inverse() * u.inverse()
        comm = self.from_tits(bracket)
        rhs = self.frobenius_sigma(self.act(twist.w, h)) * comm.h
        return rhs == h

    def coset_offset(self, y: int, twist: TwistData) -> np.ndarray:
        """c_y with n sigma(H(x) L(y)) n^-1 = H(q A_w x + c_y) L(y) for y in C_W(w)."""
        self.check_centralizes(y, twist)
        nn = self.twist_element(twist)
        conj = self.multiply(self.multiply(nn, self.element(None, y)), self.inverse(nn))
        return conj.h.vector

    def commutator_criterion(self, h1: TorusElement, u1: Union[str, TitsElement],
                             h2: TorusElement, u2: Union[str, TitsElement]) -> bool:
        """[H1 u1, H2 u2] = 1 iff H1^-1 H1^{u2} [u2, u1] = H2^-1 H2^{u1} (images must commute)."""
        u1 = self.tits.word(u1) if isinstance(u1, str) else u1
        u2 = self.tits.word(u2) if isinstance(u2, str) else u2
        bracket = u2 * u1 * u2.inverse() * u1.inverse()
        if not bracket.is_diagonal:
            return False
        y1, y2 = self.group.index(u1.perm), self.group.index(u2.perm)
        lhs = h1.inverse() * self.act(y2, h1) * self.torus(self.hvec(self.tits.h_part(bracket)))
        rhs = h2.inverse() * self.act(y1, h2)
        return lhs == rhs

    # --- center and adjoint quotient ---

    def center_element(self) -> TorusElement:
        if self.field.p == 3:
            return self.one
        if self.modulus % 3:
            raise FieldError("No cube root of unity in the ambient field", {"M": self.modulus})
        return self.torus(c * (self.modulus // 3) for c in CENTER_PATTERN)

    def is_central(self, z: TorusElement) -> bool:
        return all(self.act(self.group.index(self.group.reflection(i)), z) == z for i in range(1, RANK + 1))

    def adjoint_equal(self, h1: TorusElement, h2: TorusElement) -> bool:
        """H1 and H2 agree on every root character, i.e. H1 H2^-1 lies in the center."""
        diff = (h1 * h2.inverse()).vector
        return bool((as_object(CARTAN).dot(diff) % self.modulus == 0).all())

    # --- finite torus ---

    def structure(self, w: WeylElement) -> TorusStructure:
        """Cyclic decomposition of T with explicit generators; needs |w| to divide k."""
        orders, gens = kernel_mod(twisted_matrix(w, self.q), self.modulus)
        generators = [self.torus(gens[:, i]) for i in range(gens.shape[1])]
        total = 1
        for d in orders:
            total *= d
        return TorusStructure(orders, total, generators, self.field.k)


def twisted_matrix(w: WeylElement, q: int) -> np.ndarray:
    return as_object(w.matrix) * q - as_object(np.eye(RANK, dtype=np.int64))


def torus_order(w: WeylElement, q: int) -> int:
    """|det(q A_w - I)|."""
    return abs(int(Matrix(twisted_matrix(w, q).tolist()).det()))


def torus_structure(w: WeylElement, q: int, ctx: Optional[TorusContext] = None) -> TorusStructure:
    """Invariant factors of q A_w - I; generators as well when a torus context is given."""
    D, _, _ = smith_normal_form(twisted_matrix(w, q))
    factors = sorted(int(D[i, i]) for i in range(RANK))
    order = math.prod(factors)
    if ctx is None:
        return TorusStructure(factors, order)
    if ctx.q != q:
        raise ValueError(f"Context is over q={ctx.q}, asked for q={q}")
    structure = ctx.structure(w)
    if sorted(structure.invariant_factors) != factors:
        raise ArithmeticError("Kernel decomposition disagrees with the Smith normal form")
    logger.debug(f"[Torus] |T| = {order}, invariant factors {factors}")
    return structure


def enumerate_torus(structure: TorusStructure, max_elements: int) -> List[TorusElement]:
    if structure.order > max_elements:
        raise ResourceCapExceeded("torus enumeration", max_elements, structure.order)
    if not structure.generators:
        raise ValueError("Structure carries no generators")
    modulus = structure.generators[0].modulus
    out = []
    for combo in itertools.product(*(range(d) for d in structure.invariant_factors)):
        vec = [0] * RANK
        for c, g in zip(combo, structure.generators):
            if c:
                for i in range(RANK):
                    vec[i] += c * g.exps[i]
        out.append(TorusElement.from_vector(vec, modulus))
    return out
