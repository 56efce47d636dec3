"""
Adjoint Chevalley representation of E6 over the integers and the Tits group.

Basis order of the 78-dimensional module: root vectors e_s in slot order
(positive roots 1..36, then their negatives), then h_1..h_6.

Elements of the Tits group permute root spaces up to sign, so they are
stored as a signed permutation of the 72 root slots. The action on the
Cartan part is the Weyl matrix of the permutation and is rebuilt on demand.
"""
from __future__ import annotations

import logging
import math
import re
from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple, Union

import numpy as np
from sympy import Matrix

from exceptions import InconsistentTableError, InvalidRootIndexError, NotInTitsGroupError
from rootsys import CARTAN, NUM_POSITIVE, NUM_ROOTS, RANK, RootSystem, StructureConstantTable

logger = logging.getLogger(__name__)

DIM = NUM_ROOTS + RANK
_TOKEN_RE = re.compile(r"([hnw])\s*_?\{?(\d+)\}?")

Token = Tuple[str, int]


def parse_tokens(text: str) -> List[Token]:
    """Split words like 'h4h6n20n21' or 'w3 w2 w4 w14' into (letter, index) tokens."""
    cleaned = re.sub(r"[\s*·.]", "", text)
    if not cleaned or cleaned == "1":
        return []
    tokens = []
    pos = 0
    for match in _TOKEN_RE.finditer(cleaned):
        if match.start() != pos:
            raise InvalidRootIndexError(f"Cannot parse word {text!r} near position {pos}")
        index = int(match.group(2))
        if not 1 <= index <= NUM_POSITIVE:
            raise InvalidRootIndexError(f"Root index must lie in 1..36, got {index} in {text!r}")
        tokens.append((match.group(1), index))
        pos = match.end()
    if pos != len(cleaned):
        raise InvalidRootIndexError(f"Cannot parse word {text!r} near position {pos}")
    return tokens


class AdjointBasis:
    """ad-matrices of the Chevalley basis; column b of ad(x) is [x, basis_b]."""

    def __init__(self, rs: RootSystem, table: StructureConstantTable):
        self.rs = rs
        self.table = table
        self.ad_e = np.zeros((NUM_ROOTS, DIM, DIM), dtype=np.int64)
        self.ad_h = np.zeros((RANK, DIM, DIM), dtype=np.int64)
        n = table.array
        for a in range(NUM_ROOTS):
            ad = self.ad_e[a]
            for b in range(NUM_ROOTS):
                t = rs.sum_slot[a, b]
                if t >= 0:
                    ad[t, b] = n[a, b]
                elif b == rs.negate_slot(a):
                    ad[NUM_ROOTS:, b] = rs.vectors[a]
            # [e_a, h_i] = -<a, r_i^vee> e_a
            ad[a, NUM_ROOTS:] = -rs.pairings[a]
        for i in range(RANK):
            self.ad_h[i][np.arange(NUM_ROOTS), np.arange(NUM_ROOTS)] = rs.pairings[:, i]

    def ad_of_cartan(self, coords: Sequence[int]) -> np.ndarray:
        return np.tensordot(np.asarray(coords, dtype=np.int64), self.ad_h, axes=1)

    def check_representation(self) -> None:
        """Brute-force [ad x, ad y] = ad [x, y] over all pairs of root vectors and Cartan generators."""
        rs, n = self.rs, self.table.array
        ad_e = self.ad_e.astype(np.float64)
        for a in range(NUM_ROOTS):
            left = ad_e[a] @ ad_e - np.einsum("bij,jk->bik", ad_e, ad_e[a])
            for b in range(NUM_ROOTS):
                t = rs.sum_slot[a, b]
                if t >= 0:
                    expected = n[a, b] * self.ad_e[t]
                elif b == rs.negate_slot(a):
                    expected = self.ad_of_cartan(rs.vectors[a])
                else:
                    expected = np.zeros((DIM, DIM), dtype=np.int64)
                if not np.array_equal(np.rint(left[b]).astype(np.int64), expected):
                    raise InconsistentTableError(
                        f"ad-bracket mismatch for roots {rs.roots[a]}, {rs.roots[b]}",
                        {"slots": (a, b)},
                    )
            for i in range(RANK):
                bracket = self.ad_h[i] @ self.ad_e[a] - self.ad_e[a] @ self.ad_h[i]
                if not np.array_equal(bracket, rs.pairings[a, i] * self.ad_e[a]):
                    raise InconsistentTableError(f"[h_{i + 1}, e] mismatch for root {rs.roots[a]}")


def exp_nilpotent(x: np.ndarray) -> np.ndarray:
    """exp(x) for an integer nilpotent matrix, exact; each term must be integral."""
    result = np.eye(x.shape[0], dtype=np.int64)
    power = np.eye(x.shape[0], dtype=np.int64)
    k = 0
    while True:
        k += 1
        power = power @ x
        if not power.any():
            return result
        fact = math.factorial(k)
        if (power % fact).any():
            raise InconsistentTableError(f"exp series term {k} is not integral")
        result = result + power // fact
        if k > DIM:
            raise InconsistentTableError("Matrix is not nilpotent")


@dataclass(frozen=True, eq=False)
class TitsElement:
    """Signed permutation of root slots: e_s -> signs[s] * e_{perm[s]}."""
    perm: np.ndarray
    signs: np.ndarray

    def __mul__(self, other: "TitsElement") -> "TitsElement":
        return TitsElement(self.perm[other.perm], other.signs * self.signs[other.perm])

    def inverse(self) -> "TitsElement":
        perm = np.empty_like(self.perm)
        perm[self.perm] = np.arange(NUM_ROOTS, dtype=self.perm.dtype)
        signs = np.empty_like(self.signs)
        signs[self.perm] = self.signs
        return TitsElement(perm, signs)

    def __pow__(self, m: int) -> "TitsElement":
        base = self if m >= 0 else self.inverse()
        result = identity()
        for _ in range(abs(m)):
            result = result * base
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TitsElement):
            return NotImplemented
        return np.array_equal(self.perm, other.perm) and np.array_equal(self.signs, other.signs)

    def __hash__(self) -> int:
        return hash((self.perm.tobytes(), self.signs.tobytes()))

    @property
    def is_identity(self) -> bool:
        return bool((self.perm == np.arange(NUM_ROOTS)).all() and (self.signs == 1).all())

    @property
    def is_diagonal(self) -> bool:
        return bool((self.perm == np.arange(NUM_ROOTS)).all())

    def order(self, limit: int = 1000) -> int:
        current = self
        for k in range(1, limit + 1):
            if current.is_identity:
                return k
            current = current * self
        raise NotInTitsGroupError(f"Order exceeds {limit}")


def identity() -> TitsElement:
    return TitsElement(np.arange(NUM_ROOTS, dtype=np.int16), np.ones(NUM_ROOTS, dtype=np.int8))


def commutator(a: TitsElement, b: TitsElement) -> TitsElement:
    """[a, b] = a b a^-1 b^-1."""
    return a * b * a.inverse() * b.inverse()


def tits_product(a: TitsElement, b: TitsElement) -> TitsElement:
    return a * b


def weyl_matrix_of(rs: RootSystem, perm: np.ndarray) -> np.ndarray:
    """6x6 matrix whose column j holds the coordinates of w(r_j)."""
    return rs.vectors[np.asarray(perm[:RANK], dtype=np.int64)].T.copy()


def tits_from_matrix(rs: RootSystem, matrix: np.ndarray) -> TitsElement:
    matrix = np.asarray(matrix, dtype=np.int64)
    root_block = matrix[:NUM_ROOTS, :NUM_ROOTS]
    if matrix[NUM_ROOTS:, :NUM_ROOTS].any() or matrix[:NUM_ROOTS, NUM_ROOTS:].any():
        raise NotInTitsGroupError("Matrix mixes root spaces with the Cartan subalgebra")
    nonzero = np.count_nonzero(root_block, axis=0)
    if (nonzero != 1).any():
        raise NotInTitsGroupError("Matrix does not permute root spaces")
    perm = np.argmax(root_block != 0, axis=0).astype(np.int16)
    signs = root_block[perm, np.arange(NUM_ROOTS)]
    if not np.isin(signs, (-1, 1)).all():
        raise NotInTitsGroupError("Root-space coefficients must be +-1")
    element = TitsElement(perm, signs.astype(np.int8))
    if not np.array_equal(matrix[NUM_ROOTS:, NUM_ROOTS:], weyl_matrix_of(rs, perm)):
        raise NotInTitsGroupError("Cartan block disagrees with the induced Weyl matrix")
    return element


def n_matrix(basis: AdjointBasis, index: int) -> TitsElement:
    """n_r = exp(ad e_r) exp(-ad e_-r) exp(ad e_r) for the positive root with the given index."""
    root = basis.rs.root(index)
    pos = basis.ad_e[root.slot]
    neg = basis.ad_e[basis.rs.negate_slot(root.slot)]
    a = exp_nilpotent(pos)
    matrix = a @ exp_nilpotent(-neg) @ a
    return tits_from_matrix(basis.rs, matrix)


class TitsGroup:
    """The generators n_1..n_36 with helpers for words, H-parts and eta signs."""

    def __init__(self, basis: AdjointBasis):
        self.rs = basis.rs
        self.basis = basis
        self.generators: List[TitsElement] = [n_matrix(basis, i) for i in range(1, NUM_POSITIVE + 1)]
        self._cartan_inv_mod2 = np.array(Matrix(CARTAN.tolist()).inv_mod(2).tolist(), dtype=np.int64)
        for i, n in enumerate(self.generators, start=1):
            if n * n != self.h_root(i):
                raise InconsistentTableError(f"n_{i}^2 differs from h_{i}")
        logger.debug("[Tits] Built n_1..n_36")

    def n(self, index: int) -> TitsElement:
        if not 1 <= index <= NUM_POSITIVE:
            raise InvalidRootIndexError(f"Root index must lie in 1..36, got {index}")
        return self.generators[index - 1]

    def h(self, eps: Sequence[int]) -> TitsElement:
        """prod h_i^{eps_i}; acts on e_s by (-1)^{eps . C s}."""
        eps = np.asarray(eps, dtype=np.int64) % 2
        bits = (self.rs.pairings @ eps) % 2
        return TitsElement(np.arange(NUM_ROOTS, dtype=np.int16), (1 - 2 * bits).astype(np.int8))

    def h_root(self, index: int) -> TitsElement:
        return self.h(np.array(self.rs.root(index).coords) % 2)

    def word(self, word: Union[str, Iterable[Token]]) -> TitsElement:
        tokens = parse_tokens(word) if isinstance(word, str) else list(word)
        result = identity()
        for letter, index in tokens:
            if letter == "h":
                result = result * self.h_root(index)
            elif letter in ("n", "w"):
                result = result * self.n(index)
            else:
                raise InvalidRootIndexError(f"Unknown letter {letter!r}")
        return result

    def h_part(self, m: TitsElement) -> np.ndarray:
        """The unique eps in {0,1}^6 with m = prod h_i^{eps_i}."""
        if not m.is_diagonal:
            raise NotInTitsGroupError("Element has nontrivial Weyl image")
        bits = (m.signs[:RANK] < 0).astype(np.int64)
        eps = (self._cartan_inv_mod2 @ bits) % 2
        if not np.array_equal(self.h(eps).signs, m.signs):
            raise NotInTitsGroupError("Sign pattern is not in H", {"signs": m.signs.tolist()})
        return eps

    def weyl_matrix(self, m: TitsElement) -> np.ndarray:
        return weyl_matrix_of(self.rs, m.perm)

    def matrix(self, m: TitsElement) -> np.ndarray:
        out = np.zeros((DIM, DIM), dtype=np.int64)
        out[m.perm.astype(np.int64), np.arange(NUM_ROOTS)] = m.signs
        out[NUM_ROOTS:, NUM_ROOTS:] = self.weyl_matrix(m)
        return out

    def eta(self, s: int, r: int) -> int:
        """Sign in n_s n_r n_s^-1 = h_t(eta) n_t, t the positive root +-w_s(r)."""
        if not 1 <= s <= RANK:
            raise InvalidRootIndexError(f"Fundamental index must lie in 1..6, got {s}")
        ns = self.n(s)
        conj = ns * self.n(r) * ns.inverse()
        t = self.rs.roots[int(ns.perm[r - 1])].index
        if conj == self.n(t):
            return 1
        if conj == self.h_root(t) * self.n(t):
            return -1
        raise InconsistentTableError(f"n_{s} n_{r} n_{s}^-1 is not n_{t} up to h_{t}")

    def eta_table(self) -> np.ndarray:
        return np.array([[self.eta(s, r) for r in range(1, NUM_POSITIVE + 1)] for s in range(1, RANK + 1)])

    def describe(self, m: TitsElement, weyl_group=None) -> Dict[str, object]:
        """Weyl matrix and order; with the enumerated W also m = H(h_part) * canonical_lift(w)."""
        info: Dict[str, object] = {
            "weyl_matrix": self.weyl_matrix(m).tolist(),
            "order": m.order(),
        }
        if weyl_group is not None:
            eps, w = weyl_group.decompose(m)
            info["canonical_word"] = w.word_str()
            info["h_part"] = [int(e) for e in eps]
        elif m.is_diagonal:
            info["h_part"] = [int(e) for e in self.h_part(m)]
        return info


def eta(tits: TitsGroup, s: int, r: int) -> int:
    return tits.eta(s, r)


def h_part_solve(tits: TitsGroup, m: TitsElement) -> np.ndarray:
    return tits.h_part(m)


def canonical_lift(weyl_group, w) -> TitsElement:
    """Tits element of the shortlex-least reduced word of w (delegates to the enumerated group)."""
    return weyl_group.canonical_lift(w)
