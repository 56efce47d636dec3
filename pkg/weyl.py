"""
The Weyl group W(E6) enumerated explicitly.

Every element is a permutation of the 72 root slots; perm[i] is the slot
of w(root_i). Products follow matrix multiplication: (uv)(r) = u(v(r)),
so the word w1w3 is the matrix M(w1) @ M(w3). The enumeration is a
breadth-first search appending fundamental reflections on the right,
which yields the shortlex-least reduced word of every element and, in
lockstep, its canonical lift to the Tits group.
"""
from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import Matrix

from coset_enum import Relator, cyclic_reduce, first_failing, count_cosets, invert
from exceptions import InconsistentTableError, InvalidRootIndexError, ResourceCapExceeded
from liealg import TitsElement, TitsGroup, parse_tokens
from rootsys import NUM_POSITIVE, NUM_ROOTS, RANK, RootSystem

logger = logging.getLogger(__name__)

W_ORDER = 51840
_KEY_BASE = np.array([NUM_ROOTS ** i for i in range(RANK)], dtype=np.int64)


def parse_word(text: Union[str, Sequence[int]]) -> List[int]:
    """Root indices of a reflection word such as 'w3w2w4w14'; the empty word is '1' or ''."""
    if not isinstance(text, str):
        return [int(i) for i in text]
    indices = []
    for letter, index in parse_tokens(text):
        if letter != "w":
            raise InvalidRootIndexError(f"Weyl words use only w_i letters, got {letter}{index}")
        indices.append(index)
    return indices


def perm_key(perm: np.ndarray) -> int:
    return int(np.asarray(perm[:RANK], dtype=np.int64) @ _KEY_BASE)


@dataclass(frozen=True, eq=False)
class WeylElement:
    perm: np.ndarray
    word: Tuple[int, ...]
    vectors: np.ndarray = field(repr=False)

    @property
    def matrix(self) -> np.ndarray:
        """Column j holds the coordinates of w(r_j)."""
        return self.vectors[np.asarray(self.perm[:RANK], dtype=np.int64)].T.copy()

    @property
    def key(self) -> int:
        return perm_key(self.perm)

    @property
    def is_identity(self) -> bool:
        return bool((self.perm[:RANK] == np.arange(RANK)).all())

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return WeylElement(self.perm[other.perm], self.word + other.word, self.vectors)

    def inverse(self) -> "WeylElement":
        perm = np.empty_like(self.perm)
        perm[self.perm] = np.arange(NUM_ROOTS, dtype=self.perm.dtype)
        return WeylElement(perm, tuple(reversed(self.word)), self.vectors)

    def __pow__(self, m: int) -> "WeylElement":
        base = self if m >= 0 else self.inverse()
        result = WeylElement(np.arange(NUM_ROOTS, dtype=self.perm.dtype), (), self.vectors)
        for _ in range(abs(m)):
            result = result * base
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.key == other.key

    def __hash__(self) -> int:
        return self.key

    def order(self) -> int:
        current, k = self, 1
        while not current.is_identity:
            current = current * self
            k += 1
        return k

    def word_str(self) -> str:
        return "".join(f"w{i}" for i in self.word) or "1"


def order(w: WeylElement) -> int:
    return w.order()


@dataclass
class Subgroup:
    indices: np.ndarray
    generators: List[WeylElement]

    def __len__(self) -> int:
        return len(self.indices)


@dataclass
class Presentation:
    generators: List[WeylElement]
    relators: List[Relator]
    order: int
    verified: bool
    source: str

    def relator_strings(self) -> List[str]:
        names = "abcdefghijklmnopqrstuvwxyz"
        return ["".join(names[abs(g) - 1] + ("^-1" if g < 0 else "") for g in rel) for rel in self.relators]


@dataclass
class CentralizerProfile:
    order: int
    center_order: int
    derived_order: int
    exponent: int
    abelian: bool
    order_histogram: Dict[int, int]


class WeylGroup:
    """W(E6) with canonical words, canonical Tits lifts and conjugacy tools."""

    def __init__(self, rs: RootSystem, tits: TitsGroup, max_cosets: int = 100_000):
        self.rs = rs
        self.tits = tits
        self.max_cosets = max_cosets
        self.reflection_perms = np.array(
            [rs.permutation_of(rs.reflection_matrix(i)) for i in range(1, NUM_POSITIVE + 1)], dtype=np.int64
        )
        for i, n in enumerate(tits.generators):
            if not np.array_equal(n.perm, self.reflection_perms[i]):
                raise InconsistentTableError(f"n_{i + 1} does not induce the reflection w_{i + 1}")
        self._enumerate()
        self._build_lifts()
        self._labels: Optional[np.ndarray] = None
        logger.info(f"[Weyl] Enumerated {len(self)} elements, longest word length {int(self.depth.max())}")

    # --- enumeration ---

    def _keys(self, perms: np.ndarray) -> np.ndarray:
        return np.asarray(perms[:, :RANK], dtype=np.int64) @ _KEY_BASE

    def _enumerate(self) -> None:
        gens = self.reflection_perms[:RANK]
        frontier = np.arange(NUM_ROOTS, dtype=np.int64)[None, :]
        perms, parents, gen_ids, depths = [frontier], [np.array([-1])], [np.array([-1])], [np.array([0])]
        seen = np.sort(self._keys(frontier))
        start, total, depth = 0, 1, 0
        self.level_bounds = [(0, 1)]
        while True:
            count = len(frontier)
            cand = frontier[:, gens].reshape(-1, NUM_ROOTS)
            parent_idx = np.repeat(np.arange(count), RANK) + start
            gen_idx = np.tile(np.arange(RANK), count)
            keys = self._keys(cand)
            fresh = ~np.isin(keys, seen)
            if not fresh.any():
                break
            cand, parent_idx, gen_idx, keys = cand[fresh], parent_idx[fresh], gen_idx[fresh], keys[fresh]
            _, first = np.unique(keys, return_index=True)
            first = np.sort(first)
            depth += 1
            frontier = cand[first]
            perms.append(frontier)
            parents.append(parent_idx[first])
            gen_ids.append(gen_idx[first])
            depths.append(np.full(len(first), depth))
            seen = np.union1d(seen, keys[first])
            start, total = total, total + len(first)
            self.level_bounds.append((start, total))
        self.perms = np.concatenate(perms).astype(np.int16)
        self.parent = np.concatenate(parents).astype(np.int32)
        self.gen = np.concatenate(gen_ids).astype(np.int8)
        self.depth = np.concatenate(depths).astype(np.int8)
        self.keys = self._keys(self.perms)
        self._key_order = np.argsort(self.keys)
        self._sorted_keys = self.keys[self._key_order]
        inverse = np.empty_like(self.perms)
        np.put_along_axis(inverse, self.perms.astype(np.int64), np.arange(NUM_ROOTS, dtype=np.int16)[None, :], axis=1)
        self.inverse_perms = inverse
        if len(self.perms) != W_ORDER:
            raise InconsistentTableError(f"Enumerated {len(self.perms)} elements, expected {W_ORDER}")

    def _build_lifts(self) -> None:
        lift_perm = np.empty_like(self.perms)
        lift_signs = np.empty((len(self.perms), NUM_ROOTS), dtype=np.int8)
        lift_perm[0] = np.arange(NUM_ROOTS)
        lift_signs[0] = 1
        n_perm = np.array([self.tits.n(i).perm for i in range(1, RANK + 1)], dtype=np.int64)
        n_signs = np.array([self.tits.n(i).signs for i in range(1, RANK + 1)], dtype=np.int8)
        for lo, hi in self.level_bounds[1:]:
            parents = self.parent[lo:hi]
            gens = self.gen[lo:hi].astype(np.int64)
            gp = n_perm[gens]
            lift_perm[lo:hi] = np.take_along_axis(lift_perm[parents].astype(np.int64), gp, axis=1)
            lift_signs[lo:hi] = n_signs[gens] * np.take_along_axis(lift_signs[parents], gp, axis=1)
        if not np.array_equal(lift_perm, self.perms):
            raise InconsistentTableError("Canonical lifts do not cover their Weyl elements")
        self.lift_signs = lift_signs

    def __len__(self) -> int:
        return len(self.perms)

    # --- lookup ---

    def indices_of_keys(self, keys: np.ndarray) -> np.ndarray:
        pos = np.searchsorted(self._sorted_keys, keys)
        pos = np.minimum(pos, len(self._sorted_keys) - 1)
        if not np.array_equal(self._sorted_keys[pos], keys):
            raise InconsistentTableError("Permutation outside W")
        return self._key_order[pos]

    def index(self, w: Union[WeylElement, np.ndarray]) -> int:
        perm = w.perm if isinstance(w, WeylElement) else w
        return int(self.indices_of_keys(np.array([perm_key(perm)]))[0])

    def canonical_word(self, i: int) -> Tuple[int, ...]:
        word = []
        while i > 0:
            word.append(int(self.gen[i]) + 1)
            i = int(self.parent[i])
        return tuple(reversed(word))

    def element(self, i: int) -> WeylElement:
        return WeylElement(self.perms[i].copy(), self.canonical_word(i), self.rs.vectors)

    def canonical(self, w: WeylElement) -> WeylElement:
        return self.element(self.index(w))

    @property
    def identity(self) -> WeylElement:
        return self.element(0)

    def reflection(self, index: int) -> WeylElement:
        if not 1 <= index <= NUM_POSITIVE:
            raise InvalidRootIndexError(f"Root index must lie in 1..36, got {index}")
        return WeylElement(self.reflection_perms[index - 1].astype(np.int16), (index,), self.rs.vectors)

    def from_word(self, word: Union[str, Sequence[int]]) -> WeylElement:
        result = WeylElement(np.arange(NUM_ROOTS, dtype=np.int16), (), self.rs.vectors)
        for index in parse_word(word):
            result = result * self.reflection(index)
        return result

    def from_matrix(self, matrix: np.ndarray) -> WeylElement:
        return self.element(self.index(self.rs.permutation_of(matrix)))

    def canonical_lift(self, w: Union[WeylElement, int]) -> TitsElement:
        i = w if isinstance(w, (int, np.integer)) else self.index(w)
        return TitsElement(self.perms[i].copy(), self.lift_signs[i].copy())

    def weyl_image(self, m: TitsElement) -> WeylElement:
        return self.element(self.index(m.perm))

    def decompose(self, m: TitsElement) -> Tuple[np.ndarray, WeylElement]:
        """m = prod h_i^{eps_i} * canonical_lift(w); returns (eps, w)."""
        w = self.weyl_image(m)
        return self.tits.h_part(m * self.canonical_lift(w).inverse()), w

    def multiply_indices(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        prods = np.take_along_axis(self.perms[a].astype(np.int64), self.perms[b].astype(np.int64), axis=1)
        return self.indices_of_keys(self._keys(prods))

    # --- subgroups ---

    def closure(self, generators: Sequence[WeylElement], limit: Optional[int] = None) -> np.ndarray:
        """Sorted indices of the subgroup generated; raises once the size passes limit."""
        seen = np.zeros(len(self), dtype=bool)
        seen[0] = True
        if not generators:
            return np.array([0])
        gperms = np.array([g.perm for g in generators], dtype=np.int64)
        frontier = np.array([0])
        total = 1
        while frontier.size:
            prods = self.perms[frontier].astype(np.int64)[:, gperms].reshape(-1, NUM_ROOTS)
            idx = np.unique(self.indices_of_keys(self._keys(prods)))
            idx = idx[~seen[idx]]
            seen[idx] = True
            total += len(idx)
            if limit is not None and total > limit:
                raise ResourceCapExceeded("subgroup closure", limit, total)
            frontier = idx
        return np.flatnonzero(seen)

    def commuting_mask(self, w: WeylElement) -> np.ndarray:
        pw = w.perm.astype(np.int64)
        lhs = self.perms[:, pw[:RANK]]
        rhs = pw[self.perms[:, :RANK].astype(np.int64)]
        return (lhs == rhs).all(axis=1)

    def centralizer(self, w: WeylElement) -> Subgroup:
        """All x with xw = wx; generators chosen greedily in shortlex order."""
        indices = np.flatnonzero(self.commuting_mask(w))
        generators: List[WeylElement] = []
        span = np.array([0])
        for i in indices:
            if len(span) == len(indices):
                break
            pos = np.searchsorted(span, i)
            if pos < len(span) and span[pos] == i:
                continue
            generators.append(self.element(int(i)))
            span = self.closure(generators)
        return Subgroup(indices, generators)

    def conjugate_keys(self, w: WeylElement) -> np.ndarray:
        """Keys of x w x^-1 for every x in enumeration order."""
        pw = w.perm.astype(np.int64)
        inner = pw[self.inverse_perms[:, :RANK].astype(np.int64)]
        return self._keys(np.take_along_axis(self.perms.astype(np.int64), inner, axis=1))

    def conjugator(self, a: WeylElement, b: WeylElement) -> Optional[WeylElement]:
        """Some x with x a x^-1 = b, or None."""
        hits = np.flatnonzero(self.conjugate_keys(a) == b.key)
        return self.element(int(hits[0])) if hits.size else None

    def conjugacy_labels(self) -> np.ndarray:
        if self._labels is None:
            labels = np.full(len(self), -1, dtype=np.int64)
            label = 0
            while (labels < 0).any():
                i = int(np.flatnonzero(labels < 0)[0])
                labels[self.indices_of_keys(self.conjugate_keys(self.element(i)))] = label
                label += 1
            self._labels = labels
            logger.info(f"[Weyl] Found {label} conjugacy classes")
        return self._labels

    # --- invariants ---

    @staticmethod
    def invariants(w: WeylElement) -> Tuple[int, int, Tuple[int, ...]]:
        m = w.matrix
        charpoly = tuple(int(c) for c in Matrix(m.tolist()).charpoly().all_coeffs())
        return w.order(), int(np.trace(m)), charpoly

    def element_orders(self, indices: np.ndarray) -> np.ndarray:
        base = self.perms[indices].astype(np.int64)
        current = base.copy()
        orders = np.zeros(len(indices), dtype=np.int64)
        ident = np.arange(NUM_ROOTS)
        for k in range(1, 13):
            done = (orders == 0) & (current[:, :RANK] == ident[:RANK]).all(axis=1)
            orders[done] = k
            current = np.take_along_axis(current, base, axis=1)
        if (orders == 0).any():
            raise InconsistentTableError("Element order above 12 in W(E6)")
        return orders

    def profile(self, subgroup: Subgroup) -> CentralizerProfile:
        gens = subgroup.generators
        idx = subgroup.indices
        center = np.ones(len(idx), dtype=bool)
        for g in gens:
            gi = np.full(len(idx), self.index(g))
            center &= self.multiply_indices(idx, gi) == self.multiply_indices(gi, idx)
        derived = self._derived_subgroup(gens)
        orders = self.element_orders(idx)
        histogram = dict(sorted(Counter(int(o) for o in orders).items()))
        abelian = all((a * b) == (b * a) for a in gens for b in gens)
        return CentralizerProfile(
            order=len(idx),
            center_order=int(center.sum()),
            derived_order=len(derived),
            exponent=math.lcm(*histogram.keys()),
            abelian=abelian,
            order_histogram=histogram,
        )

    def _derived_subgroup(self, gens: List[WeylElement]) -> np.ndarray:
        normal_gens = [a * b * a.inverse() * b.inverse() for a in gens for b in gens]
        normal_gens = [c for c in normal_gens if not c.is_identity]
        span = self.closure(normal_gens)
        changed = True
        while changed:
            changed = False
            for g in gens:
                for h in list(normal_gens):
                    c = g * h * g.inverse()
                    if not np.isin(self.index(c), span):
                        normal_gens.append(c)
                        span = self.closure(normal_gens)
                        changed = True
        return span

    # --- presentations ---

    def evaluate(self, generators: Sequence[WeylElement], relator: Sequence[int]) -> WeylElement:
        result = self.identity
        for g in relator:
            gen = generators[abs(g) - 1]
            result = result * (gen if g > 0 else gen.inverse())
        return result

    def _cayley_relators(self, generators: Sequence[WeylElement]) -> Tuple[int, List[Relator]]:
        gperms = np.array([g.perm for g in generators], dtype=np.int64)
        position: Dict[int, int] = {0: 0}
        words: List[Relator] = [()]
        order_list = [0]
        relators: List[Relator] = []
        head = 0
        while head < len(order_list):
            v = order_list[head]
            prods = self.perms[v].astype(np.int64)[gperms]
            targets = self.indices_of_keys(self._keys(prods))
            for g, t in enumerate(targets):
                t = int(t)
                if t not in position:
                    position[t] = len(order_list)
                    order_list.append(t)
                    words.append(words[head] + (g + 1,))
                else:
                    rel = words[head] + (g + 1,) + invert(words[position[t]])
                    rel = cyclic_reduce(rel)
                    if rel:
                        relators.append(rel)
            head += 1
        return len(order_list), relators

    def presentation(self, generators: Sequence[WeylElement]) -> Presentation:
        """Finite presentation on the given generators, reduced greedily and checked by coset enumeration."""
        generators = [g for g in generators]
        if not generators or all(g.is_identity for g in generators):
            return Presentation(generators, [], 1, True, "trivial")
        size, cayley = self._cayley_relators(generators)
        power_rels = [tuple([k + 1] * g.order()) for k, g in enumerate(generators)]
        candidates: List[Relator] = []
        seen = set()
        for rel in power_rels + sorted(cayley, key=len):
            canon = min(rel, invert(rel))
            if canon not in seen:
                seen.add(canon)
                candidates.append(rel)
        ngens = len(generators)
        cap = min(self.max_cosets, 64 * size + 1000)

        chosen: List[Relator] = []
        pointer = 0
        while True:
            order_found, failing = first_failing(ngens, chosen, candidates, cap)
            if order_found == size:
                break
            if order_found is not None and failing is not None:
                chosen.append(candidates[failing])
                continue
            if pointer >= len(candidates):
                logger.warning(f"[Weyl] Presentation reduction failed for |S|={size}, keeping Cayley relators")
                return Presentation(generators, candidates, size, False, "cayley")
            step = max(1, len(chosen))
            for rel in candidates[pointer:pointer + step]:
                if rel not in chosen:
                    chosen.append(rel)
            pointer += step

        for rel in sorted(chosen, key=len, reverse=True):
            trial = [r for r in chosen if r != rel]
            if count_cosets(ngens, trial, cap) == size:
                chosen = trial
        chosen.sort(key=lambda r: (len(r), r))
        logger.debug(f"[Weyl] Presentation of order {size}: {len(chosen)} relators")
        return Presentation(generators, chosen, size, True, "reduced")

    def coxeter_presentation(self) -> Presentation:
        generators = [self.reflection(i) for i in range(1, RANK + 1)]
        relators: List[Relator] = []
        for i in range(RANK):
            relators.append((i + 1, i + 1))
        for i in range(RANK):
            for j in range(i + 1, RANK):
                m = 3 if self.rs.cartan[i, j] == -1 else 2
                relators.append(tuple([i + 1, j + 1] * m))
        return Presentation(generators, relators, len(self), True, "coxeter")

    def reflection_presentation(self, w: WeylElement, size: Optional[int] = None) -> Optional[Presentation]:
        """Coxeter presentation of C_W(w) when the reflections it contains generate it, else None.

        The reflections in C_W(w) are the s_r with w(r) = +-r; their roots form a
        subsystem whose simple roots are the positive ones that are not a sum of two others.
        """
        if size is None:
            size = int(self.commuting_mask(w).sum())
        fixed = [i for i in range(NUM_POSITIVE) if int(w.perm[i]) in (i, i + NUM_POSITIVE)]
        if not fixed:
            return None
        members = set(fixed)
        simple = [a for a in fixed
                  if not any(int(self.rs.sum_slot[b, c]) == a for b in fixed for c in fixed if b < c)]
        generators = [self.reflection(a + 1) for a in simple]
        if len(self.closure(generators, limit=size)) != size:
            return None
        relators: List[Relator] = [(i + 1, i + 1) for i in range(len(simple))]
        for i in range(len(simple)):
            for j in range(i + 1, len(simple)):
                pairing = int(self.rs.vectors[simple[i]] @ self.rs.pairings[simple[j]])
                m = 2 if pairing == 0 else 3
                relators.append(tuple([i + 1, j + 1] * m))
        if count_cosets(len(generators), relators, min(self.max_cosets, 64 * size + 1000)) != size:
            logger.warning(f"[Weyl] Coxeter relators of the reflection subgroup do not close at {size}")
            return None
        logger.debug(f"[Weyl] C_W(w) is the reflection group on {len(simple)} of {len(members)} fixed roots")
        return Presentation(generators, relators, size, True, "reflections")


def classify(group: WeylGroup, table, w: WeylElement) -> Tuple[int, WeylElement]:
    """Class index of w and an explicit x with x rep x^-1 = w."""
    inv = group.invariants(w)
    for index, rep_inv in enumerate(table.invariants, start=1):
        if rep_inv != inv:
            continue
        x = group.conjugator(table.representative(index), w)
        if x is not None:
            return index, x
    raise InconsistentTableError(f"{w.word_str()} matches no class representative")


def centralizer_profile(group: WeylGroup, w: WeylElement) -> CentralizerProfile:
    return group.profile(group.centralizer(w))


def matches_structure_label(profile: CentralizerProfile, row) -> Tuple[bool, str]:
    """Compare a centralizer profile with what the row's structure label pins down."""
    from class_table import abelian_order_histogram

    if profile.order != row.centralizer_order:
        return False, f"order {profile.order} != {row.centralizer_order}"
    exp = row.expectation
    if exp.abelian_invariants is not None:
        if not profile.abelian:
            return False, "expected an abelian centralizer"
        expected = abelian_order_histogram(exp.abelian_invariants)
        if profile.order_histogram != expected:
            return False, f"order statistics {profile.order_histogram} != {expected}"
        return True, f"abelian {exp.abelian_invariants}"
    if exp.center_order is not None and profile.center_order != exp.center_order:
        return False, f"center order {profile.center_order} != {exp.center_order}"
    if exp.derived_order is not None and profile.derived_order != exp.derived_order:
        return False, f"derived order {profile.derived_order} != {exp.derived_order}"
    if exp.center_order is None and exp.derived_order is None:
        return True, "order only"
    return True, "center and derived orders"
