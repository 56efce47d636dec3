"""
Root system of type E6: positive roots in the fixed total order,
special and extraspecial pairs, and the Chevalley structure constants.

Roots live in the basis of fundamental roots r1..r6 (Bourbaki labels:
r1-r3-r4-r5-r6 is the long chain and r2 hangs off r4). Internally the 72
roots occupy slots 0..71: slot k < 36 is the positive root with index k+1,
slot k+36 is its negative.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from exceptions import InconsistentTableError, InvalidRootIndexError

logger = logging.getLogger(__name__)

RANK = 6
NUM_POSITIVE = 36
NUM_ROOTS = 72

CARTAN = np.array(
    [
        [2, 0, -1, 0, 0, 0],
        [0, 2, 0, -1, 0, 0],
        [-1, 0, 2, -1, 0, 0],
        [0, -1, -1, 2, -1, 0],
        [0, 0, 0, -1, 2, -1],
        [0, 0, 0, 0, -1, 2],
    ],
    dtype=np.int64,
)

HIGHEST_ROOT = (1, 2, 2, 3, 2, 1)

# (r, s) index pairs with N_{r,s} = +1, as printed by the reference CAS session
PUBLISHED_EXTRASPECIAL: Tuple[Tuple[int, int], ...] = (
    (1, 3), (1, 9), (1, 13), (1, 15), (1, 19), (1, 21), (1, 24), (1, 25), (1, 28), (1, 31),
    (2, 4), (2, 9), (2, 10), (2, 15), (2, 16), (2, 21), (2, 35),
    (3, 4), (3, 10), (3, 16), (3, 26), (3, 30), (3, 33),
    (4, 5), (4, 11), (4, 19), (4, 25), (4, 34),
    (5, 6), (5, 28),
)


@dataclass(frozen=True)
class Root:
    """A root: coordinates over r1..r6, the index of its positive counterpart and a sign."""
    coords: Tuple[int, ...]
    index: int
    sign: int = 1

    @property
    def height(self) -> int:
        return sum(self.coords)

    @property
    def is_positive(self) -> bool:
        return self.sign > 0

    @property
    def slot(self) -> int:
        return self.index - 1 + (0 if self.sign > 0 else NUM_POSITIVE)

    def __neg__(self) -> "Root":
        return Root(tuple(-c for c in self.coords), self.index, -self.sign)

    def __str__(self) -> str:
        return f"{'' if self.sign > 0 else '-'}r{self.index}"


def root_pairing(r: Sequence[int], s: Sequence[int]) -> int:
    """Symmetric form (r, s) = r^T C s; equals <s, r^vee> since E6 is simply laced."""
    return int(np.asarray(r, dtype=np.int64) @ CARTAN @ np.asarray(s, dtype=np.int64))


def _order_key(coords: Sequence[int], orientation: str) -> Tuple:
    if orientation == "descending":
        return (sum(coords), tuple(-c for c in coords))
    if orientation == "ascending":
        return (sum(coords), tuple(coords))
    raise ValueError(f"Unknown orientation {orientation!r}")


def _positive_root_vectors() -> List[Tuple[int, ...]]:
    found = []
    for v in itertools.product(*(range(h + 1) for h in HIGHEST_ROOT)):
        if any(v) and root_pairing(v, v) == 2:
            found.append(tuple(int(x) for x in v))
    return found


class RootSystem:
    """The 36 positive roots in the fixed order plus lookup tables for all 72 roots."""

    def __init__(self, positive: Sequence[Tuple[int, ...]], orientation: str):
        self.cartan = CARTAN
        self.orientation = orientation
        self.positive_roots: List[Root] = [Root(tuple(c), i + 1, 1) for i, c in enumerate(positive)]
        self.roots: List[Root] = self.positive_roots + [-r for r in self.positive_roots]
        self.vectors = np.array([r.coords for r in self.roots], dtype=np.int64)
        self._slot_by_coords: Dict[Tuple[int, ...], int] = {r.coords: k for k, r in enumerate(self.roots)}
        # (C s)_i for every root s, i.e. <s, r_i^vee>
        self.pairings = self.vectors @ CARTAN
        self.cartan_pairings = self.pairings[:NUM_POSITIVE].copy()
        self.sum_slot = self._build_sum_table()

    def _build_sum_table(self) -> np.ndarray:
        table = np.full((NUM_ROOTS, NUM_ROOTS), -1, dtype=np.int64)
        for a in range(NUM_ROOTS):
            for b in range(NUM_ROOTS):
                slot = self._slot_by_coords.get(tuple(int(x) for x in self.vectors[a] + self.vectors[b]))
                if slot is not None:
                    table[a, b] = slot
        return table

    def __len__(self) -> int:
        return len(self.positive_roots)

    def root(self, index: int) -> Root:
        if not 1 <= index <= NUM_POSITIVE:
            raise InvalidRootIndexError(f"Root index must lie in 1..36, got {index}")
        return self.positive_roots[index - 1]

    def slot_of(self, coords: Sequence[int]) -> Optional[int]:
        return self._slot_by_coords.get(tuple(int(c) for c in coords))

    def index_of(self, coords: Sequence[int]) -> Root:
        slot = self.slot_of(coords)
        if slot is None:
            raise InvalidRootIndexError(f"{tuple(coords)} is not a root")
        return self.roots[slot]

    def negate_slot(self, slot: int) -> int:
        return (slot + NUM_POSITIVE) % NUM_ROOTS

    def reflection_matrix(self, index: int) -> np.ndarray:
        t = np.array(self.root(index).coords, dtype=np.int64)
        return np.eye(RANK, dtype=np.int64) - np.outer(t, t @ CARTAN)

    def permutation_of(self, matrix: np.ndarray) -> np.ndarray:
        """Slot permutation induced by a Weyl matrix (column convention)."""
        images = self.vectors @ np.asarray(matrix, dtype=np.int64).T
        perm = np.empty(NUM_ROOTS, dtype=np.int16)
        for k, img in enumerate(images):
            slot = self.slot_of(img)
            if slot is None:
                raise InconsistentTableError(f"Matrix does not preserve the root system (root slot {k})")
            perm[k] = slot
        return perm

    def to_json(self) -> List[dict]:
        return [{"index": r.index, "coords": list(r.coords), "height": r.height} for r in self.positive_roots]


def root_order_cmp(r: Root, s: Root, orientation: str = "descending") -> int:
    """-1 if r precedes s, 0 if equal, 1 otherwise."""
    kr, ks = _order_key(r.coords, orientation), _order_key(s.coords, orientation)
    return (kr > ks) - (kr < ks)


def build_e6(orientation: Optional[str] = None) -> RootSystem:
    """Build the root system; without an explicit orientation the published pair list decides it."""
    if orientation is None:
        orientation = detect_ordering_orientation()
    positive = sorted(_positive_root_vectors(), key=lambda c: _order_key(c, orientation))
    if len(positive) != NUM_POSITIVE:
        raise InconsistentTableError(f"Expected 36 positive roots, found {len(positive)}")
    rs = RootSystem(positive, orientation)
    logger.debug(f"[Roots] Built E6 with {len(rs)} positive roots ({orientation} order)")
    return rs


def special_and_extraspecial_pairs(rs: RootSystem) -> Tuple[List[Tuple[int, int]], List[Tuple[int, int]]]:
    """All special pairs (r, s) with r before s and r+s a root, and the extraspecial subset.

    Pairs are given by positive root indices and sorted by the index of r+s, then r.
    """
    special = []
    for a in range(NUM_POSITIVE):
        for b in range(a + 1, NUM_POSITIVE):
            t = rs.sum_slot[a, b]
            if t >= 0:
                special.append((int(t), a + 1, b + 1))
    special.sort()
    extraspecial = []
    seen = set()
    for t, r, s in special:
        if t not in seen:
            seen.add(t)
            extraspecial.append((r, s))
    return [(r, s) for _, r, s in special], extraspecial


def detect_ordering_orientation() -> str:
    """Return the within-height orientation whose extraspecial pairs match the published list."""
    vectors = _positive_root_vectors()
    for orientation in ("descending", "ascending"):
        positive = sorted(vectors, key=lambda c: _order_key(c, orientation))
        # fundamental roots must keep their diagram labels
        if positive[:RANK] != [tuple(int(i == j) for j in range(RANK)) for i in range(RANK)]:
            continue
        _, extra = special_and_extraspecial_pairs(RootSystem(positive, orientation))
        if sorted(extra) == sorted(PUBLISHED_EXTRASPECIAL):
            return orientation
    raise InconsistentTableError("No root ordering reproduces the published extraspecial pairs")


@dataclass
class StructureConstantTable:
    """N_{r,s} for all root pairs; zero where r+s is not a root."""
    array: np.ndarray
    extraspecial: List[Tuple[int, int, int]]

    @property
    def entries(self) -> Dict[Tuple[int, int], int]:
        a, b = np.nonzero(self.array)
        return {(int(i), int(j)): int(self.array[i, j]) for i, j in zip(a, b)}

    def n(self, r: Root, s: Root) -> int:
        return int(self.array[r.slot, s.slot])

    def to_json(self, rs: RootSystem) -> List[dict]:
        out = []
        for (a, b), value in sorted(self.entries.items()):
            out.append({"r": str(rs.roots[a]), "s": str(rs.roots[b]), "N": value})
        return out


def _cocycle_sign(a: np.ndarray, b: np.ndarray) -> int:
    # bimultiplicative sign with eps(r, r) = -1 for every root
    upper = np.triu(CARTAN % 2, k=1) + np.eye(RANK, dtype=np.int64)
    return -1 if int(a @ upper @ b) % 2 else 1


def structure_constants(rs: RootSystem) -> StructureConstantTable:
    """Structure constants with N = +1 on every extraspecial pair.

    A sign cocycle gives one valid Chevalley basis; rescaling each pair
    e_t, e_{-t} by a common sign c_t then moves every extraspecial sign to +1.
    """
    sign = np.array([1] * NUM_POSITIVE + [-1] * NUM_POSITIVE, dtype=np.int64)
    raw = np.zeros((NUM_ROOTS, NUM_ROOTS), dtype=np.int64)
    for a in range(NUM_ROOTS):
        for b in range(NUM_ROOTS):
            t = rs.sum_slot[a, b]
            if t >= 0:
                raw[a, b] = sign[a] * sign[b] * sign[t] * _cocycle_sign(rs.vectors[a], rs.vectors[b])

    _, extra = special_and_extraspecial_pairs(rs)
    extra_by_sum = {int(rs.sum_slot[r - 1, s - 1]): (r - 1, s - 1) for r, s in extra}
    scale = np.ones(NUM_POSITIVE, dtype=np.int64)
    for t in range(NUM_POSITIVE):
        if t in extra_by_sum:
            a, b = extra_by_sum[t]
            scale[t] = scale[a] * scale[b] * raw[a, b]
    full_scale = np.concatenate([scale, scale])

    table = np.zeros_like(raw)
    rows, cols = np.nonzero(raw)
    for a, b in zip(rows, cols):
        t = rs.sum_slot[a, b]
        table[a, b] = full_scale[a] * full_scale[b] * full_scale[t] * raw[a, b]

    result = StructureConstantTable(
        array=table,
        extraspecial=[(r, s, int(table[r - 1, s - 1])) for r, s in extra],
    )
    check_structure_constants(rs, result)
    logger.debug(f"[Roots] Structure constants ready: {len(rows)} nonzero entries")
    return result


def check_structure_constants(rs: RootSystem, table: StructureConstantTable) -> None:
    n = table.array
    if any(sign != 1 for _, _, sign in table.extraspecial):
        raise InconsistentTableError("Extraspecial sign is not +1")
    if not np.array_equal(n, -n.T):
        raise InconsistentTableError("N_{r,s} = -N_{s,r} violated")
    neg = np.r_[NUM_POSITIVE:NUM_ROOTS, 0:NUM_POSITIVE]
    if not np.array_equal(n[np.ix_(neg, neg)], -n):
        raise InconsistentTableError("N_{-r,-s} = -N_{r,s} violated")
    defined = rs.sum_slot >= 0
    if not np.array_equal(np.abs(n) == 1, defined):
        raise InconsistentTableError("|N_{r,s}| = 1 must hold exactly where r+s is a root")
    for a, b in zip(*np.nonzero(defined)):
        c = rs.negate_slot(int(rs.sum_slot[a, b]))
        # r + s + t = 0 with equal root lengths
        if not n[a, b] == n[b, c] == n[c, a]:
            raise InconsistentTableError(f"Cyclic relation fails at slots {a}, {b}, {c}")
