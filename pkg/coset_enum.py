"""
Coset enumeration for finitely presented groups.

Cosets of the trivial subgroup are enumerated, so a successful run
counts the elements of the presented group. Letters 2i and 2i+1 stand
for generator i and its inverse. Relators are given as tuples of signed
1-based generator numbers: (1, 1, -2) means a*a*b^-1.
"""
import logging
from typing import List, Optional, Sequence, Tuple

logger = logging.getLogger(__name__)

SENTINEL = -1

Relator = Tuple[int, ...]


def encode(relator: Sequence[int]) -> List[int]:
    letters = []
    for g in relator:
        if g == 0:
            raise ValueError("Generator numbers are 1-based")
        letters.append(2 * (abs(g) - 1) + (1 if g < 0 else 0))
    return letters


def invert(relator: Sequence[int]) -> Relator:
    return tuple(-g for g in reversed(relator))


def free_reduce(relator: Sequence[int]) -> Relator:
    out: List[int] = []
    for g in relator:
        if out and out[-1] == -g:
            out.pop()
        else:
            out.append(g)
    return tuple(out)


def cyclic_reduce(relator: Sequence[int]) -> Relator:
    word = list(free_reduce(relator))
    while len(word) >= 2 and word[0] == -word[-1]:
        word = word[1:-1]
    return tuple(word)


class CosetTable:
    """
    Union-find coset graph. labels[c] <= c points to the surviving coset,
    neighbors[c][d] is the coset reached from c by letter d.
    """

    def __init__(self, ngens: int, relators: Sequence[Sequence[int]], max_cosets: int = 100_000):
        self.ngens = ngens
        self.max_cosets = max_cosets
        self.rels = [encode(r) for r in relators if len(r) > 0]
        for i in range(ngens):
            self.rels.append([2 * i, 2 * i + 1])
            self.rels.append([2 * i + 1, 2 * i])
        self.labels: List[int] = []
        self.neighbors: List[List[int]] = []
        self._changes = 0
        self.start = self._add()

    def _add(self) -> int:
        c = len(self.labels)
        self.labels.append(c)
        self.neighbors.append([SENTINEL] * (2 * self.ngens))
        self._changes += 1
        return c

    def _find(self, c: int) -> int:
        labels = self.labels
        root = c
        while labels[root] != root:
            root = labels[root]
        while labels[c] != root:
            labels[c], c = root, labels[c]
        return root

    def _unify(self, c1: int, c2: int) -> None:
        neighbors = self.neighbors
        pending = [(c1, c2)]
        while pending:
            a, b = pending.pop()
            a, b = self._find(a), self._find(b)
            if a == b:
                continue
            a, b = min(a, b), max(a, b)
            self.labels[b] = a
            self._changes += 1
            for d in range(2 * self.ngens):
                n1, n2 = neighbors[a][d], neighbors[b][d]
                if n1 == SENTINEL:
                    neighbors[a][d] = n2
                elif n2 != SENTINEL:
                    pending.append((n1, n2))

    def _step(self, c: int, d: int) -> int:
        c = self._find(c)
        row = self.neighbors[c]
        if row[d] == SENTINEL:
            row[d] = self._add()
        return self._find(row[d])

    def _follow(self, c: int, letters: Sequence[int]) -> int:
        for d in letters:
            c = self._step(c, d)
        return c

    def trace(self, relator: Sequence[int], c: int = 0) -> int:
        """Coset reached from c along the relator without defining anything; SENTINEL if undefined."""
        c = self._find(c)
        for d in encode(relator):
            nxt = self.neighbors[c][d]
            if nxt == SENTINEL:
                return SENTINEL
            c = self._find(nxt)
        return c

    def __len__(self) -> int:
        return sum(1 for i, label in enumerate(self.labels) if i == label)

    def run(self) -> Optional[int]:
        """Enumerate until closed; returns the coset count, or None once max_cosets is exceeded."""
        while True:
            before = self._changes
            to_visit = 0
            while to_visit < len(self.labels):
                c = self._find(to_visit)
                if c == to_visit:
                    for rel in self.rels:
                        self._unify(self._follow(c, rel), c)
                        if len(self.labels) > self.max_cosets:
                            logger.debug(f"[Cosets] Gave up after {len(self.labels)} cosets")
                            return None
                to_visit += 1
            if self._changes == before:
                return len(self)


def count_cosets(ngens: int, relators: Sequence[Sequence[int]], max_cosets: int = 100_000) -> Optional[int]:
    """Order of the presented group, or None if enumeration exceeds max_cosets."""
    return CosetTable(ngens, relators, max_cosets).run()


def first_failing(ngens: int, relators: Sequence[Sequence[int]], candidates: Sequence[Sequence[int]],
                  max_cosets: int = 100_000) -> Tuple[Optional[int], Optional[int]]:
    """Enumerate the group of `relators`; return (order, index of the first candidate not trivial in it)."""
    table = CosetTable(ngens, relators, max_cosets)
    order = table.run()
    if order is None:
        return None, None
    for k, cand in enumerate(candidates):
        if table.trace(cand, table.start) != table._find(table.start):
            return order, k
    return order, None
