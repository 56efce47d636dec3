"""
Conjugacy classes of W(E6) and the maximal tori they parametrize.

One row per class: representative word, |w|, |C_W(w)|, structure label
of the centralizer, cyclic structure of the finite torus and whether the
torus splits in its algebraic normalizer.
"""
import itertools
import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

import sympy
from pydantic import BaseModel, ConfigDict

from exceptions import InconsistentTableError
from weyl import WeylElement, WeylGroup

logger = logging.getLogger(__name__)

Q = sympy.Symbol("q")


class SplitRule(str, Enum):
    SPLITS = "+"
    NO_SPLIT = "-"
    # splits unless q = 3 mod 4
    MOD4 = "+ (q != 3 mod 4)"


class StructureExpectation(BaseModel):
    """What the centralizer profile must match for the structure label."""
    model_config = ConfigDict(frozen=True)

    abelian_invariants: Optional[Tuple[int, ...]] = None
    center_order: Optional[int] = None
    derived_order: Optional[int] = None


class ClassRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    index: int
    representative: str
    order: int
    centralizer_order: int
    structure: str
    torus_factors: Tuple[Tuple[str, int], ...]
    torus_structure_checked: bool = True
    split: SplitRule
    expectation: StructureExpectation = StructureExpectation()

    def twist_word(self) -> str:
        """The Tits word n = n_{i1}...n_{ik} over the representative's reflections."""
        return self.representative.replace("w", "n") if self.representative != "1" else "1"

    def torus_order(self, q: int) -> int:
        total = 1
        for expr, mult in self.torus_factors:
            total *= int(sympy.sympify(expr).subs(Q, q)) ** mult
        return total

    def torus_cyclic_factors(self, q: int) -> List[int]:
        """Orders of the cyclic factors as printed, multiplicities expanded."""
        out = []
        for expr, mult in self.torus_factors:
            out.extend([int(sympy.sympify(expr).subs(Q, q))] * mult)
        return out

    def splits(self, q: int) -> bool:
        if q % 2 == 0:
            return True
        if self.split is SplitRule.MOD4:
            return q % 4 != 3
        return self.split is SplitRule.SPLITS


def _row(index, rep, order, cent, structure, factors, split, checked=True, **expect) -> ClassRow:
    return ClassRow(
        index=index,
        representative=rep,
        order=order,
        centralizer_order=cent,
        structure=structure,
        torus_factors=tuple(factors),
        torus_structure_checked=checked,
        split=split,
        expectation=StructureExpectation(**expect),
    )


_P, _M = SplitRule.SPLITS, SplitRule.NO_SPLIT

ROWS: Tuple[ClassRow, ...] = (
    _row(1, "1", 1, 51840, "O5(3):Z2", [("q-1", 6)], _M, center_order=1, derived_order=25920),
    _row(2, "w1", 2, 1440, "S2 x S6", [("q-1", 4), ("q**2-1", 1)], _M, center_order=2, derived_order=360),
    _row(3, "w1w2", 2, 192, "D8 x S4", [("q-1", 2), ("q**2-1", 2)], _M, center_order=2, derived_order=24),
    _row(4, "w3w1", 3, 216, "Z3 x ((S3 x S3):Z2)", [("q-1", 3), ("q**3-1", 1)], _P),
    _row(5, "w2w3w5", 2, 96, "Z2 x Z2 x S4", [("q**2-1", 3)], _M, center_order=4, derived_order=12),
    _row(6, "w1w3w5", 6, 36, "Z6 x S3", [("q-1", 1), ("q**2-1", 1), ("q**3-1", 1)], _P,
         center_order=6, derived_order=3),
    _row(7, "w1w3w4", 4, 32, "Z4 x D8", [("q-1", 2), ("q**4-1", 1)], _M, center_order=8, derived_order=2),
    _row(8, "w1w4w6w36", 2, 1152, "Z2:(((A4 x A4):Z2):Z2)", [("q+1", 2), ("q**2-1", 2)], _M),
    _row(9, "w1w2w3w5", 6, 24, "Z3 x D8", [("q**2-1", 1), ("(q+1)*(q**3-1)", 1)], _P,
         center_order=6, derived_order=2),
    _row(10, "w1w5w3w6", 3, 108, "Z3 x S3 x S3", [("q-1", 1), ("q**2+q+1", 1), ("q**3-1", 1)], _P,
         center_order=3, derived_order=9),
    _row(11, "w1w4w6w3", 4, 16, "Z4 x Z2 x Z2", [("q**2-1", 1), ("q**4-1", 1)], _M,
         abelian_invariants=(4, 2, 2)),
    _row(12, "w1w4w3w2", 5, 10, "Z2 x Z5", [("q-1", 1), ("q**5-1", 1)], _P, abelian_invariants=(10,)),
    _row(13, "w3w2w5w4", 6, 36, "Z6 x S3", [("q**2-1", 1), ("(q-1)*(q**3+1)", 1)], _P,
         center_order=6, derived_order=3),
    _row(14, "w3w2w4w14", 4, 96, "SL2(3):Z4", [("(q-1)**2*(q**2+1)**2", 1)], SplitRule.MOD4,
         checked=False),
    _row(15, "w1w5w3w6w2", 6, 36, "Z6 x S3", [("q**2+q+1", 1), ("(q+1)*(q**3-1)", 1)], _P,
         center_order=6, derived_order=3),
    _row(16, "w1w4w6w3w36", 4, 96, "Z4 x S4", [("q+1", 2), ("q**4-1", 1)], _M, center_order=4, derived_order=12),
    _row(17, "w1w4w5w3w36", 10, 10, "Z10", [("(q+1)*(q**5-1)", 1)], _P, abelian_invariants=(10,)),
    _row(18, "w1w4w6w3w5", 6, 12, "Z6 x Z2", [("q**2+q+1", 1), ("(q-1)*(q**3+1)", 1)], _P,
         abelian_invariants=(6, 2)),
    _row(19, "w2w5w3w4w6", 8, 8, "Z8", [("(q**2-1)*(q**4+1)", 1)], _P, abelian_invariants=(8,)),
    _row(20, "w20w5w4w3w2", 12, 12, "Z12", [("(q-1)*(q**2+1)*(q**3+1)", 1)], _P, abelian_invariants=(12,)),
    _row(21, "w1w5w2w3w6w36", 3, 648, "(((Z3 x Z3):Z3):Q8):Z3", [("q**2+q+1", 3)], _P),
    _row(22, "w1w4w6w3w5w36", 6, 36, "Z6 x S3", [("q+1", 1), ("q**5+q**4+q**3+q**2+q+1", 1)], _P,
         center_order=6, derived_order=3),
    _row(23, "w1w4w6w3w2w5", 12, 12, "Z12", [("(q**2+q+1)*(q**4-q**2+1)", 1)], _P, abelian_invariants=(12,)),
    _row(24, "w1w4w14w3w2w6", 9, 9, "Z9", [("q**6+q**3+1", 1)], _P, abelian_invariants=(9,)),
    _row(25, "w1w4w14w3w2w31", 6, 72, "Z3 x SL2(3)", [("q**2-q+1", 1), ("q**4+q**2+1", 1)], _P,
         center_order=6, derived_order=8),
)


def row(index: int) -> ClassRow:
    if not 1 <= index <= len(ROWS):
        raise ValueError(f"Class index must lie in 1..25, got {index}")
    return ROWS[index - 1]


def invariant_factors(orders: List[int]) -> List[int]:
    """Invariant factors d1 | d2 | ... of a direct product of cyclic groups; ones dropped."""
    by_prime: Dict[int, List[int]] = {}
    for n in orders:
        for p, a in sympy.factorint(n).items():
            by_prime.setdefault(p, []).append(p ** a)
    length = max((len(v) for v in by_prime.values()), default=0)
    factors = [1] * length
    for powers in by_prime.values():
        powers.sort(reverse=True)
        for i, pk in enumerate(powers):
            factors[length - 1 - i] *= pk
    return factors


def abelian_order_histogram(invariants: Tuple[int, ...]) -> Dict[int, int]:
    counts: Counter = Counter()
    for combo in itertools.product(*(range(n) for n in invariants)):
        order = 1
        for a, n in zip(combo, invariants):
            order = math.lcm(order, n // math.gcd(a, n))
        counts[order] += 1
    return dict(sorted(counts.items()))


def class_equation_holds() -> bool:
    return sum(51840 // r.centralizer_order for r in ROWS) == 51840


@dataclass
class BoundClassTable:
    """The static rows bound to an enumerated Weyl group."""
    rows: Tuple[ClassRow, ...]
    representatives: List[WeylElement]
    invariants: List[tuple]
    class_of_label: Dict[int, int] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.rows)

    def representative(self, index: int) -> WeylElement:
        return self.representatives[index - 1]


def bind(group: WeylGroup) -> BoundClassTable:
    """Evaluate every representative word in the group and match it to a conjugacy class."""
    reps = [group.from_word(r.representative) for r in ROWS]
    labels = group.conjugacy_labels()
    class_of_label: Dict[int, int] = {}
    for r, w in zip(ROWS, reps):
        label = int(labels[group.index(w)])
        if label in class_of_label:
            raise InconsistentTableError(
                f"Representatives of classes {class_of_label[label]} and {r.index} are conjugate"
            )
        class_of_label[label] = r.index
    if len(class_of_label) != len(set(labels.tolist())):
        raise InconsistentTableError("Class table does not cover every conjugacy class of W")
    table = BoundClassTable(ROWS, reps, [group.invariants(w) for w in reps], class_of_label)
    logger.info(f"[Classes] Bound {len(table)} class representatives")
    return table


@lru_cache()
def dump_rows() -> List[dict]:
    return [r.model_dump(mode="json") for r in ROWS]
