"""
Complements of T in its algebraic normalizer N, and lifts of w.

A section of N -> C_W(w) is fixed by the torus parts x_i of lifts of a
generating set y_1..y_g of C_W(w). Membership of H(x_i) L(y_i) in N and
every relator of a presentation of C_W(w) are affine in the x_i over
Z/M (M = q^k - 1), so "T has a complement" becomes "this linear system is
solvable". Non-split answers carry a certificate y with y B = 0 and
y r != 0.
"""
import logging
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Annotated, Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, computed_field, field_serializer, field_validator

import torus_data
from class_table import BoundClassTable
from config import Settings, get_settings
from coset_enum import Relator, count_cosets
from exceptions import FieldError, ResourceCapExceeded, VerificationError
from ff import RootSpec, ambient_degree, build_field, root_exponent, split_prime_power
from lattice import as_object, check_certificate, check_solution, solve_mod
from models import jsonable
from rootsys import RANK
from torusnorm import (
    NormalizerElement,
    TorusContext,
    TorusElement,
    TwistData,
    enumerate_torus,
    torus_order,
    twisted_matrix,
)
from weyl import Presentation, WeylElement, WeylGroup

logger = logging.getLogger(__name__)

SC, ADJOINT = "sc", "adjoint"


# --- problem and system types ---

@dataclass
class SectionProblem:
    twist: TwistData
    generators: List[WeylElement]
    relators: List[Relator]
    mode: str = SC
    source: str = "presentation"


@dataclass
class LinearSystemOverT:
    matrix: np.ndarray
    rhs: np.ndarray
    modulus: int
    num_generators: int
    row_labels: List[str]
    center_columns: int = 0

    @property
    def shape(self) -> Tuple[int, int]:
        return self.matrix.shape

    def generator_parts(self, x: Sequence[int]) -> List[List[int]]:
        return [list(x[RANK * i:RANK * (i + 1)]) for i in range(self.num_generators)]

    def cube_reduced(self) -> "LinearSystemOverT":
        """Multiply every equation by 3; kills the center z."""
        return LinearSystemOverT(
            (self.matrix * 3) % self.modulus, (self.rhs * 3) % self.modulus, self.modulus,
            self.num_generators, self.row_labels, self.center_columns,
        )


def _int_list(value: Any) -> Any:
    return None if value is None else [int(v) for v in value]


IntList = Annotated[List[int], BeforeValidator(_int_list)]


class ObstructionResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    class_index: int = Field(serialization_alias="class")
    q: int
    mode: str
    solvable: bool
    expected_solvable: bool
    ambient_k: int
    relations: List[str]
    certificate: Optional[IntList] = None

    @property
    def matches(self) -> bool:
        return self.solvable == self.expected_solvable


class SplitDecision(BaseModel):
    model_config = ConfigDict(frozen=True)

    class_index: int = Field(serialization_alias="class")
    q: int
    mode: str
    splits: bool
    expected: bool
    ambient_k: int
    presentation_source: str = Field(serialization_alias="presentation")
    num_generators: int = Field(serialization_alias="generators")
    num_relators: int = Field(serialization_alias="relators")
    system_shape: Tuple[int, int] = (0, 0)
    witness: Optional[List[Dict[str, Any]]] = None
    certificate: Optional[IntList] = None
    failing_prime: Optional[int] = None
    shortcut: Optional[str] = None
    # the obstruction subsystem re-deciding a non-split verdict
    obstruction: Optional[ObstructionResult] = None

    @field_validator("system_shape", mode="before")
    @classmethod
    def coerce_shape(cls, value: Any) -> Tuple[int, ...]:
        return tuple(int(v) for v in value)

    @field_validator("failing_prime", mode="before")
    @classmethod
    def coerce_prime(cls, value: Any) -> Optional[int]:
        return None if value is None else int(value)

    @field_serializer("witness")
    def serialize_witness(self, witness: Optional[List[Dict[str, Any]]]) -> Any:
        return jsonable(witness)

    @property
    def matches(self) -> bool:
        return self.splits == self.expected


class CheckReport(BaseModel):
    """Named boolean checks; ok iff all of them hold."""
    class_index: int = Field(serialization_alias="class")
    q: int
    ambient_k: int
    checks: Dict[str, bool] = Field(default_factory=dict)
    details: Dict[str, Any] = Field(default_factory=dict)

    @computed_field
    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    @property
    def failures(self) -> List[str]:
        return [name for name, passed in self.checks.items() if not passed]

    @field_serializer("checks")
    def serialize_checks(self, checks: Dict[str, bool]) -> Dict[str, bool]:
        return {name: bool(passed) for name, passed in checks.items()}

    @field_serializer("details")
    def serialize_details(self, details: Dict[str, Any]) -> Any:
        return jsonable(details)

    def assert_ok(self) -> None:
        if not self.ok:
            raise VerificationError(
                f"Class {self.class_index}, q={self.q}: failed {', '.join(self.failures)}",
                {"class": self.class_index, "q": self.q},
            )


# --- contexts ---

def make_twist(group: WeylGroup, table: BoundClassTable, class_index: int, q: int) -> TwistData:
    row = table.rows[class_index - 1]
    return TwistData(class_index, table.representative(class_index), group.tits.word(row.twist_word()), q)


def context_at(group: WeylGroup, q: int, k: int, max_field_size: int) -> TorusContext:
    p, e = split_prime_power(q)
    if q ** k > max_field_size:
        raise ResourceCapExceeded("field size", max_field_size, q ** k, {"q": q, "k": k})
    return TorusContext(group, build_field(p, e, k, max_field_size))


def coset_particular_solution(ctx: TorusContext, x: WeylElement, twist: TwistData) -> TorusElement:
    """Some H with H L(x) in N; raises FieldError when this level has none."""
    y = ctx.group.index(x)
    offset = ctx.coset_offset(y, twist)
    if not any(offset):
        return ctx.one
    solution = solve_mod(twisted_matrix(twist.w, ctx.q), (-offset) % ctx.modulus, ctx.modulus)
    if not solution.solvable:
        raise FieldError(f"No lift of {x.word_str()} in N over F_{ctx.q}^{ctx.field.k}", {"k": ctx.field.k})
    return ctx.torus(solution.x)


def select_context(group: WeylGroup, twist: TwistData, elements: Sequence[WeylElement],
                   specs: Sequence[RootSpec] = (), settings: Optional[Settings] = None,
                   attempts: int = 3) -> TorusContext:
    """Least level that is a multiple of |w|, satisfies specs and has every coset x T nonempty."""
    settings = settings or get_settings()
    base = twist.w.order()
    k = ambient_degree(twist.q, specs, base, settings.MAX_FIELD_SIZE)
    for _ in range(attempts):
        ctx = context_at(group, twist.q, k, settings.MAX_FIELD_SIZE)
        try:
            for x in elements:
                coset_particular_solution(ctx, x, twist)
        except FieldError:
            logger.debug(f"[Split] Level k={k} misses a coset for class {twist.class_index}, doubling")
            k *= 2
            continue
        logger.debug(f"[Split] Class {twist.class_index}, q={twist.q}: ambient k={k}")
        return ctx
    raise FieldError(f"No level up to k={k} covers every coset", {"class": twist.class_index})


# --- presentations of the centralizer ---

def _relator_text(rel: Sequence[int]) -> str:
    return " ".join(f"N{abs(g)}" + ("^-1" if g < 0 else "") for g in rel)


@lru_cache(maxsize=64)
def _centralizer_presentation(group: WeylGroup, class_index: int, w_index: int) -> Presentation:
    w = group.element(w_index)
    if class_index == 1:
        return group.coxeter_presentation()
    centralizer = group.centralizer(w)
    size = len(centralizer)
    words = torus_data.CENTRALIZER_WORDS.get(class_index)
    generators = centralizer.generators
    if words:
        published = [group.from_word(word) for word in words]
        span = group.closure(published, limit=size)
        if np.array_equal(span, centralizer.indices):
            generators = published
        else:
            logger.warning(f"[Split] Published generators of C_W(w) for class {class_index} "
                           f"span {len(span)} of {size} elements, using greedy ones")
    relations = torus_data.CENTRALIZER_RELATIONS.get(class_index)
    if relations and generators is not centralizer.generators:
        relators = [torus_data.relator_indices(text) for text in relations]
        holds = all(group.evaluate(generators, rel).is_identity for rel in relators)
        if holds and count_cosets(len(generators), relators, group.max_cosets) == size:
            return Presentation(list(generators), relators, size, True, "published")
        logger.warning(f"[Split] Published relations for class {class_index} do not present C_W(w)")
    reflections = group.reflection_presentation(w, size)
    if reflections is not None:
        return reflections
    return group.presentation(list(generators))


def centralizer_presentation(group: WeylGroup, class_index: int, w: WeylElement) -> Presentation:
    return _centralizer_presentation(group, class_index, group.index(w))


# --- building and solving section systems ---

class _AffineWord:
    """(K, c, y) standing for H(K x + c) L(y) as a function of the unknowns x."""

    def __init__(self, ctx: TorusContext, ys: Sequence[int]):
        self.ctx = ctx
        self.ys = list(ys)
        self.ncols = RANK * len(ys)
        self._inverse_tails: Dict[int, Tuple[np.ndarray, int]] = {}

    def _inverse_letter(self, i: int) -> Tuple[np.ndarray, int]:
        if i not in self._inverse_tails:
            tail = self.ctx.from_tits(self.ctx.group.canonical_lift(self.ys[i]).inverse())
            self._inverse_tails[i] = (tail.h.vector, tail.weyl)
        return self._inverse_tails[i]

    def expand(self, relator: Sequence[int]) -> Tuple[np.ndarray, np.ndarray, int]:
        ctx = self.ctx
        K = as_object(np.zeros((RANK, self.ncols), dtype=np.int64))
        c = as_object(np.zeros(RANK, dtype=np.int64))
        y = 0
        for g in relator:
            i = abs(g) - 1
            block = slice(RANK * i, RANK * (i + 1))
            a = ctx.matrix(y)
            if g > 0:
                K[:, block] = K[:, block] + a
                cg, yg = None, self.ys[i]
            else:
                cg, yg = self._inverse_letter(i)
                K[:, block] = K[:, block] - a.dot(ctx.matrix(yg))
            if cg is not None:
                c = c + a.dot(cg)
            c = (c + ctx.hvec(ctx.cocycle(y, yg))) % ctx.modulus
            y = ctx._mul_index(y, yg)
        return K % ctx.modulus, c, y


def build_section_system(ctx: TorusContext, problem: SectionProblem,
                         max_rows: Optional[int] = None) -> LinearSystemOverT:
    twist = problem.twist
    ys = [ctx.group.index(x) for x in problem.generators]
    ncols = RANK * len(ys)
    words = _AffineWord(ctx, ys)
    tw = twisted_matrix(twist.w, ctx.q)

    blocks: List[Tuple[np.ndarray, np.ndarray, str]] = []
    for i, y in enumerate(ys):
        rows = as_object(np.zeros((RANK, ncols), dtype=np.int64))
        rows[:, RANK * i:RANK * (i + 1)] = tw
        blocks.append((rows, -ctx.coset_offset(y, twist), f"N{i + 1} in N"))
    for rel in problem.relators:
        K, c, y = words.expand(rel)
        if y != 0:
            raise ValueError(f"Relator {_relator_text(rel)} has nontrivial Weyl part")
        blocks.append((K, -c, _relator_text(rel)))

    total_rows = RANK * len(blocks)
    if max_rows is not None and total_rows > max_rows:
        raise ResourceCapExceeded("linear system rows", max_rows, total_rows, {"class": twist.class_index})
    labels = [f"{label}[{j + 1}]" for _, _, label in blocks for j in range(RANK)]
    if not blocks:
        return LinearSystemOverT(as_object(np.zeros((0, ncols), dtype=np.int64)), as_object([]),
                                 ctx.modulus, len(ys), [])

    matrix = np.vstack([b[0] for b in blocks])
    rhs = np.concatenate([b[1] for b in blocks]) % ctx.modulus
    center_columns = 0
    if problem.mode == ADJOINT:
        z = ctx.center_element().vector
        if any(z):
            extra = as_object(np.zeros((total_rows, len(blocks)), dtype=np.int64))
            for b in range(len(blocks)):
                extra[RANK * b:RANK * (b + 1), b] = z
            matrix = np.hstack([matrix, extra])
            center_columns = len(blocks)
    return LinearSystemOverT(matrix % ctx.modulus, rhs, ctx.modulus, len(ys), labels, center_columns)


def witness_elements(ctx: TorusContext, problem: SectionProblem, system: LinearSystemOverT,
                     x: Sequence[int]) -> List[NormalizerElement]:
    return [ctx.element(ctx.torus(part), gen) for part, gen in zip(system.generator_parts(x), problem.generators)]


def evaluate_relator(ctx: TorusContext, elements: Sequence[NormalizerElement], relator: Sequence[int]) -> NormalizerElement:
    result = ctx.identity()
    for g in relator:
        e = elements[abs(g) - 1]
        result = ctx.multiply(result, e if g > 0 else ctx.inverse(e))
    return result


def _is_trivial(ctx: TorusContext, a: NormalizerElement, mode: str) -> bool:
    if a.weyl != 0:
        return False
    return a.h.is_identity if mode == SC else ctx.adjoint_equal(a.h, ctx.one)


def _is_member(ctx: TorusContext, a: NormalizerElement, twist: TwistData, mode: str) -> bool:
    if mode == SC:
        return ctx.in_normalizer(a, twist)
    image = ctx.twisted_frobenius(a, twist)
    return image.weyl == a.weyl and ctx.adjoint_equal(image.h, a.h)


def check_section(ctx: TorusContext, problem: SectionProblem, elements: Sequence[NormalizerElement]) -> None:
    """Re-check a solution by direct multiplication."""
    for i, e in enumerate(elements, start=1):
        if not _is_member(ctx, e, problem.twist, problem.mode):
            raise VerificationError(f"Witness N{i} is not in the normalizer", {"class": problem.twist.class_index})
    for rel in problem.relators:
        if not _is_trivial(ctx, evaluate_relator(ctx, elements, rel), problem.mode):
            raise VerificationError(f"Witness violates {_relator_text(rel)}", {"class": problem.twist.class_index})


# --- decisions ---

def _expected_split(table: BoundClassTable, class_index: int, q: int) -> bool:
    return table.rows[class_index - 1].splits(q)


def decide_complement(group: WeylGroup, table: BoundClassTable, class_index: int, q: int,
                      mode: str = SC, settings: Optional[Settings] = None) -> SplitDecision:
    settings = settings or get_settings()
    if mode not in (SC, ADJOINT):
        raise ValueError(f"Unknown mode {mode!r}")
    twist = make_twist(group, table, class_index, q)
    presentation = centralizer_presentation(group, class_index, twist.w)
    p, _ = split_prime_power(q)

    effective = mode
    shortcut = None
    if mode == ADJOINT and (q - 1) % 3:
        # gcd(3, q - 1) = 1: the isogeny is an isomorphism on F-points
        effective = SC
        shortcut = "adjoint equals simply connected"
    specs = [RootSpec(order=3)] if effective == ADJOINT else []

    problem = SectionProblem(twist, list(presentation.generators), list(presentation.relators), effective,
                             presentation.source)
    ctx = select_context(group, twist, problem.generators, specs, settings)
    system = build_section_system(ctx, problem, settings.MAX_SYSTEM_ROWS)
    expected = _expected_split(table, class_index, q)
    common = dict(
        class_index=class_index, q=q, mode=mode, expected=expected, ambient_k=ctx.field.k,
        presentation_source=presentation.source, num_generators=len(problem.generators),
        num_relators=len(problem.relators), system_shape=system.shape,
    )

    if p == 2:
        # h_r(-1) = 1, so the canonical lifts already form a copy of C_W(w)
        zero = [0] * system.shape[1]
        if not check_solution(system.matrix, system.rhs, zero, ctx.modulus):
            raise VerificationError(f"Canonical lifts fail for class {class_index} at even q={q}")
        witness = witness_elements(ctx, problem, system, zero)
        logger.info(f"[Split] Class {class_index}, q={q}, {mode}: splits (Tits group complement)")
        return SplitDecision(splits=True, witness=_witness_json(group, witness),
                             shortcut="even q: Tits group", **common)

    solution = solve_mod(system.matrix, system.rhs, ctx.modulus, settings.MAX_SYSTEM_ROWS)
    if solution.solvable:
        elements = witness_elements(ctx, problem, system, solution.x)
        check_section(ctx, problem, elements)
        logger.info(f"[Split] Class {class_index}, q={q}, {mode}: splits")
        return SplitDecision(splits=True, witness=_witness_json(group, elements), shortcut=shortcut, **common)

    if not check_certificate(system.matrix, system.rhs, solution.certificate, ctx.modulus):
        raise VerificationError(f"Bad unsolvability certificate for class {class_index}, q={q}")
    obstruction = None
    if class_index in torus_data.OBSTRUCTIONS:
        obstruction = obstruction_check(group, table, class_index, q, effective, settings, strict=False)
        if obstruction.solvable:
            raise VerificationError(
                f"Class {class_index}, q={q}: no complement, but the obstruction subsystem is solvable",
                {"class": class_index, "q": q, "mode": mode},
            )
    logger.info(f"[Split] Class {class_index}, q={q}, {mode}: no complement "
                f"(certificate at p={solution.failing_prime})")
    return SplitDecision(splits=False, certificate=solution.certificate, failing_prime=solution.failing_prime,
                         shortcut=shortcut, obstruction=obstruction, **common)


def _witness_json(group: WeylGroup, elements: Sequence[NormalizerElement]) -> List[dict]:
    return [{"weyl": group.element(e.weyl).word_str(), "torus": list(e.h.exps)} for e in elements]


def obstruction_check(group: WeylGroup, table: BoundClassTable, class_index: int, q: int,
                      mode: str = SC, settings: Optional[Settings] = None, strict: bool = True) -> ObstructionResult:
    """Solve the small subsystem used to rule out a complement; adjoint mode cubes it first.

    With strict, a verdict other than the expected one raises VerificationError.
    """
    settings = settings or get_settings()
    if q % 2 == 0:
        raise ValueError("Obstructions are stated for odd q")
    subsystem = torus_data.OBSTRUCTIONS.get(class_index)
    if subsystem is None:
        raise ValueError(f"Class {class_index} has no obstruction subsystem")
    expected_solvable = class_index == 14 and q % 4 == 1

    twist = make_twist(group, table, class_index, q)
    generators = [group.from_word(word) for word in subsystem.generators]
    relators = [torus_data.relator_indices(text) for text in subsystem.relations]
    problem = SectionProblem(twist, generators, relators, SC, "obstruction")
    ctx = select_context(group, twist, generators, settings=settings)
    system = build_section_system(ctx, problem, settings.MAX_SYSTEM_ROWS)
    if mode == ADJOINT:
        system = system.cube_reduced()
    solution = solve_mod(system.matrix, system.rhs, ctx.modulus, settings.MAX_SYSTEM_ROWS)

    result = ObstructionResult(
        class_index=class_index, q=q, mode=mode, solvable=solution.solvable, expected_solvable=expected_solvable,
        ambient_k=ctx.field.k, relations=list(subsystem.relations), certificate=solution.certificate,
    )
    if strict and not result.matches:
        raise VerificationError(
            f"Obstruction subsystem for class {class_index} at q={q} ({mode}) is "
            f"{'solvable' if solution.solvable else 'unsolvable'}",
            {"class": class_index, "q": q, "mode": mode},
        )
    if not solution.solvable and not check_certificate(system.matrix, system.rhs, solution.certificate, ctx.modulus):
        raise VerificationError(f"Bad certificate for the class {class_index} obstruction")
    logger.info(f"[Split] Obstruction for class {class_index}, q={q}, {mode}: solvable={solution.solvable}")
    return result


# --- explicit complements ---

def _generator_elements(ctx: TorusContext, construction: torus_data.Construction,
                        q: int) -> Tuple[List[NormalizerElement], List[Optional[TorusElement]]]:
    exps = construction.root_exponents(q, lambda spec: root_exponent(ctx.field, spec), ctx.half)
    elements, tori = [], []
    for gen in construction.generators:
        coords = construction.coordinates(gen, q, exps, ctx.half, ctx.modulus)
        h = ctx.torus(coords) if coords is not None else None
        tori.append(h)
        elements.append(ctx.lift(h, gen.word))
    return elements, tori


def closure(ctx: TorusContext, generators: Sequence[NormalizerElement], limit: int) -> Dict[tuple, NormalizerElement]:
    """Breadth-first closure under right multiplication; raises once more than limit elements appear."""
    start = ctx.identity()
    seen = {start.key: start}
    queue = deque([start])
    while queue:
        a = queue.popleft()
        for g in generators:
            b = ctx.multiply(a, g)
            if b.key not in seen:
                seen[b.key] = b
                if len(seen) > limit:
                    raise ResourceCapExceeded("complement closure", limit, len(seen))
                queue.append(b)
    return seen


def _construction_relators(group: WeylGroup, construction: torus_data.Construction,
                           elements: Sequence[NormalizerElement]) -> List[Tuple[str, Relator]]:
    if construction.relations:
        return [(text, torus_data.relator_indices(text)) for text in construction.relations]
    images = [group.element(e.weyl) for e in elements]
    presentation = group.presentation(images)
    return [(_relator_text(rel), rel) for rel in presentation.relators]


def verify_complement(group: WeylGroup, table: BoundClassTable, class_index: int, q: int,
                      settings: Optional[Settings] = None) -> CheckReport:
    settings = settings or get_settings()
    construction = torus_data.construction(class_index)
    if construction is None or not construction.applies(q) or q % 2 == 0:
        raise ValueError(f"No explicit complement for class {class_index} at q={q}")
    twist = make_twist(group, table, class_index, q)
    specs = construction.specs(q)
    k = ambient_degree(q, specs, twist.w.order(), settings.MAX_FIELD_SIZE)
    ctx = context_at(group, q, k, settings.MAX_FIELD_SIZE)
    elements, tori = _generator_elements(ctx, construction, q)
    report = CheckReport(class_index=class_index, q=q, ambient_k=k)

    for gen, element, h in zip(construction.generators, elements, tori):
        member = ctx.in_normalizer(element, twist)
        criterion = ctx.normalizer_membership(h if h is not None else ctx.one, gen.word, twist)
        report.checks[f"{gen.name} in N"] = member and criterion

    for text, rel in _construction_relators(group, construction, elements):
        report.checks[text] = evaluate_relator(ctx, elements, rel) == ctx.identity()

    centralizer = group.centralizer(twist.w)
    size = len(centralizer)
    try:
        span = closure(ctx, elements, size)
    except ResourceCapExceeded:
        report.checks["|K| = |C_W(w)|"] = False
        report.details["closure"] = f"more than {size} elements"
        return report
    images = sorted({e.weyl for e in span.values()})
    report.checks["|K| = |C_W(w)|"] = len(span) == size
    report.checks["K maps onto C_W(w)"] = images == sorted(int(i) for i in centralizer.indices)
    report.checks["K meets T trivially"] = sum(1 for e in span.values() if e.weyl == 0) == 1
    order = torus_order(twist.w, q)
    report.details.update({"order": len(span), "torus_order": order, "torus_order_odd": order % 2 == 1})
    logger.info(f"[Split] Complement for class {class_index}, q={q}: |K| = {len(span)}, ok={report.ok}")
    return report


# --- lifts ---

def _generic_lift(ctx: TorusContext, twist: TwistData, m: int) -> Optional[NormalizerElement]:
    """Solve H L(w) in N with (H L(w))^m = 1; least solution or None."""
    wi = ctx.group.index(twist.w)
    tail = ctx.from_tits(ctx.group.canonical_lift(wi) ** m)
    if tail.weyl != 0:
        raise ValueError(f"w^{m} is not trivial")
    matrix = np.vstack([twisted_matrix(twist.w, ctx.q), ctx.exponent_sum_matrix(wi, m)])
    rhs = np.concatenate([-ctx.coset_offset(wi, twist), -tail.h.vector]) % ctx.modulus
    solution = solve_mod(matrix % ctx.modulus, rhs, ctx.modulus)
    if not solution.solvable:
        return None
    return ctx.element(ctx.torus(solution.x), wi)


def minimal_lift_order(group: WeylGroup, table: BoundClassTable, class_index: int, q: int,
                       settings: Optional[Settings] = None) -> int:
    twist = make_twist(group, table, class_index, q)
    ctx = select_context(group, twist, [twist.w], settings=settings)
    d = twist.w.order()
    for m in (d, 2 * d):
        lift = _generic_lift(ctx, twist, m)
        if lift is not None and ctx.in_normalizer(lift, twist):
            return m
    raise VerificationError(f"No lift of order {d} or {2 * d} for class {class_index} at q={q}")


def _published_lift(group: WeylGroup, ctx: TorusContext, twist: TwistData, q: int) -> Tuple[str, NormalizerElement]:
    index = twist.class_index
    if q % 2 == 0 or index in torus_data.BARE_LIFTS:
        return "bare n", ctx.from_tits(twist.n)
    lift = torus_data.lift_construction(index)
    if lift is not None:
        elements, _ = _generator_elements(ctx, lift, q)
        return f"H1 {lift.generators[0].word}", elements[0]
    construction = torus_data.construction(index)
    if construction is None or not construction.applies(q):
        return "bare n", ctx.from_tits(twist.n)
    elements, _ = _generator_elements(ctx, construction, q)
    wi = group.index(twist.w)
    for e in closure(ctx, elements, len(group.centralizer(twist.w))).values():
        if e.weyl == wi:
            return "complement element", e
    raise VerificationError(f"Complement for class {index} has no element over w")


def verify_lift(group: WeylGroup, table: BoundClassTable, class_index: int, q: int,
                settings: Optional[Settings] = None) -> CheckReport:
    settings = settings or get_settings()
    twist = make_twist(group, table, class_index, q)
    d = twist.w.order()
    specs: List[RootSpec] = []
    if q % 2:
        for c in (torus_data.lift_construction(class_index), torus_data.construction(class_index)):
            if c is not None and c.applies(q):
                specs.extend(c.specs(q))
    k = ambient_degree(q, specs, d, settings.MAX_FIELD_SIZE)
    ctx = context_at(group, q, k, settings.MAX_FIELD_SIZE)
    report = CheckReport(class_index=class_index, q=q, ambient_k=k)

    kind, lift = _published_lift(group, ctx, twist, q)
    report.checks["published lift in N"] = ctx.in_normalizer(lift, twist)
    report.checks["published lift has order |w|"] = ctx.order(lift) == d
    report.details["published"] = kind

    generic = _generic_lift(ctx, twist, d)
    report.checks["generic lift exists"] = generic is not None
    if generic is not None:
        report.checks["generic lift in N"] = ctx.in_normalizer(generic, twist)
        report.checks["generic lift has order |w|"] = ctx.order(generic) == d
        report.details["generic_torus"] = list(generic.h.exps)
    bare = twist.n.order()
    report.details.update({"order_w": d, "order_n": bare, "n_has_order_w": ctx.order(ctx.from_tits(twist.n)) == d})
    logger.info(f"[Split] Lift for class {class_index}, q={q} ({kind}): ok={report.ok}")
    return report


# --- brute force oracle ---

def brute_force_section(ctx: TorusContext, problem: SectionProblem,
                        max_nodes: int = 10**6) -> Optional[List[NormalizerElement]]:
    """Backtracking search over lifts P_i + T; a relator is tested once all its letters are assigned."""
    if problem.mode != SC:
        raise ValueError("Brute force runs in simply connected mode only")
    twist = problem.twist
    torus = enumerate_torus(ctx.structure(twist.w), max_nodes)
    candidates = []
    for x in problem.generators:
        base = coset_particular_solution(ctx, x, twist)
        candidates.append([ctx.element(base * t, x) for t in torus])

    g = len(problem.generators)
    ready: List[List[Relator]] = [[] for _ in range(g)]
    for rel in problem.relators:
        ready[max(abs(s) for s in rel) - 1 if rel else 0].append(rel)

    nodes = 0
    chosen: List[Optional[NormalizerElement]] = [None] * g

    def search(i: int) -> bool:
        nonlocal nodes
        if i == g:
            return True
        for cand in candidates[i]:
            nodes += 1
            if nodes > max_nodes:
                raise ResourceCapExceeded("brute force section search", max_nodes, nodes)
            chosen[i] = cand
            if all(evaluate_relator(ctx, chosen, rel) == ctx.identity() for rel in ready[i]) and search(i + 1):
                return True
        chosen[i] = None
        return False

    if not search(0):
        return None
    return list(chosen)
