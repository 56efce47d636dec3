"""
The reproducibility suite: plans one scenario per exercised cell, runs
them on a bounded worker pool and assembles a deterministic report.
"""
import asyncio
import logging
import time
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, NamedTuple, Optional


import split
import torus_data
from class_table import class_equation_holds, invariant_factors
from config import Settings
from dependencies import (
    get_class_table_dep,
    get_health_monitor_dep,
    get_root_system_dep,
    get_structure_constants_dep,
    get_tits_group_dep,
    get_weyl_group_dep,
    warm_up,
)
from exceptions import E6Error, ResourceCapExceeded, VerificationError
from liealg import identity
from models import Report, ScenarioRecord, Status, jsonable
from rootsys import PUBLISHED_EXTRASPECIAL, check_structure_constants, special_and_extraspecial_pairs
from torusnorm import torus_order, torus_structure
from weyl import W_ORDER, centralizer_profile, matches_structure_label

logger = logging.getLogger(__name__)


class Outcome(NamedTuple):
    passed: bool
    expected: Any = None
    observed: Any = None
    detail: Dict[str, Any] = {}


@dataclass
class Scenario:
    check: str
    run: Callable[[], Outcome]
    class_index: Optional[int] = None
    q: Optional[int] = None
    mode: Optional[str] = None


# --- individual checks ---

def golden_check() -> Outcome:
    rs = get_root_system_dep()
    table = get_structure_constants_dep()
    check_structure_constants(rs, table)
    _, extra = special_and_extraspecial_pairs(rs)
    n24 = table.n(rs.root(2), rs.root(4))
    observed = sorted(extra)
    expected = sorted(PUBLISHED_EXTRASPECIAL)
    detail = {"orientation": rs.orientation, "extraspecial": len(extra), "N_2_4": n24}
    return Outcome(observed == expected and n24 == 1, [list(p) for p in expected], [list(p) for p in observed], detail)


def weyl_global_check() -> Outcome:
    group = get_weyl_group_dep()
    labels = group.conjugacy_labels()
    observed = {"order": len(group), "classes": len(set(labels.tolist())), "class_equation": class_equation_holds()}
    expected = {"order": W_ORDER, "classes": 25, "class_equation": True}
    return Outcome(observed == expected, expected, observed)


def weyl_class_check(class_index: int) -> Outcome:
    group = get_weyl_group_dep()
    table = get_class_table_dep()
    row = table.rows[class_index - 1]
    w = table.representative(class_index)
    profile = centralizer_profile(group, w)
    label_ok, reason = matches_structure_label(profile, row)
    expected = {"order": row.order, "centralizer_order": row.centralizer_order}
    observed = {"order": w.order(), "centralizer_order": profile.order}
    return Outcome(expected == observed and label_ok, expected, observed,
                   {"structure": row.structure, "label": reason})


def tits_check() -> Outcome:
    tits = get_tits_group_dep()
    failing = []
    identities = torus_data.parsed_identities()
    for text, _ in identities:
        value = torus_data.evaluate_relation(text, tits.word, lambda a, b: a * b, lambda a: a.inverse(), identity())
        if not value.is_identity:
            failing.append(text)
    return Outcome(not failing, [], failing, {"identities": len(identities)})


def order_check(class_index: int, q: int) -> Outcome:
    table = get_class_table_dep()
    row = table.rows[class_index - 1]
    w = table.representative(class_index)
    expected, observed = row.torus_order(q), torus_order(w, q)
    detail: Dict[str, Any] = {}
    passed = expected == observed
    if row.torus_structure_checked:
        printed = invariant_factors(row.torus_cyclic_factors(q))
        computed = torus_structure(w, q).nontrivial_factors
        detail = {"printed_factors": printed, "invariant_factors": computed}
        passed = passed and printed == computed
    return Outcome(passed, expected, observed, detail)


def lift_check(class_index: int, q: int, settings: Settings) -> Outcome:
    report = split.verify_lift(get_weyl_group_dep(), get_class_table_dep(), class_index, q, settings)
    return Outcome(report.ok, True, report.ok, report.model_dump(mode="json", by_alias=True))


def decide_check(class_index: int, q: int, mode: str, settings: Settings) -> Outcome:
    decision = split.decide_complement(get_weyl_group_dep(), get_class_table_dep(), class_index, q, mode, settings)
    detail = decision.model_dump(mode="json", by_alias=True)
    return Outcome(decision.matches, decision.expected, decision.splits, detail)


def complement_check(class_index: int, q: int, settings: Settings) -> Outcome:
    report = split.verify_complement(get_weyl_group_dep(), get_class_table_dep(), class_index, q, settings)
    return Outcome(report.ok, True, report.ok, report.model_dump(mode="json", by_alias=True))


def obstruction_check(class_index: int, q: int, mode: str, settings: Settings) -> Outcome:
    result = split.obstruction_check(get_weyl_group_dep(), get_class_table_dep(), class_index, q, mode, settings,
                                     strict=False)
    return Outcome(result.matches, result.expected_solvable, result.solvable,
                   result.model_dump(mode="json", by_alias=True))


# --- planning ---

def plan(settings: Settings) -> List[Scenario]:
    """Scenarios in report order; every cell appears once."""
    classes = sorted(set(settings.CLASSES))
    if not classes:
        return []
    qs = sorted(set(settings.Q_VALUES))
    odd_qs = [q for q in qs if q % 2]
    modes = list(dict.fromkeys(settings.MODES))
    checks = set(settings.CHECKS)
    out: List[Scenario] = []

    if "golden" in checks:
        out.append(Scenario("golden", golden_check))
    if "weyl" in checks:
        out.append(Scenario("weyl", weyl_global_check))
        out.extend(Scenario("weyl", lambda c=c: weyl_class_check(c), c) for c in classes)
    if "tits" in checks:
        out.append(Scenario("tits", tits_check))
    if "orders" in checks:
        order_qs = sorted(set(settings.ORDER_CHECK_Q) | set(qs))
        out.extend(Scenario("orders", lambda c=c, q=q: order_check(c, q), c, q) for c in classes for q in order_qs)
    if "lifts" in checks:
        out.extend(Scenario("lifts", lambda c=c, q=q: lift_check(c, q, settings), c, q) for c in classes for q in qs)
    if "decide" in checks:
        out.extend(
            Scenario("decide", lambda c=c, q=q, m=m: decide_check(c, q, m, settings), c, q, m)
            for c in classes for q in qs for m in modes
        )
    if "complements" in checks:
        for c in classes:
            construction = torus_data.construction(c)
            if construction is None:
                continue
            out.extend(
                Scenario("complements", lambda c=c, q=q: complement_check(c, q, settings), c, q)
                for q in odd_qs if construction.applies(q)
            )
    if "obstructions" in checks:
        out.extend(
            Scenario("obstructions", lambda c=c, q=q, m=m: obstruction_check(c, q, m, settings), c, q, m)
            for c in classes if c in torus_data.OBSTRUCTIONS
            for q in odd_qs for m in modes
        )
    return out


# --- running ---

def run_scenario(scenario: Scenario, settings: Settings) -> ScenarioRecord:
    """Run one scenario and map its outcome or exception to a status."""
    monitor = get_health_monitor_dep()
    started = time.perf_counter()
    expected = observed = None
    detail: Dict[str, Any] = {}
    try:
        monitor.check_memory(settings.MAX_MEMORY_MB)
        outcome = scenario.run()
        status = Status.PASS if outcome.passed else Status.MISMATCH
        expected, observed, detail = outcome.expected, outcome.observed, dict(outcome.detail)
    except ResourceCapExceeded as e:
        status = Status.SKIPPED
        detail = {"reason": str(e), "what": e.what, "limit": e.limit, "requested": e.requested}
        logger.warning(f"[Suite] Skipped {scenario.check} class={scenario.class_index} q={scenario.q}: {e}")
    except VerificationError as e:
        status = Status.MISMATCH
        detail = {"reason": str(e), **e.context}
        logger.warning(f"[Suite] Mismatch in {scenario.check} class={scenario.class_index} q={scenario.q}: {e}")
    except E6Error as e:
        status = Status.ERROR
        detail = {"reason": f"{type(e).__name__}: {e}", **e.context}
        logger.error(f"[Suite] {scenario.check} class={scenario.class_index} q={scenario.q} failed: {e}",
                     exc_info=True)
        monitor.record_error()
    except Exception as e:
        status = Status.ERROR
        detail = {"reason": f"{type(e).__name__}: {e}"}
        logger.error(f"[Suite] Unexpected error in {scenario.check} class={scenario.class_index} "
                     f"q={scenario.q}: {e}", exc_info=True)
        monitor.record_error()
    monitor.record_scenario(status)
    elapsed = round((time.perf_counter() - started) * 1000, 3) if settings.INCLUDE_TIMINGS else None
    return ScenarioRecord(
        check=scenario.check,
        class_index=scenario.class_index,
        q=scenario.q,
        mode=scenario.mode,
        status=status,
        expected=jsonable(expected),
        observed=jsonable(observed),
        detail=jsonable(detail),
        elapsed_ms=elapsed,
    )


async def run_suite(settings: Settings) -> Report:
    scenarios = plan(settings)
    logger.info(f"[Suite] Planned {len(scenarios)} scenarios with {settings.WORKERS} workers")
    config = settings.model_dump(mode="json", exclude={"LOG_LEVEL", "OUTPUT_PATH", "WORKERS"})
    if not scenarios:
        return Report.build(config, [])

    loop = asyncio.get_running_loop()
    # tables are read-only once built
    await loop.run_in_executor(None, warm_up)
    semaphore = asyncio.Semaphore(settings.WORKERS)

    async def bounded(scenario: Scenario) -> ScenarioRecord:
        async with semaphore:
            return await loop.run_in_executor(None, run_scenario, scenario, settings)

    records = await asyncio.gather(*(bounded(s) for s in scenarios))
    report = Report.build(config, list(records))
    counts = {s.value: n for s, n in report.summary.counts.items() if n}
    logger.info(f"[Suite] Finished: {counts}, verdict {report.summary.verdict.value}")
    return report
