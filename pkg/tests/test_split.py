import numpy as np
import pytest

import split
import torus_data
from class_table import ROWS
from exceptions import ResourceCapExceeded, VerificationError
from lattice import as_object, solve_mod
from split import (
    ADJOINT,
    SC,
    CheckReport,
    LinearSystemOverT,
    SectionProblem,
    brute_force_section,
    build_section_system,
    check_section,
    decide_complement,
    select_context,
    witness_elements,
)


@pytest.fixture(scope="module")
def group(weyl_group):
    return weyl_group


def _problem(group, class_table, class_index, q, words, relations):
    twist = split.make_twist(group, class_table, class_index, q)
    generators = [group.from_word(w) if isinstance(w, str) else w for w in words]
    relators = [torus_data.relator_indices(text) for text in relations]
    return SectionProblem(twist, generators, relators, SC, "test")


def _solve(ctx, problem):
    system = build_section_system(ctx, problem)
    return system, solve_mod(system.matrix, system.rhs, ctx.modulus)


# --- decisions ---

@pytest.mark.parametrize("r", ROWS, ids=lambda r: f"class{r.index}")
def test_decide_matches_table_at_q3(group, class_table, test_settings, r):
    decision = decide_complement(group, class_table, r.index, 3, SC, test_settings)
    assert decision.matches, decision.model_dump(mode="json", by_alias=True)
    if decision.splits:
        assert len(decision.witness) == decision.num_generators
        assert decision.certificate is None
    else:
        assert decision.certificate is not None
        assert decision.failing_prime is not None


@pytest.mark.parametrize("class_index, splits", [(2, False), (4, True), (14, True), (24, True)])
def test_decide_at_q5(group, class_table, test_settings, class_index, splits):
    decision = decide_complement(group, class_table, class_index, 5, SC, test_settings)
    assert decision.splits is splits
    assert decision.matches


def test_non_split_verdict_carries_obstruction(group, class_table, test_settings):
    decision = decide_complement(group, class_table, 7, 3, SC, test_settings)
    assert not decision.splits
    assert decision.obstruction is not None
    assert not decision.obstruction.solvable
    assert decision.obstruction.certificate
    dumped = decision.model_dump(mode="json", by_alias=True)
    assert dumped["obstruction"]["class"] == 7
    assert dumped["generators"] == decision.num_generators


def test_split_verdict_skips_obstruction(group, class_table, test_settings):
    decision = decide_complement(group, class_table, 24, 3, SC, test_settings)
    assert decision.splits
    assert decision.obstruction is None


def test_obstruction_disagreement_raises(group, class_table, test_settings, monkeypatch):
    real = split.obstruction_check

    def solvable(*args, **kwargs):
        result = real(*args, **kwargs)
        return result.model_copy(update={"solvable": True, "certificate": None})

    monkeypatch.setattr(split, "obstruction_check", solvable)
    with pytest.raises(VerificationError):
        decide_complement(group, class_table, 7, 3, SC, test_settings)


def test_obstruction_check_without_strict_reports_mismatch(group, class_table, test_settings):
    # class 14 at q = 5 splits; pretend the subsystem should have no solution there
    result = split.obstruction_check(group, class_table, 14, 5, SC, test_settings, strict=False)
    assert result.matches
    flipped = result.model_copy(update={"expected_solvable": False})
    assert not flipped.matches


def test_class_14_depends_on_q_mod_4(group, class_table, test_settings):
    assert not decide_complement(group, class_table, 14, 3, SC, test_settings).splits
    assert decide_complement(group, class_table, 14, 5, SC, test_settings).splits


@pytest.mark.parametrize("class_index", [2, 4, 24])
def test_adjoint_mode_at_q7(group, class_table, test_settings, class_index):
    """q = 7 has cube roots of unity, so the center is nontrivial."""
    decision = decide_complement(group, class_table, class_index, 7, ADJOINT, test_settings)
    assert decision.shortcut is None
    assert decision.matches, decision.model_dump(mode="json", by_alias=True)


def test_adjoint_shortcut_without_cube_roots(group, class_table, test_settings):
    decision = decide_complement(group, class_table, 7, 5, ADJOINT, test_settings)
    assert decision.shortcut == "adjoint equals simply connected"
    assert decision.mode == ADJOINT
    assert decision.matches


def test_even_q_uses_tits_group(group, class_table, test_settings):
    decision = decide_complement(group, class_table, 1, 2, SC, test_settings)
    assert decision.splits and decision.expected
    assert decision.shortcut == "even q: Tits group"
    assert decision.model_dump(mode="json", by_alias=True)["class"] == 1


def test_unknown_mode(group, class_table, test_settings):
    with pytest.raises(ValueError):
        decide_complement(group, class_table, 7, 3, "projective", test_settings)


def test_centralizer_presentations(group, class_table):
    coxeter = split.centralizer_presentation(group, 1, class_table.representative(1))
    assert coxeter.source == "coxeter"
    assert len(coxeter.generators) == 6
    for index in (7, 14, 21, 24):
        w = class_table.representative(index)
        presentation = split.centralizer_presentation(group, index, w)
        assert presentation.order == class_table.rows[index - 1].centralizer_order
        for gen in presentation.generators:
            assert gen * w == w * gen


def test_class_2_system_stays_under_row_cap(group, class_table, test_settings):
    presentation = split.centralizer_presentation(group, 2, class_table.representative(2))
    assert presentation.source == "reflections"
    decision = decide_complement(group, class_table, 2, 3, SC, test_settings)
    assert decision.system_shape[0] <= test_settings.MAX_SYSTEM_ROWS
    assert decision.num_relators == 21
    assert decision.matches, decision.model_dump(mode="json", by_alias=True)


# --- obstructions ---

@pytest.mark.parametrize("class_index", sorted(torus_data.OBSTRUCTIONS))
def test_obstructions_at_q3(group, class_table, test_settings, class_index):
    result = split.obstruction_check(group, class_table, class_index, 3, SC, test_settings)
    assert not result.solvable
    assert result.certificate is not None


def test_class_14_obstruction_vanishes_at_q5(group, class_table, test_settings):
    result = split.obstruction_check(group, class_table, 14, 5, SC, test_settings)
    assert result.solvable and result.expected_solvable


def test_obstruction_survives_cubing(group, class_table, test_settings):
    result = split.obstruction_check(group, class_table, 7, 7, ADJOINT, test_settings)
    assert not result.solvable
    assert result.model_dump(mode="json", by_alias=True)["mode"] == ADJOINT


def test_obstruction_rejects_even_q_and_unknown_class(group, class_table, test_settings):
    with pytest.raises(ValueError):
        split.obstruction_check(group, class_table, 7, 4, SC, test_settings)
    with pytest.raises(ValueError):
        split.obstruction_check(group, class_table, 24, 3, SC, test_settings)


# --- explicit constructions ---

@pytest.mark.parametrize("class_index", sorted(torus_data.COMPLEMENTS))
def test_explicit_complements(group, class_table, test_settings, class_index):
    q = 5 if class_index == 14 else 3
    report = split.verify_complement(group, class_table, class_index, q, test_settings)
    assert report.ok, report.failures
    assert report.details["order"] == class_table.rows[class_index - 1].centralizer_order


def test_complement_needs_applicable_q(group, class_table, test_settings):
    with pytest.raises(ValueError):
        split.verify_complement(group, class_table, 14, 3, test_settings)
    with pytest.raises(ValueError):
        split.verify_complement(group, class_table, 1, 3, test_settings)


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("r", ROWS, ids=lambda r: f"class{r.index}")
def test_lifts(group, class_table, test_settings, r, q):
    report = split.verify_lift(group, class_table, r.index, q, test_settings)
    assert report.ok, report.failures


@pytest.mark.parametrize("class_index", [1, 7, 14, 19, 24])
def test_minimal_lift_order_is_order_of_w(group, class_table, test_settings, class_index):
    order = split.minimal_lift_order(group, class_table, class_index, 3, test_settings)
    assert order == class_table.rows[class_index - 1].order


def test_closure_cap(group):
    ctx = split.context_at(group, 3, 1, 2**32)
    generators = [ctx.from_tits(group.tits.word("n1")), ctx.from_tits(group.tits.word("n2"))]
    with pytest.raises(ResourceCapExceeded):
        split.closure(ctx, generators, 3)
    # r1 and r2 are orthogonal: n1, n2 commute, each of order 4 with n_i^2 = h_i(-1)
    assert len(split.closure(ctx, generators, 10**4)) == 16


# --- brute force oracle ---

def test_brute_force_finds_cyclic_complement(group, class_table, test_settings):
    w = class_table.representative(24)
    problem = _problem(group, class_table, 24, 3, [w], ["N1^9"])
    ctx = select_context(group, problem.twist, problem.generators, settings=test_settings)
    system, solution = _solve(ctx, problem)
    found = brute_force_section(ctx, problem)
    assert solution.solvable
    assert found is not None
    check_section(ctx, problem, found)
    check_section(ctx, problem, witness_elements(ctx, problem, system, solution.x))


def test_brute_force_in_characteristic_2(group, class_table, test_settings):
    w = class_table.representative(24)
    problem = _problem(group, class_table, 24, 2, [w], ["N1^9"])
    ctx = select_context(group, problem.twist, problem.generators, settings=test_settings)
    _, solution = _solve(ctx, problem)
    assert solution.solvable
    assert brute_force_section(ctx, problem) is not None


def test_brute_force_agrees_on_obstruction(group, class_table, test_settings):
    subsystem = torus_data.OBSTRUCTIONS[7]
    problem = _problem(group, class_table, 7, 3, subsystem.generators, subsystem.relations)
    ctx = select_context(group, problem.twist, problem.generators, settings=test_settings)
    _, solution = _solve(ctx, problem)
    assert not solution.solvable
    assert brute_force_section(ctx, problem) is None


def test_brute_force_node_cap(group, class_table, test_settings):
    subsystem = torus_data.OBSTRUCTIONS[7]
    problem = _problem(group, class_table, 7, 3, subsystem.generators, subsystem.relations)
    ctx = select_context(group, problem.twist, problem.generators, settings=test_settings)
    with pytest.raises(ResourceCapExceeded):
        brute_force_section(ctx, problem, max_nodes=100)


def test_brute_force_is_simply_connected_only(group, class_table, test_settings):
    problem = _problem(group, class_table, 24, 3, [class_table.representative(24)], ["N1^9"])
    problem.mode = ADJOINT
    ctx = select_context(group, problem.twist, problem.generators, settings=test_settings)
    with pytest.raises(ValueError):
        brute_force_section(ctx, problem)


def test_check_section_rejects_a_bad_witness(group, class_table, test_settings):
    w = class_table.representative(24)
    problem = _problem(group, class_table, 24, 3, [w], ["N1^9"])
    ctx = select_context(group, problem.twist, problem.generators, settings=test_settings)
    system, solution = _solve(ctx, problem)
    good = witness_elements(ctx, problem, system, solution.x)
    shifted = ctx.multiply(ctx.element(ctx.torus([1, 0, 0, 0, 0, 0])), good[0])
    with pytest.raises(VerificationError):
        check_section(ctx, problem, [shifted])


# --- value types ---

def test_cube_reduced_system():
    system = LinearSystemOverT(as_object(np.arange(12).reshape(1, 12)), as_object([5]), 12, 2, ["r"])
    cubed = system.cube_reduced()
    assert cubed.matrix.tolist() == [[3 * i % 12 for i in range(12)]]
    assert cubed.rhs.tolist() == [3]
    assert cubed.shape == (1, 12)
    assert system.generator_parts(list(range(12))) == [[0, 1, 2, 3, 4, 5], [6, 7, 8, 9, 10, 11]]


def test_check_report():
    report = CheckReport(class_index=7, q=3, ambient_k=4, checks={"N1 in N": True, "N1^2": False})
    assert not report.ok
    assert report.failures == ["N1^2"]
    assert report.model_dump(mode="json", by_alias=True)["ok"] is False
    with pytest.raises(VerificationError):
        report.assert_ok()
    CheckReport(class_index=7, q=3, ambient_k=4, checks={"N1 in N": True}).assert_ok()


def test_reports_dump_numpy_values():
    report = CheckReport(class_index=4, q=3, ambient_k=3)
    report.checks["N1 in N"] = np.bool_(True)
    report.details["generic_torus"] = [np.int64(2), np.int64(0)]
    dumped = report.model_dump(mode="json", by_alias=True)
    assert dumped == {"class": 4, "q": 3, "ambient_k": 3, "ok": True,
                      "checks": {"N1 in N": True}, "details": {"generic_torus": [2, 0]}}

    decision = split.SplitDecision(
        class_index=7, q=3, mode=SC, splits=False, expected=False, ambient_k=4, presentation_source="published",
        num_generators=3, num_relators=5, system_shape=np.zeros((30, 18)).shape,
        certificate=np.array([1, 0, 2], dtype=object), failing_prime=np.int64(2),
    )
    dumped = decision.model_dump(mode="json", by_alias=True)
    assert dumped["certificate"] == [1, 0, 2]
    assert dumped["system_shape"] == [30, 18]
    assert dumped["presentation"] == "published"
    assert dumped["failing_prime"] == 2
