import numpy as np
import pytest

from exceptions import FieldError, NotInCentralizerError, ResourceCapExceeded
from class_table import ROWS
from split import context_at, make_twist
from torusnorm import enumerate_torus, torus_order, torus_structure, twisted_matrix

Q = 3


@pytest.fixture(scope="module")
def twist7(weyl_group, class_table):
    return make_twist(weyl_group, class_table, 7, Q)


@pytest.fixture(scope="module")
def ctx(weyl_group, twist7):
    """Class 7 (|w| = 4) over F_81."""
    return context_at(weyl_group, Q, 4, 2**32)


@pytest.fixture(scope="module")
def rng():
    return np.random.default_rng(2024)


def _random_element(ctx, rng):
    h = ctx.torus(rng.integers(0, ctx.modulus, 6))
    return ctx.element(h, int(rng.integers(0, len(ctx.group))))


def test_context(ctx):
    assert ctx.modulus == 80
    assert ctx.half == 40
    assert repr(ctx) == "TorusContext(q=3, k=4, M=80)"


def test_group_laws(ctx, rng):
    one = ctx.identity()
    for _ in range(50):
        a, b, c = (_random_element(ctx, rng) for _ in range(3))
        assert ctx.multiply(ctx.multiply(a, b), c) == ctx.multiply(a, ctx.multiply(b, c))
        assert ctx.multiply(a, one) == a == ctx.multiply(one, a)
        assert ctx.multiply(a, ctx.inverse(a)) == one
        assert ctx.multiply(ctx.inverse(a), a) == one


def test_act_is_an_action(ctx, rng):
    for _ in range(30):
        y1, y2 = (int(i) for i in rng.integers(0, len(ctx.group), 2))
        h = ctx.torus(rng.integers(0, ctx.modulus, 6))
        y12 = ctx._mul_index(y1, y2)
        assert ctx.act(y1, ctx.act(y2, h)) == ctx.act(y12, h)


def test_act_agrees_with_conjugation(ctx, rng):
    for _ in range(20):
        a = _random_element(ctx, rng)
        h = ctx.element(ctx.torus(rng.integers(0, ctx.modulus, 6)))
        conj = ctx.conjugate(h, a)
        assert conj.weyl == 0
        assert conj.h == ctx.act(a.weyl, h.h)


def test_power_matches_repeated_multiplication(ctx, rng):
    for _ in range(20):
        a = _random_element(ctx, rng)
        m = int(rng.integers(0, 8))
        expected = ctx.identity()
        for _ in range(m):
            expected = ctx.multiply(expected, a)
        assert ctx.power(a, m) == expected
    a = _random_element(ctx, rng)
    assert ctx.power(a, -3) == ctx.inverse(ctx.power(a, 3))


def test_from_tits_is_a_homomorphism(ctx, tits):
    words = ["n1n3", "h2n7n19", "n36n4", "h1h6", "n3n2n4n14"]
    for u in words:
        for v in words:
            lhs = ctx.from_tits(tits.word(u) * tits.word(v))
            assert lhs == ctx.multiply(ctx.from_tits(tits.word(u)), ctx.from_tits(tits.word(v)))


def test_tits_orders_are_preserved_in_odd_characteristic(ctx, tits):
    for word in ("n1", "n1n3n4", "n19n26", "n6n19n26"):
        m = tits.word(word)
        assert ctx.order(ctx.from_tits(m)) == m.order()


def test_commutator_criterion(ctx, tits, rng):
    pairs = [("n1", "n6"), ("n1", "n3"), ("n1n3n4", "n36"), ("n19n26", "n6n19n26")]
    for u1, u2 in pairs:
        for _ in range(5):
            h1 = ctx.torus(rng.integers(0, 2, 6) * ctx.half)
            h2 = ctx.torus(rng.integers(0, 2, 6) * ctx.half)
            direct = ctx.commutator(ctx.lift(h1, u1), ctx.lift(h2, u2)) == ctx.identity()
            assert ctx.commutator_criterion(h1, u1, h2, u2) == direct


def test_finite_torus(ctx, twist7):
    structure = torus_structure(twist7.w, Q, ctx)
    assert structure.order == torus_order(twist7.w, Q) == 4 * 80
    elements = enumerate_torus(structure, 10**4)
    assert len({t.exps for t in elements}) == structure.order
    for t in elements[::7]:
        assert ctx.torus_membership(t, twist7)
        assert ctx.in_normalizer(ctx.element(t), twist7)
    with pytest.raises(ResourceCapExceeded):
        enumerate_torus(structure, 100)


def test_twisted_matrix_kernel(ctx, twist7):
    structure = ctx.structure(twist7.w)
    m = twisted_matrix(twist7.w, Q)
    for g in structure.generators:
        assert (m.dot(g.vector) % ctx.modulus == 0).all()


def test_twisting_element_lies_in_normalizer(ctx, twist7):
    n = ctx.twist_element(twist7)
    assert ctx.in_normalizer(n, twist7)
    assert ctx.twisted_frobenius(n, twist7) == n


def test_normalizer_membership_matches_definition(ctx, twist7, weyl_group, rng):
    centralizer = weyl_group.centralizer(twist7.w)
    for gen in centralizer.generators:
        u = weyl_group.canonical_lift(gen)
        for _ in range(5):
            h = ctx.torus(rng.integers(0, ctx.modulus, 6))
            direct = ctx.in_normalizer(ctx.lift(h, u), twist7)
            assert ctx.normalizer_membership(h, u, twist7) == direct


def test_coset_offset_requires_centralizer(ctx, twist7, weyl_group):
    outside = weyl_group.index(weyl_group.reflection(2))
    assert not np.array_equal(
        weyl_group.multiply_indices(np.array([outside]), np.array([weyl_group.index(twist7.w)])),
        weyl_group.multiply_indices(np.array([weyl_group.index(twist7.w)]), np.array([outside])),
    )
    with pytest.raises(NotInCentralizerError):
        ctx.coset_offset(outside, twist7)


def test_field_values_round_trip(ctx, rng):
    h = ctx.torus(rng.integers(0, ctx.modulus, 6))
    assert ctx.from_values(ctx.values(h)) == h


def test_center(weyl_group):
    ctx4 = context_at(weyl_group, 4, 1, 2**32)
    z = ctx4.center_element()
    assert not z.is_identity
    assert ctx4.is_central(z)
    assert (z * z * z).is_identity
    assert ctx4.adjoint_equal(z, ctx4.one)
    assert not ctx4.adjoint_equal(ctx4.torus([1, 0, 0, 0, 0, 0]), ctx4.one)

    assert context_at(weyl_group, 3, 1, 2**32).center_element().is_identity
    with pytest.raises(FieldError):
        context_at(weyl_group, 5, 1, 2**32).center_element()


def test_field_cap(weyl_group):
    with pytest.raises(ResourceCapExceeded):
        context_at(weyl_group, 13, 12, 2**32)


# --- worked examples ---

def _ctx_for(weyl_group, class_table, class_index, q, k):
    return make_twist(weyl_group, class_table, class_index, q), context_at(weyl_group, q, k, 2**32)


def test_action_matrix_of_w1w3(weyl_group, ctx):
    """w(r1) = r3, w(r3) = -r1 - r3, w(r4) = r1 + r3 + r4 and r2, r5, r6 are fixed."""
    a = [
        [0, 0, -1, 1, 0, 0],
        [0, 1, 0, 0, 0, 0],
        [1, 0, -1, 1, 0, 0],
        [0, 0, 0, 1, 0, 0],
        [0, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, 0, 1],
    ]
    w = weyl_group.from_word("w1w3")
    assert w.matrix.tolist() == a
    x = [3, 5, 7, 11, 13, 17]
    # H^{n1n3} = (l3^-1 l4, l2, l1 l3^-1 l4, l4, l5, l6)
    assert ctx.act(w, ctx.torus(x)) == ctx.torus([-7 + 11, 5, 3 - 7 + 11, 11, 13, 17])


def test_cube_of_h_n1n3(weyl_group, ctx, rng):
    """(H n1n3)^3 = (l4, l2^3, l4^2, l4^3, l5^3, l6^3) since (n1n3)^3 = 1."""
    y = weyl_group.index(weyl_group.from_word("w1w3"))
    b = ctx.exponent_sum_matrix(y, 3)
    assert b.tolist() == [
        [0, 0, 0, 1, 0, 0],
        [0, 3, 0, 0, 0, 0],
        [0, 0, 0, 2, 0, 0],
        [0, 0, 0, 3, 0, 0],
        [0, 0, 0, 0, 3, 0],
        [0, 0, 0, 0, 0, 3],
    ]
    for _ in range(10):
        x = [int(v) for v in rng.integers(0, ctx.modulus, 6)]
        cube = ctx.power(ctx.lift(ctx.torus(x), "n1n3"), 3)
        assert cube == ctx.element(ctx.torus([x[3], 3 * x[1], 2 * x[3], 3 * x[3], 3 * x[4], 3 * x[5]]))


@pytest.mark.parametrize("word, square", [
    # (H n1)^2 = (-l3, l2^2, l3^2, l4^2, l5^2, l6^2)
    ("n1", lambda x, half: [x[2] + half, 2 * x[1], 2 * x[2], 2 * x[3], 2 * x[4], 2 * x[5]]),
    # (H n1n2)^2 = (-l3, -l4, l3^2, l4^2, l5^2, l6^2)
    ("n1n2", lambda x, half: [x[2] + half, x[3] + half, 2 * x[2], 2 * x[3], 2 * x[4], 2 * x[5]]),
])
def test_square_of_involution_lifts(ctx, rng, word, square):
    for _ in range(10):
        x = [int(v) for v in rng.integers(0, ctx.modulus, 6)]
        assert ctx.power(ctx.lift(ctx.torus(x), word), 2) == ctx.element(ctx.torus(square(x, ctx.half)))



def test_signed_square_for_w2w3w5(ctx, rng):
    """(H n2n3n5)^2 = (l1^2, -l4, -l1 l4, l4^2, -l4 l6, l6^2)."""
    for _ in range(10):
        x = [int(v) for v in rng.integers(0, ctx.modulus, 6)]
        half = ctx.half
        expected = [2 * x[0], x[3] + half, x[0] + x[3] + half, 2 * x[3], x[3] + x[5] + half, 2 * x[5]]
        assert ctx.power(ctx.lift(ctx.torus(x), "n2n3n5"), 2) == ctx.element(ctx.torus(expected))


def test_involution_lift_for_w1(weyl_group, class_table):
    """H1 = (zeta, 1, -1, 1, 1, 1) with zeta^(q+1) = -1 gives a lift H1 n1 of order 2."""
    twist, ctx2 = _ctx_for(weyl_group, class_table, 2, 3, 2)
    assert ctx2.modulus == 8
    # zeta = g: g^4 = -1
    h1 = ctx2.torus([1, 0, ctx2.half, 0, 0, 0])
    assert ctx2.torus_membership(h1, twist)
    lift = ctx2.lift(h1, "n1")
    assert ctx2.in_normalizer(lift, twist)
    assert ctx2.power(lift, 2) == ctx2.identity()
    assert ctx2.order(lift) == 2


def test_class_17_lift_torus_part(weyl_group, class_table):
    """|xi| = (q+1)(q^5-1) = 968 and zeta = xi^((q-1)/2) = xi at q = 3."""
    twist, ctx17 = _ctx_for(weyl_group, class_table, 17, 3, 10)
    assert ctx17.modulus % 968 == 0
    zeta = ctx17.modulus // 968
    q = 3
    exps = (q**6 + q**3 - q, -q**5 + 1, -q**5 + q**4 + q**3 + 1, -q**5 + q**4 + q**3 + q**2 + 1,
            q**4 + q**3 + q**2 + 1, q**4 + q**3 + q**2 + q + 1)
    h1 = ctx17.torus([zeta * e for e in exps])
    assert ctx17.torus_membership(h1, twist)
    assert ctx17.in_normalizer(ctx17.lift(h1, twist.n), twist)


def test_class_18_complement_torus_parts(weyl_group, class_table):
    """H1 = (xi, -1, -1, xi^-1, -1, xi) and H2 = (zeta, -zeta^2, -zeta^2, zeta^3, -zeta^2, zeta)."""
    twist, ctx18 = _ctx_for(weyl_group, class_table, 18, 3, 2)
    half = ctx18.half
    # xi = g (xi^4 = -1) and zeta = g^2 (zeta^2 = -1)
    h1 = ctx18.torus([1, half, half, -1, half, 1])
    h2 = ctx18.torus([2, half + 4, half + 4, 6, half + 4, 2])
    assert ctx18.torus_membership(h1, twist)
    assert ctx18.torus_membership(h2, twist)
    # h1 * h4 * h6 is (-1, 1, 1, -1, 1, -1) and lies in T as well
    assert ctx18.torus_membership(ctx18.torus(ctx18.hvec([1, 0, 0, 1, 0, 1])), twist)
    assert not ctx18.torus_membership(ctx18.torus([1, 0, 0, 0, 0, 0]), twist)


def test_class_22_complement_torus_parts(weyl_group, class_table):
    """At q = 3: xi = g^13 of order 56, lambda = -xi^2 and alpha = xi^(-q^2+q-1)."""
    twist, ctx22 = _ctx_for(weyl_group, class_table, 22, 3, 6)
    assert ctx22.modulus == 728
    half = ctx22.half
    lam = half + 26
    alpha = -13 * 7
    h1 = ctx22.torus([lam, 0, 4 * lam, -5 * lam, 4 * lam, lam])
    h2 = ctx22.torus([half - 2 * alpha, 0, 0, half + 2 * alpha, 0, half - 2 * alpha])
    h3 = ctx22.torus(ctx22.hvec([0, 1, 1, 0, 1, 0]))
    assert h1 == ctx22.torus([390, 0, 104, 234, 104, 390])
    assert h2 == ctx22.torus([546, 0, 0, 182, 0, 546])
    for h in (h1, h2, h3):
        assert ctx22.torus_membership(h, twist)
    # h = (alpha^2, alpha, alpha, 1, alpha, alpha^2) is moved to h2 h3 h5 * h
    h = ctx22.torus([2 * alpha, alpha, alpha, 0, alpha, 2 * alpha])
    assert ctx22.frobenius_sigma(ctx22.act(twist.w, h)) == h3 * h


# --- every class ---

def _random_torus_point(structure, rng, one):
    t = one
    for g, d in zip(structure.generators, structure.invariant_factors):
        t = t * g ** int(rng.integers(0, d))
    return t


def _check_normalizer_laws(ctx, twist, structure, rng, cases):
    n = ctx.twist_element(twist)
    for _ in range(cases):
        a = ctx.multiply(ctx.element(_random_torus_point(structure, rng, ctx.one)), n)
        b = ctx.element(_random_torus_point(structure, rng, ctx.one))
        c = _random_element(ctx, rng)
        assert ctx.multiply(ctx.multiply(a, b), c) == ctx.multiply(a, ctx.multiply(b, c))
        assert ctx.multiply(c, ctx.inverse(c)) == ctx.identity()
        for x in (a, b, ctx.multiply(a, b), ctx.inverse(a)):
            assert ctx.in_normalizer(x, twist)
        m = int(rng.integers(1, 13))
        assert ctx.power(a, m) == ctx.multiply(ctx.power(a, m - 1), a)


def _class_setup(weyl_group, class_table, class_index):
    twist = make_twist(weyl_group, class_table, class_index, Q)
    local = context_at(weyl_group, Q, twist.w.order(), 2**32)
    return twist, local, torus_structure(twist.w, Q, local)


@pytest.mark.parametrize("r", ROWS, ids=lambda r: f"class{r.index}")
def test_enumeration_has_torus_order(weyl_group, class_table, r):
    twist, local, structure = _class_setup(weyl_group, class_table, r.index)
    assert structure.order == r.torus_order(Q) == torus_order(twist.w, Q)
    elements = enumerate_torus(structure, 10**4)
    assert len({t.exps for t in elements}) == structure.order
    for t in elements[:: max(1, len(elements) // 25)]:
        assert local.torus_membership(t, twist)


@pytest.mark.parametrize("r", ROWS, ids=lambda r: f"class{r.index}")
def test_normalizer_laws(weyl_group, class_table, rng, r):
    twist, local, structure = _class_setup(weyl_group, class_table, r.index)
    _check_normalizer_laws(local, twist, structure, rng, 25)


@pytest.mark.slow
@pytest.mark.parametrize("r", ROWS, ids=lambda r: f"class{r.index}")
def test_normalizer_laws_sweep(weyl_group, class_table, r):
    twist, local, structure = _class_setup(weyl_group, class_table, r.index)
    _check_normalizer_laws(local, twist, structure, np.random.default_rng(r.index), 10**4)
    for t in enumerate_torus(structure, 10**4):
        assert local.torus_membership(t, twist)
