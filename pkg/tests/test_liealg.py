import numpy as np
import pytest

from exceptions import InvalidRootIndexError, NotInTitsGroupError
from liealg import DIM, commutator, identity, parse_tokens, tits_from_matrix
from rootsys import NUM_POSITIVE, RANK


def test_adjoint_representation_is_a_lie_homomorphism(adjoint_basis):
    """[ad x, ad y] = ad [x, y] for every pair of basis vectors."""
    adjoint_basis.check_representation()
    assert adjoint_basis.ad_e.shape == (2 * NUM_POSITIVE, DIM, DIM)


def test_parse_tokens():
    assert parse_tokens("h4h6n20n21") == [("h", 4), ("h", 6), ("n", 20), ("n", 21)]
    assert parse_tokens("w3 w2 w4 w14") == [("w", 3), ("w", 2), ("w", 4), ("w", 14)]
    assert parse_tokens("1") == []


@pytest.mark.parametrize("text", ["n37", "x1", "n1y", "h0"])
def test_parse_tokens_rejects_bad_words(text):
    with pytest.raises(InvalidRootIndexError):
        parse_tokens(text)


@pytest.mark.parametrize("r", [1, 2, 6, 7, 19, 26, 36])
def test_n_squared_is_h(tits, r):
    n = tits.n(r)
    assert n * n == tits.h_root(r)
    assert (tits.h_root(r) * tits.h_root(r)).is_identity
    assert n.order() == 4


def test_n_maps_root_to_its_negative(tits, root_system):
    for r in range(1, NUM_POSITIVE + 1):
        slot = root_system.root(r).slot
        assert tits.n(r).perm[slot] == root_system.negate_slot(slot)


def test_h_part_inverts_h(tits):
    rng = np.random.default_rng(7)
    for _ in range(20):
        eps = rng.integers(0, 2, RANK)
        assert np.array_equal(tits.h_part(tits.h(eps)), eps)


def test_h_part_rejects_non_diagonal(tits):
    with pytest.raises(NotInTitsGroupError):
        tits.h_part(tits.n(1))


def test_matrix_round_trip(tits, root_system):
    m = tits.word("h1n3n20")
    assert tits_from_matrix(root_system, tits.matrix(m)) == m


def test_word_and_inverse(tits):
    m = tits.word("n1n3n4n19n26")
    assert (m * m.inverse()).is_identity
    assert tits.word("1") == identity()
    assert commutator(m, identity()).is_identity


def test_eta_table(tits):
    table = tits.eta_table()
    assert table.shape == (RANK, NUM_POSITIVE)
    assert set(np.unique(table)) <= {-1, 1}
    for s in range(1, RANK + 1):
        assert table[s - 1, s - 1] == 1


def test_eta_rejects_non_fundamental(tits):
    with pytest.raises(InvalidRootIndexError):
        tits.eta(7, 1)


def test_describe(tits):
    info = tits.describe(tits.n(1))
    assert info["order"] == 4
    assert np.array(info["weyl_matrix"]).shape == (RANK, RANK)
    assert "h_part" not in info


def test_describe_with_weyl_group(tits, weyl_group):
    m = tits.word("h2h5n1n4n14n29")
    info = tits.describe(m, weyl_group)
    w = weyl_group.from_word("w1w4w14w29")
    assert info["canonical_word"] == weyl_group.canonical(w).word_str()
    h = tits.h(info["h_part"])
    assert h * weyl_group.canonical_lift(w) == m
    assert tits.describe(tits.word("h3"))["h_part"] == [0, 0, 1, 0, 0, 0]
