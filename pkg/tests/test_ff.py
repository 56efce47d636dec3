import pytest

from exceptions import FieldError, ResourceCapExceeded
from ff import (
    RootSpec,
    ambient_degree,
    build_field,
    dlog,
    find_modulus,
    is_irreducible,
    root_with_property,
    spec_exponent,
    split_prime_power,
)


def test_field_sizes(f9, f16):
    assert (f9.size, f9.order, f9.q) == (9, 8, 3)
    assert (f16.size, f16.order, f16.q) == (16, 15, 4)
    assert len(list(f9.elements())) == 9


def test_generator_is_primitive(f9, f16):
    assert f9.generator.multiplicative_order() == 8
    assert f16.generator.multiplicative_order() == 15


def test_field_axioms(f9):
    nonzero = [x for x in f9.elements() if not x.is_zero]
    for x in nonzero:
        assert x * x.inverse() == f9.one
        assert x ** 9 == x
        assert x + (-x) == f9.zero
    with pytest.raises(FieldError):
        f9.zero.inverse()


def test_dlog(f9, f16):
    for ctx in (f9, f16):
        for n in range(ctx.order):
            assert dlog(ctx, ctx.element_from_exponent(n)) == n
    with pytest.raises(FieldError):
        dlog(f9, f9.zero)


def test_dlog_in_a_larger_field():
    ctx = build_field(5, 1, 4)
    x = ctx.element([1, 2, 3])
    assert ctx.element_from_exponent(dlog(ctx, x)) == x


def test_frobenius_fixes_base_field(f16):
    base = [x for x in f16.elements() if x.frobenius() == x]
    assert len(base) == 4


def test_irreducibility():
    assert is_irreducible([1, 1, 1], 2)
    assert not is_irreducible([1, 0, 1], 2)
    assert is_irreducible(list(find_modulus(3, 4)), 3)
    assert len(find_modulus(2, 8)) == 9


def test_root_spec_validation():
    with pytest.raises(FieldError):
        RootSpec()
    with pytest.raises(FieldError):
        RootSpec(order=0)


def test_roots_with_properties(f9):
    i = root_with_property(f9, RootSpec(power=2))
    assert i ** 2 == f9.minus_one
    zeta = root_with_property(f9, RootSpec(order=8, power=4))
    assert zeta.multiplicative_order() == 8
    assert zeta ** 4 == f9.minus_one
    assert root_with_property(f9, RootSpec(order=4)).multiplicative_order() == 4


def test_spec_exponent_in_characteristic_2():
    """-1 = 1 in characteristic 2, so x^t = -1 is x^t = 1."""
    assert spec_exponent(RootSpec(power=3), 15, 2) == 0
    assert spec_exponent(RootSpec(order=5, power=5), 15, 2) is not None
    assert spec_exponent(RootSpec(order=3), 8, 3) is None


def test_ambient_degree():
    assert ambient_degree(5, [RootSpec(order=3)]) == 2
    assert ambient_degree(3, [RootSpec(power=2)]) == 2
    assert ambient_degree(5, [RootSpec(order=3)], base=3) == 6
    assert ambient_degree(7, []) == 1
    with pytest.raises(ResourceCapExceeded):
        ambient_degree(3, [RootSpec(order=3)])


def test_field_size_cap():
    with pytest.raises(ResourceCapExceeded):
        build_field(2, 1, 40, max_size=2**32)


def test_split_prime_power():
    assert split_prime_power(9) == (3, 2)
    assert split_prime_power(13) == (13, 1)
    with pytest.raises(FieldError):
        split_prime_power(12)
