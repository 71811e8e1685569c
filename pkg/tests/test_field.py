import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from grminfo.field import (
    BUILTIN_MODULI,
    GF,
    DivisionByZero,
    ExtField,
    FieldError,
    FieldMismatch,
    FieldSpec,
    expand_over_base,
    ext_field,
    field_arith,
    find_primitive,
    first_primitive_polynomial,
    freeze_moduli,
    is_irreducible,
    load_moduli_config,
)
from grminfo.numtheory import factorize

# every (q, m) the oracle touches on the desk-scale grid, plus prime-power bases
EXT_CASES = [(3, 3), (3, 4), (3, 5), (3, 6), (3, 7), (5, 3), (5, 4), (5, 5), (4, 2), (4, 3), (8, 2), (9, 2), (7, 3), (2, 4)]


def test_prime_field_examples():
    F = GF.of_order(3)
    two = F(2)
    assert (two + two).value == 1
    assert field_arith(two, None, "pow", 2).value == 1
    assert field_arith(two, two, "add").value == 1


def test_gf9_with_x2_plus_1():
    F = GF(FieldSpec(3, 2, (1, 0, 1)))
    x = F((0, 1))
    assert (x * x).coeffs == (2, 0)


def test_field_errors():
    F, G = GF.of_order(3), GF.of_order(5)
    with pytest.raises(FieldMismatch):
        F(1) + G(1)
    with pytest.raises(FieldMismatch):
        field_arith(F(1), G(1), "mul")
    with pytest.raises(DivisionByZero):
        F(1) / F(0)
    with pytest.raises(ZeroDivisionError):
        GF.of_order(9).inv(0)
    with pytest.raises(FieldError):
        F(3)


def test_spec_validation():
    with pytest.raises(FieldError):
        FieldSpec(4, 1, (1, 1))
    with pytest.raises(FieldError):
        FieldSpec(3, 2, (1, 0, 2))  # not monic
    with pytest.raises(FieldError):
        GF(FieldSpec(3, 2, (2, 0, 1)))  # x^2 - 1 is reducible


@pytest.mark.parametrize("q, expected", [(3, 2), (5, 2), (7, 3)])
def test_find_primitive_prime(q, expected):
    assert find_primitive(FieldSpec.default(q)) == expected


def _order_brute(F: GF, v: int) -> int:
    x, k = v, 1
    while x != 1:
        x = F.mul(x, v)
        k += 1
    return k


@pytest.mark.parametrize("q", [4, 8, 9, 16, 25, 27, 49, 125])
def test_find_primitive_has_full_order(q):
    F = GF.of_order(q)
    assert _order_brute(F, F.primitive) == q - 1
    # and it is the first such element in encoding order
    assert all(_order_brute(F, v) < q - 1 for v in range(1, F.primitive))


@pytest.mark.parametrize("key", sorted(k for k in BUILTIN_MODULI if k[0] ** k[1] <= 3**7))
def test_builtin_moduli_are_first_primitive(key):
    p, d = key
    mod = BUILTIN_MODULI[key]
    assert is_irreducible(mod, p)
    assert first_primitive_polynomial(p, d) == mod


@pytest.mark.parametrize("q", [3, 4, 5, 8, 9, 27, 81, 125, 243, 625, 729, 2187, 3125])
def test_field_axioms_sampled(q):
    F = GF.of_order(q)
    rng = random.Random(q)
    for _ in range(1000):
        a, b, c = (rng.randrange(q) for _ in range(3))
        assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.add(a, b) == F.add(b, a) and F.mul(a, b) == F.mul(b, a)
        assert F.add(a, F.neg(a)) == 0
    nz = np.arange(1, q)
    assert (F.mul_vec(nz, F.inv_table[nz]) == 1).all()


@given(st.sampled_from([4, 8, 9, 25, 27, 49]), st.data())
def test_pow_matches_repeated_multiplication(q, data):
    F = GF.of_order(q)
    a = data.draw(st.integers(0, q - 1))
    k = data.draw(st.integers(0, 3 * q))
    acc = 1
    for _ in range(k):
        acc = F.mul(acc, a)
    assert F.pow(a, k) == acc


@pytest.mark.parametrize("q, m", EXT_CASES)
def test_alpha_is_primitive(q, m):
    ext = ext_field(q, m)
    N = q**m - 1
    top = ext.top
    assert top.pow(ext.alpha, N) == 1
    for ell, _ in factorize(N):
        assert top.pow(ext.alpha, N // ell) != 1


@pytest.mark.parametrize("q, m", EXT_CASES)
def test_subfield_is_frobenius_fixed(q, m):
    ext = ext_field(q, m)
    top = ext.top
    fixed = {x for x in range(top.q) if top.pow(x, q) == x}
    assert ext.subfield() == fixed and len(fixed) == q
    # the embedding is a ring homomorphism
    B = ext.base
    for a in range(q):
        for b in range(q):
            assert ext.from_base(B.add(a, b)) == top.add(ext.from_base(a), ext.from_base(b))
            assert ext.from_base(B.mul(a, b)) == top.mul(ext.from_base(a), ext.from_base(b))


@pytest.mark.parametrize("q, m", [c for c in EXT_CASES if c[0] ** c[1] <= 729])
def test_expansion_is_bijection(q, m):
    ext = ext_field(q, m)
    top = ext.top
    seen = set()
    for x in range(top.q):
        c = expand_over_base(x, ext)
        seen.add(c)
        acc = 0
        for i, ci in enumerate(c):
            acc = top.add(acc, top.mul(ext.from_base(ci), ext.alpha_pow(i)))
        assert acc == x
    assert len(seen) == top.q


@pytest.mark.parametrize("q, m", [(3, 3), (4, 2), (5, 3), (9, 2), (2, 4)])
def test_expansion_small_cases(q, m):
    ext = ext_field(q, m)
    assert ext.expand_over_base(0) == (0,) * m
    assert ext.expand_over_base(ext.alpha) == (0, 1) + (0,) * (m - 2)
    # alpha^m from a brute-force search for the linear dependence over GF(q)
    target = ext.alpha_pow(m)
    top = ext.top
    hits = []
    for c in itertools.product(range(q), repeat=m):
        acc = 0
        for i, ci in enumerate(c):
            acc = top.add(acc, top.mul(ext.from_base(ci), ext.alpha_pow(i)))
        if acc == target:
            hits.append(c)
    assert hits == [ext.expand_over_base(target)]


def test_to_base_rejects_outside():
    ext = ext_field(3, 3)
    outside = next(x for x in range(ext.top.q) if x not in ext.subfield())
    with pytest.raises(FieldError):
        ext.to_base(outside)
    assert all(ext.to_base(ext.from_base(b)) == b for b in range(3))


def test_moduli_config(tmp_path):
    path = tmp_path / "moduli.ini"
    path.write_text("[moduli]\n# an irreducible but non-default cubic\n3^3 = 1 0 2 1\n")
    overrides = load_moduli_config(path)
    assert overrides == {(3, 3): (1, 0, 2, 1)}
    F = GF.of_order(27, overrides)
    assert F.spec.modulus == (1, 0, 2, 1)
    ext = ext_field(3, 3, freeze_moduli(overrides))
    assert ext.top.spec.modulus == (1, 0, 2, 1)
    assert _order_brute(ext.top, ext.alpha) == 26


def test_moduli_config_bad_entry(tmp_path):
    path = tmp_path / "moduli.ini"
    path.write_text("[moduli]\n3^x = 1 0 1\n")
    with pytest.raises(FieldError):
        load_moduli_config(path)


def test_ext_field_rejects_zero_degree():
    with pytest.raises(FieldError):
        ExtField(3, 0)


@settings(max_examples=30)
@given(st.sampled_from([(3, 3), (4, 2), (5, 3)]), st.data())
def test_element_wrapper_agrees_with_raw_ops(qm, data):
    q, m = qm
    F = ext_field(q, m).top
    a, b = (data.draw(st.integers(0, F.q - 1)) for _ in range(2))
    x, y = F(a), F(b)
    assert (x + y).value == F.add(a, b)
    assert (x - y).value == F.sub(a, b)
    assert (x * y).value == F.mul(a, b)
    if b:
        assert ((x / y) * y).value == a
