import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qlego import fieldvec as fv
from qlego.symplectic import (
    CheckMatrix,
    CommutationError,
    Pauli,
    format_pauli,
    is_css,
    parse_pauli,
    symplectic_product,
)


def pauli_vectors(d, n):
    return st.lists(st.integers(0, d - 1), min_size=2 * n, max_size=2 * n).map(np.array)


def test_products():
    assert symplectic_product(parse_pauli("XI").vector, parse_pauli("ZI").vector, 2) == 1
    assert symplectic_product(parse_pauli("XXXX").vector, parse_pauli("ZZZZ").vector, 2) == 0
    a, b = parse_pauli("x1z0", 5), parse_pauli("x0z1", 5)
    # sum x_a z_b - z_a x_b: the order of the arguments fixes the sign
    assert symplectic_product(a.vector, b.vector, 5) == 1
    assert symplectic_product(b.vector, a.vector, 5) == 4
    with pytest.raises(ValueError):
        symplectic_product([1, 0], [1, 0, 0, 0], 2)


def test_weight():
    assert parse_pauli("IIII").weight == 0
    assert parse_pauli("XXII").weight == 2
    assert parse_pauli("x0z0;x2z0;x0z0;x1z4", 5).weight == 2


def test_parse_examples():
    p = parse_pauli("XYZI")
    assert p.x.tolist() == [1, 1, 0, 0] and p.z.tolist() == [0, 1, 1, 0]
    q = parse_pauli("x1z0;x0z4", 5)
    assert q.x.tolist() == [1, 0] and q.z.tolist() == [0, 4]
    assert str(q) == "x1z0;x0z4"


@pytest.mark.parametrize("bad", ["x1z9", "x1;z0", "x1z0;;x0z0", "xz", "x1z0.x0z1"])
def test_parse_rejects_bad_tokens(bad):
    with pytest.raises(ValueError):
        parse_pauli(bad, 5)


def test_parse_rejects_bad_letters():
    with pytest.raises(ValueError):
        parse_pauli("XQ")
    with pytest.raises(ValueError):
        parse_pauli("XY", 3)
    with pytest.raises(ValueError):
        parse_pauli("")


@pytest.mark.parametrize("d", [2, 3, 5, 7])
@settings(max_examples=100, deadline=None)
@given(data=st.data())
def test_print_parse_round_trip(d, data):
    n = data.draw(st.integers(1, 6))
    v = data.draw(pauli_vectors(d, n))
    text = format_pauli(v, d)
    assert np.array_equal(parse_pauli(text, d).vector, v)
    assert format_pauli(parse_pauli(text, d).vector, d) == text


@pytest.mark.parametrize("d", [2, 3, 5])
@settings(max_examples=50, deadline=None)
@given(data=st.data())
def test_product_antisymmetric(d, data):
    n = data.draw(st.integers(1, 5))
    p, q = data.draw(pauli_vectors(d, n)), data.draw(pauli_vectors(d, n))
    assert symplectic_product(p, q, d) == (-symplectic_product(q, p, d)) % d
    # weight by direct scan
    assert Pauli(p, d).weight == sum(1 for i in range(n) if p[i] or p[n + i])


def test_check_matrix_rejects_anticommuting():
    with pytest.raises(CommutationError):
        CheckMatrix.from_paulis(["XI", "ZI"])
    with pytest.raises(CommutationError):
        CheckMatrix.from_paulis(["x1z0", "x0z1"], d=3)


def test_row_space_equality():
    a = CheckMatrix.from_paulis(["XXXX", "ZZZZ"])
    b = CheckMatrix.from_paulis(["XXXX", "YYYY"])
    assert a == b
    assert CheckMatrix.from_paulis(["XX"]) != CheckMatrix.from_paulis(["ZZ"])


def test_is_css_examples():
    assert is_css(CheckMatrix.from_paulis(["XXXX", "ZZZZ"])) == (True, True)
    assert is_css(CheckMatrix.from_paulis(["XX", "ZZ"])) == (True, True)
    assert is_css(CheckMatrix.from_paulis(["XZZX", "ZXXZ"]))[0] is False
    # the 513 code is not CSS
    assert is_css(CheckMatrix.from_paulis(["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"])) == (False, False)
    # CSS but the two halves differ
    assert is_css(CheckMatrix.from_paulis(["XXI", "ZZZ"])) == (True, False)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_is_css_survives_row_mixing(seed):
    rng = np.random.default_rng(seed)
    h = CheckMatrix.from_paulis(["XXXXII", "IIXXXX", "ZZZZII", "IIZZZZ"])
    mix = rng.integers(0, 2, (6, 4))
    mixed = fv.matmul(mix, h.matrix, 2)
    assert is_css(CheckMatrix(np.concatenate([mixed, h.matrix]), 2, 6)) == is_css(h)


def test_pauli_algebra():
    p = parse_pauli("x1z2;x0z1", 3)
    assert (p * p.inverse()).is_identity()
    assert (p**3).is_identity()
    assert p.support == (0, 1)
    assert p.commutes_with(p)
