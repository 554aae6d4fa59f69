import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kleinlens.abelian import (AbelianGroup, attached_disc_quotient, cokernel, dehn_filling_H1,
                               determinant, inclusion_map_H1, matmul, smith_normal_form)
from kleinlens.lens_core import Basis, TorusClass


def diag(d):
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


def test_snf_examples():
    assert diag(smith_normal_form([[2, 0], [0, 1]])[1]) == [1, 2]
    assert smith_normal_form([[0]])[1] == [[0]]
    assert smith_normal_form([[2, 1]])[1] == [[1, 0]]


matrices = st.integers(1, 8).flatmap(lambda r: st.integers(1, 8).flatmap(
    lambda c: st.lists(st.lists(st.integers(-50, 50), min_size=c, max_size=c),
                       min_size=r, max_size=r)))


@given(matrices)
def test_snf_properties(m):
    u, d, v = smith_normal_form(m)
    assert matmul(matmul(u, m), v) == d
    assert abs(determinant(u)) == 1 and abs(determinant(v)) == 1
    rows, cols = len(m), len(m[0])
    assert all(d[i][j] == 0 for i in range(rows) for j in range(cols) if i != j)
    dg = diag(d)
    nonzero = [x for x in dg if x]
    assert dg[:len(nonzero)] == nonzero and all(x > 0 for x in nonzero)
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))


@given(matrices)
def test_snf_preserves_gcd_of_entries(m):
    _, d, _ = smith_normal_form(m)
    g = math.gcd(*(abs(x) for row in m for x in row))
    assert (d[0][0] if d[0] else 0) == g


def test_determinant():
    assert determinant([[2, 1], [7, 4]]) == 1
    assert determinant([[0, 1], [1, 0]]) == -1
    assert determinant([[1, 2], [2, 4]]) == 0


def test_cokernel_examples():
    zz2 = AbelianGroup((2,), 1)
    assert cokernel([[2, 1]], zz2) == AbelianGroup((4,))
    assert cokernel([[4, 0]], zz2) == AbelianGroup((2, 4))
    assert cokernel([], AbelianGroup((), 1)) == AbelianGroup((), 1)
    assert cokernel([[5]], AbelianGroup((), 1)) == AbelianGroup((5,))


def test_group_validation_and_text():
    with pytest.raises(ValueError):
        AbelianGroup((4, 2))
    with pytest.raises(ValueError):
        AbelianGroup((1,))
    assert str(AbelianGroup((2,), 1)) == "Z + Z_2"
    assert str(AbelianGroup()) == "0"
    assert AbelianGroup((2,), 1).order == math.inf
    assert AbelianGroup((2, 6)).order == 12


@pytest.mark.parametrize("c, image", [((1, 1), (2, 1)), ((0, 2), (0, 0)), ((3, 5), (6, 1))])
def test_inclusion_map(c, image):
    assert inclusion_map_H1(TorusClass(*c, Basis.NUK_BOUNDARY)) == image


def test_inclusion_map_needs_boundary_basis():
    with pytest.raises(ValueError):
        inclusion_map_H1(TorusClass(1, 1, Basis.HEEGAARD_SIDE_1))


@pytest.mark.parametrize("n, ell, expected", [
    (1, 1, AbelianGroup((4,))), (3, 2, AbelianGroup((2, 6))), (2, 1, AbelianGroup((8,))),
])
def test_filling_examples(n, ell, expected):
    assert dehn_filling_H1(n, ell) == expected


def test_filling_rejects_non_primitive_class():
    with pytest.raises(ValueError, match="not primitive"):
        dehn_filling_H1(2, 2)
    assert attached_disc_quotient(2, 2) == AbelianGroup((2, 4))


@given(st.integers(-60, 60), st.integers(-40, 40))
def test_filling_closed_form(n, ell):
    if math.gcd(n, ell) != 1 or n == 0:
        return
    h = dehn_filling_H1(n, ell)
    if ell % 2:
        assert h == AbelianGroup((4 * abs(n),)) and h.is_cyclic
    else:
        assert h == AbelianGroup.from_diagonal([2, 2 * n], 2)
        assert not h.is_cyclic and h.order == 4 * abs(n)
