import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torus_lattices.action import G6, wedge_matrix
from torus_lattices.linalg import (IntMatrix, ShapeError, SingularError, char_poly,
                                   congruent_diagonalize, det, integer_kernel,
                                   smith_normal_form)

from oracles import det_by_permutations, determinantal_divisors, signature_by_eigenvalues

PHI5_COMPANION = IntMatrix([[0, 0, 0, -1], [1, 0, 0, -1], [0, 1, 0, -1], [0, 0, 1, -1]])


def square(n, lo=-9, hi=9):
    return st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=n, max_size=n)


# -- IntMatrix ----------------------------------------------------------------

def test_rejects_floats_and_ragged_rows():
    with pytest.raises(TypeError):
        IntMatrix([[1.5, 0], [0, 1]])
    with pytest.raises(ShapeError):
        IntMatrix([[1, 2], [3]])


def test_empty_shapes_survive_transpose_and_products():
    k = IntMatrix.zeros(6, 0)
    assert k.T.shape == (0, 6)
    assert (k.T @ G6 @ k).shape == (0, 0)


def test_big_integers_stay_exact():
    big = 10 ** 40 + 7
    m = IntMatrix([[big, 1], [0, big]])
    assert det(m) == big * big
    assert (m @ m)[0, 0] == big ** 2


# -- det ------------------------------------------------------------------------

@pytest.mark.parametrize("m, expected", [
    (IntMatrix.identity(4), 1),
    (PHI5_COMPANION, 1),
    (G6, -1),
])
def test_det_examples(m, expected):
    assert det(m) == expected
    assert det_by_permutations(m.tolist()) == expected


def test_det_non_square():
    with pytest.raises(ShapeError):
        det(IntMatrix([[1, 2, 3]]))


@settings(max_examples=200, derandomize=True, deadline=None)
@given(square(3), square(3))
def test_det_multiplicative(a, b):
    a, b = IntMatrix(a), IntMatrix(b)
    assert det(a @ b) == det(a) * det(b)
    assert det(a) == det_by_permutations(a.tolist())


# -- characteristic polynomial ---------------------------------------------------

@pytest.mark.parametrize("m, expected", [
    (PHI5_COMPANION, (1, 1, 1, 1, 1)),
    (-IntMatrix.identity(2), (1, 2, 1)),
    (IntMatrix([[0, -1], [1, -1]]), (1, 1, 1)),
])
def test_char_poly_examples(m, expected):
    assert char_poly(m) == expected


@settings(max_examples=100, derandomize=True, deadline=None)
@given(square(4, -5, 5))
def test_char_poly_constant_term_is_signed_det(rows):
    m = IntMatrix(rows)
    poly = char_poly(m)
    assert poly[0] == 1 and len(poly) == 5
    assert poly[-1] == det(m)  # (-1)^4 det
    assert poly[1] == -sum(m[i, i] for i in range(4))


def test_char_poly_non_square():
    with pytest.raises(ShapeError):
        char_poly(IntMatrix([[1, 2]]))


# -- Smith normal form -----------------------------------------------------------

@pytest.mark.parametrize("rows, diag", [
    ([[2, 0], [0, 4]], (2, 4)),
    ([[0, 2], [2, 0]], (2, 2)),
    ([[2, 1], [1, -2]], (1, 5)),
    ([[12, 6, 4, 8], [3, 9, 6, 12], [2, 16, 14, 28], [20, 10, 10, 20]], (1, 10, 30, 0)),
    ([[2, 4]], (2,)),
])
def test_smith_examples(rows, diag):
    snf = smith_normal_form(rows)
    assert snf.diag == diag
    assert list(diag) == determinantal_divisors(rows)
    m = IntMatrix(rows)
    assert snf.left @ m @ snf.right == snf.diagonal_matrix()


def test_smith_of_empty_and_zero():
    assert smith_normal_form(IntMatrix.zeros(2, 3)).diag == (0, 0)
    snf = smith_normal_form(IntMatrix.zeros(3, 0))
    assert snf.diag == () and snf.left.shape == (3, 3)


# -- kernels ---------------------------------------------------------------------

def test_kernel_of_identity_is_empty():
    assert integer_kernel(IntMatrix.identity(4)).shape == (4, 0)


def test_kernel_of_zero_is_everything():
    assert integer_kernel(IntMatrix.zeros(2)) == IntMatrix.identity(2)


def test_kernel_of_wedge_minus_identity():
    phi = wedge_matrix(IntMatrix.diagonal([1, 1, -1, -1]))
    k = integer_kernel(phi - IntMatrix.identity(6))
    # e1^e2 and e3^e4
    assert k.columns() == [(1, 0, 0, 0, 0, 0), (0, 0, 0, 0, 0, 1)]


def test_kernel_is_saturated():
    # x + 2y = 0 has primitive solution (2, -1) up to sign, not (4, -2)
    k = integer_kernel(IntMatrix([[2, 4]]))
    assert k.cols == 1 and set(map(abs, k.col(0))) == {1, 2}


# -- signatures -----------------------------------------------------------------

@pytest.mark.parametrize("rows, sig", [
    ([[0, 1], [1, 0]], (1, 1)),
    ([[2, 1], [1, -2]], (1, 1)),
    ([[2, 1], [1, 2]], (2, 0)),
    (G6.tolist(), (3, 3)),
    ([[0, 0, 1], [0, -2, 0], [1, 0, 0]], (1, 2)),
])
def test_signature_examples(rows, sig):
    assert congruent_diagonalize(rows) == sig
    assert signature_by_eigenvalues(rows) == sig


def test_signature_rejects_degenerate_and_asymmetric():
    with pytest.raises(SingularError):
        congruent_diagonalize([[0, 0], [0, 1]])
    with pytest.raises(ShapeError):
        congruent_diagonalize([[0, 1], [2, 0]])
