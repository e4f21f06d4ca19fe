import pytest

from torus_lattices.action import (
    G6, H2_LATTICE, WEDGE_LABELS, PositiveDimensionalFixedLocus, UnsupportedOrderError,
    coinvariant_lattice, fixed_point_count, h2_order, invariant_lattice, order_of,
    wedge_matrix, wedge_square)
from torus_lattices.lattice import genus_fingerprint, lattice_from_name
from torus_lattices.linalg import IntMatrix, ShapeError, det

from oracles import det_by_permutations, perm_sign, signature_by_eigenvalues

J = IntMatrix([[0, -1], [1, 0]])
R3 = IntMatrix([[0, -1], [1, -1]])
PHI5 = IntMatrix([[0, 0, 0, -1], [1, 0, 0, -1], [0, 1, 0, -1], [0, 0, 1, -1]])


def test_wedge_gram_is_u_cubed():
    # e_ij ^ e_kl against e1^e2^e3^e4, computed independently
    pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    expected = [[perm_sign(a + b) if len(set(a + b)) == 4 else 0 for b in pairs] for a in pairs]
    assert G6.tolist() == expected
    assert det_by_permutations(expected) == -1
    assert signature_by_eigenvalues(expected) == (3, 3)
    assert H2_LATTICE.is_even
    assert genus_fingerprint(H2_LATTICE) == genus_fingerprint(lattice_from_name("U^3"))
    assert WEDGE_LABELS[0] == "e1^e2" and WEDGE_LABELS[-1] == "e3^e4"


def test_wedge_of_identity_and_minus_identity():
    assert wedge_matrix(IntMatrix.identity(4)) == IntMatrix.identity(6)
    assert wedge_matrix(-IntMatrix.identity(4)) == IntMatrix.identity(6)


def test_wedge_entries_are_minors():
    g = IntMatrix([[1, 2, 0, 0], [3, 4, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    phi = wedge_matrix(g)
    # e1^e2 -> det of the top-left block times e1^e2
    assert phi[0, 0] == 1 * 4 - 3 * 2
    assert phi[5, 5] == 1


def test_wedge_square_rejects_non_unimodular():
    with pytest.raises(ValueError):
        wedge_square(IntMatrix.diagonal([2, 1, 1, 1]))
    with pytest.raises(ShapeError):
        wedge_square(IntMatrix.identity(3))


@pytest.mark.parametrize("g, o1, o2", [
    (IntMatrix.diagonal([1, 1, -1, -1]), 2, 2),
    (-IntMatrix.identity(4), 2, 1),
    (IntMatrix.block_diag(J, J), 4, 2),
    (IntMatrix.block_diag(R3, R3), 3, 3),
    (PHI5, 5, 5),
    (-PHI5, 10, 5),
])
def test_orders(g, o1, o2):
    a = wedge_square(g)
    assert (a.order_h1, a.order_h2) == (o1, o2)
    assert h2_order(g) == o2


def test_infinite_order_is_refused():
    shear = IntMatrix([[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    with pytest.raises(UnsupportedOrderError):
        order_of(shear)
    assert wedge_square(shear).order_h1 is None


def test_invariant_lattice_of_phi5():
    t = invariant_lattice(PHI5)
    assert t.rank == 2 and t.det == -5
    assert genus_fingerprint(t) == genus_fingerprint(lattice_from_name("H5"))
    # the invariant vectors really are fixed
    phi = wedge_matrix(PHI5)
    assert phi @ t.basis == t.basis


def test_invariant_lattice_needs_det_one():
    g = IntMatrix.diagonal([1, 1, 1, -1])
    assert det(g) == -1
    with pytest.raises(ValueError):
        invariant_lattice(g)


def test_trivial_action_fixes_everything():
    t = invariant_lattice(IntMatrix.identity(4))
    assert t.rank == 6
    s = coinvariant_lattice(IntMatrix.identity(4))
    assert s.rank == 0


def test_coinvariant_is_orthogonal():
    g = IntMatrix.block_diag(R3, R3)
    t, s = invariant_lattice(g), coinvariant_lattice(g)
    assert t.rank + s.rank == 6
    assert (t.basis.T @ G6 @ s.basis) == IntMatrix.zeros(t.rank, s.rank)


@pytest.mark.parametrize("g, count", [
    (-IntMatrix.identity(4), 16),
    (IntMatrix.block_diag(J, J), 4),
    (IntMatrix.block_diag(R3, R3), 9),
    (-IntMatrix.block_diag(R3, R3), 1),
    (PHI5, 5),
    (-PHI5, 1),
])
def test_fixed_points(g, count):
    assert fixed_point_count(g) == count


def test_fixed_points_positive_dimensional():
    with pytest.raises(PositiveDimensionalFixedLocus):
        fixed_point_count(IntMatrix.diagonal([1, 1, -1, -1]))
