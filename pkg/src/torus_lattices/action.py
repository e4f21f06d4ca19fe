"""Induced action of a torus automorphism on second cohomology.

``H^2(A, Z)`` is modelled as ``Λ^2 Z^4`` in the wedge basis

    e1^e2, e1^e3, e1^e4, e2^e3, e2^e4, e3^e4

with the pairing ``<a, b> = a ^ b`` read off against ``e1^e2^e3^e4``.  A
4x4 matrix ``g`` acts on ``Z^4`` by columns (``g e_k = sum_i g[i,k] e_i``),
and ``Λ^2 g`` has the 2x2 minors of ``g`` as entries.  The basis of ``Z^4``
is assumed positively oriented for the complex structure; reversing the
orientation negates the form.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional

from .lattice import Lattice, orthogonal_complement, sublattice
from .linalg import IntMatrix, ShapeError, as_matrix, det, integer_kernel

WEDGE_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
WEDGE_LABELS = tuple(f"e{i + 1}^e{j + 1}" for i, j in WEDGE_PAIRS)
MAX_ORDER = 12


class UnsupportedOrderError(ValueError):
    """The matrix has infinite order or an order beyond :data:`MAX_ORDER`."""


class PositiveDimensionalFixedLocus(ValueError):
    """``det(I - g) = 0``: the fixed locus on the torus is not finite."""


def _perm_sign(seq) -> int:
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def _wedge_gram() -> IntMatrix:
    rows = []
    for i, j in WEDGE_PAIRS:
        row = []
        for k, l in WEDGE_PAIRS:
            row.append(_perm_sign((i, j, k, l)) if len({i, j, k, l}) == 4 else 0)
        rows.append(row)
    return IntMatrix(rows)


G6 = _wedge_gram()
H2_LATTICE = Lattice(G6, name="H2(A,Z)")


def order_of(m) -> int:
    """Smallest ``k <= 12`` with ``m^k = I``."""
    m = as_matrix(m)
    if not m.is_square():
        raise ShapeError("order of a non-square matrix")
    ident = IntMatrix.identity(m.rows)
    power = m
    for k in range(1, MAX_ORDER + 1):
        if power == ident:
            return k
        power = power @ m
    raise UnsupportedOrderError("infinite or unsupported order (> 12)")


def wedge_matrix(g) -> IntMatrix:
    """The 6x6 matrix of ``Λ^2 g`` (2x2 minors), no determinant check."""
    g = as_matrix(g)
    if g.shape != (4, 4):
        raise ShapeError(f"expected a 4x4 matrix, got {g.shape}")
    return IntMatrix(
        [[g[i, k] * g[j, l] - g[j, k] * g[i, l] for k, l in WEDGE_PAIRS]
         for i, j in WEDGE_PAIRS])


@dataclass(frozen=True)
class H2Action:
    source_g: IntMatrix
    phi: IntMatrix

    @cached_property
    def order_h1(self) -> Optional[int]:
        try:
            return order_of(self.source_g)
        except UnsupportedOrderError:
            return None

    @cached_property
    def order_h2(self) -> Optional[int]:
        try:
            return order_of(self.phi)
        except UnsupportedOrderError:
            return None

    @property
    def det_g(self) -> int:
        return det(self.source_g)


def wedge_square(g) -> H2Action:
    g = as_matrix(g)
    if g.shape != (4, 4):
        raise ShapeError(f"expected a 4x4 matrix, got {g.shape}")
    if abs(det(g)) != 1:
        raise ValueError("|det g| != 1: not an automorphism of the lattice")
    return H2Action(g, wedge_matrix(g))


def h2_order(g) -> int:
    return order_of(wedge_square(g).phi)


def _action(a) -> H2Action:
    return a if isinstance(a, H2Action) else wedge_square(a)


def invariant_lattice(a) -> Lattice:
    """Fixed sublattice of ``phi`` with the restricted wedge pairing.

    The returned lattice carries its basis inside the wedge model.
    """
    a = _action(a)
    if a.det_g != 1:
        raise ValueError("invariant lattice needs det g = 1")
    kernel = integer_kernel(a.phi - IntMatrix.identity(6))
    return sublattice(kernel, H2_LATTICE, name="T")


def coinvariant_lattice(a) -> Lattice:
    inv = invariant_lattice(a)
    return orthogonal_complement(inv.basis, H2_LATTICE)


def fixed_point_count(g) -> int:
    """Number of fixed points on the torus, ``|det(I - g)|``."""
    g = as_matrix(g)
    d = det(IntMatrix.identity(g.rows) - g)
    if d == 0:
        raise PositiveDimensionalFixedLocus("positive-dimensional fixed locus")
    return abs(d)
