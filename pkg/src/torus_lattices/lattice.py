"""Integral lattices and their discriminant invariants."""
from __future__ import annotations

import itertools
import math
import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Optional, Sequence

import numpy as np

from . import _kernels
from .linalg import (IntMatrix, ShapeError, SingularError, as_matrix, congruent_diagonalize,
                     det, integer_kernel, smith_normal_form)

DEFAULT_COEFF_BOUND = 5
# Beyond this many elements of A_L the fingerprint drops the q-value multiset.
MAX_ENUMERATED_DISCRIMINANT = 1 << 16


@dataclass(frozen=True)
class Lattice:
    """Non-degenerate integral lattice given by its Gram matrix.

    ``basis`` optionally records the columns spanning this lattice inside
    some ambient lattice (set for invariant lattices and complements).
    """

    gram: IntMatrix
    basis: Optional[IntMatrix] = field(default=None, compare=False)
    name: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        gram = as_matrix(self.gram)
        object.__setattr__(self, "gram", gram)
        if not gram.is_symmetric():
            raise ShapeError("Gram matrix must be square and symmetric")
        if det(gram) == 0:
            raise SingularError("Gram matrix is degenerate")
        if self.basis is not None and self.basis.cols != gram.rows:
            raise ShapeError("embedding basis does not match the rank")

    @property
    def rank(self) -> int:
        return self.gram.rows

    @cached_property
    def det(self) -> int:
        return det(self.gram)

    @property
    def is_even(self) -> bool:
        return all(self.gram[i, i] % 2 == 0 for i in range(self.rank))

    @cached_property
    def signature(self) -> tuple[int, int]:
        return congruent_diagonalize(self.gram)

    def norm(self, v: Sequence) -> int | Fraction:
        return inner(self.gram, v, v)

    def __str__(self) -> str:
        label = self.name or "lattice"
        return f"{label} (rank {self.rank}, det {self.det})"


def inner(gram: IntMatrix, u: Sequence, v: Sequence):
    n = gram.rows
    return sum(u[i] * gram[i, j] * v[j] for i in range(n) if u[i] for j in range(n))


# ---------------------------------------------------------------------------
# named lattices
# ---------------------------------------------------------------------------

_BASE_GRAMS = {
    "U": ((0, 1), (1, 0)),
    "A1": ((2,),),
    "A2": ((2, 1), (1, 2)),
    "H5": ((2, 1), (1, -2)),
}

_TERM = re.compile(r"^(U|A1|A2|H5|<\s*-?\d+\s*>)(?:\((-?\d+)\))?(?:\^(\d+))?$")


def make_named(name: str, scale: int | None = None) -> Lattice:
    """One of U, A1, A2, H5 or a rank-one ``<k>``, optionally rescaled."""
    key = name.replace(" ", "")
    if key in _BASE_GRAMS:
        gram = IntMatrix(_BASE_GRAMS[key])
    elif re.fullmatch(r"<-?\d+>", key):
        k = int(key[1:-1])
        if k == 0:
            raise SingularError("<0> is degenerate")
        gram = IntMatrix([[k]])
    else:
        raise ValueError(f"unknown lattice name {name!r}")
    label = key
    if scale is not None:
        if scale == 0:
            raise ValueError("scale must be non-zero")
        gram = gram.scale(scale)
        label = f"{key}({scale})"
    return Lattice(gram, name=label)


def rank1(k: int) -> Lattice:
    return make_named(f"<{k}>")


def rescale(lat: Lattice, n: int) -> Lattice:
    """``L(n)``: the same group with the form multiplied by ``n``."""
    if n == 0:
        raise ValueError("scale must be non-zero")
    name = f"({lat.name})({n})" if lat.name else None
    return Lattice(lat.gram.scale(n), name=name)


def direct_sum(*parts: Lattice) -> Lattice:
    if not parts:
        return Lattice(IntMatrix.zeros(0), name="0")
    gram = IntMatrix.block_diag(*(p.gram for p in parts))
    names = [p.name for p in parts if p.rank]
    name = "+".join(names) if names and all(names) else None
    return Lattice(gram, name=name or ("0" if not names else None))


def lattice_from_name(expr: str) -> Lattice:
    """Parse expressions such as ``U+<-2>^2``, ``U(3)`` or ``U+A2(-1)``."""
    compact = expr.replace(" ", "").replace("⊕", "+")
    parts = []
    for term in compact.split("+"):
        m = _TERM.match(term)
        if m is None:
            raise ValueError(f"cannot parse lattice term {term!r} in {expr!r}")
        base, scale, power = m.groups()
        piece = make_named(base, int(scale) if scale else None)
        parts.extend([piece] * (int(power) if power else 1))
    lat = direct_sum(*parts)
    return Lattice(lat.gram, name=compact)


# ---------------------------------------------------------------------------
# discriminant group and form
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DiscriminantData:
    """Discriminant group ``L*/L`` with its form on a generating set.

    ``generators[i]`` (dual vectors in lattice coordinates) has order
    ``invariant_factors[i]``.  ``q_values`` lie in [0, 2) for even lattices
    and in [0, 1) for odd ones; ``b_values`` lie in [0, 1).
    """

    invariant_factors: tuple[int, ...]
    generators: tuple[tuple[Fraction, ...], ...]
    q_values: tuple[Fraction, ...]
    b_values: tuple[tuple[Fraction, ...], ...]
    even: bool

    @property
    def length_a(self) -> int:
        return len(self.invariant_factors)

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)


def _reduce_q(x: Fraction, even: bool) -> Fraction:
    return x % 2 if even else x % 1


def discriminant(lat: Lattice) -> DiscriminantData:
    # G = L^-1 D R^-1, so L* = G^-1 Z^n = R D^-1 Z^n: generators are the
    # columns of R divided by the matching invariant factor.
    snf = smith_normal_form(lat.gram)
    gens, factors = [], []
    for i, d in enumerate(snf.diag):
        if d > 1:
            factors.append(d)
            gens.append(tuple(Fraction(x, d) for x in snf.right.col(i)))
    even = lat.is_even
    q_values = tuple(_reduce_q(inner(lat.gram, g, g), even) for g in gens)
    b_values = tuple(tuple(inner(lat.gram, g, h) % 1 for h in gens) for g in gens)
    return DiscriminantData(tuple(factors), tuple(gens), q_values, b_values, even)


def discriminant_elements(lat: Lattice, data: DiscriminantData | None = None
                          ) -> Iterator[tuple[tuple[int, ...], tuple[Fraction, ...]]]:
    """Yield ``(coefficients, dual vector)`` for every element of ``A_L``."""
    data = data or discriminant(lat)
    ranges = [range(d) for d in data.invariant_factors]
    for coeffs in itertools.product(*ranges):
        vec = tuple(sum((c * g[k] for c, g in zip(coeffs, data.generators)), Fraction(0))
                    for k in range(lat.rank))
        yield coeffs, vec


def is_p_elementary(lat: Lattice, p: int) -> tuple[bool, Optional[int]]:
    factors = discriminant(lat).invariant_factors
    if all(d == p for d in factors):
        return True, len(factors)
    return False, None


def delta_invariant(lat: Lattice) -> int:
    """Nikulin's parity invariant of an even 2-elementary lattice.

    Checked on every element of the discriminant group, not only on
    generators.
    """
    if not lat.is_even:
        raise ValueError("delta is only defined here for even lattices")
    data = discriminant(lat)
    if any(d != 2 for d in data.invariant_factors):
        raise ValueError("lattice is not 2-elementary")
    for _, vec in discriminant_elements(lat, data):
        if inner(lat.gram, vec, vec).denominator != 1:
            return 1
    return 0


# ---------------------------------------------------------------------------
# sublattices
# ---------------------------------------------------------------------------

def sublattice(basis, ambient: Lattice, name: str | None = None) -> Lattice:
    """Restriction of the ambient form to the span of ``basis`` columns."""
    basis = as_matrix(basis)
    if basis.rows != ambient.rank:
        raise ShapeError("basis vectors do not live in the ambient lattice")
    gram = basis.T @ ambient.gram @ basis
    return Lattice(gram, basis=basis, name=name)


def orthogonal_complement(sub, ambient: Lattice) -> Lattice:
    """Saturated sublattice orthogonal to the columns of ``sub``."""
    sub = as_matrix(sub)
    if sub.rows != ambient.rank:
        raise ShapeError("basis vectors do not live in the ambient lattice")
    if sub.cols and smith_normal_form(sub).rank < sub.cols:
        raise ValueError("sublattice basis columns are linearly dependent")
    if sub.cols == 0:
        return Lattice(ambient.gram, basis=IntMatrix.identity(ambient.rank))
    kernel = integer_kernel(sub.T @ ambient.gram)
    return sublattice(kernel, ambient)


# ---------------------------------------------------------------------------
# genus fingerprint
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class GenusFingerprint:
    rank: int
    signature: tuple[int, int]
    even: bool
    invariant_factors: tuple[int, ...]
    # sorted (element order, q value) over the whole of A_L; None when A_L
    # is too large to enumerate
    q_multiset: Optional[tuple[tuple[int, Fraction], ...]]

    def describe(self) -> str:
        parity = "even" if self.even else "odd"
        return (f"rank {self.rank}, signature {self.signature}, {parity}, "
                f"A_L factors {list(self.invariant_factors)}")


def _element_order(coeffs: Sequence[int], factors: Sequence[int]) -> int:
    out = 1
    for c, d in zip(coeffs, factors):
        out = math.lcm(out, d // math.gcd(c, d))
    return out


def genus_fingerprint(lat: Lattice) -> GenusFingerprint:
    data = discriminant(lat)
    multiset = None
    if data.order <= MAX_ENUMERATED_DISCRIMINANT:
        # integer arithmetic on generator coefficients: q(sum c_i g_i) =
        # sum c_i c_j <g_i, g_j>, scaled by the common denominator
        factors = data.invariant_factors
        gram_q = [[inner(lat.gram, g, h) for h in data.generators] for g in data.generators]
        den = math.lcm(1, *(x.denominator for row in gram_q for x in row))
        scaled = [[int(x * den) for x in row] for row in gram_q]
        modulus = (2 if data.even else 1) * den
        counts: Counter = Counter()
        a = len(factors)
        for coeffs in itertools.product(*(range(d) for d in factors)):
            q = sum(coeffs[i] * coeffs[j] * scaled[i][j] for i in range(a) for j in range(a))
            counts[(_element_order(coeffs, factors), q % modulus)] += 1
        multiset = tuple(sorted((order, Fraction(q, den)) for (order, q), k in counts.items()
                                for _ in range(k)))
    return GenusFingerprint(lat.rank, lat.signature, data.even, data.invariant_factors, multiset)


# ---------------------------------------------------------------------------
# isometry search
# ---------------------------------------------------------------------------

def _as_int64(m: IntMatrix) -> np.ndarray:
    return np.array(m.tolist(), dtype=np.int64).reshape(m.rows, m.cols)


def isometry_search(a: Lattice, b: Lattice, coeff_bound: int = DEFAULT_COEFF_BOUND
                    ) -> Optional[IntMatrix]:
    """Look for a unimodular ``P`` with ``P^T G_a P = G_b``.

    Columns of ``P`` are the images of the basis of ``b`` written in the
    basis of ``a``, each with coefficients in ``[-coeff_bound, coeff_bound]``.
    ``None`` only means nothing was found inside the box.
    """
    if a.rank != b.rank:
        raise ValueError(f"rank mismatch: {a.rank} vs {b.rank}")
    if coeff_bound < 1:
        raise ValueError("coeff_bound must be at least 1")
    n = a.rank
    if n == 0:
        return IntMatrix.zeros(0)
    if a.det != b.det:
        return None
    ga = _as_int64(a.gram)
    _kernels.check_int64_budget(ga, coeff_bound)
    gb = b.gram
    candidates = []
    for i in range(n):
        vecs = _kernels.vectors_of_norm(ga, coeff_bound, gb[i, i])
        if not len(vecs):
            return None
        # short vectors first; stable sort keeps the box order as tiebreak
        order = np.argsort(np.abs(vecs).sum(axis=1), kind="stable")
        candidates.append(vecs[order])

    # forward checking: after each choice every open level keeps only the
    # vectors compatible with it; the most constrained level goes next
    chosen: dict[int, np.ndarray] = {}

    def extend(pools: dict[int, np.ndarray]) -> Optional[IntMatrix]:
        if not pools:
            cols = [tuple(int(x) for x in chosen[i]) for i in range(n)]
            p = IntMatrix.from_columns(cols, n)
            return p if abs(det(p)) == 1 else None
        level = min(pools, key=lambda k: (len(pools[k]), k))
        rest = [k for k in pools if k != level]
        for v in pools[level]:
            narrowed = {}
            for k in rest:
                values = _kernels.pair_products(pools[k], ga, v[None, :])[:, 0]
                keep = pools[k][values == gb[level, k]]
                if not len(keep):
                    break
                narrowed[k] = keep
            else:
                chosen[level] = v
                found = extend(narrowed)
                if found is not None:
                    return found
        return None

    return extend(dict(enumerate(candidates)))


def is_witness(p: IntMatrix, a: Lattice, b: Lattice) -> bool:
    return abs(det(p)) == 1 and p.T @ a.gram @ p == b.gram


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

def lattice_to_json(lat: Lattice) -> dict:
    return {"rank": lat.rank, "gram": lat.gram.tolist()}


def _check_int_rows(rows) -> list[list[int]]:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ValueError("matrix must be a list of rows")
    for r in rows:
        for x in r:
            _check_int(x)
    return rows


def lattice_from_json(doc: dict) -> Lattice:
    if "gram" not in doc:
        raise ValueError("lattice document needs a 'gram' field")
    rows = _check_int_rows(doc["gram"])
    gram = IntMatrix(rows)
    if "rank" in doc and doc["rank"] != gram.rows:
        raise ValueError(f"declared rank {doc['rank']} does not match a {gram.rows}-row Gram")
    return Lattice(gram)


def matrix_to_json(m: IntMatrix) -> dict:
    """Row-major flat ``entries`` with explicit shape."""
    return {"rows": m.rows, "cols": m.cols, "entries": [x for row in m.tolist() for x in row]}


def _check_int(x) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise ValueError(f"matrix entries must be JSON integers, got {x!r}")
    return x


def matrix_from_json(doc: dict) -> IntMatrix:
    """Read either the matrix form or the lattice form of a matrix file."""
    if "entries" in doc:
        entries, n_rows, n_cols = doc["entries"], doc.get("rows"), doc.get("cols")
        if isinstance(entries, list) and entries and all(isinstance(r, list) for r in entries):
            # nested rows are accepted as a convenience
            rows = _check_int_rows(entries)
            n_rows = len(rows) if n_rows is None else n_rows
            n_cols = len(rows[0]) if n_cols is None else n_cols
            entries = [x for r in rows for x in r]
        if not isinstance(entries, list):
            raise ValueError("'entries' must be a list")
        if not all(isinstance(v, int) and not isinstance(v, bool) and v >= 0
                   for v in (n_rows, n_cols)):
            raise ValueError("'rows' and 'cols' must be non-negative integers")
        entries = [_check_int(x) for x in entries]
        if n_rows * n_cols != len(entries):
            raise ValueError(f"rows*cols = {n_rows * n_cols} but {len(entries)} entries stored")
        rows = [entries[i * n_cols:(i + 1) * n_cols] for i in range(n_rows)]
        return IntMatrix(rows, rows=n_rows, cols=n_cols)
    if "gram" in doc:
        rows = _check_int_rows(doc["gram"])
        m = IntMatrix(rows)
        if "rank" in doc and doc["rank"] != m.rows:
            raise ValueError("declared rank does not match the Gram matrix")
        return m
    raise ValueError("matrix document needs 'entries' or 'gram'")
