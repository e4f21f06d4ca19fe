"""Explicit automorphism families of abelian surfaces and their verification.

Every matrix acts on ``H_1(A, Z) = Λ`` by columns in a basis of the period
lattice that is positively oriented for the complex structure.  The wedge
model of :mod:`torus_lattices.action` depends on that orientation: the same
integer matrix in a reversed basis flips the sign of the invariant lattice.

Quotient families (``A / <torsion points>``) are written in a Z-basis of the
enlarged period lattice:

* ``p2_U2``: ``Λ' = Λ + Z(λ1+μ1)/2`` with basis ``((λ1+μ1)/2, λ2, μ1, μ2)``.
* ``p2_2m2``: ``Λ'' = Λ + Z(λ1+μ1)/2 + Z(λ2+μ2)/2`` with basis
  ``((λ1+μ1)/2, (λ2+μ2)/2, μ1, μ2)``.
* ``p3_U3``: ``E6`` has basis ``(μ1, μ2) = (1, ζ3)`` and the 3-torsion point
  ``(1+ζ6)/3 = (2μ1+μ2)/3``; ``Λ' = Λ + Z(λ1+2μ1+μ2)/3`` with basis
  ``((λ1+2μ1+μ2)/3, λ2, μ1, μ2)``.

Here ``(λ1, λ2)`` span the lattice of ``E`` and ``(μ1, μ2)`` the one of
``E'``; each change of basis has positive determinant, and the conjugated
matrices were checked to be integral.

The symplectic families are usually written with negatively oriented
period bases ``((1,0), (0,1), (x,-y), (y,x))``; swapping the last two
vectors fixes the orientation, which conjugates the second 2x2 block.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Union

from .action import (PositiveDimensionalFixedLocus, coinvariant_lattice, fixed_point_count,
                     h2_order, invariant_lattice, order_of, wedge_square)
from .classification import family_dimension
from .lattice import (DEFAULT_COEFF_BOUND, Lattice, genus_fingerprint, is_witness,
                      isometry_search, lattice_from_name, rescale)
from .linalg import IntMatrix, char_poly, poly_divmod, rational_inverse

POSITIVE_DIMENSIONAL = "positive-dimensional"
ALLOWED_H1_ORDERS = (2, 3, 4, 5, 6, 10, 12)

FixedCount = Union[int, str]

_J4 = IntMatrix([[0, -1], [1, 0]])
_R3 = IntMatrix([[0, -1], [1, -1]])
_I2 = IntMatrix.identity(2)


@dataclass(frozen=True)
class ExampleRecord:
    name: str
    p: int
    g_h1: IntMatrix
    group_type: str
    symplectic: bool
    expected_T: str
    expected_fixed_counts: dict[str, FixedCount]
    family_dim: Optional[int]
    title: str = ""
    # unchecked metadata: number of curves in a positive-dimensional fixed locus
    fixed_components: dict[str, int] = field(default_factory=dict)
    expected_S: Optional[str] = None
    printed_gram: Optional[IntMatrix] = None
    quotient_k3: Optional[str] = None
    quotient_order: Optional[int] = None

    @property
    def minus_g_h1(self) -> IntMatrix:
        return -self.g_h1

    @property
    def order_h1(self) -> int:
        return order_of(self.g_h1)

    def group_element(self, label: str) -> IntMatrix:
        """Matrix of ``sigma^k`` or ``-sigma^k`` from a label like ``-sigma^2``."""
        sign = -1 if label.startswith("-") else 1
        body = label.lstrip("-")
        base, _, exp = body.partition("^")
        if base != "sigma":
            raise ValueError(f"bad group element label {label!r}")
        power = self.g_h1 ** (int(exp) if exp else 1)
        return power if sign == 1 else -power


def _records() -> tuple[ExampleRecord, ...]:
    r3_flipped = IntMatrix([[-1, 1], [-1, 0]])
    return (
        ExampleRecord(
            name="p2_U", p=2, title="E x E' with (id, -id)",
            g_h1=IntMatrix.diagonal([1, 1, -1, -1]),
            group_type="Z/2xZ/2", symplectic=False, expected_T="U",
            expected_fixed_counts={"sigma": POSITIVE_DIMENSIONAL, "-sigma": POSITIVE_DIMENSIONAL},
            fixed_components={"sigma": 4, "-sigma": 4}, family_dim=2),
        ExampleRecord(
            name="p2_U2", p=2, title="(E x E')/<(x0, x0')> with x0, x0' of order 2",
            g_h1=IntMatrix([[1, 0, 0, 0], [0, 1, 0, 0], [-1, 0, -1, 0], [0, 0, 0, -1]]),
            group_type="Z/2xZ/2", symplectic=False, expected_T="U(2)",
            expected_fixed_counts={"sigma": POSITIVE_DIMENSIONAL, "-sigma": POSITIVE_DIMENSIONAL},
            fixed_components={"sigma": 2, "-sigma": 2}, family_dim=2),
        ExampleRecord(
            name="p2_2m2", p=2, title="(E x E') modulo two order-2 points",
            g_h1=IntMatrix([[1, 0, 0, 0], [0, 1, 0, 0], [-1, 0, -1, 0], [0, -1, 0, -1]]),
            group_type="Z/2xZ/2", symplectic=False, expected_T="<2>+<-2>",
            expected_fixed_counts={"sigma": POSITIVE_DIMENSIONAL, "-sigma": POSITIVE_DIMENSIONAL},
            fixed_components={"sigma": 1, "-sigma": 1}, family_dim=2),
        ExampleRecord(
            name="p2_U4x4", p=2, title="E_i x E_i with (i, i)",
            g_h1=IntMatrix.block_diag(_J4, _J4),
            group_type="Z/4", symplectic=False, expected_T="U+<-2>^2",
            expected_fixed_counts={"sigma": 4, "-sigma": 4}, family_dim=0,
            printed_gram=IntMatrix([[0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 2], [1, 1, 2, 0]])),
        ExampleRecord(
            name="p3_U", p=3, title="E x E6 with (id, zeta3)",
            g_h1=IntMatrix.block_diag(_I2, _R3),
            group_type="Z/2xZ/3", symplectic=False, expected_T="U",
            expected_fixed_counts={"sigma": POSITIVE_DIMENSIONAL, "sigma^2": POSITIVE_DIMENSIONAL,
                                   "-sigma": 4, "-sigma^2": 4},
            fixed_components={"sigma": 3, "sigma^2": 3}, family_dim=1),
        ExampleRecord(
            name="p3_U3", p=3, title="(E x E6)/<(x0, x0')> with x0, x0' of order 3",
            g_h1=IntMatrix([[1, 0, 0, 0], [0, 1, 0, 0], [-1, 0, 0, -1], [0, 0, 1, -1]]),
            group_type="Z/2xZ/3", symplectic=False, expected_T="U(3)",
            expected_fixed_counts={"sigma": POSITIVE_DIMENSIONAL, "sigma^2": POSITIVE_DIMENSIONAL,
                                   "-sigma": 4, "-sigma^2": 4},
            fixed_components={"sigma": 1, "sigma^2": 1}, family_dim=1),
        ExampleRecord(
            name="p3_UA2", p=3, title="E6 x E6 with (zeta3, zeta3)",
            g_h1=IntMatrix.block_diag(_R3, _R3),
            group_type="Z/2xZ/3", symplectic=False, expected_T="U+A2(-1)",
            expected_fixed_counts={"sigma": 9, "sigma^2": 9, "-sigma": 1, "-sigma^2": 1},
            family_dim=0,
            printed_gram=IntMatrix([[0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 3], [1, 1, 3, 0]])),
        ExampleRecord(
            # sigma(e1)=e2, sigma(e2)=e3, sigma(e3)=e4, sigma(e4)=-(e1+e2+e3+e4)
            name="p5_H5", p=5, title="C^2 / Z[zeta5]-lattice with (zeta5, zeta5^2)",
            g_h1=IntMatrix([[0, 0, 0, -1], [1, 0, 0, -1], [0, 1, 0, -1], [0, 0, 1, -1]]),
            group_type="Z/2xZ/5", symplectic=False, expected_T="H5",
            expected_fixed_counts={**{f"sigma^{k}": 5 for k in range(1, 5)},
                                   **{f"-sigma^{k}": 1 for k in range(1, 5)}},
            family_dim=0, printed_gram=IntMatrix([[10, 5], [5, 2]])),
        ExampleRecord(
            name="symp_order3", p=3, title="symplectic order 3",
            g_h1=IntMatrix.block_diag(_R3, r3_flipped),
            group_type="Z/6", symplectic=True, expected_T="U+A2", expected_S="A2(-1)",
            expected_fixed_counts={"sigma": 9, "sigma^2": 9}, family_dim=None,
            quotient_k3="U(3)+A2(3)", quotient_order=3),
        ExampleRecord(
            name="symp_order4", p=2, title="symplectic order 4",
            g_h1=IntMatrix.block_diag(_J4, _J4.T),
            group_type="Z/4", symplectic=True, expected_T="U+A1^2", expected_S="<-2>^2",
            expected_fixed_counts={"sigma": 4}, family_dim=None,
            quotient_k3="U(4)+A1(4)^2", quotient_order=4),
        ExampleRecord(
            # -sigma for the order-3 symplectic family; sigma^3 = -id fixes A[2]
            name="symp_order6", p=3, title="symplectic order 6 (minus the order-3 action)",
            g_h1=-IntMatrix.block_diag(_R3, r3_flipped),
            group_type="Z/6", symplectic=True, expected_T="U+A2", expected_S="A2(-1)",
            expected_fixed_counts={"sigma": 1, "sigma^2": 9, "sigma^3": 16}, family_dim=None,
            quotient_k3="U(3)+A2(3)", quotient_order=3),
    )


_CATALOG = _records()


def list_examples() -> list[ExampleRecord]:
    return list(_CATALOG)


def get_example(name: str) -> ExampleRecord:
    for rec in _CATALOG:
        if rec.name == name:
            return rec
    raise KeyError(f"unknown example {name!r}")


def quotient_transcendental(t: Lattice, n: int) -> Lattice:
    """Transcendental lattice of the resolved quotient ``A/<sigma>``: ``T(n)``."""
    if n < 2:
        raise ValueError(f"quotient by an automorphism of order {n} is not a K3 quotient")
    return rescale(t, n)


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

def _cyclotomic(n: int) -> tuple[int, ...]:
    num = (1,) + (0,) * (n - 1) + (-1,)
    for d in range(1, n):
        if n % d == 0:
            num, rem = poly_divmod(num, _cyclotomic(d))
            assert rem == (0,)
    return num


def cyclotomic_factorization(poly: tuple[int, ...]) -> Optional[dict[int, int]]:
    """Exponents ``{n: k_n}`` with ``poly = prod Phi_n^k_n``, or None."""
    exps: dict[int, int] = {}
    rest = poly
    for n in range(1, 31):
        phi = _cyclotomic(n)
        while len(rest) >= len(phi):
            q, r = poly_divmod(rest, phi)
            if any(r):
                break
            exps[n] = exps.get(n, 0) + 1
            rest = q
    return exps if rest == (1,) else None


def _totient(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


def find_isometry(a: Lattice, b: Lattice, coeff_bound: int = DEFAULT_COEFF_BOUND
                  ) -> Optional[IntMatrix]:
    """Witness ``P`` with ``P^T G_a P = G_b``, searching from either side."""
    p = isometry_search(a, b, coeff_bound)
    if p is not None:
        return p
    q = isometry_search(b, a, coeff_bound)
    if q is None:
        return None
    inv = rational_inverse(q)
    return IntMatrix([[int(x) for x in row] for row in inv])


@dataclass(frozen=True)
class Check:
    name: str
    expected: str
    computed: str
    passed: bool


@dataclass(frozen=True)
class VerificationReport:
    example: str
    checks: tuple[Check, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {
            "example": self.example,
            "passed": self.passed,
            "checks": [c.__dict__ for c in self.checks],
        }

    def format(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        lines = [f"{self.example}: {status}"]
        for c in self.checks:
            mark = "ok  " if c.passed else "FAIL"
            lines.append(f"  [{mark}] {c.name}: expected {c.expected}; got {c.computed}")
        return "\n".join(lines)


def _lattice_check(name: str, computed: Lattice, expected: Lattice) -> Check:
    fp_ok = genus_fingerprint(computed) == genus_fingerprint(expected)
    witness = find_isometry(expected, computed)
    ok = fp_ok and witness is not None and is_witness(witness, expected, computed)
    got = f"Gram {computed.gram.tolist()}, fingerprint {'equal' if fp_ok else 'different'}, " \
          f"witness {'found' if witness is not None else 'not found'}"
    return Check(name, f"isometric to {expected.name}", got, ok)


def verify_example(name: str) -> VerificationReport:
    rec = get_example(name)
    checks: list[Check] = []
    g = rec.g_h1

    # 1. orders
    order1 = order_of(g)
    order2 = h2_order(g)
    checks.append(Check("orders", f"H1 order in {ALLOWED_H1_ORDERS}, H2 order {rec.p}",
                        f"H1 order {order1}, H2 order {order2}",
                        order1 in ALLOWED_H1_ORDERS and order2 == rec.p))

    # 2. invariant lattice
    action = wedge_square(g)
    T = invariant_lattice(action)
    expected_T = lattice_from_name(rec.expected_T)
    checks.append(_lattice_check("invariant lattice", T, expected_T))
    if rec.printed_gram is not None:
        printed = Lattice(rec.printed_gram, name=f"Gram {rec.printed_gram.tolist()}")
        checks.append(_lattice_check("printed Gram matrix", T, printed))

    # 3. coinvariant lattice
    S = coinvariant_lattice(action)
    fT, fS = genus_fingerprint(T), genus_fingerprint(S)
    checks.append(Check("discriminant groups A_T = A_S", str(list(fT.invariant_factors)),
                        str(list(fS.invariant_factors)),
                        fT.invariant_factors == fS.invariant_factors and T.rank + S.rank == 6))
    if rec.expected_S is not None:
        checks.append(_lattice_check("coinvariant lattice", S, lattice_from_name(rec.expected_S)))

    # 4. fixed points
    for label, expected in rec.expected_fixed_counts.items():
        elem = rec.group_element(label)
        try:
            computed: FixedCount = fixed_point_count(elem)
        except PositiveDimensionalFixedLocus:
            computed = POSITIVE_DIMENSIONAL
        checks.append(Check(f"fixed points of {label}", str(expected), str(computed),
                            computed == expected))

    # 5. even rank
    checks.append(Check("rank T even", "even", str(T.rank), T.rank % 2 == 0))

    # 6. family dimension
    if rec.family_dim is not None:
        dim = family_dimension(rec.p, T.rank)
        checks.append(Check("family dimension", str(rec.family_dim), str(dim),
                            dim == rec.family_dim))

    # further consistency checks
    poly = char_poly(g)
    exps = cyclotomic_factorization(poly)
    degree_ok = exps is not None and sum(k * _totient(n) for n, k in exps.items()) == 4
    checks.append(Check("char poly is cyclotomic", "product of Phi_n, degree 4",
                        str(exps), degree_ok))
    checks.append(Check("wedge(-g) = wedge(g)", "equal", "equal"
                        if wedge_square(-g).phi == action.phi else "different",
                        wedge_square(-g).phi == action.phi))
    sig = T.signature
    want_sig = (3, T.rank - 3) if rec.symplectic else (1, T.rank - 1)
    checks.append(Check("signature of T", str(want_sig), str(sig), sig == want_sig))
    if rec.quotient_k3 is not None:
        k3 = quotient_transcendental(T, rec.quotient_order)
        target = lattice_from_name(rec.quotient_k3)
        same = genus_fingerprint(k3) == genus_fingerprint(target)
        checks.append(Check("quotient K3 transcendental lattice", rec.quotient_k3,
                            genus_fingerprint(k3).describe(), same))
    return VerificationReport(rec.name, tuple(checks))


def verify_all() -> list[VerificationReport]:
    return [verify_example(rec.name) for rec in _CATALOG]
