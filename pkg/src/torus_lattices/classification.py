"""Existence criteria for p-elementary lattices and the invariant-lattice table."""
from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Optional

from .lattice import Lattice, lattice_from_name

SUPPORTED_PRIMES = (2, 3, 5)
H2_RANK = 6


def nikulin_2_exists(r: int, a: int, delta: int) -> bool:
    """Even hyperbolic 2-elementary lattice with invariants (r, a, delta)?"""
    if delta not in (0, 1):
        raise ValueError(f"delta must be 0 or 1, got {delta!r}")
    if r < 1:
        raise ValueError("rank must be positive")
    conditions = (
        a <= r,
        (r - a) % 2 == 0,
        delta == 1 or r % 4 == 2,
        a != 0 or delta == 0,
        a > 1 or r % 8 in ((2 + a) % 8, (2 - a) % 8),
        not (a == 2 and r % 8 == 6) or delta == 0,
        not (delta == 0 and a == r) or r % 8 == 2,
    )
    return all(conditions)


def rs_p_exists(r: int, a: int, p: int) -> bool:
    """Even hyperbolic p-elementary lattice (p odd) with invariants (r, a)?"""
    if p % 2 == 0:
        raise ValueError("rs_p_exists needs an odd prime")
    if r % 2:
        return False
    conditions = (
        a <= r,
        a % 2 == 1 or r % 4 == 2,
        a % 2 == 0 or p % 4 == (1 if (r // 2 - 1) % 2 == 0 else 3),
        r % 8 == 2 or r > a > 0,
    )
    return all(conditions)


def bcms_condition(p: int, a: int) -> bool:
    """Rank p-1 lattice with an order-p action and ``d = p^a``: is
    ``p^a / p^(p-2)`` a rational square?"""
    return (a - (p - 2)) % 2 == 0


def family_dimension(p: int, r: int) -> int:
    if p == 2:
        return 4 - r
    if p in (3, 5):
        q, rem = divmod(H2_RANK - r, p - 1)
        if rem:
            raise ValueError(f"(6 - r) is not divisible by p - 1 for p={p}, r={r}")
        return q - 1
    raise ValueError(f"unsupported prime {p}")


_TABLE_LATTICES = {
    (2, 2, 0, 0): "U",
    (2, 2, 2, 0): "U(2)",
    (2, 2, 2, 1): "<2>+<-2>",
    (2, 4, 2, 1): "U+<-2>^2",
    (3, 2, 0, None): "U",
    (3, 2, 2, None): "U(3)",
    (3, 4, 1, None): "U+A2(-1)",
    (5, 2, 1, None): "H5",
}


def resolve_lattice(p: int, r: int, a: int, delta: Optional[int] = None) -> Lattice:
    key = (p, r, a, delta if p == 2 else None)
    try:
        return lattice_from_name(_TABLE_LATTICES[key])
    except KeyError:
        raise ValueError(f"no lattice in the table for p={p}, r={r}, a={a}, delta={delta}") from None


@dataclass(frozen=True, order=True)
class ClassificationRow:
    p: int
    r: int
    a: int
    delta: Optional[int]
    dim: int
    lattice_name: str

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, doc: dict) -> "ClassificationRow":
        return cls(**doc)


def enumerate_table(p: int) -> list[ClassificationRow]:
    """Rows (sorted by r, a, delta) of admissible invariant lattices for p."""
    if p not in SUPPORTED_PRIMES:
        raise ValueError(f"unsupported prime {p}; expected one of {SUPPORTED_PRIMES}")
    rows = []
    # even rank, 2 <= r (Kähler class) and r <= 4 (period plane in S)
    for r in (2, 4):
        s = H2_RANK - r
        for a in range(min(r, s) + 1):
            if p == 2:
                for delta in (0, 1):
                    if nikulin_2_exists(r, a, delta):
                        lat = resolve_lattice(p, r, a, delta)
                        rows.append(ClassificationRow(p, r, a, delta, family_dimension(p, r),
                                                      lat.name))
                continue
            if s % (p - 1):
                continue
            if not rs_p_exists(r, a, p):
                continue
            if s == p - 1 and not bcms_condition(p, a):
                continue
            lat = resolve_lattice(p, r, a)
            rows.append(ClassificationRow(p, r, a, None, family_dimension(p, r), lat.name))
    return sorted(rows, key=lambda row: (row.r, row.a, -1 if row.delta is None else row.delta))


def full_table() -> list[ClassificationRow]:
    return [row for p in SUPPORTED_PRIMES for row in enumerate_table(p)]


def format_table(rows: list[ClassificationRow]) -> str:
    """Plain-text table in the column order p, r, dim, a, T."""
    header = ("p", "r", "dim", "a", "T(G_sigma)")
    body = [(str(r.p), str(r.r), str(r.dim), str(r.a), r.lattice_name) for r in rows]
    widths = [max(len(x) for x in col) for col in zip(header, *body)]
    line = lambda cells: " | ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()
    out = [line(header), "-+-".join("-" * w for w in widths)]
    out.extend(line(cells) for cells in body)
    return "\n".join(out)
