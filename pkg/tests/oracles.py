"""Slow, independent reference computations used only by the tests."""
from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np


def perm_sign(perm) -> int:
    sign = 1
    perm = list(perm)
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def det_by_permutations(rows) -> int:
    n = len(rows)
    return sum(perm_sign(p) * math.prod(rows[i][p[i]] for i in range(n))
               for p in itertools.permutations(range(n)))


def determinantal_divisors(rows) -> list[int]:
    """Elementary divisors d_k = D_k / D_(k-1), D_k = gcd of all k x k minors."""
    m, n = len(rows), len(rows[0]) if rows else 0
    out, prev = [], 1
    for k in range(1, min(m, n) + 1):
        g = 0
        for rs in itertools.combinations(range(m), k):
            for cs in itertools.combinations(range(n), k):
                g = math.gcd(g, det_by_permutations([[rows[i][j] for j in cs] for i in rs]))
        if g == 0:
            out.extend([0] * (min(m, n) - k + 1))
            break
        out.append(g // prev)
        prev = g
    return out


def discriminant_group_brute(gram) -> list[tuple[Fraction, ...]]:
    """Representatives of L*/L as G^-1 z for z in a box, deduplicated mod Z^n."""
    g = [[Fraction(x) for x in row] for row in gram]
    n = len(g)
    inv = _inverse(g)
    d = abs(det_by_permutations(gram))
    seen = {}
    for z in itertools.product(range(d), repeat=n):
        y = tuple(sum(inv[i][j] * z[j] for j in range(n)) for i in range(n))
        key = tuple(x % 1 for x in y)
        seen.setdefault(key, key)
    return list(seen.values())


def q_value(gram, y) -> Fraction:
    n = len(gram)
    return sum(y[i] * gram[i][j] * y[j] for i in range(n) for j in range(n))


def delta_brute(gram) -> int:
    return int(any(q_value(gram, y).denominator != 1 for y in discriminant_group_brute(gram)))


def signature_by_eigenvalues(gram) -> tuple[int, int]:
    ev = np.linalg.eigvalsh(np.array(gram, dtype=float))
    return int((ev > 1e-9).sum()), int((ev < -1e-9).sum())


def _inverse(a):
    n = len(a)
    m = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        p = next(i for i in range(c, n) if m[i][c] != 0)
        m[c], m[p] = m[p], m[c]
        piv = m[c][c]
        m[c] = [x / piv for x in m[c]]
        for i in range(n):
            if i != c and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return [row[n:] for row in m]


def box_vectors_of_norm(gram, bound, target):
    n = len(gram)
    return [v for v in itertools.product(range(-bound, bound + 1), repeat=n)
            if q_value(gram, v) == target]


def random_unimodular(rng, n, steps=8, mult=2):
    """Product of random elementary integer operations (det = +-1)."""
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        kind = rng.random()
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if kind < 0.7 and n > 1:
            k = rng.choice([x for x in range(-mult, mult + 1) if x])
            m[i] = [a + k * b for a, b in zip(m[i], m[j])]
        elif kind < 0.85 and n > 1:
            m[i], m[j] = m[j], m[i]
        else:
            m[i] = [-a for a in m[i]]
    return m
