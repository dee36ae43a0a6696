"""Permutations of ``{0, ..., d-1}`` in one-line form: ``perm[q]`` is the image of ``q``."""

from __future__ import annotations

import itertools
from math import gcd
from typing import Sequence

Perm = tuple[int, ...]


def check_perm(perm: Sequence[int], d: int | None = None) -> Perm:
    perm = tuple(int(x) for x in perm)
    if d is not None and len(perm) != d:
        raise ValueError(f"permutation has length {len(perm)}, expected {d}")
    if sorted(perm) != list(range(len(perm))):
        raise ValueError(f"not a permutation: {perm}")
    return perm


def identity_perm(d: int) -> Perm:
    return tuple(range(d))


def cycle_perm(d: int, k: int = 1) -> Perm:
    """``q -> q + k mod d``; ``k = 1`` is the standard cycle ``(0 1 ... d-1)``."""
    return tuple((q + k) % d for q in range(d))


def perm_compose(s: Perm, t: Perm) -> Perm:
    """``s o t``, i.e. apply ``t`` first."""
    return tuple(s[x] for x in t)


def perm_inverse(s: Perm) -> Perm:
    inv = [0] * len(s)
    for q, x in enumerate(s):
        inv[x] = q
    return tuple(inv)


def perm_power(s: Perm, k: int) -> Perm:
    if k < 0:
        s, k = perm_inverse(s), -k
    out = identity_perm(len(s))
    base = s
    while k:
        if k & 1:
            out = perm_compose(base, out)
        base = perm_compose(base, base)
        k >>= 1
    return out


def cycles(s: Perm) -> list[tuple[int, ...]]:
    """Disjoint cycles, each starting at its smallest point, fixed points included."""
    seen = set()
    out = []
    for start in range(len(s)):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        x = s[start]
        while x != start:
            cyc.append(x)
            seen.add(x)
            x = s[x]
        out.append(tuple(cyc))
    return out


def perm_order(s: Perm) -> int:
    out = 1
    for c in cycles(s):
        out = out * len(c) // gcd(out, len(c))
    return out


def perm_sign(s: Perm) -> int:
    return -1 if sum(len(c) - 1 for c in cycles(s)) % 2 else 1


def is_identity(s: Perm) -> bool:
    return all(q == x for q, x in enumerate(s))


def is_full_cycle(s: Perm) -> bool:
    """True for a single cycle through every point (a p_cycle when len(s) = p)."""
    return len(cycles(s)) == 1 and len(s) > 1


def cycle_exponent(s: Perm) -> int | None:
    """``b`` with ``s == cycle_perm(d, b)``, or None if ``s`` is not a shift."""
    d = len(s)
    b = s[0]
    return b if all(s[q] == (q + b) % d for q in range(d)) else None


def all_perms(d: int) -> list[Perm]:
    return list(itertools.permutations(range(d)))


def from_cycle(d: int, cyc: Sequence[int]) -> Perm:
    """The permutation of ``{0..d-1}`` given by a single cycle ``(c0 c1 ...)``."""
    out = list(range(d))
    for a, b in zip(cyc, tuple(cyc[1:]) + (cyc[0],)):
        out[a] = b
    return check_perm(out, d)
