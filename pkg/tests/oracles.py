"""Independent reference computations.

Everything here works on dense complex matrices or by brute-force
enumeration, and shares no code with the exact paths under test beyond the
plain data carried by the objects.
"""

from __future__ import annotations

import cmath
import itertools
from functools import reduce

import numpy as np

TOL = 1e-9


def root(x) -> complex:
    """``exp(2 pi i x)`` for a Phase-like ``(num, den)`` or a float."""
    if hasattr(x, "num"):
        x = x.num / x.den
    return cmath.exp(2j * cmath.pi * x)


def dense(m) -> np.ndarray:
    """Matrix with entry ``(perm[q], q) = phase[q]``."""
    d = m.d
    out = np.zeros((d, d), dtype=complex)
    for q in range(d):
        out[m.perm[q], q] = root(m.phases[q])
    return out


def dense_tensor(t) -> np.ndarray:
    return root(t.global_phase) * reduce(np.kron, [dense(f) for f in t.factors])


def dense_state(s) -> np.ndarray:
    v = np.zeros(s.d ** s.n, dtype=complex)
    for basis, ph in s.support.items():
        idx = 0
        for x in basis:
            idx = idx * s.d + x
        v[idx] = root(ph)
    return v


def close(a, b) -> bool:
    return np.allclose(a, b, atol=TOL)


def shift_matrix(d: int) -> np.ndarray:
    return np.roll(np.eye(d, dtype=complex), 1, axis=0)


def clock_matrix(d: int) -> np.ndarray:
    return np.diag([root(q / d) for q in range(d)])


def weyl_matrix(x: int, z: int, p: int) -> np.ndarray:
    tau = root((p + 1) / 2 / p)
    return tau ** (-x * z) * np.linalg.matrix_power(clock_matrix(p), z) @ np.linalg.matrix_power(shift_matrix(p), x)


def dense_order(mat: np.ndarray, limit: int = 10_000) -> int:
    acc = mat.copy()
    eye = np.eye(mat.shape[0])
    for k in range(1, limit + 1):
        if close(acc, eye):
            return k
        acc = acc @ mat
    raise AssertionError("order exceeds limit")


def commute_dense(a: np.ndarray, b: np.ndarray) -> bool:
    return close(a @ b, b @ a)


def eigen_output(u: np.ndarray, psi: np.ndarray, d: int) -> int | None:
    """``o`` with ``u psi = omega^o psi``; None if ``psi`` is not an eigenvector."""
    img = u @ psi
    k = int(np.argmax(np.abs(psi)))
    lam = img[k] / psi[k]
    if not close(img, lam * psi):
        return None
    for o in range(d):
        if abs(lam - root(o / d)) < 1e-7:
            return o
    return None


def brute_lcs(A, b, p: int):
    """Exhaustive search for ``A x = b``; returns a solution or None."""
    rows, cols = len(A), len(A[0])
    for x in itertools.product(range(p), repeat=cols):
        if all(sum(A[i][j] * x[j] for j in range(cols)) % p == b[i] % p for i in range(rows)):
            return x
    return None


def lagrange_coeffs(table: dict, p: int, l: int) -> dict:
    """Expand ``sum_a f(a) prod_k (1 - (x_k - a_k)^{p-1})`` into monomial coefficients."""

    def one_var(a):
        # 1 - (x - a)^{p-1}, as coefficients indexed by degree
        from math import comb
        c = [0] * p
        for j in range(p):
            c[j] = -comb(p - 1, j) * pow(-a, p - 1 - j, p)
        c[0] += 1
        return [v % p for v in c]

    out: dict = {}
    for a, fa in table.items():
        if fa % p == 0:
            continue
        factors = [one_var(ak) for ak in a]
        for exps in itertools.product(range(p), repeat=l):
            c = fa
            for k, e in enumerate(exps):
                c = c * factors[k][e] % p
            if c:
                out[exps] = (out.get(exps, 0) + c) % p
    return {k: v for k, v in out.items() if v}


def qudit_star_matrix(p: int, j: int) -> np.ndarray:
    """Dense ``M(j)`` from its defining action, columns built basis vector by basis vector."""
    out = np.zeros((p, p), dtype=complex)
    for q in range(p):
        out[(q + 1) % p, q] = root(j / p ** 2) * root(j * q ** (p - 1) / p)
    return out


def affine_perms(p: int) -> set:
    return {tuple((a * q + b) % p for q in range(p)) for a in range(1, p) for b in range(p)}


def weyl_coordinates(mat: np.ndarray, p: int):
    """``(c, x, z)`` with ``mat = omega^c W(x, z)`` by search, else None."""
    for x in range(p):
        for z in range(p):
            w = weyl_matrix(x, z, p)
            for c in range(p):
                if close(mat, root(c / p) * w):
                    return c, x, z
    return None
